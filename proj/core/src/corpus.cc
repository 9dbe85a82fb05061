#include "discdep/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "discdep/error.h"
#include "json.hpp"

namespace discdep {

using nlohmann::json;

namespace {

Dialogue parse_record(const json& rec) {
  if (!rec.is_object()) throw DataError("record is not a JSON object");
  if (rec.contains("cdus")) {
    throw DataError("record declares CDU spans; flatten CDUs before loading");
  }
  Dialogue d;
  if (!rec.contains("id") || !rec.at("id").is_string()) {
    throw DataError("missing string field 'id'");
  }
  d.id = rec.at("id").get<std::string>();
  if (!rec.contains("edus") || !rec.at("edus").is_array()) {
    throw DataError("dialogue '" + d.id + "': missing array field 'edus'");
  }
  for (const auto& e : rec.at("edus")) {
    if (!e.is_object() || !e.contains("speaker") || !e.contains("text") ||
        !e.at("speaker").is_string() || !e.at("text").is_string()) {
      throw DataError("dialogue '" + d.id +
                      "': each EDU needs string 'speaker' and 'text'");
    }
    Edu edu;
    edu.index = static_cast<int>(d.edus.size());
    edu.speaker = e.at("speaker").get<std::string>();
    edu.text = e.at("text").get<std::string>();
    if (edu.text.empty()) {
      throw DataError("dialogue '" + d.id + "': EDU " +
                      std::to_string(edu.index) + " has empty text");
    }
    d.edus.push_back(std::move(edu));
  }
  if (rec.contains("gold") && !rec.at("gold").is_null()) {
    const int n = d.size();
    std::vector<Arc> arcs;
    for (const auto& a : rec.at("gold")) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number_integer() ||
          !a[1].is_number_integer()) {
        throw DataError("dialogue '" + d.id +
                        "': gold arcs must be [head, dep] integer pairs");
      }
      Arc arc{a[0].get<int>(), a[1].get<int>()};
      if (arc.head < 0 || arc.dep < 0 || arc.head >= n || arc.dep >= n) {
        throw DataError("dialogue '" + d.id + "': gold arc [" +
                        std::to_string(arc.head) + "," +
                        std::to_string(arc.dep) + "] out of range");
      }
      if (arc.head == arc.dep) {
        throw DataError("dialogue '" + d.id + "': self-loop on EDU " +
                        std::to_string(arc.head));
      }
      arcs.push_back(arc);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    d.gold = std::move(arcs);
  }
  return d;
}

}  // namespace

const std::vector<Arc>& Dialogue::gold_arcs() const {
  if (!gold) throw InvalidArgument("dialogue '" + id + "' has no gold arcs");
  return *gold;
}

const char* to_string(StructureClass c) {
  switch (c) {
    case StructureClass::kNonTree: return "non-tree";
    case StructureClass::kTree: return "tree";
    case StructureClass::kProjectiveTree: return "projective-tree";
  }
  return "?";
}

SubsetFilter parse_subset_filter(const std::string& name) {
  if (name == "all") return SubsetFilter::kAll;
  if (name == "tree") return SubsetFilter::kTree;
  if (name == "projective-tree") return SubsetFilter::kProjectiveTree;
  throw InvalidArgument("unknown subset filter '" + name + "'");
}

const char* to_string(SubsetFilter f) {
  switch (f) {
    case SubsetFilter::kAll: return "all";
    case SubsetFilter::kTree: return "tree";
    case SubsetFilter::kProjectiveTree: return "projective-tree";
  }
  return "?";
}

std::vector<Dialogue> read_corpus(std::istream& in,
                                  const LoadOptions& options) {
  std::vector<Dialogue> corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Dialogue d;
    try {
      d = parse_record(json::parse(line));
    } catch (const json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.insert(d.id).second) {
      throw DataError("line " + std::to_string(line_no) +
                      ": duplicate dialogue id '" + d.id + "'");
    }
    corpus.push_back(options.anonymize ? anonymize_speakers(std::move(d))
                                       : std::move(d));
  }
  return corpus;
}

std::vector<Dialogue> load_corpus(const std::filesystem::path& path,
                                  const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file " + path.string());
  try {
    return read_corpus(in, options);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_dialogue(std::ostream& out, const Dialogue& d) {
  json rec;
  rec["id"] = d.id;
  rec["edus"] = json::array();
  for (const auto& e : d.edus) {
    rec["edus"].push_back({{"speaker", e.speaker}, {"text", e.text}});
  }
  if (d.gold) {
    rec["gold"] = json::array();
    for (const auto& a : *d.gold) rec["gold"].push_back({a.head, a.dep});
  }
  out << rec.dump() << '\n';
}

void write_corpus(std::ostream& out, const std::vector<Dialogue>& corpus) {
  for (const auto& d : corpus) write_dialogue(out, d);
}

void save_corpus(const std::filesystem::path& path,
                 const std::vector<Dialogue>& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file " + path.string());
  write_corpus(out, corpus);
  if (!out) throw DataError("write failed: " + path.string());
}

Dialogue anonymize_speakers(Dialogue d) {
  std::unordered_map<std::string, std::string> mapping;
  for (auto& e : d.edus) {
    auto [it, inserted] = mapping.try_emplace(e.speaker);
    if (inserted) it->second = "spk" + std::to_string(mapping.size());
    e.speaker = it->second;
  }
  return d;
}

bool arcs_cross(const Arc& x, const Arc& y) {
  const int a = std::min(x.head, x.dep), b = std::max(x.head, x.dep);
  const int c = std::min(y.head, y.dep), d = std::max(y.head, y.dep);
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

StructureClass classify_structure(const Dialogue& d) {
  const auto& arcs = d.gold_arcs();
  const int n = d.size();
  if (n == 0) return StructureClass::kNonTree;
  if (static_cast<int>(arcs.size()) != n - 1) return StructureClass::kNonTree;

  std::vector<int> head(n, -1);
  for (const auto& a : arcs) {
    if (head[a.dep] != -1) return StructureClass::kNonTree;
    head[a.dep] = a.head;
  }
  // n-1 arcs with distinct dependents leave exactly one unheaded node; the
  // structure is a tree iff every node reaches it without revisiting.
  for (int start = 0; start < n; ++start) {
    int steps = 0;
    for (int v = start; head[v] != -1; v = head[v]) {
      if (++steps > n) return StructureClass::kNonTree;
    }
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      if (arcs_cross(arcs[i], arcs[j])) return StructureClass::kTree;
    }
  }
  return StructureClass::kProjectiveTree;
}

bool passes(SubsetFilter filter, const Dialogue& d) {
  switch (filter) {
    case SubsetFilter::kAll: return true;
    case SubsetFilter::kTree:
      return classify_structure(d) != StructureClass::kNonTree;
    case SubsetFilter::kProjectiveTree:
      return classify_structure(d) == StructureClass::kProjectiveTree;
  }
  return false;
}

std::vector<Dialogue> filter_corpus(const std::vector<Dialogue>& corpus,
                                    SubsetFilter filter) {
  std::vector<Dialogue> out;
  for (const auto& d : corpus) {
    if (passes(filter, d)) out.push_back(d);
  }
  return out;
}

StructureCounts& StructureCounts::operator+=(const StructureCounts& other) {
  dialogues += other.dialogues;
  single_in += other.single_in;
  multi_in += other.multi_in;
  projective_arcs += other.projective_arcs;
  non_projective_arcs += other.non_projective_arcs;
  return *this;
}

StructureCounts count_structure(const Dialogue& d) {
  const auto& arcs = d.gold_arcs();
  StructureCounts c;
  c.dialogues = 1;
  std::vector<int> indegree(d.size(), 0);
  for (const auto& a : arcs) ++indegree[a.dep];
  for (int k : indegree) {
    if (k == 1) ++c.single_in;
    if (k > 1) ++c.multi_in;
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    bool crossed = false;
    for (std::size_t j = 0; j < arcs.size() && !crossed; ++j) {
      crossed = i != j && arcs_cross(arcs[i], arcs[j]);
    }
    ++(crossed ? c.non_projective_arcs : c.projective_arcs);
  }
  return c;
}

}  // namespace discdep
