#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cli.h"
#include "discdep/attnstore.h"
#include "discdep/corpus.h"
#include "discdep/decode.h"
#include "discdep/error.h"
#include "discdep/eval.h"
#include "discdep/select.h"
#include "discdep/shufflegen.h"
#include "json.hpp"

namespace discdep::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kTreesFile = "trees.jsonl";

// Collects the files a command writes so the manifest can hash them.
class RunDirectory {
 public:
  explicit RunDirectory(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
  }

  const fs::path& root() const { return root_; }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = root_ / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw DataError("cannot write " + path.string());
    written_.insert(name);
  }

  void write_manifest(const std::string& command, json config,
                      json inputs) const {
    json manifest;
    manifest["command"] = command;
    manifest["config"] = std::move(config);
    manifest["inputs"] = std::move(inputs);
    manifest["outputs"] = json::object();
    for (const auto& name : written_) {
      manifest["outputs"][name] = sha256_file(root_ / name);
    }
    std::ofstream out(root_ / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw DataError("cannot write manifest in " + root_.string());
  }

 private:
  fs::path root_;
  std::set<std::string> written_;
};

template <class Parse>
auto parse_flag(const std::string& flag, const std::string& value,
                Parse parse) {
  try {
    return parse(value);
  } catch (const InvalidArgument& e) {
    throw UsageError("--" + flag + ": " + e.what());
  }
}

void require_file(const fs::path& path, const std::string& flag) {
  if (path.empty()) throw UsageError("--" + flag + " is required");
  if (!fs::exists(path)) {
    throw UsageError("--" + flag + ": " + path.string() + " does not exist");
  }
}

void require_gold(const std::vector<Dialogue>& corpus, const std::string& why) {
  for (const auto& d : corpus) {
    if (!d.has_gold()) {
      throw UsageError(why + " requires gold arcs, but dialogue '" + d.id +
                       "' has none");
    }
  }
}

std::vector<Dialogue> filtered(const std::vector<Dialogue>& corpus,
                               SubsetFilter filter) {
  if (filter != SubsetFilter::kAll) {
    require_gold(corpus, std::string("subset filter '") + to_string(filter) + "'");
  }
  auto out = filter_corpus(corpus, filter);
  if (out.empty()) {
    throw DataError(std::string("no dialogues matched subset filter '") +
                    to_string(filter) + "'");
  }
  return out;
}

json arcs_json(const std::vector<Arc>& arcs) {
  json out = json::array();
  for (const auto& a : arcs) out.push_back({a.head, a.dep});
  return out;
}

std::string tree_line(const std::string& id, const DependencyTree& tree,
                      const std::optional<HeadId>& head) {
  json rec;
  rec["id"] = id;
  rec["n"] = tree.size();
  rec["arcs"] = arcs_json(tree.arcs());
  if (head) {
    rec["head"] = to_string(*head);
    rec["das"] = das(tree);
  }
  return rec.dump() + '\n';
}

std::string trees_jsonl(const std::vector<std::string>& ids,
                        const std::vector<DependencyTree>& trees,
                        const std::vector<HeadId>& heads) {
  std::string out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out += tree_line(ids[i], trees[i],
                     heads.empty() ? std::nullopt : std::optional(heads[i]));
  }
  return out;
}

// Prediction records: {"id", "n", "arcs"}; corpus records ({"id", "edus",
// "gold"}) are accepted as predictions too.
std::vector<Structure> read_structures(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions " + path.string());
  std::vector<Structure> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json rec = json::parse(line);
      Structure s;
      s.id = rec.at("id").get<std::string>();
      const json* arcs = nullptr;
      if (rec.contains("arcs")) {
        s.n = rec.at("n").get<int>();
        arcs = &rec.at("arcs");
      } else {
        s.n = static_cast<int>(rec.at("edus").size());
        arcs = &rec.at("gold");
      }
      for (const auto& a : *arcs) {
        s.arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
      }
      std::sort(s.arcs.begin(), s.arcs.end());
      out.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw DataError(path.string() + ": line " + std::to_string(line_no) +
                      ": " + e.what());
    }
  }
  return out;
}

json corpus_input(const fs::path& path) {
  return {{"path", path.string()}, {"sha256", sha256_file(path)}};
}

json attention_inputs(const fs::path& dir,
                      const std::vector<Dialogue>& dialogues) {
  json out = json::object();
  out["path"] = dir.string();
  out["records"] = json::object();
  for (const auto& d : dialogues) {
    out["records"][d.id] = {{"meta", sha256_file(meta_path(dir, d.id))},
                            {"tensor", sha256_file(tensor_path(dir, d.id))}};
  }
  return out;
}

std::string selection_json(const SelectionResult& r) {
  json j;
  j["strategy"] = to_string(r.strategy);
  j["granularity"] = to_string(r.granularity);
  j["chosen"] = r.chosen ? json(to_string(*r.chosen)) : json(nullptr);
  j["per_dialogue"] = json::object();
  for (std::size_t i = 0; i < r.dialogue_ids.size(); ++i) {
    j["per_dialogue"][r.dialogue_ids[i]] = to_string(r.per_dialogue[i]);
  }
  return j.dump(2) + '\n';
}

bool all_gold(const std::vector<Dialogue>& corpus) {
  return std::all_of(corpus.begin(), corpus.end(),
                     [](const Dialogue& d) { return d.has_gold(); });
}

std::vector<Structure> as_structures(const std::vector<std::string>& ids,
                                     const std::vector<DependencyTree>& trees) {
  std::vector<Structure> out;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    out.push_back(to_structure(ids[i], trees[i]));
  }
  return out;
}

ScoredCorpus score(const std::vector<Dialogue>& dialogues,
                   const fs::path& attention, Granularity g, int workers) {
  return ScoredCorpus(
      dialogues,
      [&](const Dialogue& d) { return read_record(attention, d.id); }, g,
      workers);
}

json extract_config_json(const ExtractConfig& cfg) {
  json j;
  j["corpus"] = cfg.corpus.string();
  j["attention"] = cfg.attention.string();
  j["strategy"] = cfg.strategy;
  j["granularity"] = cfg.granularity;
  j["subset"] = cfg.subset;
  if (cfg.strategy == "semi") {
    j["k"] = *cfg.k;
    j["runs"] = *cfg.runs;
    j["seed"] = *cfg.seed;
    j["val_corpus"] = cfg.val_corpus.string();
    j["val_attention"] = cfg.val_attention.string();
  }
  return j;
}

std::string stats_row(const std::string& label, const StructureCounts& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-16s %5zu %10zu %9zu %6zu %8zu\n",
                label.c_str(), c.dialogues, c.single_in, c.multi_in,
                c.projective_arcs, c.non_projective_arcs);
  return buf;
}

json counts_json(const StructureCounts& c) {
  return {{"dialogues", c.dialogues},
          {"single_in", c.single_in},
          {"multi_in", c.multi_in},
          {"projective_arcs", c.projective_arcs},
          {"non_projective_arcs", c.non_projective_arcs}};
}

json tree_stats_json(const TreeStats& t, std::size_t vacuous) {
  return {{"trees", t.trees},
          {"avg_branching", t.avg_branching},
          {"avg_height", t.avg_height},
          {"pct_leaf", t.pct_leaf},
          {"norm_arc", t.norm_arc},
          {"vacuous", vacuous}};
}

std::string tree_stats_row(const std::string& label, const TreeStats& t,
                           std::size_t vacuous) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %10.2f %10.2f %6.2f %8.2f %8zu\n",
                label.c_str(), t.avg_branching, t.avg_height, t.pct_leaf,
                t.norm_arc, vacuous);
  return buf;
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                             EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialisation failed");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(digest[i]);
  }
  return hex.str();
}

void validate(const ExtractConfig& cfg) {
  const Strategy strategy = parse_flag("strategy", cfg.strategy, parse_strategy);
  parse_flag("granularity", cfg.granularity, parse_granularity);
  parse_flag("subset", cfg.subset, parse_subset_filter);
  require_file(cfg.corpus, "corpus");
  require_file(cfg.attention, "attn");
  if (cfg.out.empty()) throw UsageError("--out is required");
  if (cfg.workers < 1) throw UsageError("--workers must be at least 1");
  const bool semi = strategy == Strategy::kSemi;
  const bool any_semi = cfg.k || cfg.runs || cfg.seed ||
                        !cfg.val_corpus.empty() || !cfg.val_attention.empty();
  if (semi) {
    if (!cfg.k || !cfg.runs || !cfg.seed) {
      throw UsageError("strategy 'semi' requires --k, --runs and --seed");
    }
    if (*cfg.k == 0) throw UsageError("--k must be positive");
    if (*cfg.runs < 1) throw UsageError("--runs must be positive");
    require_file(cfg.val_corpus, "val-corpus");
    require_file(cfg.val_attention, "val-attn");
  } else if (any_semi) {
    throw UsageError("--k, --runs, --seed, --val-corpus and --val-attn only "
                     "apply to strategy 'semi'");
  }
}

void cmd_extract(const ExtractConfig& cfg, std::ostream& log) {
  validate(cfg);
  const Strategy strategy = parse_strategy(cfg.strategy);
  const Granularity granularity = parse_granularity(cfg.granularity);
  const SubsetFilter filter = parse_subset_filter(cfg.subset);

  const auto corpus = load_corpus(cfg.corpus);
  if (strategy == Strategy::kOracle) require_gold(corpus, "strategy 'oracle'");
  std::vector<Dialogue> val_corpus;
  if (strategy == Strategy::kSemi) {
    val_corpus = load_corpus(cfg.val_corpus);
    require_gold(val_corpus, "semi-supervised selection");
    if (*cfg.k > val_corpus.size()) {
      throw UsageError("--k " + std::to_string(*cfg.k) + " exceeds the " +
                       std::to_string(val_corpus.size()) +
                       " validation dialogues");
    }
  }
  const auto dialogues = filtered(corpus, filter);

  RunDirectory run(cfg.out);
  const ScoredCorpus scored =
      score(dialogues, cfg.attention, granularity, cfg.workers);
  run.write("das_table.tsv", scored.das_table().to_tsv());
  const bool gold = all_gold(dialogues);
  if (gold) run.write("f1_table.tsv", scored.f1_table().to_tsv());

  json inputs;
  inputs["corpus"] = corpus_input(cfg.corpus);
  inputs["attention"] = attention_inputs(cfg.attention, dialogues);

  if (strategy == Strategy::kSemi) {
    const ScoredCorpus val =
        score(val_corpus, cfg.val_attention, granularity, cfg.workers);
    inputs["val_corpus"] = corpus_input(cfg.val_corpus);
    inputs["val_attention"] = attention_inputs(cfg.val_attention, val_corpus);
    const auto results =
        select_semisup(val, SemiSupOptions{*cfg.k, *cfg.runs, *cfg.seed});

    std::vector<std::string> ids;
    for (const auto& d : dialogues) ids.push_back(d.id);
    json summary;
    summary["runs"] = json::array();
    std::vector<double> f1s;
    for (std::size_t r = 0; r < results.size(); ++r) {
      const HeadId chosen = *results[r].chosen;
      const auto trees = scored.trees_for(chosen);
      char dir[32];
      std::snprintf(dir, sizeof dir, "runs/run_%02zu/", r);
      run.write(std::string(dir) + kTreesFile,
                trees_jsonl(ids, trees,
                            std::vector<HeadId>(trees.size(), chosen)));
      run.write(std::string(dir) + "sample_f1_table.tsv",
                results[r].table.to_tsv());
      json entry = {{"run", r},
                    {"chosen", to_string(chosen)},
                    {"sample", results[r].sample_ids}};
      if (gold) {
        const auto pred = as_structures(ids, trees);
        const double f1 = micro_f1(pred, dialogues).f1;
        entry["test_micro_f1"] = f1;
        f1s.push_back(f1);
      }
      summary["runs"].push_back(entry);
    }
    if (!f1s.empty()) {
      double mean = 0.0, var = 0.0;
      for (double f : f1s) mean += f;
      mean /= static_cast<double>(f1s.size());
      for (double f : f1s) var += (f - mean) * (f - mean);
      var /= static_cast<double>(f1s.size());
      summary["test_micro_f1_mean"] = mean;
      summary["test_micro_f1_std"] = std::sqrt(var);
      log << "semi-supervised test micro-F1: " << std::fixed
          << std::setprecision(1) << 100 * mean << " (std "
          << std::setprecision(3) << std::sqrt(var) << ") over "
          << f1s.size() << " runs\n";
    }
    run.write("semi_summary.json", summary.dump(2) + '\n');
  } else {
    SelectionResult result;
    switch (strategy) {
      case Strategy::kGlobal: result = select_global(scored); break;
      case Strategy::kLocal: result = select_local(scored); break;
      case Strategy::kOracle: result = select_oracle(scored); break;
      case Strategy::kSemi: break;
    }
    run.write(kTreesFile,
              trees_jsonl(result.dialogue_ids, result.trees,
                          result.per_dialogue));
    run.write("selection.json", selection_json(result));
    if (result.chosen) log << "selected head " << to_string(*result.chosen) << '\n';
    if (gold) {
      const auto pred = as_structures(result.dialogue_ids, result.trees);
      log << "micro-F1 " << std::fixed << std::setprecision(1)
          << 100 * micro_f1(pred, dialogues).f1 << " on " << dialogues.size()
          << " dialogues\n";
    }
  }
  run.write_manifest("extract", extract_config_json(cfg), inputs);
  log << "wrote " << run.root().string() << '\n';
}

void cmd_evaluate(const EvaluateConfig& cfg, std::ostream& log) {
  const SubsetFilter filter = parse_flag("subset", cfg.subset, parse_subset_filter);
  require_file(cfg.predictions, "pred");
  require_file(cfg.corpus, "corpus");
  const fs::path pred_file = fs::is_directory(cfg.predictions)
                                 ? cfg.predictions / kTreesFile
                                 : cfg.predictions;
  const auto corpus = load_corpus(cfg.corpus);
  require_gold(corpus, "evaluation");
  const auto dialogues = filtered(corpus, filter);

  std::unordered_map<std::string, Structure> by_id;
  for (auto& s : read_structures(pred_file)) by_id[s.id] = std::move(s);
  std::vector<Structure> pred;
  std::vector<std::string> missing;
  for (const auto& d : dialogues) {
    const auto it = by_id.find(d.id);
    if (it == by_id.end()) {
      missing.push_back(d.id);
    } else {
      pred.push_back(it->second);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += "\n  " + id;
    throw DataError("missing predictions for " +
                    std::to_string(missing.size()) + " dialogue(s):" + list);
  }

  EvalReport report;
  try {
    report = evaluate(pred, dialogues);
  } catch (const InvalidArgument& e) {
    throw DataError(e.what());
  }
  const std::string text = report_to_text(report);
  log << text;
  if (!cfg.out.empty()) {
    RunDirectory run(cfg.out);
    run.write("report.json", report_to_json(report) + '\n');
    run.write("report.txt", text);
    run.write_manifest("evaluate",
                       {{"predictions", cfg.predictions.string()},
                        {"corpus", cfg.corpus.string()},
                        {"subset", cfg.subset}},
                       {{"corpus", corpus_input(cfg.corpus)},
                        {"predictions", {{"path", pred_file.string()},
                                         {"sha256", sha256_file(pred_file)}}}});
  }
}

void cmd_shuffle(const ShuffleConfig& cfg, std::ostream& log) {
  const ShuffleStrategy strategy =
      parse_flag("strategy", cfg.strategy, parse_shuffle_strategy);
  require_file(cfg.corpus, "corpus");
  if (cfg.out.empty()) throw UsageError("--out is required");
  const auto corpus = load_corpus(cfg.corpus);
  const ShuffleRun result = shuffle_corpus(corpus, strategy, cfg.seed);
  for (const auto& id : result.skipped) {
    log << "warning: dialogue '" << id << "' skipped: no admissible "
        << cfg.strategy << " shuffle\n";
  }
  std::ostringstream pairs;
  emit_training_pairs(pairs, result.examples);
  RunDirectory run(cfg.out);
  run.write("pairs.tsv", pairs.str());
  std::map<std::string, std::size_t> counts;
  for (const auto& ex : result.examples) ++counts[to_string(ex.strategy)];
  run.write_manifest("shuffle",
                     {{"corpus", cfg.corpus.string()},
                      {"strategy", cfg.strategy},
                      {"seed", cfg.seed}},
                     {{"corpus", corpus_input(cfg.corpus)}});
  log << "wrote " << result.examples.size() << " training pairs";
  for (const auto& [name, n] : counts) log << ", " << name << "=" << n;
  log << '\n';
}

void cmd_stats(const StatsConfig& cfg, std::ostream& log) {
  require_file(cfg.corpus, "corpus");
  const auto corpus = load_corpus(cfg.corpus);
  require_gold(corpus, "structure statistics");

  StructureCounts non_tree, tree, projective;
  std::vector<Structure> gold_projective;
  std::set<std::string> projective_ids;
  for (const auto& d : corpus) {
    const auto c = count_structure(d);
    switch (classify_structure(d)) {
      case StructureClass::kNonTree: non_tree += c; break;
      case StructureClass::kProjectiveTree:
        projective += c;
        gold_projective.push_back(gold_structure(d));
        projective_ids.insert(d.id);
        [[fallthrough]];
      case StructureClass::kTree: tree += c; break;
    }
  }
  json out;
  out["non_tree"] = counts_json(non_tree);
  out["tree"] = counts_json(tree);
  out["projective_tree"] = counts_json(projective);

  std::string text =
      "                  #doc  single-in  multi-in  proj.  n-proj.\n";
  text += stats_row("non-tree", non_tree);
  text += stats_row("tree", tree);
  text += stats_row("  proj. tree", projective);
  text += "\n             Avg.branch Avg.height  %leaf Norm.arc  vacuous\n";

  const auto gold_tree_stats = [&](const std::vector<Structure>& s) {
    return s.empty() ? std::optional<TreeStats>() : tree_statistics(s);
  };
  if (auto gt = gold_tree_stats(gold_projective)) {
    const auto vac = vacuous_count(gold_projective);
    out["gold_projective_tree_stats"] = tree_stats_json(*gt, vac);
    text += tree_stats_row("gold", *gt, vac);
  }
  json inputs = {{"corpus", corpus_input(cfg.corpus)}};
  if (!cfg.predictions.empty()) {
    const fs::path pred_file = fs::is_directory(cfg.predictions)
                                   ? cfg.predictions / kTreesFile
                                   : cfg.predictions;
    const auto pred = read_structures(pred_file);
    std::vector<Structure> pred_projective;
    for (const auto& s : pred) {
      if (projective_ids.count(s.id)) pred_projective.push_back(s);
    }
    try {
      if (auto ps = gold_tree_stats(pred_projective)) {
        const auto vac = vacuous_count(pred_projective);
        out["predicted_projective_tree_stats"] = tree_stats_json(*ps, vac);
        text += tree_stats_row("predicted", *ps, vac);
      }
    } catch (const InvalidArgument& e) {
      throw DataError(e.what());
    }
    out["predicted_vacuous"] = vacuous_count(pred);
    text += "vacuous predicted trees (all dialogues): " +
            std::to_string(vacuous_count(pred)) + "\n";
    inputs["predictions"] = {{"path", pred_file.string()},
                             {"sha256", sha256_file(pred_file)}};
  }
  log << text;
  if (!cfg.out.empty()) {
    RunDirectory run(cfg.out);
    run.write("stats.json", out.dump(2) + '\n');
    run.write("stats.txt", text);
    run.write_manifest("stats",
                       {{"corpus", cfg.corpus.string()},
                        {"predictions", cfg.predictions.string()}},
                       inputs);
  }
}

void cmd_baseline_last(const BaselineConfig& cfg, std::ostream& log) {
  const SubsetFilter filter = parse_flag("subset", cfg.subset, parse_subset_filter);
  require_file(cfg.corpus, "corpus");
  if (cfg.out.empty()) throw UsageError("--out is required");
  const auto dialogues = filtered(load_corpus(cfg.corpus), filter);
  std::vector<std::string> ids;
  std::vector<DependencyTree> trees;
  for (const auto& d : dialogues) {
    try {
      trees.push_back(last_baseline(d.size()));
    } catch (const InvalidArgument& e) {
      throw DataError("dialogue '" + d.id + "': " + e.what());
    }
    ids.push_back(d.id);
  }
  RunDirectory run(cfg.out);
  run.write(kTreesFile, trees_jsonl(ids, trees, {}));
  run.write_manifest("baseline-last",
                     {{"corpus", cfg.corpus.string()}, {"subset", cfg.subset}},
                     {{"corpus", corpus_input(cfg.corpus)}});
  if (all_gold(dialogues)) {
    log << "LAST micro-F1 " << std::fixed << std::setprecision(1)
        << 100 * micro_f1(as_structures(ids, trees), dialogues).f1 << " on "
        << dialogues.size() << " dialogues\n";
  }
  log << "wrote " << run.root().string() << '\n';
}

std::size_t cmd_validate_attn(const ValidateAttnConfig& cfg,
                              std::ostream& log) {
  require_file(cfg.attention, "attn");
  if (cfg.tol < 0) throw UsageError("--tol must be non-negative");
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> edus;
  if (!cfg.corpus.empty()) {
    require_file(cfg.corpus, "corpus");
    for (const auto& d : load_corpus(cfg.corpus)) {
      ids.push_back(d.id);
      edus[d.id] = d.size();
    }
  } else {
    ids = list_records(cfg.attention);
  }
  std::size_t problems = 0;
  for (const auto& id : ids) {
    AttentionRecord rec;
    try {
      rec = read_record(cfg.attention, id);
    } catch (const DataError& e) {
      log << id << ": " << e.what() << '\n';
      ++problems;
      continue;
    }
    if (const auto it = edus.find(id);
        it != edus.end() && it->second != rec.n_edus()) {
      log << id << ": " << rec.n_edus() << " token spans for " << it->second
          << " EDUs\n";
      ++problems;
    }
    const auto violations = validate_stochastic(rec, cfg.tol);
    if (!violations.empty()) {
      const auto& v = violations.front();
      log << id << ": " << violations.size()
          << " attention rows off by more than " << cfg.tol << " (first: head "
          << to_string(v.head) << " row " << v.row << " sums to " << v.sum
          << ")\n";
      ++problems;
    }
  }
  log << ids.size() << " record(s) checked, " << problems << " problem(s)\n";
  return problems;
}

}  // namespace discdep::cli
