#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace discdep {

// Elementary discourse unit. `index` is the 0-based position in its dialogue.
struct Edu {
  int index = 0;
  std::string speaker;
  std::string text;

  bool operator==(const Edu&) const = default;
};

// Unlabeled dependency arc between two EDUs of the same dialogue.
struct Arc {
  int head = 0;
  int dep = 0;

  int distance() const { return dep - head; }
  auto operator<=>(const Arc&) const = default;
};

struct Dialogue {
  std::string id;
  std::vector<Edu> edus;
  // Sorted and deduplicated. Absent when the corpus carries no annotation.
  std::optional<std::vector<Arc>> gold;

  int size() const { return static_cast<int>(edus.size()); }
  bool has_gold() const { return gold.has_value(); }
  const std::vector<Arc>& gold_arcs() const;

  bool operator==(const Dialogue&) const = default;
};

enum class StructureClass { kNonTree, kTree, kProjectiveTree };

const char* to_string(StructureClass c);

// Subset filter used by the tools: `kTree` keeps tree and projective-tree
// dialogues, `kProjectiveTree` keeps only the latter.
enum class SubsetFilter { kAll, kTree, kProjectiveTree };

SubsetFilter parse_subset_filter(const std::string& name);
const char* to_string(SubsetFilter f);

struct LoadOptions {
  // Map speakers to spk1, spk2, ... on load.
  bool anonymize = true;
};

// Line-delimited JSON, one dialogue per line:
//   {"id": "...", "edus": [{"speaker": "...", "text": "..."}, ...],
//    "gold": [[head, dep], ...]}
// Blank lines are ignored. Records with a "cdus" field are rejected.
std::vector<Dialogue> read_corpus(std::istream& in,
                                  const LoadOptions& options = {});
std::vector<Dialogue> load_corpus(const std::filesystem::path& path,
                                  const LoadOptions& options = {});

void write_dialogue(std::ostream& out, const Dialogue& d);
void write_corpus(std::ostream& out, const std::vector<Dialogue>& corpus);
void save_corpus(const std::filesystem::path& path,
                 const std::vector<Dialogue>& corpus);

// Speakers are renamed spk1, spk2, ... in order of first appearance.
Dialogue anonymize_speakers(Dialogue d);

// Throws InvalidArgument when the dialogue has no gold annotation.
StructureClass classify_structure(const Dialogue& d);

bool passes(SubsetFilter filter, const Dialogue& d);

std::vector<Dialogue> filter_corpus(const std::vector<Dialogue>& corpus,
                                    SubsetFilter filter);

// Arcs (a,b) and (c,d) cross when their spans interleave strictly.
bool arcs_cross(const Arc& x, const Arc& y);

// Gold structure counts over a set of annotated dialogues: EDUs with exactly
// one / more than one incoming arc, and arcs that cross / do not cross any
// other arc of their dialogue.
struct StructureCounts {
  std::size_t dialogues = 0;
  std::size_t single_in = 0;
  std::size_t multi_in = 0;
  std::size_t projective_arcs = 0;
  std::size_t non_projective_arcs = 0;

  StructureCounts& operator+=(const StructureCounts& other);
};

StructureCounts count_structure(const Dialogue& d);

}  // namespace discdep
