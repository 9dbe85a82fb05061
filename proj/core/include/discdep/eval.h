#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "discdep/corpus.h"
#include "discdep/decode.h"

namespace discdep {

// Unlabeled arc set for one dialogue: a prediction, or gold projected out of
// a Dialogue. Unlike DependencyTree it may hold backward arcs or several
// heads per EDU.
struct Structure {
  std::string id;
  int n = 0;
  std::vector<Arc> arcs;

  bool operator==(const Structure&) const = default;
};

Structure to_structure(std::string id, const DependencyTree& tree);
Structure gold_structure(const Dialogue& d);

struct PrecisionRecall {
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Fills precision/recall/f1 from raw counts. 0/0 ratios are 0.
PrecisionRecall pooled(std::size_t true_positives, std::size_t predicted,
                       std::size_t gold);

// Pooled arc-level scores.
PrecisionRecall micro_f1(std::span<const Structure> pred,
                         std::span<const Dialogue> gold);

// Pooled share of non-root EDUs (1..n-1) with a predicted head among their
// gold heads.
double uas(std::span<const Structure> pred, std::span<const Dialogue> gold);

struct DirectIndirect {
  PrecisionRecall direct;    // dep - head == 1
  PrecisionRecall indirect;  // everything else
};

DirectIndirect direct_indirect_pr(std::span<const Structure> pred,
                                  std::span<const Dialogue> gold);

struct DistanceRow {
  double recall = 0.0;
  std::size_t matched = 0;
  std::size_t support = 0;
};

// Gold arcs grouped by signed distance dep - head; recall of exact matches.
std::map<int, DistanceRow> breakdown_by_arc_distance(
    std::span<const Structure> pred, std::span<const Dialogue> gold);

struct LengthBucket {
  double lo = 0.0;
  double hi = 0.0;
  bool hi_inclusive = false;
  std::size_t count = 0;
  double mean_uas = 0.0;
};

// Equal-width buckets over [min n, max n]; only the last bucket includes its
// right edge.
std::vector<LengthBucket> breakdown_by_doc_length(
    std::span<const Structure> pred, std::span<const Dialogue> gold,
    int n_buckets = 5);

struct TreeStats {
  std::size_t trees = 0;
  double avg_branching = 0.0;
  double avg_height = 0.0;
  double pct_leaf = 0.0;
  double norm_arc = 0.0;
};

// Per-tree shape statistics averaged over trees. Each structure must be a
// single-rooted tree with n >= 2 (root anywhere, arcs in either direction).
TreeStats tree_statistics(std::span<const Structure> trees);

// Trees in which every non-root node is headed by EDU 0 or EDU 1.
std::size_t vacuous_count(std::span<const Structure> trees);

struct EvalReport {
  std::size_t dialogues = 0;
  PrecisionRecall micro;
  double uas = 0.0;
  DirectIndirect direct_indirect;
  std::map<int, DistanceRow> by_arc_distance;
  std::vector<LengthBucket> by_doc_length;
  // Only filled when every prediction is a tree.
  bool has_tree_stats = false;
  TreeStats tree_stats;
  std::size_t vacuous = 0;
};

EvalReport evaluate(std::span<const Structure> pred,
                    std::span<const Dialogue> gold);

std::string report_to_json(const EvalReport& report);
std::string report_to_text(const EvalReport& report);

}  // namespace discdep
