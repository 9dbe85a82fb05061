#pragma once

#include <functional>
#include <span>
#include <vector>

#include "discdep/aggregate.h"
#include "discdep/corpus.h"

namespace discdep {

// Projective tree over the EDUs of one dialogue, rooted at EDU 0, with every
// arc pointing forward (head < dep).
class DependencyTree {
 public:
  DependencyTree() = default;
  // heads[0] must be -1 and arc_scores[0] is ignored. Throws InvalidArgument
  // when the heads do not form a forward projective tree.
  DependencyTree(std::vector<int> heads, std::vector<double> arc_scores);

  int size() const { return static_cast<int>(heads_.size()); }
  int head_of(int dep) const { return heads_[dep]; }
  double arc_score(int dep) const { return arc_scores_[dep]; }
  const std::vector<int>& heads() const { return heads_; }

  // Arcs ordered by dependent.
  std::vector<Arc> arcs() const;
  // Sum of arc scores, accumulated in dependent order.
  double total_score() const { return total_score_; }

  bool operator==(const DependencyTree&) const = default;

 private:
  std::vector<int> heads_;
  std::vector<double> arc_scores_;
  double total_score_ = 0.0;
};

// Maximum-score projective tree rooted at EDU 0 (first-order Eisner).
// Requires a forward-constrained matrix with n >= 2.
DependencyTree eisner_decode(const EduMatrix& m);

// Exhaustive search over every forward projective tree; test oracle.
// Ties go to the lexicographically smallest sorted arc set. n <= 8.
DependencyTree brute_force_decode(const EduMatrix& m);

inline constexpr int kBruteForceMaxEdus = 8;

// Calls `visit` with the head vector of every forward, 0-rooted, projective
// tree over n nodes. Returns the number of trees visited.
std::size_t for_each_projective_tree(
    int n, const std::function<void(std::span<const int>)>& visit);

// Attach every EDU to its predecessor. Arc scores are 0.
DependencyTree last_baseline(int n);

}  // namespace discdep
