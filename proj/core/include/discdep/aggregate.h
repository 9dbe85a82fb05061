#pragma once

#include <limits>
#include <vector>

#include "discdep/attnstore.h"

namespace discdep {

// Score assigned to arcs the decoder must never select.
inline constexpr double kImpossible = -std::numeric_limits<double>::infinity();

// n x n EDU-level dependency scores; at(i, j) is the strength of the arc
// head i -> dependent j.
class EduMatrix {
 public:
  EduMatrix() = default;
  explicit EduMatrix(int n, double fill = 0.0)
      : n_(n), scores_(static_cast<std::size_t>(n) * n, fill) {}
  EduMatrix(int n, std::vector<double> scores);

  int size() const { return n_; }
  double& at(int i, int j) { return scores_[index(i, j)]; }
  double at(int i, int j) const { return scores_[index(i, j)]; }
  const std::vector<double>& scores() const { return scores_; }

  bool is_admissible(int i, int j) const { return at(i, j) != kImpossible; }
  // True when every entry with i >= j is kImpossible.
  bool forward_only() const;

  bool operator==(const EduMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }

  int n_ = 0;
  std::vector<double> scores_;
};

// Block means of one head's token matrix over the EDU spans. For a layer
// average, the layer's head matrices are averaged element-wise first.
// Throws InvalidArgument for a head id outside the record.
EduMatrix aggregate_head(const AttentionRecord& record, const HeadId& head);

// Marks self and backward links (i >= j) impossible; admissible entries are
// left untouched.
EduMatrix apply_forward_constraint(EduMatrix m);

}  // namespace discdep
