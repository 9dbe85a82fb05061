#include "discdep/aggregate.h"

#include "discdep/error.h"

namespace discdep {

EduMatrix::EduMatrix(int n, std::vector<double> scores)
    : n_(n), scores_(std::move(scores)) {
  if (n < 0 || scores_.size() != static_cast<std::size_t>(n) * n) {
    throw InvalidArgument("EduMatrix: expected " + std::to_string(n) + "x" +
                          std::to_string(n) + " scores");
  }
}

bool EduMatrix::forward_only() const {
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (at(i, j) != kImpossible) return false;
    }
  }
  return true;
}

EduMatrix aggregate_head(const AttentionRecord& record, const HeadId& head) {
  if (!record.valid(head)) {
    throw InvalidArgument("head " + to_string(head) + " outside record '" +
                          record.dialogue_id() + "' (" +
                          std::to_string(record.n_layers()) + " layers x " +
                          std::to_string(record.n_heads()) + " heads)");
  }
  const int k = record.n_tokens();
  const int n = record.n_edus();

  std::vector<int> edu_of(k, -1);
  for (int e = 0; e < n; ++e) {
    for (int t = record.spans()[e].start; t < record.spans()[e].end; ++t) {
      edu_of[t] = e;
    }
  }

  // Token-level matrix for the requested head (or the layer mean).
  std::vector<double> tokens(static_cast<std::size_t>(k) * k, 0.0);
  if (head.is_layer_average()) {
    for (int h = 0; h < record.n_heads(); ++h) {
      const auto m = record.head_matrix(head.layer, h);
      for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i] += m[i];
    }
    for (double& v : tokens) v /= record.n_heads();
  } else {
    const auto m = record.head_matrix(head.layer, head.head);
    for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i] = m[i];
  }

  EduMatrix sums(n, 0.0);
  for (int q = 0; q < k; ++q) {
    const int i = edu_of[q];
    if (i < 0) continue;
    for (int t = 0; t < k; ++t) {
      const int j = edu_of[t];
      if (j < 0) continue;
      sums.at(i, j) += tokens[static_cast<std::size_t>(q) * k + t];
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sums.at(i, j) /= static_cast<double>(record.spans()[i].length()) *
                       record.spans()[j].length();
    }
  }
  return sums;
}

EduMatrix apply_forward_constraint(EduMatrix m) {
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j <= i; ++j) m.at(i, j) = kImpossible;
  }
  return m;
}

}  // namespace discdep
