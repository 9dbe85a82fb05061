#include "discdep/decode.h"

#include <algorithm>
#include <limits>

#include "discdep/error.h"

namespace discdep {

namespace {

void check_decodable(const EduMatrix& m, const char* who) {
  if (m.size() < 2) {
    throw InvalidArgument(std::string(who) + ": need at least 2 EDUs, got " +
                          std::to_string(m.size()));
  }
  if (!m.forward_only()) {
    throw InvalidArgument(std::string(who) +
                          ": matrix must be forward-constrained");
  }
}

DependencyTree tree_from_heads(const EduMatrix& m, std::vector<int> heads) {
  std::vector<double> scores(heads.size(), 0.0);
  for (std::size_t j = 1; j < heads.size(); ++j) {
    scores[j] = m.at(heads[j], static_cast<int>(j));
  }
  return DependencyTree(std::move(heads), std::move(scores));
}

// Whether attaching `dep` to `head` crosses any arc already fixed for
// dependents < dep.
bool crosses_any(std::span<const int> heads, int head, int dep) {
  const Arc arc{head, dep};
  for (int j = 1; j < dep; ++j) {
    if (arcs_cross(Arc{heads[j], j}, arc)) return true;
  }
  return false;
}

void enumerate(std::vector<int>& heads, int dep,
               const std::function<void(std::span<const int>)>& visit,
               std::size_t& count) {
  const int n = static_cast<int>(heads.size());
  if (dep == n) {
    ++count;
    visit(heads);
    return;
  }
  for (int h = 0; h < dep; ++h) {
    if (crosses_any(heads, h, dep)) continue;
    heads[dep] = h;
    enumerate(heads, dep + 1, visit, count);
  }
  heads[dep] = -1;
}

}  // namespace

DependencyTree::DependencyTree(std::vector<int> heads,
                               std::vector<double> arc_scores)
    : heads_(std::move(heads)), arc_scores_(std::move(arc_scores)) {
  const int n = size();
  if (n < 1 || heads_[0] != -1) {
    throw InvalidArgument("DependencyTree: EDU 0 must be the unheaded root");
  }
  if (arc_scores_.size() != heads_.size()) {
    throw InvalidArgument("DependencyTree: one score per EDU required");
  }
  for (int j = 1; j < n; ++j) {
    if (heads_[j] < 0 || heads_[j] >= j) {
      throw InvalidArgument("DependencyTree: EDU " + std::to_string(j) +
                            " has no forward head");
    }
    if (crosses_any(heads_, heads_[j], j)) {
      throw InvalidArgument("DependencyTree: arc into EDU " +
                            std::to_string(j) + " is non-projective");
    }
  }
  arc_scores_[0] = 0.0;
  for (int j = 1; j < n; ++j) total_score_ += arc_scores_[j];
}

std::vector<Arc> DependencyTree::arcs() const {
  std::vector<Arc> out;
  out.reserve(heads_.size());
  for (int j = 1; j < size(); ++j) out.push_back({heads_[j], j});
  return out;
}

DependencyTree eisner_decode(const EduMatrix& m) {
  check_decodable(m, "eisner_decode");
  const int n = m.size();
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  // Spans [s, t]. Left items are headed at t, right items at s.
  const auto idx = [n](int s, int t) {
    return static_cast<std::size_t>(s) * n + t;
  };
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  std::vector<double> complete_l(cells, kNegInf), complete_r(cells, kNegInf);
  std::vector<double> incomplete_l(cells, kNegInf),
      incomplete_r(cells, kNegInf);
  std::vector<int> split_cl(cells, -1), split_cr(cells, -1);
  std::vector<int> split_il(cells, -1), split_ir(cells, -1);
  for (int s = 0; s < n; ++s) {
    complete_l[idx(s, s)] = 0.0;
    complete_r[idx(s, s)] = 0.0;
  }

  for (int width = 1; width < n; ++width) {
    for (int s = 0; s + width < n; ++s) {
      const int t = s + width;
      const std::size_t st = idx(s, t);

      double best = kNegInf;
      int best_r = -1;
      for (int r = s; r < t; ++r) {
        const double v = complete_r[idx(s, r)] + complete_l[idx(r + 1, t)];
        if (best_r < 0 || v > best) {
          best = v;
          best_r = r;
        }
      }
      incomplete_l[st] = best + m.at(t, s);
      incomplete_r[st] = best + m.at(s, t);
      split_il[st] = best_r;
      split_ir[st] = best_r;

      best = kNegInf;
      best_r = -1;
      for (int r = s; r < t; ++r) {
        const double v = complete_l[idx(s, r)] + incomplete_l[idx(r, t)];
        if (best_r < 0 || v > best) {
          best = v;
          best_r = r;
        }
      }
      complete_l[st] = best;
      split_cl[st] = best_r;

      best = kNegInf;
      best_r = -1;
      for (int r = s + 1; r <= t; ++r) {
        const double v = incomplete_r[idx(s, r)] + complete_r[idx(r, t)];
        if (best_r < 0 || v > best) {
          best = v;
          best_r = r;
        }
      }
      complete_r[st] = best;
      split_cr[st] = best_r;
    }
  }

  std::vector<int> heads(n, -1);
  struct Item {
    int s, t;
    bool complete, right;
  };
  std::vector<Item> stack{{0, n - 1, true, true}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    if (it.s == it.t) continue;
    const std::size_t st = idx(it.s, it.t);
    if (it.complete) {
      if (it.right) {
        const int r = split_cr[st];
        stack.push_back({it.s, r, false, true});
        stack.push_back({r, it.t, true, true});
      } else {
        const int r = split_cl[st];
        stack.push_back({it.s, r, true, false});
        stack.push_back({r, it.t, false, false});
      }
    } else {
      if (it.right) {
        heads[it.t] = it.s;
      } else {
        heads[it.s] = it.t;
      }
      const int r = it.right ? split_ir[st] : split_il[st];
      stack.push_back({it.s, r, true, true});
      stack.push_back({r + 1, it.t, true, false});
    }
  }
  return tree_from_heads(m, std::move(heads));
}

std::size_t for_each_projective_tree(
    int n, const std::function<void(std::span<const int>)>& visit) {
  if (n < 1) return 0;
  std::vector<int> heads(n, -1);
  std::size_t count = 0;
  enumerate(heads, 1, visit, count);
  return count;
}

DependencyTree brute_force_decode(const EduMatrix& m) {
  check_decodable(m, "brute_force_decode");
  if (m.size() > kBruteForceMaxEdus) {
    throw InvalidArgument("brute_force_decode: n = " +
                          std::to_string(m.size()) + " exceeds the limit of " +
                          std::to_string(kBruteForceMaxEdus));
  }
  std::vector<int> best_heads;
  std::vector<Arc> best_arcs;
  double best_score = 0.0;
  for_each_projective_tree(m.size(), [&](std::span<const int> heads) {
    double score = 0.0;
    std::vector<Arc> arcs;
    for (int j = 1; j < static_cast<int>(heads.size()); ++j) {
      score += m.at(heads[j], j);
      arcs.push_back({heads[j], j});
    }
    std::sort(arcs.begin(), arcs.end());
    if (best_heads.empty() || score > best_score ||
        (score == best_score && arcs < best_arcs)) {
      best_heads.assign(heads.begin(), heads.end());
      best_arcs = std::move(arcs);
      best_score = score;
    }
  });
  return tree_from_heads(m, std::move(best_heads));
}

DependencyTree last_baseline(int n) {
  if (n < 2) {
    throw InvalidArgument("last_baseline: need at least 2 EDUs, got " +
                          std::to_string(n));
  }
  std::vector<int> heads(n);
  for (int j = 0; j < n; ++j) heads[j] = j - 1;
  return DependencyTree(std::move(heads), std::vector<double>(n, 0.0));
}

}  // namespace discdep
