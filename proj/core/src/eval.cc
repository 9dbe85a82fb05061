#include "discdep/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>

#include "discdep/error.h"
#include "json.hpp"

namespace discdep {

namespace {

struct Aligned {
  const Structure* pred;
  const Dialogue* gold;
};

std::vector<Aligned> align(std::span<const Structure> pred,
                           std::span<const Dialogue> gold) {
  std::unordered_map<std::string, const Structure*> by_id;
  for (const auto& p : pred) {
    if (!by_id.emplace(p.id, &p).second) {
      throw InvalidArgument("duplicate prediction for dialogue '" + p.id + "'");
    }
  }
  if (pred.size() != gold.size()) {
    throw InvalidArgument("prediction/gold mismatch: " +
                          std::to_string(pred.size()) + " predictions for " +
                          std::to_string(gold.size()) + " dialogues");
  }
  std::vector<Aligned> out;
  out.reserve(gold.size());
  for (const auto& d : gold) {
    const auto it = by_id.find(d.id);
    if (it == by_id.end()) {
      throw InvalidArgument("no prediction for dialogue '" + d.id + "'");
    }
    if (!d.has_gold()) {
      throw InvalidArgument("dialogue '" + d.id + "' has no gold arcs");
    }
    if (it->second->n != d.size()) {
      throw InvalidArgument("dialogue '" + d.id + "': prediction has n = " +
                            std::to_string(it->second->n) + ", gold has " +
                            std::to_string(d.size()));
    }
    out.push_back({it->second, &d});
  }
  return out;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void finish(PrecisionRecall& pr) {
  pr.precision = ratio(pr.true_positives, pr.predicted);
  pr.recall = ratio(pr.true_positives, pr.gold);
  pr.f1 = pr.precision + pr.recall > 0.0
              ? 2.0 * pr.precision * pr.recall / (pr.precision + pr.recall)
              : 0.0;
}

bool is_direct(const Arc& a) { return a.distance() == 1; }

// Correct / total non-root EDUs for one dialogue.
std::pair<std::size_t, std::size_t> head_matches(const Structure& pred,
                                                 const Dialogue& gold) {
  const int n = gold.size();
  std::set<Arc> gold_arcs(gold.gold_arcs().begin(), gold.gold_arcs().end());
  std::vector<bool> correct(n, false);
  for (const auto& a : pred.arcs) {
    if (a.dep > 0 && a.dep < n && gold_arcs.count(a)) correct[a.dep] = true;
  }
  const auto hits = static_cast<std::size_t>(
      std::count(correct.begin() + std::min(n, 1), correct.end(), true));
  return {hits, static_cast<std::size_t>(std::max(n - 1, 0))};
}

// Heads vector of a single-rooted tree, root marked -1.
std::vector<int> tree_heads(const Structure& s) {
  if (s.n < 2) {
    throw InvalidArgument("tree statistics: '" + s.id + "' has fewer than 2 EDUs");
  }
  if (static_cast<int>(s.arcs.size()) != s.n - 1) {
    throw InvalidArgument("tree statistics: '" + s.id + "' is not a tree");
  }
  std::vector<int> heads(s.n, -1);
  for (const auto& a : s.arcs) {
    if (a.dep < 0 || a.dep >= s.n || a.head < 0 || a.head >= s.n ||
        heads[a.dep] != -1) {
      throw InvalidArgument("tree statistics: '" + s.id + "' is not a tree");
    }
    heads[a.dep] = a.head;
  }
  for (int v = 0; v < s.n; ++v) {
    int steps = 0;
    for (int u = v; heads[u] != -1; u = heads[u]) {
      if (++steps > s.n) {
        throw InvalidArgument("tree statistics: '" + s.id + "' has a cycle");
      }
    }
  }
  return heads;
}

}  // namespace

PrecisionRecall pooled(std::size_t true_positives, std::size_t predicted,
                       std::size_t gold) {
  PrecisionRecall pr;
  pr.true_positives = true_positives;
  pr.predicted = predicted;
  pr.gold = gold;
  finish(pr);
  return pr;
}

Structure to_structure(std::string id, const DependencyTree& tree) {
  return Structure{std::move(id), tree.size(), tree.arcs()};
}

Structure gold_structure(const Dialogue& d) {
  return Structure{d.id, d.size(), d.gold_arcs()};
}

PrecisionRecall micro_f1(std::span<const Structure> pred,
                         std::span<const Dialogue> gold) {
  PrecisionRecall pr;
  for (const auto& [p, g] : align(pred, gold)) {
    const auto& gold_arcs = g->gold_arcs();
    std::set<Arc> predicted(p->arcs.begin(), p->arcs.end());
    pr.predicted += predicted.size();
    pr.gold += gold_arcs.size();
    for (const auto& a : gold_arcs) pr.true_positives += predicted.count(a);
  }
  finish(pr);
  return pr;
}

double uas(std::span<const Structure> pred, std::span<const Dialogue> gold) {
  std::size_t hits = 0, total = 0;
  for (const auto& [p, g] : align(pred, gold)) {
    const auto [h, t] = head_matches(*p, *g);
    hits += h;
    total += t;
  }
  return ratio(hits, total);
}

DirectIndirect direct_indirect_pr(std::span<const Structure> pred,
                                  std::span<const Dialogue> gold) {
  DirectIndirect out;
  for (const auto& [p, g] : align(pred, gold)) {
    std::set<Arc> predicted(p->arcs.begin(), p->arcs.end());
    for (const auto& a : predicted) {
      ++(is_direct(a) ? out.direct : out.indirect).predicted;
    }
    for (const auto& a : g->gold_arcs()) {
      auto& part = is_direct(a) ? out.direct : out.indirect;
      ++part.gold;
      part.true_positives += predicted.count(a);
    }
  }
  finish(out.direct);
  finish(out.indirect);
  return out;
}

std::map<int, DistanceRow> breakdown_by_arc_distance(
    std::span<const Structure> pred, std::span<const Dialogue> gold) {
  std::map<int, DistanceRow> rows;
  for (const auto& [p, g] : align(pred, gold)) {
    std::set<Arc> predicted(p->arcs.begin(), p->arcs.end());
    for (const auto& a : g->gold_arcs()) {
      auto& row = rows[a.distance()];
      ++row.support;
      row.matched += predicted.count(a);
    }
  }
  for (auto& [d, row] : rows) row.recall = ratio(row.matched, row.support);
  return rows;
}

std::vector<LengthBucket> breakdown_by_doc_length(
    std::span<const Structure> pred, std::span<const Dialogue> gold,
    int n_buckets) {
  if (n_buckets < 1) throw InvalidArgument("need at least one bucket");
  const auto aligned = align(pred, gold);
  if (aligned.empty()) throw InvalidArgument("document-length breakdown of an empty corpus");
  int lo = aligned.front().gold->size(), hi = lo;
  for (const auto& a : aligned) {
    lo = std::min(lo, a.gold->size());
    hi = std::max(hi, a.gold->size());
  }
  const double width = static_cast<double>(hi - lo) / n_buckets;
  std::vector<LengthBucket> buckets(n_buckets);
  for (int b = 0; b < n_buckets; ++b) {
    buckets[b].lo = lo + b * width;
    buckets[b].hi = b + 1 == n_buckets ? hi : lo + (b + 1) * width;
    buckets[b].hi_inclusive = b + 1 == n_buckets;
  }
  std::vector<double> uas_sum(n_buckets, 0.0);
  for (const auto& [p, g] : aligned) {
    int b = 0;
    if (width > 0.0) {
      b = static_cast<int>(std::floor((g->size() - lo) / width));
      b = std::clamp(b, 0, n_buckets - 1);
    }
    const auto [hits, total] = head_matches(*p, *g);
    ++buckets[b].count;
    uas_sum[b] += total == 0 ? 1.0 : ratio(hits, total);
  }
  for (int b = 0; b < n_buckets; ++b) {
    if (buckets[b].count > 0) {
      buckets[b].mean_uas = uas_sum[b] / static_cast<double>(buckets[b].count);
    }
  }
  return buckets;
}

TreeStats tree_statistics(std::span<const Structure> trees) {
  if (trees.empty()) throw InvalidArgument("tree statistics of an empty set");
  TreeStats out;
  for (const auto& s : trees) {
    const auto heads = tree_heads(s);
    std::vector<int> children(s.n, 0);
    int root = -1;
    for (int v = 0; v < s.n; ++v) {
      if (heads[v] == -1) {
        root = v;
      } else {
        ++children[heads[v]];
      }
    }
    int parents = 0, child_total = 0, leaves = 0;
    for (int c : children) {
      if (c > 0) {
        ++parents;
        child_total += c;
      } else {
        ++leaves;
      }
    }
    // Height: deepest node's depth below the root, in edges.
    int height = 0;
    for (int v = 0; v < s.n; ++v) {
      int depth = 0;
      for (int u = v; u != root; u = heads[u]) ++depth;
      height = std::max(height, depth);
    }
    double norm = 0.0;
    for (const auto& a : s.arcs) {
      norm += std::abs(a.distance()) / static_cast<double>(s.n - 1);
    }
    out.avg_branching += static_cast<double>(child_total) / parents;
    out.avg_height += height;
    out.pct_leaf += static_cast<double>(leaves) / s.n;
    out.norm_arc += norm / static_cast<double>(s.arcs.size());
  }
  out.trees = trees.size();
  const auto m = static_cast<double>(trees.size());
  out.avg_branching /= m;
  out.avg_height /= m;
  out.pct_leaf /= m;
  out.norm_arc /= m;
  return out;
}

std::size_t vacuous_count(std::span<const Structure> trees) {
  std::size_t count = 0;
  for (const auto& s : trees) {
    const bool vacuous = std::all_of(s.arcs.begin(), s.arcs.end(),
                                     [](const Arc& a) { return a.head <= 1; });
    if (vacuous) ++count;
  }
  return count;
}

EvalReport evaluate(std::span<const Structure> pred,
                    std::span<const Dialogue> gold) {
  EvalReport r;
  r.dialogues = gold.size();
  r.micro = micro_f1(pred, gold);
  r.uas = uas(pred, gold);
  r.direct_indirect = direct_indirect_pr(pred, gold);
  r.by_arc_distance = breakdown_by_arc_distance(pred, gold);
  r.by_doc_length = breakdown_by_doc_length(pred, gold);
  try {
    r.tree_stats = tree_statistics(pred);
    r.has_tree_stats = true;
  } catch (const InvalidArgument&) {
    r.has_tree_stats = false;
  }
  r.vacuous = vacuous_count(pred);
  return r;
}

namespace {

nlohmann::json pr_json(const PrecisionRecall& pr) {
  return {{"precision", pr.precision}, {"recall", pr.recall}, {"f1", pr.f1},
          {"true_positives", pr.true_positives}, {"predicted", pr.predicted},
          {"gold", pr.gold}};
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

}  // namespace

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["dialogues"] = r.dialogues;
  j["micro"] = pr_json(r.micro);
  j["uas"] = r.uas;
  j["direct"] = pr_json(r.direct_indirect.direct);
  j["indirect"] = pr_json(r.direct_indirect.indirect);
  j["by_arc_distance"] = nlohmann::json::array();
  for (const auto& [d, row] : r.by_arc_distance) {
    j["by_arc_distance"].push_back({{"distance", d},
                                    {"recall", row.recall},
                                    {"matched", row.matched},
                                    {"support", row.support}});
  }
  j["by_doc_length"] = nlohmann::json::array();
  for (const auto& b : r.by_doc_length) {
    j["by_doc_length"].push_back({{"lo", b.lo},
                                  {"hi", b.hi},
                                  {"hi_inclusive", b.hi_inclusive},
                                  {"count", b.count},
                                  {"mean_uas", b.mean_uas}});
  }
  if (r.has_tree_stats) {
    j["tree_stats"] = {{"trees", r.tree_stats.trees},
                       {"avg_branching", r.tree_stats.avg_branching},
                       {"avg_height", r.tree_stats.avg_height},
                       {"pct_leaf", r.tree_stats.pct_leaf},
                       {"norm_arc", r.tree_stats.norm_arc}};
  } else {
    j["tree_stats"] = nullptr;
  }
  j["vacuous"] = r.vacuous;
  return j.dump(2);
}

std::string report_to_text(const EvalReport& r) {
  std::ostringstream out;
  out << "dialogues            " << r.dialogues << '\n';
  out << "micro P / R / F1     " << fmt("%.1f", 100 * r.micro.precision)
      << " / " << fmt("%.1f", 100 * r.micro.recall) << " / "
      << fmt("%.1f", 100 * r.micro.f1) << '\n';
  out << "UAS                  " << fmt("%.1f", 100 * r.uas) << '\n';
  const auto& di = r.direct_indirect;
  out << "direct   P / R       " << fmt("%.1f", 100 * di.direct.precision)
      << " / " << fmt("%.1f", 100 * di.direct.recall) << '\n';
  out << "indirect P / R       " << fmt("%.1f", 100 * di.indirect.precision)
      << " / " << fmt("%.1f", 100 * di.indirect.recall) << '\n';
  out << "\narc distance  support  recall\n";
  for (const auto& [d, row] : r.by_arc_distance) {
    char line[96];
    std::snprintf(line, sizeof line, "%12d  %7zu  %6.1f\n", d, row.support,
                  100 * row.recall);
    out << line;
  }
  out << "\ndoc length        count  mean UAS\n";
  for (const auto& b : r.by_doc_length) {
    char line[96];
    std::snprintf(line, sizeof line, "[%5.1f, %5.1f%c  %5zu  %8.1f\n", b.lo,
                  b.hi, b.hi_inclusive ? ']' : ')', b.count, 100 * b.mean_uas);
    out << line;
  }
  if (r.has_tree_stats) {
    const auto& t = r.tree_stats;
    out << "\nAvg.branch  Avg.height  %leaf  Norm.arc\n";
    char line[96];
    std::snprintf(line, sizeof line, "%10.2f  %10.2f  %5.2f  %8.2f\n",
                  t.avg_branching, t.avg_height, t.pct_leaf, t.norm_arc);
    out << line;
  }
  out << "vacuous trees        " << r.vacuous << '\n';
  return out.str();
}

}  // namespace discdep
