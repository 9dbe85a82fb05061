#include "discdep/select.h"

#include <cstdio>

#include "discdep/aggregate.h"
#include "discdep/error.h"
#include "discdep/rng.h"
#include "parallel.h"

namespace discdep {

namespace {

// First index of the maximum; earlier candidates win ties.
std::size_t argmax(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

DiagnosticTable make_table(const ScoredCorpus& scored,
                           std::vector<double> values) {
  DiagnosticTable t;
  t.rows = scored.n_layers();
  t.cols = scored.granularity() == Granularity::kHead ? scored.n_heads() : 1;
  t.values = std::move(values);
  return t;
}

SelectionResult single_head_result(const ScoredCorpus& scored, Strategy s,
                                   std::size_t c, std::vector<double> table) {
  SelectionResult r;
  r.strategy = s;
  r.granularity = scored.granularity();
  r.chosen = scored.candidates()[c];
  for (std::size_t d = 0; d < scored.size(); ++d) {
    r.dialogue_ids.push_back(scored.dialogue(d).id);
    r.per_dialogue.push_back(*r.chosen);
    r.trees.push_back(scored.entry(d, c).tree);
  }
  r.table = make_table(scored, std::move(table));
  return r;
}

}  // namespace

Granularity parse_granularity(const std::string& name) {
  if (name == "head") return Granularity::kHead;
  if (name == "layer") return Granularity::kLayer;
  throw InvalidArgument("unknown granularity '" + name + "'");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "global") return Strategy::kGlobal;
  if (name == "local") return Strategy::kLocal;
  if (name == "oracle") return Strategy::kOracle;
  if (name == "semi") return Strategy::kSemi;
  throw InvalidArgument("unknown strategy '" + name + "'");
}

const char* to_string(Granularity g) {
  return g == Granularity::kHead ? "head" : "layer";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kGlobal: return "global";
    case Strategy::kLocal: return "local";
    case Strategy::kOracle: return "oracle";
    case Strategy::kSemi: return "semi";
  }
  return "?";
}

std::vector<HeadId> candidates(int n_layers, int n_heads, Granularity g) {
  std::vector<HeadId> out;
  for (int l = 0; l < n_layers; ++l) {
    if (g == Granularity::kLayer) {
      out.push_back(HeadId::layer_average(l));
    } else {
      for (int h = 0; h < n_heads; ++h) out.push_back({l, h});
    }
  }
  return out;
}

double das(const DependencyTree& tree) {
  if (tree.size() < 2) throw InvalidArgument("das: tree has no arcs");
  return tree.total_score() / static_cast<double>(tree.size() - 1);
}

DependencyTree extract_tree(const AttentionRecord& record,
                            const HeadId& head) {
  return eisner_decode(apply_forward_constraint(aggregate_head(record, head)));
}

std::string DiagnosticTable::to_tsv() const {
  std::string out;
  char buf[32];
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::snprintf(buf, sizeof buf, "%.6f", at(r, c));
      if (c > 0) out += '\t';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

ScoredCorpus::ScoredCorpus(std::span<const Instance> instances, Granularity g,
                           int workers)
    : granularity_(g) {
  if (instances.empty()) throw InvalidArgument("empty corpus");
  for (const auto& inst : instances) add(inst.dialogue, inst.record, workers);
}

ScoredCorpus::ScoredCorpus(std::vector<Dialogue> dialogues,
                           const RecordLoader& load, Granularity g,
                           int workers)
    : granularity_(g) {
  if (dialogues.empty()) throw InvalidArgument("empty corpus");
  for (const auto& d : dialogues) add(d, load(d), workers);
}

void ScoredCorpus::add(const Dialogue& d, const AttentionRecord& rec,
                       int workers) {
  if (dialogues_.empty()) {
    n_layers_ = rec.n_layers();
    n_heads_ = rec.n_heads();
    candidates_ = discdep::candidates(n_layers_, n_heads_, granularity_);
  }
  if (rec.dialogue_id() != d.id) {
    throw DataError("attention record '" + rec.dialogue_id() +
                    "' paired with dialogue '" + d.id + "'");
  }
  if (rec.n_layers() != n_layers_ || rec.n_heads() != n_heads_) {
    throw DataError("dialogue '" + d.id + "': record has " +
                    std::to_string(rec.n_layers()) + "x" +
                    std::to_string(rec.n_heads()) + " heads, corpus has " +
                    std::to_string(n_layers_) + "x" + std::to_string(n_heads_));
  }
  if (rec.n_edus() != d.size()) {
    throw DataError("dialogue '" + d.id + "': " + std::to_string(d.size()) +
                    " EDUs but " + std::to_string(rec.n_edus()) +
                    " token spans");
  }
  if (d.size() < 2) {
    throw DataError("dialogue '" + d.id + "': need at least 2 EDUs");
  }

  const std::size_t n_cand = candidates_.size();
  const std::size_t base = entries_.size();
  entries_.resize(base + n_cand);
  detail::parallel_for(n_cand, workers, [&](std::size_t c) {
    try {
      DependencyTree tree = extract_tree(rec, candidates_[c]);
      const double support = das(tree);
      entries_[base + c] = Entry{std::move(tree), support};
    } catch (const std::exception& e) {
      throw DataError("dialogue '" + d.id + "', head " +
                      to_string(candidates_[c]) + ": " + e.what());
    }
  });
  dialogues_.push_back(d);

  std::optional<GoldCounts> counts;
  if (d.has_gold()) {
    counts.emplace();
    counts->gold = d.gold_arcs().size();
    std::span<const Dialogue> gold_one(&dialogues_.back(), 1);
    for (std::size_t c = 0; c < n_cand; ++c) {
      const Structure pred = to_structure(d.id, entries_[base + c].tree);
      counts->true_positives.push_back(
          micro_f1(std::span<const Structure>(&pred, 1), gold_one)
              .true_positives);
    }
  }
  gold_.push_back(std::move(counts));
}

std::size_t ScoredCorpus::candidate_index(const HeadId& h) const {
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    if (candidates_[c] == h) return c;
  }
  throw InvalidArgument("head " + to_string(h) + " is not a candidate");
}

const ScoredCorpus::GoldCounts& ScoredCorpus::gold_counts(
    std::size_t d) const {
  if (!gold_[d]) {
    throw InvalidArgument("dialogue '" + dialogues_[d].id +
                          "' has no gold arcs");
  }
  return *gold_[d];
}

DiagnosticTable ScoredCorpus::das_table() const {
  std::vector<double> mean(candidates_.size(), 0.0);
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    for (std::size_t d = 0; d < size(); ++d) mean[c] += entry(d, c).das;
    mean[c] /= static_cast<double>(size());
  }
  return make_table(*this, std::move(mean));
}

PrecisionRecall ScoredCorpus::candidate_f1(
    std::size_t c, std::span<const std::size_t> dialogues) const {
  std::size_t tp = 0, predicted = 0, gold = 0;
  for (std::size_t d : dialogues) {
    const auto& counts = gold_counts(d);
    tp += counts.true_positives[c];
    gold += counts.gold;
    predicted += static_cast<std::size_t>(dialogues_[d].size() - 1);
  }
  return pooled(tp, predicted, gold);
}

DiagnosticTable ScoredCorpus::f1_table() const {
  std::vector<std::size_t> all(size());
  for (std::size_t d = 0; d < size(); ++d) all[d] = d;
  std::vector<double> f1(candidates_.size());
  for (std::size_t c = 0; c < candidates_.size(); ++c) {
    f1[c] = candidate_f1(c, all).f1;
  }
  return make_table(*this, std::move(f1));
}

std::vector<DependencyTree> ScoredCorpus::trees_for(const HeadId& h) const {
  const std::size_t c = candidate_index(h);
  std::vector<DependencyTree> out;
  out.reserve(size());
  for (std::size_t d = 0; d < size(); ++d) out.push_back(entry(d, c).tree);
  return out;
}

SelectionResult select_global(const ScoredCorpus& scored) {
  std::vector<double> total(scored.candidates().size(), 0.0);
  for (std::size_t c = 0; c < total.size(); ++c) {
    for (std::size_t d = 0; d < scored.size(); ++d) {
      total[c] += scored.entry(d, c).das;
    }
  }
  return single_head_result(scored, Strategy::kGlobal, argmax(total),
                            scored.das_table().values);
}

SelectionResult select_global(std::span<const Instance> corpus, Granularity g,
                              int workers) {
  return select_global(ScoredCorpus(corpus, g, workers));
}

LocalChoice select_local(const Instance& instance, Granularity g) {
  const auto& rec = instance.record;
  if (rec.n_edus() != instance.dialogue.size()) {
    throw DataError("dialogue '" + instance.dialogue.id +
                    "': EDU count does not match token spans");
  }
  std::optional<LocalChoice> best;
  for (const auto& h : candidates(rec.n_layers(), rec.n_heads(), g)) {
    DependencyTree tree = extract_tree(rec, h);
    const double support = das(tree);
    if (!best || support > best->das) {
      best = LocalChoice{h, std::move(tree), support};
    }
  }
  return *best;
}

SelectionResult select_local(const ScoredCorpus& scored) {
  SelectionResult r;
  r.strategy = Strategy::kLocal;
  r.granularity = scored.granularity();
  const std::size_t n_cand = scored.candidates().size();
  for (std::size_t d = 0; d < scored.size(); ++d) {
    std::vector<double> support(n_cand);
    for (std::size_t c = 0; c < n_cand; ++c) support[c] = scored.entry(d, c).das;
    const std::size_t best = argmax(support);
    r.dialogue_ids.push_back(scored.dialogue(d).id);
    r.per_dialogue.push_back(scored.candidates()[best]);
    r.trees.push_back(scored.entry(d, best).tree);
  }
  r.table = scored.das_table();
  return r;
}

SelectionResult select_oracle(const ScoredCorpus& scored) {
  auto table = scored.f1_table();
  const std::size_t best = argmax(table.values);
  return single_head_result(scored, Strategy::kOracle, best,
                            std::move(table.values));
}

SelectionResult select_oracle(std::span<const Instance> corpus, Granularity g,
                              int workers) {
  for (const auto& inst : corpus) {
    if (!inst.dialogue.has_gold()) {
      throw InvalidArgument("oracle selection: dialogue '" +
                            inst.dialogue.id + "' has no gold arcs");
    }
  }
  return select_oracle(ScoredCorpus(corpus, g, workers));
}

std::vector<SelectionResult> select_semisup(const ScoredCorpus& val,
                                            const SemiSupOptions& options) {
  if (options.k == 0 || options.k > val.size()) {
    throw InvalidArgument("semi-supervised selection: sample size " +
                          std::to_string(options.k) + " not in [1, " +
                          std::to_string(val.size()) + "]");
  }
  if (options.runs < 1) {
    throw InvalidArgument("semi-supervised selection: runs must be positive");
  }
  std::vector<SelectionResult> results;
  for (int run = 0; run < options.runs; ++run) {
    Rng rng(Rng::derive(options.seed, static_cast<std::uint64_t>(run)));
    const auto sample = rng.sample(val.size(), options.k);
    std::vector<double> f1(val.candidates().size());
    for (std::size_t c = 0; c < f1.size(); ++c) {
      f1[c] = val.candidate_f1(c, sample).f1;
    }
    SelectionResult r;
    r.strategy = Strategy::kSemi;
    r.granularity = val.granularity();
    r.chosen = val.candidates()[argmax(f1)];
    r.table = make_table(val, std::move(f1));
    for (std::size_t d : sample) r.sample_ids.push_back(val.dialogue(d).id);
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<SelectionResult> select_semisup(std::span<const Instance> val,
                                            const SemiSupOptions& options,
                                            Granularity g, int workers) {
  if (options.k > val.size()) {
    throw InvalidArgument("semi-supervised selection: sample size " +
                          std::to_string(options.k) + " exceeds " +
                          std::to_string(val.size()) + " validation dialogues");
  }
  return select_semisup(ScoredCorpus(val, g, workers), options);
}

}  // namespace discdep
