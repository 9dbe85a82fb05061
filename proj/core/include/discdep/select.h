#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "discdep/attnstore.h"
#include "discdep/corpus.h"
#include "discdep/decode.h"
#include "discdep/eval.h"

namespace discdep {

// A dialogue paired with its attention export.
struct Instance {
  Dialogue dialogue;
  AttentionRecord record;
};

enum class Granularity { kHead, kLayer };
enum class Strategy { kGlobal, kLocal, kOracle, kSemi };

Granularity parse_granularity(const std::string& name);
Strategy parse_strategy(const std::string& name);
const char* to_string(Granularity g);
const char* to_string(Strategy s);

// Candidate matrices in tie-break order: ascending layer, then head.
std::vector<HeadId> candidates(int n_layers, int n_heads, Granularity g);

// Dependency attention support: mean score of the tree's n-1 arcs.
double das(const DependencyTree& tree);

// Aggregate, constrain and decode one candidate of one record.
DependencyTree extract_tree(const AttentionRecord& record, const HeadId& head);

// Rows are layers; columns are heads (a single column for layer averages).
struct DiagnosticTable {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  double at(int r, int c) const {
    return values[static_cast<std::size_t>(r) * cols + c];
  }
  // Tab-separated, one line per layer, fixed 6-digit precision.
  std::string to_tsv() const;
};

// Every candidate decoded for every dialogue, computed once and reused by
// all strategies.
class ScoredCorpus {
 public:
  struct Entry {
    DependencyTree tree;
    double das = 0.0;
  };

  // Throws DataError when a record does not line up with its dialogue or the
  // records disagree on layer/head counts. `workers` threads decode
  // (dialogue, candidate) pairs in parallel.
  ScoredCorpus(std::span<const Instance> instances, Granularity g,
               int workers = 1);
  // Streaming form: records are loaded one dialogue at a time and released
  // once that dialogue's candidates are decoded.
  using RecordLoader = std::function<AttentionRecord(const Dialogue&)>;
  ScoredCorpus(std::vector<Dialogue> dialogues, const RecordLoader& load,
               Granularity g, int workers = 1);

  Granularity granularity() const { return granularity_; }
  int n_layers() const { return n_layers_; }
  int n_heads() const { return n_heads_; }
  const std::vector<HeadId>& candidates() const { return candidates_; }
  std::size_t size() const { return dialogues_.size(); }
  const Dialogue& dialogue(std::size_t d) const { return dialogues_[d]; }
  const Entry& entry(std::size_t d, std::size_t c) const {
    return entries_[d * candidates_.size() + c];
  }
  std::size_t candidate_index(const HeadId& h) const;

  // Mean DAS over dialogues, per candidate.
  DiagnosticTable das_table() const;
  // Corpus micro-F1 per candidate against gold (gold required).
  DiagnosticTable f1_table() const;
  // Pooled micro-F1 of one candidate over a subset of dialogues.
  PrecisionRecall candidate_f1(std::size_t c,
                               std::span<const std::size_t> dialogues) const;

  std::vector<DependencyTree> trees_for(const HeadId& h) const;

 private:
  struct GoldCounts {
    std::size_t gold = 0;
    std::vector<std::size_t> true_positives;  // per candidate
  };
  const GoldCounts& gold_counts(std::size_t d) const;
  void add(const Dialogue& d, const AttentionRecord& rec, int workers);

  Granularity granularity_;
  int n_layers_ = 0;
  int n_heads_ = 0;
  std::vector<HeadId> candidates_;
  std::vector<Dialogue> dialogues_;
  std::vector<Entry> entries_;
  std::vector<std::optional<GoldCounts>> gold_;
};

struct SelectionResult {
  Strategy strategy = Strategy::kGlobal;
  Granularity granularity = Granularity::kHead;
  // Single selected candidate (global, oracle, semi).
  std::optional<HeadId> chosen;
  // Candidate used for each dialogue, aligned with dialogue_ids.
  std::vector<std::string> dialogue_ids;
  std::vector<HeadId> per_dialogue;
  std::vector<DependencyTree> trees;
  // Global/local: mean DAS. Oracle: corpus micro-F1. Semi: sample micro-F1.
  DiagnosticTable table;
  // Semi only: dialogue ids of the run's sample, in draw order.
  std::vector<std::string> sample_ids;
};

// argmax_h sum_g DAS(T^g_h); ties go to the lower (layer, head).
SelectionResult select_global(const ScoredCorpus& scored);
SelectionResult select_global(std::span<const Instance> corpus,
                              Granularity g = Granularity::kHead,
                              int workers = 1);

// Per-dialogue argmax of DAS, same tie rule.
struct LocalChoice {
  HeadId head;
  DependencyTree tree;
  double das = 0.0;
};
LocalChoice select_local(const Instance& instance,
                         Granularity g = Granularity::kHead);
SelectionResult select_local(const ScoredCorpus& scored);

// Gold-using upper bound: the candidate with the best corpus micro-F1.
SelectionResult select_oracle(const ScoredCorpus& scored);
SelectionResult select_oracle(std::span<const Instance> corpus,
                              Granularity g = Granularity::kHead,
                              int workers = 1);

struct SemiSupOptions {
  std::size_t k = 50;
  int runs = 10;
  std::uint64_t seed = 0;
};

// One result per run. Run r samples k validation dialogues without
// replacement using a seed derived from (seed, r) and picks the candidate
// with the best micro-F1 on the sample. Trees are not filled; apply the
// chosen candidate to the target corpus with ScoredCorpus::trees_for.
std::vector<SelectionResult> select_semisup(const ScoredCorpus& val,
                                            const SemiSupOptions& options);
std::vector<SelectionResult> select_semisup(std::span<const Instance> val,
                                            const SemiSupOptions& options,
                                            Granularity g = Granularity::kHead,
                                            int workers = 1);

}  // namespace discdep
