#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "discdep/corpus.h"

namespace discdep {

enum class ShuffleStrategy { kPartial, kMinimalPair, kBlock, kSpeakerTurn, kMixed };

ShuffleStrategy parse_shuffle_strategy(const std::string& name);
const char* to_string(ShuffleStrategy s);

// A reordered dialogue for sentence-ordering fine-tuning.
// shuffled[p] is the original utterance at position order[p].
struct ShuffleExample {
  std::string dialogue_id;
  ShuffleStrategy strategy = ShuffleStrategy::kPartial;
  std::vector<std::string> shuffled;
  std::vector<int> order;
  std::uint64_t seed = 0;
};

// "<speaker>: <text>", the utterance string shuffled and emitted.
std::string utterance_text(const Edu& edu);

// Maximal runs of consecutive utterances by one speaker, as [start, end).
std::vector<std::pair<int, int>> speech_turns(const Dialogue& d);

// Number of blocks used by block_shuf for a dialogue of n utterances:
// <12 -> 2, [12,22) -> 3, [22,33) -> 4, >=33 -> 5.
int block_count(int n);

// Sizes of the contiguous blocks block_shuf cuts the dialogue into.
std::vector<int> block_sizes(const Dialogue& d);

// Each throws InvalidArgument naming the failed precondition.
ShuffleExample partial_shuf(const Dialogue& d, std::uint64_t seed);
ShuffleExample minimal_pair_shuf(const Dialogue& d, std::uint64_t seed);
ShuffleExample block_shuf(const Dialogue& d, std::uint64_t seed);
ShuffleExample speaker_turn_shuf(const Dialogue& d, std::uint64_t seed);

bool applicable(ShuffleStrategy s, const Dialogue& d);
ShuffleExample shuffle_dialogue(ShuffleStrategy s, const Dialogue& d,
                                std::uint64_t seed);

struct ShuffleRun {
  std::vector<ShuffleExample> examples;
  // Dialogue ids with no admissible strategy.
  std::vector<std::string> skipped;
};

// Applies one strategy to every dialogue (skipping those it cannot handle),
// or, for kMixed, spreads the four strategies evenly over the corpus with a
// fallback of partial -> block -> speaker-turn. Per-dialogue seeds are
// derived from `seed` and the dialogue's corpus position.
ShuffleRun shuffle_corpus(const std::vector<Dialogue>& corpus,
                          ShuffleStrategy strategy, std::uint64_t seed);

std::vector<ShuffleExample> mixed_shuf(const std::vector<Dialogue>& corpus,
                                       std::uint64_t seed);

// One line per example: "<p1> u <p2> u ...\t<pa> <pb> ...". The source lists
// the shuffled utterances behind position markers; the target lists the
// markers in original order. Tabs and newlines inside utterances become
// spaces.
void emit_training_pairs(std::ostream& out,
                         const std::vector<ShuffleExample>& examples);

struct TrainingPair {
  std::vector<std::string> utterances;
  std::vector<int> order;
};

// Inverse of one emitted line. Throws DataError on malformed input.
TrainingPair parse_training_pair(const std::string& line);

}  // namespace discdep
