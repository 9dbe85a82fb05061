#include "discdep/shufflegen.h"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "discdep/error.h"
#include "discdep/rng.h"

namespace discdep {

namespace {

bool is_identity(const std::vector<int>& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != static_cast<int>(i)) return false;
  }
  return true;
}

// Uniform non-identity permutation of m >= 2 items by rejection.
std::vector<int> non_identity_permutation(int m, Rng& rng) {
  std::vector<int> perm(m);
  do {
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
  } while (is_identity(perm));
  return perm;
}

ShuffleExample make_example(const Dialogue& d, ShuffleStrategy s,
                            std::vector<int> order, std::uint64_t seed) {
  ShuffleExample ex;
  ex.dialogue_id = d.id;
  ex.strategy = s;
  ex.seed = seed;
  for (int i : order) ex.shuffled.push_back(utterance_text(d.edus[i]));
  ex.order = std::move(order);
  return ex;
}

// Concatenate the given index groups in `group_order`.
std::vector<int> concat_groups(const std::vector<std::vector<int>>& groups,
                               const std::vector<int>& group_order) {
  std::vector<int> order;
  for (int g : group_order) {
    order.insert(order.end(), groups[g].begin(), groups[g].end());
  }
  return order;
}

int speaker_count(const Dialogue& d) {
  std::set<std::string> speakers;
  for (const auto& e : d.edus) speakers.insert(e.speaker);
  return static_cast<int>(speakers.size());
}

std::string sanitize(const std::string& text) {
  std::string out = text;
  std::replace_if(
      out.begin(), out.end(),
      [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return out;
}

std::string marker(int position) {
  return "<p" + std::to_string(position + 1) + ">";
}

}  // namespace

ShuffleStrategy parse_shuffle_strategy(const std::string& name) {
  if (name == "partial") return ShuffleStrategy::kPartial;
  if (name == "minimal-pair") return ShuffleStrategy::kMinimalPair;
  if (name == "block") return ShuffleStrategy::kBlock;
  if (name == "speaker-turn") return ShuffleStrategy::kSpeakerTurn;
  if (name == "mixed") return ShuffleStrategy::kMixed;
  throw InvalidArgument("unknown shuffle strategy '" + name + "'");
}

const char* to_string(ShuffleStrategy s) {
  switch (s) {
    case ShuffleStrategy::kPartial: return "partial";
    case ShuffleStrategy::kMinimalPair: return "minimal-pair";
    case ShuffleStrategy::kBlock: return "block";
    case ShuffleStrategy::kSpeakerTurn: return "speaker-turn";
    case ShuffleStrategy::kMixed: return "mixed";
  }
  return "?";
}

std::string utterance_text(const Edu& edu) {
  return edu.speaker + ": " + edu.text;
}

std::vector<std::pair<int, int>> speech_turns(const Dialogue& d) {
  std::vector<std::pair<int, int>> turns;
  for (int i = 0; i < d.size(); ++i) {
    if (i == 0 || d.edus[i].speaker != d.edus[i - 1].speaker) {
      turns.push_back({i, i + 1});
    } else {
      turns.back().second = i + 1;
    }
  }
  return turns;
}

int block_count(int n) {
  if (n < 12) return 2;
  if (n < 22) return 3;
  if (n < 33) return 4;
  return 5;
}

std::vector<int> block_sizes(const Dialogue& d) {
  const int n = d.size();
  const int b = block_count(n);
  const int q = n / b, r = n % b;

  std::vector<bool> turn_start(n + 1, false);
  for (const auto& [start, end] : speech_turns(d)) turn_start[start] = true;
  turn_start[n] = true;

  // Candidate layouts: r blocks of q+1 and b-r blocks of q, larger blocks
  // first in lexicographic order. Prefer the first whose cuts all fall on
  // speech-turn boundaries.
  std::vector<int> sizes(b, q);
  for (int i = 0; i < r; ++i) sizes[i] = q + 1;
  const std::vector<int> fallback = sizes;
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  do {
    bool aligned = true;
    int cut = 0;
    for (int s : sizes) {
      cut += s;
      if (!turn_start[cut]) {
        aligned = false;
        break;
      }
    }
    if (aligned) return sizes;
  } while (std::prev_permutation(sizes.begin(), sizes.end()));
  return fallback;
}

ShuffleExample partial_shuf(const Dialogue& d, std::uint64_t seed) {
  const int n = d.size();
  if (n < 2) {
    throw InvalidArgument("partial-shuf: dialogue '" + d.id +
                          "' needs at least 2 utterances");
  }
  Rng rng(seed);
  const int m = n < 4 ? 2 : 3;
  auto picked = rng.sample(static_cast<std::size_t>(n), m);
  std::sort(picked.begin(), picked.end());
  const auto perm = non_identity_permutation(m, rng);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int t = 0; t < m; ++t) {
    order[picked[t]] = static_cast<int>(picked[perm[t]]);
  }
  return make_example(d, ShuffleStrategy::kPartial, std::move(order), seed);
}

ShuffleExample minimal_pair_shuf(const Dialogue& d, std::uint64_t seed) {
  if (d.size() < 2) {
    throw InvalidArgument("minimal-pair-shuf: dialogue '" + d.id +
                          "' needs at least 2 utterances");
  }
  if (speaker_count(d) < 2) {
    throw InvalidArgument("minimal-pair-shuf: dialogue '" + d.id +
                          "' needs at least 2 speakers");
  }
  const auto turns = speech_turns(d);
  // Adjacent turns always belong to different speakers.
  std::vector<std::size_t> pairs;
  for (std::size_t t = 0; t + 1 < turns.size(); ++t) {
    const int utterances = turns[t + 1].second - turns[t].first;
    if (utterances >= 2) pairs.push_back(t);
  }
  if (pairs.empty()) {
    throw InvalidArgument("minimal-pair-shuf: dialogue '" + d.id +
                          "' has no pair of adjacent speech turns");
  }
  Rng rng(seed);
  const std::size_t t = pairs[rng.uniform(pairs.size())];
  std::vector<int> order;
  const auto append = [&](int start, int end) {
    for (int i = start; i < end; ++i) order.push_back(i);
  };
  append(0, turns[t].first);
  append(turns[t + 1].first, turns[t + 1].second);
  append(turns[t].first, turns[t].second);
  append(turns[t + 1].second, d.size());
  return make_example(d, ShuffleStrategy::kMinimalPair, std::move(order),
                      seed);
}

ShuffleExample block_shuf(const Dialogue& d, std::uint64_t seed) {
  if (d.size() < 2) {
    throw InvalidArgument("block-shuf: dialogue '" + d.id +
                          "' needs at least 2 utterances");
  }
  std::vector<std::vector<int>> blocks;
  int next = 0;
  for (int size : block_sizes(d)) {
    std::vector<int> block(size);
    std::iota(block.begin(), block.end(), next);
    next += size;
    blocks.push_back(std::move(block));
  }
  Rng rng(seed);
  const auto perm = non_identity_permutation(static_cast<int>(blocks.size()), rng);
  return make_example(d, ShuffleStrategy::kBlock, concat_groups(blocks, perm),
                      seed);
}

ShuffleExample speaker_turn_shuf(const Dialogue& d, std::uint64_t seed) {
  std::vector<std::string> speakers;
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < d.size(); ++i) {
    const auto it =
        std::find(speakers.begin(), speakers.end(), d.edus[i].speaker);
    if (it == speakers.end()) {
      speakers.push_back(d.edus[i].speaker);
      groups.push_back({i});
    } else {
      groups[it - speakers.begin()].push_back(i);
    }
  }
  if (groups.size() < 2) {
    throw InvalidArgument("speaker-turn-shuf: dialogue '" + d.id +
                          "' needs at least 2 speakers");
  }
  Rng rng(seed);
  const auto perm = non_identity_permutation(static_cast<int>(groups.size()), rng);
  return make_example(d, ShuffleStrategy::kSpeakerTurn,
                      concat_groups(groups, perm), seed);
}

bool applicable(ShuffleStrategy s, const Dialogue& d) {
  switch (s) {
    case ShuffleStrategy::kPartial:
    case ShuffleStrategy::kBlock:
      return d.size() >= 2;
    case ShuffleStrategy::kMinimalPair:
    case ShuffleStrategy::kSpeakerTurn:
      return d.size() >= 2 && speaker_count(d) >= 2;
    case ShuffleStrategy::kMixed:
      return d.size() >= 2;
  }
  return false;
}

ShuffleExample shuffle_dialogue(ShuffleStrategy s, const Dialogue& d,
                                std::uint64_t seed) {
  switch (s) {
    case ShuffleStrategy::kPartial: return partial_shuf(d, seed);
    case ShuffleStrategy::kMinimalPair: return minimal_pair_shuf(d, seed);
    case ShuffleStrategy::kBlock: return block_shuf(d, seed);
    case ShuffleStrategy::kSpeakerTurn: return speaker_turn_shuf(d, seed);
    case ShuffleStrategy::kMixed: break;
  }
  throw InvalidArgument("mixed shuffling applies to a corpus, not a dialogue");
}

ShuffleRun shuffle_corpus(const std::vector<Dialogue>& corpus,
                          ShuffleStrategy strategy, std::uint64_t seed) {
  ShuffleRun run;
  const std::size_t m = corpus.size();
  std::vector<ShuffleStrategy> assigned(m, strategy);
  if (strategy == ShuffleStrategy::kMixed) {
    constexpr ShuffleStrategy kRoundRobin[] = {
        ShuffleStrategy::kPartial, ShuffleStrategy::kMinimalPair,
        ShuffleStrategy::kBlock, ShuffleStrategy::kSpeakerTurn};
    std::vector<std::size_t> visit(m);
    std::iota(visit.begin(), visit.end(), 0);
    Rng rng(seed);
    rng.shuffle(visit);
    for (std::size_t i = 0; i < m; ++i) {
      assigned[visit[i]] = kRoundRobin[i % 4];
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const auto& d = corpus[i];
    ShuffleStrategy s = assigned[i];
    if (strategy == ShuffleStrategy::kMixed && !applicable(s, d)) {
      for (auto fallback : {ShuffleStrategy::kPartial, ShuffleStrategy::kBlock,
                            ShuffleStrategy::kSpeakerTurn}) {
        if (applicable(fallback, d)) {
          s = fallback;
          break;
        }
      }
    }
    if (!applicable(s, d)) {
      run.skipped.push_back(d.id);
      continue;
    }
    run.examples.push_back(shuffle_dialogue(s, d, Rng::derive(seed, i)));
  }
  return run;
}

std::vector<ShuffleExample> mixed_shuf(const std::vector<Dialogue>& corpus,
                                       std::uint64_t seed) {
  return shuffle_corpus(corpus, ShuffleStrategy::kMixed, seed).examples;
}

void emit_training_pairs(std::ostream& out,
                         const std::vector<ShuffleExample>& examples) {
  for (const auto& ex : examples) {
    const int n = static_cast<int>(ex.order.size());
    std::string source;
    for (int p = 0; p < n; ++p) {
      if (p > 0) source += ' ';
      source += marker(p);
      source += ' ';
      source += sanitize(ex.shuffled[p]);
    }
    std::vector<int> position_of(n);
    for (int p = 0; p < n; ++p) position_of[ex.order[p]] = p;
    std::string target;
    for (int i = 0; i < n; ++i) {
      if (i > 0) target += ' ';
      target += marker(position_of[i]);
    }
    out << source << '\t' << target << '\n';
  }
}

TrainingPair parse_training_pair(const std::string& line) {
  const auto tab = line.find('\t');
  if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
    throw DataError("training pair must have exactly one tab");
  }
  const std::string source = line.substr(0, tab);
  std::istringstream target(line.substr(tab + 1));

  std::vector<int> positions;
  std::string token;
  while (target >> token) {
    if (token.size() < 4 || token.rfind("<p", 0) != 0 || token.back() != '>') {
      throw DataError("bad target marker '" + token + "'");
    }
    try {
      positions.push_back(std::stoi(token.substr(2, token.size() - 3)) - 1);
    } catch (const std::exception&) {
      throw DataError("bad target marker '" + token + "'");
    }
  }
  const int n = static_cast<int>(positions.size());
  TrainingPair pair;
  pair.order.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (positions[i] < 0 || positions[i] >= n || pair.order[positions[i]] != -1) {
      throw DataError("target markers are not a permutation");
    }
    pair.order[positions[i]] = i;
  }

  std::size_t cursor = 0;
  for (int p = 0; p < n; ++p) {
    const std::string open = marker(p) + " ";
    if (source.compare(cursor, open.size(), open) != 0) {
      throw DataError("source is missing marker " + marker(p));
    }
    cursor += open.size();
    std::size_t end = source.size();
    if (p + 1 < n) {
      end = source.find(" " + marker(p + 1) + " ", cursor);
      if (end == std::string::npos) {
        throw DataError("source is missing marker " + marker(p + 1));
      }
    }
    pair.utterances.push_back(source.substr(cursor, end - cursor));
    cursor = end + 1;
  }
  if (n == 0 && !source.empty()) throw DataError("source without markers");
  return pair;
}

}  // namespace discdep
