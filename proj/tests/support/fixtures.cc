#include "fixtures.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace discdep::testing {

namespace fs = std::filesystem;

EduMatrix random_constrained_matrix(int n, Rng& rng) {
  EduMatrix m(n, kImpossible);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.uniform01();
  }
  return m;
}

std::vector<int> random_projective_tree(int n, Rng& rng) {
  std::vector<int> heads(n, -1);
  std::vector<int> spine{0};
  for (int j = 1; j < n; ++j) {
    const std::size_t pick = rng.uniform(spine.size());
    heads[j] = spine[pick];
    spine.resize(pick + 1);
    spine.push_back(j);
  }
  return heads;
}

std::vector<Arc> arcs_of(const std::vector<int>& heads) {
  std::vector<Arc> arcs;
  for (int j = 1; j < static_cast<int>(heads.size()); ++j) {
    arcs.push_back({heads[j], j});
  }
  std::sort(arcs.begin(), arcs.end());
  return arcs;
}

Dialogue make_dialogue(const std::string& id,
                       const std::vector<std::string>& speakers,
                       std::optional<std::vector<Arc>> gold) {
  Dialogue d;
  d.id = id;
  for (std::size_t i = 0; i < speakers.size(); ++i) {
    d.edus.push_back({static_cast<int>(i), speakers[i],
                      "utterance " + std::to_string(i + 1)});
  }
  if (gold) std::sort(gold->begin(), gold->end());
  d.gold = std::move(gold);
  return d;
}

PlantedCorpus make_planted_corpus(const PlantedSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  PlantedCorpus out;
  for (int g = 0; g < spec.dialogues; ++g) {
    const int n = spec.min_edus +
                  static_cast<int>(rng.uniform(spec.max_edus - spec.min_edus + 1));
    // Token 0 is a special token outside every span.
    std::vector<TokenSpan> spans;
    int next = 1;
    for (int e = 0; e < n; ++e) {
      const int len = 1 + static_cast<int>(rng.uniform(spec.max_tokens_per_edu));
      spans.push_back({next, next + len});
      next += len;
    }
    const int k = next;
    std::vector<int> tree = random_projective_tree(n, rng);
    const bool planted = rng.uniform01() < spec.plant_probability;

    std::vector<float> values(static_cast<std::size_t>(spec.n_layers) *
                              spec.n_heads * k * k);
    for (float& v : values) v = static_cast<float>(rng.uniform(0.0, spec.noise));
    const auto paint = [&](const HeadId& h, int head_edu, int dep_edu) {
      const std::size_t base =
          (static_cast<std::size_t>(h.layer) * spec.n_heads + h.head) * k * k;
      for (int q = spans[head_edu].start; q < spans[head_edu].end; ++q) {
        for (int t = spans[dep_edu].start; t < spans[dep_edu].end; ++t) {
          values[base + static_cast<std::size_t>(q) * k + t] =
              static_cast<float>(spec.arc_weight);
        }
      }
    };
    for (int j = 1; j < n; ++j) {
      if (planted) paint(spec.planted, tree[j], j);
      if (spec.chain_head) paint(*spec.chain_head, j - 1, j);
    }

    std::vector<std::string> speakers;
    for (int e = 0; e < n; ++e) speakers.push_back(e % 3 == 0 ? "A" : "B");
    Dialogue d = make_dialogue("d" + std::to_string(g), speakers, arcs_of(tree));
    AttentionRecord rec(d.id, spec.n_layers, spec.n_heads, k, std::move(values),
                        std::move(spans));
    out.instances.push_back({std::move(d), std::move(rec)});
    out.trees.push_back(std::move(tree));
  }
  return out;
}

std::vector<Dialogue> dialogues_of(const std::vector<Instance>& instances) {
  std::vector<Dialogue> out;
  for (const auto& i : instances) out.push_back(i.dialogue);
  return out;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("discdep-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace discdep::testing
