#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "discdep/aggregate.h"
#include "discdep/corpus.h"
#include "discdep/rng.h"
#include "discdep/select.h"

namespace discdep::testing {

// Uniform [0, 1) scores above the diagonal, impossible elsewhere.
EduMatrix random_constrained_matrix(int n, Rng& rng);

// Head vector (heads[0] == -1) of a random forward projective tree: each new
// node attaches to a uniformly chosen node on the current right spine.
std::vector<int> random_projective_tree(int n, Rng& rng);

std::vector<Arc> arcs_of(const std::vector<int>& heads);

Dialogue make_dialogue(const std::string& id,
                       const std::vector<std::string>& speakers,
                       std::optional<std::vector<Arc>> gold = std::nullopt);

struct PlantedSpec {
  int dialogues = 50;
  int min_edus = 5;
  int max_edus = 15;
  int n_layers = 12;
  int n_heads = 16;
  HeadId planted{3, 7};
  double arc_weight = 0.9;
  // Every other entry of every head is uniform in [0, noise).
  double noise = 0.1;
  int max_tokens_per_edu = 2;
  // Chance that a dialogue's planted head actually carries its tree.
  double plant_probability = 1.0;
  // Optional head that always carries the chain 0->1->...->n-1.
  std::optional<HeadId> chain_head;
};

struct PlantedCorpus {
  std::vector<Instance> instances;
  // Planted tree per dialogue; also stored as the dialogue's gold.
  std::vector<std::vector<int>> trees;
};

PlantedCorpus make_planted_corpus(const PlantedSpec& spec, std::uint64_t seed);

std::vector<Dialogue> dialogues_of(const std::vector<Instance>& instances);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);

}  // namespace discdep::testing
