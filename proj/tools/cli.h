#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace discdep::cli {

// Bad flags or an inconsistent configuration; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

struct ExtractConfig {
  std::filesystem::path corpus;
  std::filesystem::path attention;
  std::string strategy = "global";
  std::string granularity = "head";
  std::string subset = "all";
  std::filesystem::path out;
  int workers = 1;
  // strategy == "semi" only.
  std::optional<std::size_t> k;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::filesystem::path val_corpus;
  std::filesystem::path val_attention;
};

struct EvaluateConfig {
  std::filesystem::path predictions;  // trees.jsonl or a run directory
  std::filesystem::path corpus;
  std::string subset = "all";
  std::filesystem::path out;  // optional
};

struct ShuffleConfig {
  std::filesystem::path corpus;
  std::string strategy = "mixed";
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct StatsConfig {
  std::filesystem::path corpus;
  std::filesystem::path predictions;  // optional
  std::filesystem::path out;          // optional
};

struct BaselineConfig {
  std::filesystem::path corpus;
  std::string subset = "all";
  std::filesystem::path out;
};

struct ValidateAttnConfig {
  std::filesystem::path attention;
  std::filesystem::path corpus;  // optional: restricts ids, checks span counts
  double tol = 1e-3;
};

// Each command writes its outputs (and a manifest.json) under its run
// directory and a short summary to `log`. Commands throw UsageError for
// configuration problems found before any work starts and DataError for
// problems in the inputs.
void validate(const ExtractConfig& cfg);
void cmd_extract(const ExtractConfig& cfg, std::ostream& log);
void cmd_evaluate(const EvaluateConfig& cfg, std::ostream& log);
void cmd_shuffle(const ShuffleConfig& cfg, std::ostream& log);
void cmd_stats(const StatsConfig& cfg, std::ostream& log);
void cmd_baseline_last(const BaselineConfig& cfg, std::ostream& log);
// Returns the number of problems found.
std::size_t cmd_validate_attn(const ValidateAttnConfig& cfg, std::ostream& log);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace discdep::cli
