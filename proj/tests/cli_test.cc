#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "discdep/error.h"
#include "json.hpp"
#include "support/fixtures.h"

namespace discdep::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::TempDir;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::PlantedSpec spec;
    spec.dialogues = 8;
    spec.n_layers = 3;
    spec.n_heads = 4;
    spec.planted = {1, 2};
    planted_ = testing::make_planted_corpus(spec, 5);
    corpus_ = dir_.path() / "corpus.jsonl";
    attn_ = dir_.path() / "attn";
    fs::create_directories(attn_);
    save_corpus(corpus_, testing::dialogues_of(planted_.instances));
    for (const auto& inst : planted_.instances) write_record(attn_, inst.record);
  }

  ExtractConfig extract(const std::string& strategy, const std::string& out) const {
    ExtractConfig cfg;
    cfg.corpus = corpus_;
    cfg.attention = attn_;
    cfg.strategy = strategy;
    cfg.out = dir_.path() / out;
    return cfg;
  }

  std::vector<json> read_jsonl(const fs::path& path) const {
    std::vector<json> out;
    std::istringstream in(testing::read_file(path));
    std::string line;
    while (std::getline(in, line)) out.push_back(json::parse(line));
    return out;
  }

  TempDir dir_;
  testing::PlantedCorpus planted_;
  fs::path corpus_;
  fs::path attn_;
  std::ostringstream log_;
};

TEST_F(CliTest, ExtractGlobalRecoversPlantedTrees) {
  auto cfg = extract("global", "run");
  cfg.workers = 2;
  cmd_extract(cfg, log_);
  const auto trees = read_jsonl(cfg.out / "trees.jsonl");
  ASSERT_EQ(trees.size(), planted_.trees.size());
  for (std::size_t g = 0; g < trees.size(); ++g) {
    EXPECT_EQ(trees[g]["head"], "1:2");
    std::vector<Arc> arcs;
    for (const auto& a : trees[g]["arcs"]) arcs.push_back({a[0], a[1]});
    std::sort(arcs.begin(), arcs.end());
    EXPECT_EQ(arcs, testing::arcs_of(planted_.trees[g]));
  }
  EXPECT_TRUE(fs::exists(cfg.out / "das_table.tsv"));
  EXPECT_TRUE(fs::exists(cfg.out / "f1_table.tsv"));
  const auto sel = json::parse(testing::read_file(cfg.out / "selection.json"));
  EXPECT_EQ(sel["chosen"], "1:2");
  const auto manifest = json::parse(testing::read_file(cfg.out / "manifest.json"));
  EXPECT_EQ(manifest["command"], "extract");
  EXPECT_EQ(manifest["outputs"]["trees.jsonl"], sha256_file(cfg.out / "trees.jsonl"));
}

TEST_F(CliTest, ExtractIsReproducible) {
  auto a = extract("local", "a");
  auto b = extract("local", "b");
  b.workers = 3;
  cmd_extract(a, log_);
  cmd_extract(b, log_);
  for (const char* f : {"trees.jsonl", "das_table.tsv", "selection.json"}) {
    EXPECT_EQ(sha256_file(a.out / f), sha256_file(b.out / f)) << f;
  }
}

TEST_F(CliTest, OracleWithoutGoldIsUsageError) {
  auto dialogues = testing::dialogues_of(planted_.instances);
  dialogues[3].gold.reset();
  save_corpus(corpus_, dialogues);
  EXPECT_THROW(cmd_extract(extract("oracle", "o"), log_), UsageError);
  EXPECT_FALSE(fs::exists(dir_.path() / "o"));
}

TEST_F(CliTest, SemiFlagsAreValidated) {
  auto cfg = extract("semi", "s");
  EXPECT_THROW(validate(cfg), UsageError);
  auto global = extract("global", "g");
  global.k = 3;
  EXPECT_THROW(validate(global), UsageError);
  EXPECT_THROW(validate(extract("greedy", "x")), UsageError);
}

TEST_F(CliTest, SemiWritesRuns) {
  auto cfg = extract("semi", "semi");
  cfg.k = planted_.instances.size();
  cfg.runs = 3;
  cfg.seed = 7;
  cfg.val_corpus = corpus_;
  cfg.val_attention = attn_;
  cmd_extract(cfg, log_);
  const auto summary = json::parse(testing::read_file(cfg.out / "semi_summary.json"));
  ASSERT_EQ(summary["runs"].size(), 3u);
  for (const auto& r : summary["runs"]) EXPECT_EQ(r["chosen"], "1:2");
  EXPECT_DOUBLE_EQ(summary["test_micro_f1_mean"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(cfg.out / "runs/run_02/trees.jsonl"));
  cfg.k = planted_.instances.size() + 1;
  cfg.out = dir_.path() / "semi2";
  EXPECT_THROW(cmd_extract(cfg, log_), UsageError);
}

TEST_F(CliTest, EvaluateGoldAgainstItself) {
  EvaluateConfig cfg;
  cfg.predictions = corpus_;
  cfg.corpus = corpus_;
  cfg.out = dir_.path() / "eval";
  cmd_evaluate(cfg, log_);
  const auto report = json::parse(testing::read_file(cfg.out / "report.json"));
  EXPECT_EQ(report["micro"]["f1"], 1.0);
  EXPECT_EQ(report["uas"], 1.0);
  EXPECT_TRUE(fs::exists(cfg.out / "report.txt"));
}

TEST_F(CliTest, EvaluateRunDirectory) {
  const auto ex = extract("global", "run");
  cmd_extract(ex, log_);
  EvaluateConfig cfg;
  cfg.predictions = ex.out;
  cfg.corpus = corpus_;
  std::ostringstream text;
  cmd_evaluate(cfg, text);
  EXPECT_NE(text.str().find("100.0"), std::string::npos) << text.str();
}

TEST_F(CliTest, EvaluateErrors) {
  const auto pred = dir_.path() / "partial.jsonl";
  std::ofstream(pred) << R"({"id":"d0","n":1,"arcs":[]})" << '\n';
  EvaluateConfig cfg;
  cfg.predictions = pred;
  cfg.corpus = corpus_;
  EXPECT_THROW(cmd_evaluate(cfg, log_), DataError);

  // Planted dialogues are all projective, so a tree-only filter keeps them;
  // an empty corpus matches nothing.
  const auto empty = dir_.path() / "empty.jsonl";
  std::ofstream(empty).flush();
  cfg.predictions = corpus_;
  cfg.corpus = empty;
  EXPECT_THROW(cmd_evaluate(cfg, log_), DataError);
  cfg.corpus = corpus_;
  cfg.subset = "bogus";
  EXPECT_THROW(cmd_evaluate(cfg, log_), UsageError);
}

TEST_F(CliTest, ShuffleMixedIsDeterministic) {
  ShuffleConfig cfg;
  cfg.corpus = corpus_;
  cfg.seed = 11;
  cfg.out = dir_.path() / "sh1";
  cmd_shuffle(cfg, log_);
  cfg.out = dir_.path() / "sh2";
  cmd_shuffle(cfg, log_);
  const auto a = testing::read_file(dir_.path() / "sh1/pairs.tsv");
  EXPECT_EQ(a, testing::read_file(dir_.path() / "sh2/pairs.tsv"));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 8);
}

TEST_F(CliTest, StatsAndBaseline) {
  StatsConfig stats;
  stats.corpus = corpus_;
  stats.out = dir_.path() / "stats";
  cmd_stats(stats, log_);
  const auto s = json::parse(testing::read_file(stats.out / "stats.json"));
  EXPECT_EQ(s["projective_tree"]["dialogues"], 8);

  BaselineConfig last;
  last.corpus = corpus_;
  last.out = dir_.path() / "last";
  cmd_baseline_last(last, log_);
  const auto trees = read_jsonl(last.out / "trees.jsonl");
  ASSERT_EQ(trees.size(), 8u);
  for (const auto& t : trees) {
    const int n = t["n"];
    ASSERT_EQ(t["arcs"].size(), static_cast<std::size_t>(n - 1));
    for (int j = 1; j < n; ++j) EXPECT_EQ(t["arcs"][j - 1], json::array({j - 1, j}));
  }
}

TEST_F(CliTest, ValidateAttnCountsProblems) {
  ValidateAttnConfig cfg;
  cfg.attention = attn_;
  cfg.corpus = corpus_;
  std::ostringstream out;
  // Planted heads are not row-stochastic.
  EXPECT_GT(cmd_validate_attn(cfg, out), 0u);

  TempDir clean;
  const int k = 3;
  std::vector<float> v(k * k, 0.0f);
  for (int q = 0; q < k; ++q) v[q * k + q] = 1.0f;
  write_record(clean.path(), AttentionRecord("ok", 1, 1, k, v, {{0, 1}, {1, 3}}));
  cfg.attention = clean.path();
  cfg.corpus.clear();
  EXPECT_EQ(cmd_validate_attn(cfg, out), 0u);
}

TEST(Sha256Test, KnownDigest) {
  TempDir dir;
  std::ofstream(dir.path() / "abc") << "abc";
  EXPECT_EQ(sha256_file(dir.path() / "abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

int run_exe(const std::string& args) {
  const int status = std::system((std::string(DISCDEP_EXE) + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

TEST_F(CliTest, ExecutableExitCodes) {
  const auto out = (dir_.path() / "exe").string();
  EXPECT_EQ(run_exe("shuffle --corpus " + corpus_.string() + " --strategy sideways --out " + out),
            kExitUsage);
  EXPECT_EQ(run_exe("frobnicate"), kExitUsage);
  EXPECT_EQ(run_exe("extract --corpus " + corpus_.string() + " --attn " + attn_.string() +
                    " --strategy semi --out " + out),
            kExitUsage);
  EXPECT_EQ(run_exe("evaluate --pred " + (dir_.path() / "nope.jsonl").string() + " --corpus " +
                    corpus_.string()),
            kExitUsage);
  const auto bad = dir_.path() / "bad.jsonl";
  std::ofstream(bad) << "{oops\n";
  EXPECT_EQ(run_exe("stats --corpus " + bad.string()), kExitData);
  EXPECT_EQ(run_exe("shuffle --corpus " + corpus_.string() + " --strategy block --seed 3 --out " + out),
            kExitOk);
  EXPECT_TRUE(fs::exists(fs::path(out) / "pairs.tsv"));
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  const auto ini = dir_.path() / "run.toml";
  std::ofstream(ini) << "[shuffle]\ncorpus = \"" << corpus_.string()
                     << "\"\nstrategy = \"partial\"\nseed = 4\nout = \""
                     << (dir_.path() / "fromcfg").string() << "\"\n";
  EXPECT_EQ(run_exe("--config " + ini.string() + " shuffle"), kExitOk);
  EXPECT_TRUE(fs::exists(dir_.path() / "fromcfg/pairs.tsv"));
}

}  // namespace
}  // namespace discdep::cli
