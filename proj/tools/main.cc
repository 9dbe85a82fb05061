#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "cli.h"
#include "discdep/error.h"

using namespace discdep::cli;

int main(int argc, char** argv) {
  CLI::App app{"Discourse dependency trees from transformer attention"};
  app.set_config("--config", "", "TOML/INI file with flag defaults; flags override it");
  app.require_subcommand(1);

  const int default_workers =
      std::max(1, static_cast<int>(std::thread::hardware_concurrency()));

  ExtractConfig extract;
  extract.workers = default_workers;
  auto* ex = app.add_subcommand("extract", "Select heads and decode one tree per dialogue");
  ex->add_option("--corpus", extract.corpus, "Corpus file (JSON lines)")->required();
  ex->add_option("--attn", extract.attention, "Attention export directory")->required();
  ex->add_option("--strategy", extract.strategy, "global | local | oracle | semi")
      ->capture_default_str();
  ex->add_option("--granularity", extract.granularity, "head | layer")->capture_default_str();
  ex->add_option("--subset", extract.subset, "all | tree | projective-tree")
      ->capture_default_str();
  ex->add_option("--out", extract.out, "Run directory")->required();
  ex->add_option("--workers", extract.workers, "Decoding threads")->capture_default_str();
  ex->add_option("--k", extract.k, "Semi: validation sample size");
  ex->add_option("--runs", extract.runs, "Semi: number of sampling runs");
  ex->add_option("--seed", extract.seed, "Semi: sampling seed");
  ex->add_option("--val-corpus", extract.val_corpus, "Semi: annotated validation corpus");
  ex->add_option("--val-attn", extract.val_attention, "Semi: validation attention directory");

  EvaluateConfig evaluate;
  auto* ev = app.add_subcommand("evaluate", "Score predicted trees against gold");
  ev->add_option("--pred", evaluate.predictions, "trees.jsonl or a run directory")->required();
  ev->add_option("--corpus", evaluate.corpus, "Gold corpus")->required();
  ev->add_option("--subset", evaluate.subset, "all | tree | projective-tree")
      ->capture_default_str();
  ev->add_option("--out", evaluate.out, "Write report.json / report.txt here");

  ShuffleConfig shuffle;
  auto* sh = app.add_subcommand("shuffle", "Emit sentence-ordering training pairs");
  sh->add_option("--corpus", shuffle.corpus, "Corpus file")->required();
  sh->add_option("--strategy", shuffle.strategy)
      ->check(CLI::IsMember({"partial", "minimal-pair", "block", "speaker-turn", "mixed"}))
      ->capture_default_str();
  sh->add_option("--seed", shuffle.seed)->capture_default_str();
  sh->add_option("--out", shuffle.out, "Run directory")->required();

  StatsConfig stats;
  auto* st = app.add_subcommand("stats", "Gold structure and tree-shape statistics");
  st->add_option("--corpus", stats.corpus, "Gold corpus")->required();
  st->add_option("--pred", stats.predictions, "Optional predicted trees");
  st->add_option("--out", stats.out, "Write stats.json / stats.txt here");

  BaselineConfig baseline;
  auto* bl = app.add_subcommand("baseline-last", "Attach every EDU to its predecessor");
  bl->add_option("--corpus", baseline.corpus, "Corpus file")->required();
  bl->add_option("--subset", baseline.subset, "all | tree | projective-tree")
      ->capture_default_str();
  bl->add_option("--out", baseline.out, "Run directory")->required();

  ValidateAttnConfig check;
  auto* va = app.add_subcommand("validate-attn", "Check attention exports");
  va->add_option("--attn", check.attention, "Attention export directory")->required();
  va->add_option("--corpus", check.corpus, "Restrict to these dialogues and check spans");
  va->add_option("--tol", check.tol, "Row-sum tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ex) cmd_extract(extract, std::cerr);
    if (*ev) cmd_evaluate(evaluate, std::cout);
    if (*sh) cmd_shuffle(shuffle, std::cerr);
    if (*st) cmd_stats(stats, std::cout);
    if (*bl) cmd_baseline_last(baseline, std::cerr);
    if (*va && cmd_validate_attn(check, std::cout) > 0) return kExitData;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
