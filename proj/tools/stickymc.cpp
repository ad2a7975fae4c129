// Command-line front end: run one experiment config, run a built-in
// experiment bundle, or list the available targets.
#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include "sticky/bench_config.hpp"
#include "sticky/errors.hpp"
#include "sticky/experiment.hpp"
#include "sticky/targets.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<std::string> out;
  std::optional<int> workers;

  void apply(sticky::ExperimentConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (runs) cfg.runs = *runs;
    if (out) cfg.out = *out;
    if (workers) cfg.workers = *workers;
  }
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--seed", ov.seed, "master seed (per-run streams derive from it)");
  cmd->add_option("--runs", ov.runs, "replication count override");
  cmd->add_option("--out", ov.out, "output directory override");
  cmd->add_option("--workers", ov.workers, "worker thread count (0 = all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sticky-proposal MCMC benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, preset_name;
  Overrides run_ov, bench_ov;

  CLI::App* run = app.add_subcommand("run", "run one experiment config file (flat TOML)");
  run->add_option("config", config_path, "path to the config file")->required();
  add_override_flags(run, run_ov);

  CLI::App* bench = app.add_subcommand("bench", "run a built-in experiment bundle");
  std::string preset_help = "one of:";
  for (const auto& n : sticky::preset_names()) preset_help += " " + n;
  bench->add_option("preset", preset_name, preset_help)->required();
  add_override_flags(bench, bench_ov);

  CLI::App* targets = app.add_subcommand("targets", "list the available targets");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      sticky::ExperimentConfig cfg = sticky::parse_config(config_path);
      run_ov.apply(cfg);
      return sticky::run_bundle({cfg}, cfg.out);
    }
    if (bench->parsed()) {
      auto cfgs = sticky::preset(preset_name);
      std::string out_dir = bench_ov.out.value_or("out/" + preset_name);
      for (auto& cfg : cfgs) {
        bench_ov.apply(cfg);
        cfg.out = out_dir;
      }
      return sticky::run_bundle(cfgs, out_dir);
    }
    if (targets->parsed()) {
      for (const auto& n : sticky::target_names()) std::printf("%s\n", n.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
