#pragma once
#include <string>
#include <vector>

#include "sticky/bench_config.hpp"
#include "sticky/diagnostics.hpp"
#include "sticky/runner.hpp"

namespace sticky {

// Everything one sampler row produces: the summary line, the per-iteration
// figure data (averaged across replications), the first successful trace
// for the trace CSV, and any per-run failures.
struct ExperimentOutput {
  ExperimentConfig cfg;
  SummaryRow row;
  std::vector<SummaryRow> extra_rows;  // lifetime-model functional summaries
  std::vector<RunFailure> failures;
  std::vector<double> mse_t;  // empty when the target mean is unknown
  std::vector<double> acf_k;  // lags 1..50, averaged across runs
  std::vector<double> nsp_t;
  std::vector<double> acc_t;
  Trace first_trace;
  bool has_first = false;
};

ExperimentOutput run_experiment_config(const ExperimentConfig& cfg);

// Run a set of rows into one output directory: summary.csv (one line per
// row), figures/<name>_{mse,acf,nsp,acc}.csv, traces/<name>_run0.csv.
// Rows with a non-empty eps_sweep are expanded into one threshold-rule row
// per value first.  Per-run failures go to stderr with their run index;
// partial results are still written.  Returns 0 when every row kept at
// least one successful run.
int run_bundle(const std::vector<ExperimentConfig>& cfgs, const std::string& out_dir);

std::vector<ExperimentConfig> expand_eps_sweep(const ExperimentConfig& cfg);

// Built-in experiment bundles mirroring the simulation studies.
std::vector<ExperimentConfig> preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace sticky
