#pragma once
#include <string>
#include <vector>

#include "sticky/samplers.hpp"

namespace sticky {

// Sample autocorrelation rho(k) = sum_t (x_t - xbar)(x_{t+k} - xbar) / sum_t (x_t - xbar)^2
// (biased normalization).  Throws DegenerateTrace on zero variance and
// requires the trace to be longer than the largest lag.
std::vector<double> acf(const std::vector<double>& x, const std::vector<int>& lags);

// MSE_t = (1/R) sum_r (running_mean_{t,r} - mu)^2, one value per iteration.
std::vector<double> mse_trace(const std::vector<std::vector<double>>& runs, double true_mean);

// Cumulative acceptance fraction per iteration.
std::vector<double> acc_cum(const std::vector<unsigned char>& accepted);

// Standard sample estimators over one trace.  Kurtosis is the plain (not
// excess) ratio m4/m2^2; on a constant trace skewness/kurtosis are undefined
// and flagged.  The 95% quantile is the nearest-rank order statistic.
struct RunMoments {
  double mean = 0, sd = 0, skew = 0, kurt = 0, q95 = 0;
  bool kurt_defined = true;
};
RunMoments run_moments(const std::vector<double>& x);

// One table line aggregating R replications of one sampler configuration.
struct SummaryRow {
  std::string label;         // kernel ("asm", "asmtm:10", "arms", "imh")
  std::string construction;  // "c1".."c4"
  double mse_T = 0;          // mean squared error of the run means (needs true_mean)
  double acf1 = 0, acf10 = 0, acf50 = 0;  // averaged across runs
  double m_T = 0;            // mean final support-set size
  double nsp_T = 0;          // mean final construction point count (breakpoints included)
  double acc_T = 0;          // mean cumulative acceptance at the last iteration
  double elapsed_sec = 0;
  double ei = 0;             // mean candidates drawn per run
  double mean = 0;           // mean of per-run means
  double sd_of_mean = 0;     // spread of the run means (0 for a single run)
  double skew = 0, kurt = 0;
  double q95 = 0;
  double c_min = 0, c_max = 0;  // extremes of the final normalizing constant
  bool kurt_defined = true;
  long runs = 0, failed = 0;
};

SummaryRow summarize(const std::string& label, const std::string& construction,
                     const std::vector<Trace>& traces, double true_mean, double elapsed_sec,
                     long failed = 0);

}  // namespace sticky
