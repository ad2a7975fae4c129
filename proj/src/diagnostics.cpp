#include "sticky/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sticky/errors.hpp"

namespace sticky {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}
}  // namespace

std::vector<double> acf(const std::vector<double>& x, const std::vector<int>& lags) {
  const long n = static_cast<long>(x.size());
  int max_lag = 0;
  for (int k : lags) max_lag = std::max(max_lag, k);
  if (n <= max_lag) throw DegenerateTrace("trace shorter than the largest requested lag");
  const double xb = mean_of(x);
  double denom = 0;
  for (double v : x) denom += (v - xb) * (v - xb);
  if (denom == 0) throw DegenerateTrace("constant trace has no autocorrelation");
  std::vector<double> out;
  out.reserve(lags.size());
  for (int k : lags) {
    double num = 0;
    for (long t = 0; t + k < n; ++t) num += (x[t] - xb) * (x[t + k] - xb);
    out.push_back(num / denom);
  }
  return out;
}

std::vector<double> mse_trace(const std::vector<std::vector<double>>& runs, double true_mean) {
  if (runs.empty()) return {};
  std::size_t T = runs[0].size();
  for (const auto& r : runs) T = std::min(T, r.size());
  std::vector<double> mse(T, 0.0);
  for (const auto& r : runs) {
    double s = 0;
    for (std::size_t t = 0; t < T; ++t) {
      s += r[t];
      const double e = s / static_cast<double>(t + 1) - true_mean;
      mse[t] += e * e;
    }
  }
  for (double& v : mse) v /= static_cast<double>(runs.size());
  return mse;
}

std::vector<double> acc_cum(const std::vector<unsigned char>& accepted) {
  std::vector<double> out(accepted.size());
  long acc = 0;
  for (std::size_t t = 0; t < accepted.size(); ++t) {
    acc += accepted[t] ? 1 : 0;
    out[t] = static_cast<double>(acc) / static_cast<double>(t + 1);
  }
  return out;
}

RunMoments run_moments(const std::vector<double>& x) {
  RunMoments m;
  const double n = static_cast<double>(x.size());
  m.mean = mean_of(x);
  double m2 = 0, m3 = 0, m4 = 0;
  for (double v : x) {
    const double d = v - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (m2 == 0) {
    m.sd = 0;
    m.skew = kNaN;
    m.kurt = kNaN;
    m.kurt_defined = false;
  } else {
    m.sd = std::sqrt(m2 * n / std::max(1.0, n - 1));
    m.skew = m3 / std::pow(m2, 1.5);
    m.kurt = m4 / (m2 * m2);
  }
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * n));
  m.q95 = sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
  return m;
}

SummaryRow summarize(const std::string& label, const std::string& construction,
                     const std::vector<Trace>& traces, double true_mean, double elapsed_sec,
                     long failed) {
  SummaryRow row;
  row.label = label;
  row.construction = construction;
  row.elapsed_sec = elapsed_sec;
  row.runs = static_cast<long>(traces.size());
  row.failed = failed;
  if (traces.empty()) {
    row.mse_T = row.acf1 = row.acf10 = row.acf50 = kNaN;
    row.mean = row.sd_of_mean = row.skew = row.kurt = row.q95 = kNaN;
    row.c_min = row.c_max = row.nsp_T = row.acc_T = kNaN;
    row.kurt_defined = false;
    return row;
  }

  std::vector<double> means, skews, kurts, q95s;
  double acf_sum[3] = {0, 0, 0};
  long acf_count = 0;
  double m_T_sum = 0, ei_sum = 0, nsp_sum = 0, acc_sum = 0;
  double c_min = std::numeric_limits<double>::infinity(), c_max = -c_min;
  bool kurt_ok = true;
  for (const Trace& tr : traces) {
    RunMoments m = run_moments(tr.x);
    means.push_back(m.mean);
    if (m.kurt_defined) {
      skews.push_back(m.skew);
      kurts.push_back(m.kurt);
    } else {
      kurt_ok = false;
    }
    q95s.push_back(m.q95);
    try {
      auto a = acf(tr.x, {1, 10, 50});
      acf_sum[0] += a[0];
      acf_sum[1] += a[1];
      acf_sum[2] += a[2];
      ++acf_count;
    } catch (const DegenerateTrace&) {
      kurt_ok = false;
    }
    m_T_sum += tr.m_T;
    ei_sum += static_cast<double>(tr.cands);
    if (!tr.nsp.empty()) nsp_sum += tr.nsp.back();
    if (!tr.accepted.empty()) {
      long acc = 0;
      for (unsigned char a : tr.accepted) acc += a ? 1 : 0;
      acc_sum += static_cast<double>(acc) / static_cast<double>(tr.accepted.size());
    }
    if (!tr.c.empty()) {
      c_min = std::min(c_min, tr.c.back());
      c_max = std::max(c_max, tr.c.back());
    }
  }
  const double R = static_cast<double>(traces.size());
  row.mean = mean_of(means);
  if (std::isnan(true_mean)) {
    row.mse_T = kNaN;
  } else {
    double s = 0;
    for (double m : means) s += (m - true_mean) * (m - true_mean);
    row.mse_T = s / R;
  }
  if (means.size() > 1) {
    double s = 0;
    for (double m : means) s += (m - row.mean) * (m - row.mean);
    row.sd_of_mean = std::sqrt(s / (R - 1));
  } else {
    row.sd_of_mean = 0;
  }
  row.acf1 = acf_count ? acf_sum[0] / acf_count : kNaN;
  row.acf10 = acf_count ? acf_sum[1] / acf_count : kNaN;
  row.acf50 = acf_count ? acf_sum[2] / acf_count : kNaN;
  row.m_T = m_T_sum / R;
  row.nsp_T = nsp_sum / R;
  row.acc_T = acc_sum / R;
  row.ei = ei_sum / R;
  row.skew = skews.empty() ? kNaN : mean_of(skews);
  row.kurt = kurts.empty() ? kNaN : mean_of(kurts);
  row.kurt_defined = kurt_ok && !kurts.empty();
  row.q95 = mean_of(q95s);
  row.c_min = c_min;
  row.c_max = c_max;
  return row;
}

}  // namespace sticky
