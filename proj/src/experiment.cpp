#include "sticky/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "sticky/adaptation.hpp"
#include "sticky/errors.hpp"
#include "sticky/targets.hpp"

namespace sticky {

namespace {

namespace fs = std::filesystem;

std::string row_label(const ExperimentConfig& cfg) {
  return cfg.name.empty() ? cfg.kernel + "-" + cfg.construction : cfg.name;
}

std::string file_label(const std::string& label) {
  std::string s = label;
  for (char& c : s)
    if (c == ':' || c == '/' || c == ' ') c = '-';
  return s;
}

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// Discounting constants for the lifetime models: with force of interest
// ln(1.025), Z = exp(-delta*z) is the present value of a unit benefit at
// death and Y = (1 - Z)/delta the annuity value.
constexpr double kDiscountDelta = 0.024692612590371288;  // ln(1.025)

bool lifetime_target(const std::string& name) {
  return name == "makeham" || name == "gompertz";
}

std::vector<Trace> transform_traces(const std::vector<Trace>& in, bool annuity) {
  std::vector<Trace> out = in;
  for (Trace& tr : out)
    for (double& v : tr.x) {
      const double z = std::exp(-kDiscountDelta * v);
      v = annuity ? (1.0 - z) / kDiscountDelta : z;
    }
  return out;
}

void write_series(const fs::path& path, const char* col, const std::vector<double>& v,
                  std::uint64_t seed, std::uint64_t hash, int stride = 1) {
  std::ofstream f(path);
  char head[96];
  std::snprintf(head, sizeof head, "# seed=%llu config_hash=%016llx\n",
                static_cast<unsigned long long>(seed), static_cast<unsigned long long>(hash));
  f << head << "iter," << col << "\n";
  for (std::size_t i = 0; i < v.size(); i += stride) f << (i + 1) << "," << num(v[i]) << "\n";
}

void write_summary_header(std::ofstream& f) {
  f << "name,target,kernel,construction,rule,eps,beta,T,runs,failed,seed,config_hash,"
       "mse,acf1,acf10,acf50,m_T,nsp_T,acc_T,ei,mean,sd_of_mean,skew,kurt,q95,c_min,c_max,"
       "elapsed_sec\n";
}

void write_summary_row(std::ofstream& f, const ExperimentConfig& cfg, const SummaryRow& row,
                       const std::string& label) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  f << label << ',' << cfg.target << ',' << cfg.kernel << ',' << cfg.construction << ','
    << cfg.rule << ',' << num(cfg.eps) << ',' << num(cfg.beta) << ',' << cfg.T << ','
    << row.runs << ',' << row.failed << ',' << cfg.seed << ',' << hash << ',' << num(row.mse_T)
    << ',' << num(row.acf1) << ',' << num(row.acf10) << ',' << num(row.acf50) << ','
    << num(row.m_T) << ',' << num(row.nsp_T) << ',' << num(row.acc_T) << ',' << num(row.ei)
    << ',' << num(row.mean) << ',' << num(row.sd_of_mean) << ',' << num(row.skew) << ','
    << num(row.kurt) << ',' << num(row.q95) << ',' << num(row.c_min) << ',' << num(row.c_max)
    << ',' << num(row.elapsed_sec) << "\n";
}

}  // namespace

ExperimentOutput run_experiment_config(const ExperimentConfig& cfg) {
  const TargetModel target = target_registry(cfg.target);
  const KernelSpec kernel = KernelSpec::parse(cfg.kernel);
  const Construction kind = parse_construction(cfg.construction);
  const UpdateRule rule = UpdateRule::parse(cfg.rule, cfg.eps, cfg.beta);
  const S0Spec s0 = !cfg.s0_spec.empty()
                        ? S0Spec::parse(cfg.s0_spec)
                        : S0Spec::fixed(cfg.s0.empty() ? target.s0 : cfg.s0);
  const double x0 = cfg.x0.value_or(target.x0);

  const auto t0 = std::chrono::steady_clock::now();
  ManyResult res =
      run_many(target, kernel, kind, rule, s0, x0, cfg.T, cfg.seed, cfg.runs, cfg.workers);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  ExperimentOutput out;
  out.cfg = cfg;
  out.failures = res.failures;
  out.row = summarize(row_label(cfg), cfg.construction, res.traces, target.true_mean, elapsed,
                      static_cast<long>(res.failures.size()));

  if (!res.traces.empty()) {
    const std::size_t T = res.traces[0].x.size();
    if (std::isfinite(target.true_mean)) {
      std::vector<std::vector<double>> xs;
      xs.reserve(res.traces.size());
      for (const Trace& tr : res.traces) xs.push_back(tr.x);
      out.mse_t = mse_trace(xs, target.true_mean);
    }
    std::vector<int> lags(50);
    for (int k = 0; k < 50; ++k) lags[k] = k + 1;
    out.acf_k.assign(50, 0.0);
    long acf_runs = 0;
    out.nsp_t.assign(T, 0.0);
    out.acc_t.assign(T, 0.0);
    for (const Trace& tr : res.traces) {
      try {
        auto a = acf(tr.x, lags);
        for (int k = 0; k < 50; ++k) out.acf_k[k] += a[k];
        ++acf_runs;
      } catch (const DegenerateTrace&) {
      }
      const auto acc = acc_cum(tr.accepted);
      for (std::size_t t = 0; t < T; ++t) {
        out.nsp_t[t] += tr.nsp[t];
        out.acc_t[t] += acc[t];
      }
    }
    const double R = static_cast<double>(res.traces.size());
    for (double& v : out.nsp_t) v /= R;
    for (double& v : out.acc_t) v /= R;
    if (acf_runs)
      for (double& v : out.acf_k) v /= static_cast<double>(acf_runs);
    out.first_trace = res.traces.front();
    out.has_first = true;

    if (lifetime_target(cfg.target)) {
      const auto z = transform_traces(res.traces, false);
      const auto y = transform_traces(res.traces, true);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      out.extra_rows.push_back(summarize(row_label(cfg) + ":Z", cfg.construction, z, nan,
                                         elapsed, out.row.failed));
      out.extra_rows.push_back(summarize(row_label(cfg) + ":Y", cfg.construction, y, nan,
                                         elapsed, out.row.failed));
    }
  }
  return out;
}

std::vector<ExperimentConfig> expand_eps_sweep(const ExperimentConfig& cfg) {
  if (cfg.eps_sweep.empty()) return {cfg};
  std::vector<ExperimentConfig> out;
  for (double e : cfg.eps_sweep) {
    ExperimentConfig c = cfg;
    c.eps_sweep.clear();
    c.rule = "threshold";
    c.eps = e;
    c.name = row_label(cfg) + "-eps" + num(e);
    out.push_back(std::move(c));
  }
  return out;
}

int run_bundle(const std::vector<ExperimentConfig>& cfgs, const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir) / "figures");
  fs::create_directories(fs::path(out_dir) / "traces");
  std::ofstream summary(fs::path(out_dir) / "summary.csv");
  if (!summary) throw ValidationError("out", "cannot write to '" + out_dir + "'");
  write_summary_header(summary);

  bool all_ok = true;
  for (const ExperimentConfig& base : cfgs) {
    for (const ExperimentConfig& cfg : expand_eps_sweep(base)) {
      ExperimentOutput out = run_experiment_config(cfg);
      const std::string label = row_label(cfg);
      for (const RunFailure& f : out.failures)
        std::fprintf(stderr, "[%s] run %d failed: %s\n", label.c_str(), f.run_index,
                     f.what.c_str());
      if (out.row.runs == 0) {
        std::fprintf(stderr, "[%s] no successful runs\n", label.c_str());
        all_ok = false;
      }
      write_summary_row(summary, cfg, out.row, label);
      for (const SummaryRow& r : out.extra_rows) write_summary_row(summary, cfg, r, r.label);

      const std::uint64_t hash = config_hash(cfg);
      const std::string fl = file_label(label);
      const fs::path figs = fs::path(out_dir) / "figures";
      if (!out.mse_t.empty())
        write_series(figs / (fl + "_mse.csv"), "mse", out.mse_t, cfg.seed, hash);
      if (!out.acf_k.empty()) {
        std::ofstream f(figs / (fl + "_acf.csv"));
        char head[96];
        std::snprintf(head, sizeof head, "# seed=%llu config_hash=%016llx\n",
                      static_cast<unsigned long long>(cfg.seed),
                      static_cast<unsigned long long>(hash));
        f << head << "lag,acf\n";
        for (std::size_t k = 0; k < out.acf_k.size(); ++k)
          f << (k + 1) << "," << num(out.acf_k[k]) << "\n";
      }
      if (!out.nsp_t.empty())
        write_series(figs / (fl + "_nsp.csv"), "nsp", out.nsp_t, cfg.seed, hash);
      if (!out.acc_t.empty())
        write_series(figs / (fl + "_acc.csv"), "acc", out.acc_t, cfg.seed, hash);

      if (cfg.traces && out.has_first) {
        std::ofstream f(fs::path(out_dir) / "traces" / (fl + "_run0.csv"));
        char head[96];
        std::snprintf(head, sizeof head, "# seed=%llu config_hash=%016llx\n",
                      static_cast<unsigned long long>(out.first_trace.seed),
                      static_cast<unsigned long long>(hash));
        f << head << "iter,state,accepted,nsp,acc_cum,c_t\n";
        const Trace& tr = out.first_trace;
        const auto acc = acc_cum(tr.accepted);
        for (std::size_t t = 0; t < tr.x.size(); ++t)
          f << (t + 1) << "," << num(tr.x[t]) << "," << int(tr.accepted[t]) << "," << tr.nsp[t]
            << "," << num(acc[t]) << "," << num(tr.c[t]) << "\n";
      }
    }
  }
  return all_ok ? 0 : 1;
}

namespace {

ExperimentConfig base_row(const std::string& target, const std::string& kernel,
                          const std::string& construction, int runs, const std::string& name) {
  ExperimentConfig c;
  c.target = target;
  c.kernel = kernel;
  c.construction = construction;
  c.runs = runs;
  c.name = name;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"gmix61", "eps", "mix1", "mix2", "makeham", "sv"};
}

std::vector<ExperimentConfig> preset(const std::string& name) {
  std::vector<ExperimentConfig> out;
  const std::vector<std::string> cons = {"c1", "c2", "c3", "c4"};

  if (name == "gmix61") {
    // Bimodal Gaussian-mixture study: every construction under the three
    // adaptive kernels, shared start and initial support.
    for (const std::string& c : cons)
      for (const char* k : {"arms", "asm", "asmtm:10"})
        out.push_back(base_row("gmix61", k, c, 200, std::string(k) + "-" + c));
    return out;
  }
  if (name == "eps") {
    // Threshold-test sensitivity: support growth vs the inclusion cutoff.
    for (const std::string& c : cons) {
      ExperimentConfig cfg = base_row("gmix61", "asm", c, 50, "asm-" + c);
      cfg.eps_sweep = {0.005, 0.01, 0.1, 0.2};
      out.push_back(std::move(cfg));
    }
    return out;
  }
  if (name == "mix1") {
    // Heavy-tailed two-component mixture; three initial-support protocols.
    struct Panel {
      const char* tag;
      std::vector<double> pts;
      const char* spec;
    };
    const Panel panels[] = {{"Ia", {-1, 1, 20}, ""},
                            {"Ib", {-1, 1, 70}, ""},
                            {"Ic", {}, "uniform:-70,70,3"}};
    for (const Panel& p : panels)
      for (auto [k, c] : {std::pair<const char*, const char*>{"arms", "c1"},
                          {"asm", "c4"},
                          {"asmtm:10", "c4"}}) {
        ExperimentConfig cfg =
            base_row("mix1", k, c, 100, std::string(p.tag) + "-" + k + "-" + c);
        cfg.s0 = p.pts;
        cfg.s0_spec = p.spec;
        out.push_back(std::move(cfg));
      }
    return out;
  }
  if (name == "mix2") {
    // Same mixture family with a sharpening right component.
    for (double kappa : {0.01, 0.1, 0.4})
      for (auto [k, c] : {std::pair<const char*, const char*>{"arms", "c1"},
                          {"asm", "c4"},
                          {"asmtm:10", "c4"}}) {
        ExperimentConfig cfg = base_row("mix2:" + num(kappa), k, c, 100,
                                        "II-k" + num(kappa) + "-" + k + "-" + c);
        cfg.s0 = {-1, 1, 20};
        out.push_back(std::move(cfg));
      }
    return out;
  }
  if (name == "makeham") {
    // Future-lifetime density at age 50; panel (b) pins the support bound.
    struct Panel {
      const char* tag;
      std::vector<double> pts;
    };
    const Panel panels[] = {{"a", {20, 40, 60}}, {"b", {0, 20, 40, 60}}};
    for (const Panel& p : panels)
      for (auto [k, c] : {std::pair<const char*, const char*>{"arms", "c1"},
                          {"asm", "c4"},
                          {"asmtm:10", "c4"}}) {
        ExperimentConfig cfg =
            base_row("makeham", k, c, 50, std::string(p.tag) + "-" + k + "-" + c);
        cfg.s0 = p.pts;
        out.push_back(std::move(cfg));
      }
    return out;
  }
  if (name == "sv") {
    // Volatility full conditional; the frozen-proposal IMH is the
    // fixed-proposal reference point.
    struct Panel {
      const char* tag;
      std::vector<double> pts;
    };
    const Panel panels[] = {{"a", {0.0001, 0.001, 0.005, 1}},
                            {"b", {0.0001, 0.0003, 0.005, 1}}};
    for (const Panel& p : panels)
      for (auto [k, c] : {std::pair<const char*, const char*>{"imh", "c4"},
                          {"arms", "c1"},
                          {"asm", "c4"},
                          {"asmtm:10", "c4"}}) {
        ExperimentConfig cfg = base_row("sv", k, c, 50, std::string(p.tag) + "-" + k + "-" + c);
        cfg.s0 = p.pts;
        out.push_back(std::move(cfg));
      }
    return out;
  }
  throw ValidationError("preset", "unknown preset '" + name + "' (try: gmix61, eps, mix1, mix2, makeham, sv)");
}

}  // namespace sticky
