#include "sticky/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sticky/errors.hpp"

namespace sticky {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// True (and warns once) when the support cap is active and full: update
// tests then become no-ops and the chain keeps running unchanged.
bool support_capped(ChainState& st, const ChainOptions& opts) {
  if (opts.max_support == 0 || st.set.size() < opts.max_support) return false;
  if (!st.warned_cap) {
    std::fprintf(stderr, "warning: support cap %zu reached; adaptation disabled from here on\n",
                 opts.max_support);
    st.warned_cap = true;
  }
  return true;
}

// Insert z into the set and patch the proposal in place.  A duplicate
// abscissa is skipped (the test still counts as performed).
bool insert_point(ChainState& st, double z, double logpi_z) {
  auto r = st.set.insert(z, logpi_z);
  if (r.first != SupportSet::Insert::Inserted) return false;
  update_for_insert(st.prop, st.set, r.second);
  return true;
}

}  // namespace

KernelSpec KernelSpec::parse(const std::string& s) {
  KernelSpec k;
  if (s == "asm") {
    k.kind = Kind::Asm;
    k.M = 1;
  } else if (s == "arms") {
    k.kind = Kind::Arms;
    k.M = 1;
  } else if (s == "imh") {
    k.kind = Kind::Imh;
    k.M = 1;
  } else if (s == "asmtm") {
    k.kind = Kind::Asmtm;
    k.M = 10;
  } else if (s.rfind("asmtm:", 0) == 0) {
    k.kind = Kind::Asmtm;
    try {
      k.M = std::stoi(s.substr(6));
    } catch (const std::exception&) {
      throw ValidationError("kernel", "bad try count in '" + s + "'");
    }
    if (k.M < 1) throw ValidationError("kernel", "try count must be >= 1 in '" + s + "'");
  } else {
    throw ValidationError("kernel", "unknown kernel '" + s + "' (asm, asmtm[:M], arms, imh)");
  }
  return k;
}

std::string KernelSpec::name() const {
  switch (kind) {
    case Kind::Asm:
      return "asm";
    case Kind::Asmtm:
      return "asmtm:" + std::to_string(M);
    case Kind::Arms:
      return "arms";
    case Kind::Imh:
      return "imh";
  }
  return "?";
}

double mtm_acceptance(const std::vector<double>& logw_num, const std::vector<double>& logw_den) {
  double m = kNegInf;
  for (double x : logw_num) m = std::max(m, x);
  for (double x : logw_den) m = std::max(m, x);
  if (m == kNegInf) return 0.0;
  double num = 0, den = 0;
  for (double x : logw_num) num += std::exp(x - m);
  for (double x : logw_den) den += std::exp(x - m);
  if (!(den > 0)) return 0.0;
  return std::min(1.0, num / den);
}

ChainState init_chain(const TargetModel& target, Construction kind,
                      const std::vector<double>& s0, double x0) {
  if (s0.size() < 3)
    throw TooFewPoints("initial support needs at least 3 points, got " +
                       std::to_string(s0.size()));
  if (!(x0 > target.lo && x0 < target.hi))
    throw ValidationError("x0", "start point must lie inside the target support");
  std::vector<double> ws;
  ws.reserve(s0.size());
  for (double s : s0) {
    if (s == x0)
      throw ValidationError("x0", "start point must not coincide with a support point");
    if (s < target.lo || s > target.hi)
      throw ValidationError("s0", "support point outside the target support");
    double w = target.logf(s);
    if (!std::isfinite(w))
      throw ValidationError("s0", "target log-density not finite at a support point");
    ws.push_back(w);
  }
  ChainState st;
  st.set = SupportSet(s0, ws);
  st.prop = build_proposal(st.set, kind, target.lo, target.hi);
  st.x = x0;
  st.logpi_x = target.logf(x0);
  if (!std::isfinite(st.logpi_x))
    throw ValidationError("x0", "target log-density not finite at the start point");
  st.eval_count = static_cast<long>(s0.size()) + 1;
  return st;
}

// Single- and multiple-try sticky transition.  The draw sequence is fixed:
// M proposal samples, one selection uniform (only when M > 1), one
// acceptance uniform, one update-test uniform (only when a test happens).
// With M = 1 no selection draw is consumed, so asm and asmtm:1 produce
// bitwise-identical trajectories from the same stream.
StepEvent asm_step(ChainState& st, const TargetModel& target, const UpdateRule& rule, int M,
                   RngStream& rng, const ChainOptions& opts) {
  if (M < 1) throw ValidationError("kernel", "try count must be >= 1");
  StepEvent ev;

  std::vector<double> y(M), logpi_y(M), logw(M);
  for (int i = 0; i < M; ++i) {
    y[i] = st.prop.sample(rng);
    logpi_y[i] = target.logf(y[i]);
    logw[i] = logpi_y[i] - st.prop.log_value(y[i]);
  }
  st.cand_count += M;
  st.eval_count += M;

  // Select the try proportionally to its importance weight.
  int j = 0;
  if (M > 1) {
    double lse = logsumexp(logw);
    double u = rng.uniform01();
    double acc = 0;
    j = -1;
    for (int i = 0; i < M; ++i) {
      acc += (lse > kNegInf) ? std::exp(logw[i] - lse) : 0.0;
      if (u < acc) {
        j = i;
        break;
      }
    }
    if (j < 0) {  // rounding left u above the cumulative sum
      for (int i = M; j < 0 && i-- > 0;)
        if (std::isfinite(logw[i])) j = i;
      if (j < 0) j = 0;
    }
  }

  // Reference set: the non-selected tries plus the current state.
  double logw_x = st.logpi_x - st.prop.log_value(st.x);
  std::vector<double> logw_ref(logw);
  logw_ref[j] = logw_x;
  double a = mtm_acceptance(logw, logw_ref);
  ev.accept_prob = a;
  ev.candidate = y[j];
  ev.accepted = rng.uniform01() < a;

  // Update test on the non-retained points: on acceptance the old state
  // takes the selected try's slot, otherwise the slot keeps the try.
  if (!opts.freeze_adaptation && !support_capped(st, opts)) {
    if (M == 1) {
      double z = ev.accepted ? st.x : y[0];
      double logpi_z = ev.accepted ? st.logpi_x : logpi_y[0];
      double eta = rule.include_prob(logpi_z, st.prop.log_value(z));
      ev.z = z;
      ev.z_tested = true;
      if (rng.uniform01() < eta) ev.z_included = insert_point(st, z, logpi_z);
    } else {
      std::vector<double> z(y), logpi_z(logpi_y), logw_z(logw);
      if (ev.accepted) {
        z[j] = st.x;
        logpi_z[j] = st.logpi_x;
        logw_z[j] = logw_x;
      }
      int k = select_update_candidate(logw_z, rng);
      ev.z_tested = true;
      if (k >= 0) {
        ev.z = z[k];
        ev.z_included = insert_point(st, z[k], logpi_z[k]);
      }
    }
  }

  if (ev.accepted) {
    st.x = y[j];
    st.logpi_x = logpi_y[j];
  }
  ++st.iter;
  return ev;
}

// Classic two-stage baseline: candidates filtered through rejection
// sampling against the envelope (each prefilter rejection joins the support
// set unconditionally), then one MH correction step.  The proposal is never
// adapted at the MH stage, which is what lets mismatched regions persist.
StepEvent arms_step(ChainState& st, const TargetModel& target, RngStream& rng,
                    const ChainOptions& opts) {
  StepEvent ev;
  int consecutive = 0;
  for (;;) {
    double yc = st.prop.sample(rng);
    ++st.cand_count;
    double logpi_y = target.logf(yc);
    ++st.eval_count;
    double logq_y = st.prop.log_value(yc);
    double u = rng.uniform01();
    if (std::log(u) < logpi_y - logq_y) {
      double logq_x = st.prop.log_value(st.x);
      double la = logpi_y + std::min(st.logpi_x, logq_x) - st.logpi_x - std::min(logpi_y, logq_y);
      double a = std::min(1.0, std::exp(la));
      ev.accept_prob = a;
      ev.candidate = yc;
      ev.accepted = rng.uniform01() < a;
      if (ev.accepted) {
        st.x = yc;
        st.logpi_x = logpi_y;
      }
      ++st.iter;
      return ev;
    }
    ++ev.rs_rejects;
    if (!opts.freeze_adaptation && !support_capped(st, opts)) {
      ev.z = yc;
      ev.z_tested = true;
      if (insert_point(st, yc, logpi_y)) ev.z_included = true;
    }
    if (++consecutive >= opts.rs_cap)
      throw RsLoopStall("prefilter rejected " + std::to_string(consecutive) +
                        " consecutive candidates");
  }
}

StepEvent imh_step(ChainState& st, const TargetModel& target, RngStream& rng) {
  StepEvent ev;
  double yc = st.prop.sample(rng);
  ++st.cand_count;
  double logpi_y = target.logf(yc);
  ++st.eval_count;
  double la = (logpi_y - st.prop.log_value(yc)) - (st.logpi_x - st.prop.log_value(st.x));
  double a = std::min(1.0, std::exp(la));
  ev.accept_prob = a;
  ev.candidate = yc;
  ev.accepted = rng.uniform01() < a;
  if (ev.accepted) {
    st.x = yc;
    st.logpi_x = logpi_y;
  }
  ++st.iter;
  return ev;
}

Trace run_chain(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                const UpdateRule& rule, const std::vector<double>& s0, double x0, long T,
                RngStream& rng, const ChainOptions& opts) {
  ChainState st = init_chain(target, kind, s0, x0);
  Trace tr;
  tr.x.reserve(T);
  tr.accepted.reserve(T);
  tr.nsp.reserve(T);
  tr.c.reserve(T);
  for (long t = 0; t < T; ++t) {
    StepEvent ev;
    switch (kernel.kind) {
      case KernelSpec::Kind::Asm:
        ev = asm_step(st, target, rule, 1, rng, opts);
        break;
      case KernelSpec::Kind::Asmtm:
        ev = asm_step(st, target, rule, kernel.M, rng, opts);
        break;
      case KernelSpec::Kind::Arms:
        ev = arms_step(st, target, rng, opts);
        break;
      case KernelSpec::Kind::Imh:
        ev = imh_step(st, target, rng);
        break;
    }
    tr.x.push_back(st.x);
    tr.accepted.push_back(ev.accepted ? 1 : 0);
    tr.nsp.push_back(st.prop.nsp(st.set.size()));
    tr.c.push_back(st.prop.total_mass());
  }
  tr.evals = st.eval_count;
  tr.cands = st.cand_count;
  tr.m_T = static_cast<int>(st.set.size());
  return tr;
}

}  // namespace sticky
