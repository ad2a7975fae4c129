#include "sticky/targets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sticky/errors.hpp"

namespace sticky {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log_normal_pdf(double x, double mu, double var) {
  return -0.5 * std::log(6.283185307179586 * var) - (x - mu) * (x - mu) / (2 * var);
}

double logsumexp2(double a, double b) {
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

double gep_logpdf(double x, const GepParams& p) {
  double ln = std::log(p.alpha) - std::log(p.sigma) - std::lgamma(1.0 / p.alpha) +
              std::log(p.kappa) - std::log1p(p.kappa * p.kappa);
  double d = x - p.mu;
  double e = (d >= 0) ? std::pow(p.kappa * d / p.sigma, p.alpha)
                      : std::pow(-d / (p.sigma * p.kappa), p.alpha);
  return ln - e;
}

double gep_mean(const GepParams& p) {
  return p.mu + std::tgamma(2.0 / p.alpha) * p.sigma * (1.0 - p.kappa * p.kappa) /
                    (std::tgamma(1.0 / p.alpha) * p.kappa);
}

TargetModel make_gmix61() {
  TargetModel t;
  t.name = "gmix61";
  t.logf = [](double x) {
    return logsumexp2(std::log(0.5) + log_normal_pdf(x, 7.0, 1.0),
                      std::log(0.5) + log_normal_pdf(x, -7.0, 0.1));
  };
  t.lo = -kInf;
  t.hi = kInf;
  t.x0 = 6.0;
  t.s0 = {-10, -8, 5, 10};
  t.true_mean = 0.0;
  return t;
}

TargetModel make_mix1() {
  TargetModel t;
  t.name = "mix1";
  GepParams a{0, 1, 0.5, 1}, b{50, 1, 2, 1};
  t.logf = [a, b](double x) {
    return logsumexp2(std::log(0.6) + gep_logpdf(x, a), std::log(0.4) + gep_logpdf(x, b));
  };
  // Bounded working domain.  With all initial points on one flank of a
  // component, the outermost secant can run level (the far component
  // underflows, and the near one is symmetric) or rise toward the outside,
  // and such a flank admits no integrable exponential tail on an unbounded
  // domain; a bounded-construction sampler needs declared endpoints anyway.
  // [-70, 70] is the box the benchmark's randomized initial sets draw from;
  // it carries all but ~1.3e-3 of the mass (mean shift +0.026, far below the
  // per-run spread of every sampler), and keeps the flank pieces built from
  // a 3-point initial set from swamping the early proposals.
  t.lo = -70.0;
  t.hi = 70.0;
  t.x0 = 5.0;
  t.s0 = {-1, 1, 20};
  t.true_mean = 20.0;  // both components symmetric (kappa = 1)
  return t;
}

TargetModel make_mix2(double kappa) {
  TargetModel t;
  t.name = "mix2:" + std::to_string(kappa);
  GepParams a{0, 1, 0.5, 2}, b{50, 1, 0.5, kappa};
  t.logf = [a, b](double x) {
    return logsumexp2(std::log(0.4) + gep_logpdf(x, a), std::log(0.6) + gep_logpdf(x, b));
  };
  // Bounded working domain, same rationale as mix1.  The left flank is
  // thin (first component, left-side exponent sqrt(|x|/2): mass beyond
  // -250 is ~5e-5).  The right flank carries the bulk of the distribution
  // for small kappa, so it is truncated only where both components sit
  // >= 40 nats below their modes (sqrt(2x) >= 40 and
  // sqrt(kappa*(x-50)) >= 40); the transient many-nat pieces this width
  // produces during adaptation are handled by the log-domain mass
  // bookkeeping in the proposal.
  t.lo = -250.0;
  t.hi = std::max(800.0, 50.0 + 1600.0 / kappa);
  t.x0 = 5.0;
  t.s0 = {-1, 1, 20};
  t.true_mean = 0.4 * gep_mean(a) + 0.6 * gep_mean(b);
  return t;
}

TargetModel make_makeham(const MakehamParams& p) {
  TargetModel t;
  t.name = (p.A == 0) ? "gompertz" : "makeham";
  double lnC = std::log(p.C);
  double Cx = std::pow(p.C, p.x);
  // density of the remaining lifetime z >= 0 at age x:
  //   exp(-A z - (B C^x / ln C)(C^z - 1)) * (A + B C^{x+z})
  t.logf = [p, lnC, Cx](double z) {
    if (z < 0) return -kInf;
    double e = z * lnC;
    // Far out, exp(e) overflows while the hazard is pure B*C^{x+z}; switch to
    // the log form there (the additive A is 200+ orders of magnitude below).
    if (e > 500.0)
      return -p.A * z - (p.B * Cx / lnC) * std::expm1(e) + std::log(p.B * Cx) + e;
    return -p.A * z - (p.B * Cx / lnC) * std::expm1(e) +
           std::log(p.A + p.B * Cx * std::exp(e));
  };
  t.lo = 0;
  t.hi = kInf;
  t.x0 = 30.0;
  t.s0 = {0, 20, 40, 60};
  t.true_mean = kNaN;
  return t;
}

TargetModel make_makeham() { return make_makeham({0.001, 0.0000070848535, 1.1194379, 50}); }

TargetModel make_gompertz() { return make_makeham({0.0, 0.0000070848535, 1.1194379, 50}); }

TargetModel make_sv(const SvParams& p) {
  TargetModel t;
  t.name = "sv";
  // Full conditional of the volatility level h_t given its neighbours.  The
  // state h is a level (h > 0); the neighbouring values enter through their
  // logarithms.  The defaults pin the neighbouring log-levels at -7.356,
  // the stationary mean alpha/(1-delta) of the log-volatility AR(1) (with
  // delta = 0.9516, which prints as 0.95).  Pinning the neighbours at alpha
  // itself would be inconsistent: alpha < 0 cannot be a level, and read as a
  // log level it sits three orders of magnitude off the observation scale.
  double mu = (p.alpha * (1 - p.delta) + p.delta * (p.logh_next + p.logh_prev)) /
              (1 + p.delta * p.delta);
  double powc = -1.5 - p.delta * p.psi * p.y_next / (p.omega * std::exp(p.logh_next / 2));
  double ycoef = 0.5 * p.y * p.y * (1 + p.psi * p.psi / p.omega);
  t.logf = [p, mu, powc, ycoef](double h) {
    if (h <= 0) return -kInf;
    double lh = std::log(h);
    return powc * lh - ycoef / h -
           (1 + p.delta * p.delta) * (lh - mu) * (lh - mu) / (2 * p.omega) +
           p.psi * p.y * (lh - p.alpha - p.delta * p.logh_prev) / (p.omega * std::sqrt(h));
  };
  t.lo = 0;
  t.hi = kInf;
  t.x0 = 0.002;
  t.s0 = {0.0001, 0.001, 0.005, 1};
  t.true_mean = kNaN;
  return t;
}

TargetModel make_sv() {
  SvParams p;
  p.alpha = -0.356;
  p.delta = 0.95;
  p.psi = -0.15;
  p.omega = 0.043;
  p.y = 0.001;
  p.y_next = 0.001;  // not specified in the source; sensitivity is negligible
  p.logh_prev = p.logh_next = -7.356;
  return make_sv(p);
}

TargetModel make_fixture() {
  TargetModel t;
  t.name = "fixture";
  // Two-mode piecewise log-density with an exact linear ramp of slope -1/4
  // on [1, 3.5].  The ramp line extended left passes exactly through
  // (-1, -1), so with support points {-3, -1, 3, 4.5, 7} the (-1, 3] secant
  // IS the ramp, every chord from 3 rightward has slope >= -1/4 (the log
  // density is convex up to 5), and the construction-1 envelope can never
  // exceed the density anywhere in (-1, 3].
  t.logf = [](double x) {
    if (x <= 1.0) return -1.25 * x * x - 0.25 * x;
    if (x <= 3.5) return -2.0 - 0.25 * (x - 3.0);
    if (x <= 5.0) return -2.0 - 0.25 * (x - 3.0) + 0.5 * (x - 3.5) * (x - 3.5);
    return -1.375 + 1.25 * (x - 5.0) - (x - 5.0) * (x - 5.0);
  };
  t.lo = -kInf;
  t.hi = kInf;
  t.x0 = 0.5;
  t.s0 = {-3, -1, 3, 4.5, 7};
  t.true_mean = kNaN;
  return t;
}

TargetModel target_registry(const std::string& spec) {
  if (spec == "gmix61") return make_gmix61();
  if (spec == "mix1") return make_mix1();
  if (spec.rfind("mix2:", 0) == 0) {
    double kappa = 0;
    try {
      kappa = std::stod(spec.substr(5));
    } catch (const std::exception&) {
      throw ValidationError("target", "mix2 kappa must be a number, got '" + spec + "'");
    }
    if (!(kappa > 0)) throw ValidationError("target", "mix2 kappa must be positive");
    return make_mix2(kappa);
  }
  if (spec == "makeham") return make_makeham();
  if (spec == "gompertz") return make_gompertz();
  if (spec == "sv") return make_sv();
  if (spec == "fixture") return make_fixture();
  throw ValidationError("target", "unknown target '" + spec + "'");
}

std::vector<std::string> target_names() {
  return {"gmix61", "mix1", "mix2:<kappa>", "makeham", "gompertz", "sv", "fixture"};
}

}  // namespace sticky
