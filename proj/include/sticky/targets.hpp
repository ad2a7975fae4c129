#pragma once
#include <functional>
#include <string>
#include <vector>

namespace sticky {

struct GepParams {
  double mu, sigma, alpha, kappa;
};

struct MakehamParams {
  double A, B, C, x;  // hazard A + B*C^age, conditioned on age x
};

struct SvParams {
  double alpha, delta, psi, omega;  // log-volatility AR(1) with leverage
  double y, y_next;                 // observations at t and t+1
  double logh_prev, logh_next;      // neighbouring log-volatilities
};

// A univariate sampling problem: unnormalized log density, support, a
// default chain start and default initial support points, and the exact
// mean where a closed form exists (NaN otherwise; use quadrature).
struct TargetModel {
  std::string name;
  std::function<double(double)> logf;
  double lo, hi;
  double x0;
  std::vector<double> s0;
  double true_mean;
};

// log of the generalized exponential power density (normalized), with
// right-side scale sigma/kappa and left-side scale sigma*kappa.
double gep_logpdf(double x, const GepParams& p);
// Closed-form mean: mu + Gamma(2/a)*sigma*(1-k^2) / (Gamma(1/a)*k).
double gep_mean(const GepParams& p);

TargetModel make_gmix61();             // 0.5 N(7,1) + 0.5 N(-7,0.1)
TargetModel make_mix1();               // 0.6 GEP(0,1,1/2,1) + 0.4 GEP(50,1,2,1)
TargetModel make_mix2(double kappa);   // 0.4 GEP(0,1,1/2,2) + 0.6 GEP(50,1,1/2,kappa)
TargetModel make_makeham(const MakehamParams& p);
TargetModel make_makeham();            // A=0.001, B=7.0848535e-6, C=1.1194379, x=50
TargetModel make_gompertz();           // Makeham with A=0
TargetModel make_sv(const SvParams& p);
TargetModel make_sv();
TargetModel make_fixture();            // piecewise log-density envelope regression fixture

// Parse a registry key: "gmix61", "mix1", "mix2:<kappa>", "makeham",
// "gompertz", "sv", "fixture".  Throws ValidationError on unknown keys.
TargetModel target_registry(const std::string& spec);
std::vector<std::string> target_names();

}  // namespace sticky
