#include "sticky/adaptation.hpp"

#include <algorithm>
#include <cmath>

#include "sticky/errors.hpp"

namespace sticky {

double UpdateRule::distance(double logpi, double logq) const {
  if (kind == Kind::RatioPower) {
    // 1 - min/max = 1 - e^{-|logpi - logq|}, in [0, 1]
    return -std::expm1(-std::abs(logpi - logq));
  }
  return std::abs(std::exp(logpi) - std::exp(logq));
}

double UpdateRule::eta(double d) const {
  switch (kind) {
    case Kind::RandomExp: return -std::expm1(-d);
    case Kind::Threshold: return d > eps ? 1.0 : 0.0;
    case Kind::RatioPower: return beta == 1.0 ? d : std::pow(d, beta);
  }
  return 0.0;
}

double UpdateRule::include_prob(double logpi, double logq) const {
  return eta(distance(logpi, logq));
}

UpdateRule UpdateRule::parse(const std::string& name, double eps, double beta) {
  UpdateRule r;
  r.eps = eps;
  r.beta = beta;
  if (name == "random-exp")
    r.kind = Kind::RandomExp;
  else if (name == "threshold")
    r.kind = Kind::Threshold;
  else if (name == "ratio-power")
    r.kind = Kind::RatioPower;
  else
    throw ValidationError("rule", "unknown update rule '" + name + "'");
  return r;
}

std::string UpdateRule::name() const {
  switch (kind) {
    case Kind::RandomExp: return "random-exp";
    case Kind::Threshold: return "threshold";
    case Kind::RatioPower: return "ratio-power";
  }
  return "?";
}

std::vector<double> update_candidate_probs(const std::vector<double>& logw) {
  const std::size_t M = logw.size();
  double L = 0;
  std::vector<double> ell(M);
  for (std::size_t i = 0; i < M; ++i) {
    ell[i] = std::abs(logw[i]);
    L = std::max(L, ell[i]);
  }
  double D = 0;
  for (std::size_t i = 0; i < M; ++i) D += std::exp(ell[i] - L);
  std::vector<double> p(M + 1);
  double eL = std::exp(-L);
  for (std::size_t i = 0; i < M; ++i) p[i] = (std::exp(ell[i] - L) - eL) / D;
  p[M] = static_cast<double>(M) * eL / D;
  return p;
}

int select_update_candidate(const std::vector<double>& logw, RngStream& rng) {
  std::vector<double> p = update_candidate_probs(logw);
  double u = rng.uniform01();
  double acc = 0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    acc += p[i];
    if (u < acc) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace sticky
