#include "sticky/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace sticky {

namespace {
using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b) {
  return GK::integrate(f, a, b, 15, 1e-10);
}

double norm_const(const std::function<double(double)>& logf, double a, double b) {
  return integrate([&](double x) { return std::exp(logf(x)); }, a, b);
}

DensityStats density_stats(const std::function<double(double)>& logf, double a, double b) {
  DensityStats s{};
  s.norm = norm_const(logf, a, b);
  auto mom = [&](int k, double c) {
    return integrate([&](double x) { return std::pow(x - c, k) * std::exp(logf(x)); }, a, b) /
           s.norm;
  };
  s.mean = mom(1, 0.0);
  s.var = mom(2, s.mean);
  double m3 = mom(3, s.mean), m4 = mom(4, s.mean);
  s.skew = m3 / std::pow(s.var, 1.5);
  s.kurt = m4 / (s.var * s.var);
  return s;
}

double quantile(const std::function<double(double)>& logf, double a, double b,
                double p, double norm) {
  // Bracket with a finite window first if a bound is infinite.
  double lo = a, hi = b;
  if (lo == -kInf || hi == kInf) {
    double step = 1.0;
    if (lo == -kInf) {
      lo = (hi == kInf) ? 0.0 : hi - 1.0;
      while (integrate([&](double x) { return std::exp(logf(x)); }, lo, b) / norm < 0.999999)
        lo -= (step *= 2);
    }
    if (hi == kInf) {
      hi = lo + 1.0;
      step = 1.0;
      while (integrate([&](double x) { return std::exp(logf(x)); }, a, hi) / norm < 0.999999)
        hi += (step *= 2);
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    double mid = 0.5 * (lo + hi);
    double cdf = integrate([&](double x) { return std::exp(logf(x)); }, a, mid) / norm;
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double expectation(const std::function<double(double)>& logf,
                   const std::function<double(double)>& g, double a, double b, double norm) {
  return integrate([&](double x) { return g(x) * std::exp(logf(x)); }, a, b) / norm;
}

}  // namespace sticky
