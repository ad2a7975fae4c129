#pragma once
#include <functional>

namespace sticky {

// Deterministic-integration oracles used for ground-truth values in tests
// and for normalizing constants in diagnostics.  Thin wrappers over adaptive
// Gauss-Kronrod; bounds may be infinite.

double integrate(const std::function<double(double)>& f, double a, double b);

// Normalizing constant of exp(logf) over (a, b).
double norm_const(const std::function<double(double)>& logf, double a, double b);

struct DensityStats {
  double norm, mean, var, skew, kurt;  // kurt is plain (not excess)
};
DensityStats density_stats(const std::function<double(double)>& logf, double a, double b);

// p-quantile of the density exp(logf)/norm on (a, b) by bisection on the CDF.
double quantile(const std::function<double(double)>& logf, double a, double b,
                double p, double norm);

// Expectation of g under the normalized density.
double expectation(const std::function<double(double)>& logf,
                   const std::function<double(double)>& g, double a, double b, double norm);

}  // namespace sticky
