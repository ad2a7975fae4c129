#pragma once
#include <cstddef>
#include <utility>
#include <vector>

namespace sticky {

// Ordered abscissae where the target has been evaluated, with the cached
// log-density values.  The cache is what makes support-set growth cheap:
// rebuilding a proposal never re-evaluates the target.
class SupportSet {
 public:
  enum class Insert { Inserted, Duplicate };

  SupportSet() = default;
  // Points need not be sorted on input; log-values are paired by position.
  SupportSet(std::vector<double> xs, std::vector<double> ws);

  std::size_t size() const { return x_.size(); }
  double point(std::size_t i) const { return x_[i]; }
  double logf(std::size_t i) const { return w_[i]; }
  const std::vector<double>& points() const { return x_; }
  const std::vector<double>& logfs() const { return w_; }

  // Interval index of q under the partition
  //   I_0 = (-inf, s_1],  I_j = (s_j, s_{j+1}],  I_m = (s_m, +inf):
  // the index of the first support point >= q (m if none).
  int locate_interval(double q) const;

  // Insert keeping order.  An exact duplicate abscissa is skipped and
  // reported, not treated as an error.  Returns {status, position}.
  std::pair<Insert, int> insert(double xi, double wi);

 private:
  std::vector<double> x_;
  std::vector<double> w_;
};

}  // namespace sticky
