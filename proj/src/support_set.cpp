#include "sticky/support_set.hpp"

#include <algorithm>
#include <numeric>

namespace sticky {

SupportSet::SupportSet(std::vector<double> xs, std::vector<double> ws) {
  std::vector<std::size_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  x_.reserve(xs.size());
  w_.reserve(ws.size());
  for (std::size_t i : idx) {
    if (!x_.empty() && xs[i] == x_.back()) continue;  // drop exact duplicates
    x_.push_back(xs[i]);
    w_.push_back(ws[i]);
  }
}

int SupportSet::locate_interval(double q) const {
  return static_cast<int>(std::lower_bound(x_.begin(), x_.end(), q) - x_.begin());
}

std::pair<SupportSet::Insert, int> SupportSet::insert(double xi, double wi) {
  auto it = std::lower_bound(x_.begin(), x_.end(), xi);
  int pos = static_cast<int>(it - x_.begin());
  if (it != x_.end() && *it == xi) return {Insert::Duplicate, pos};
  x_.insert(it, xi);
  w_.insert(w_.begin() + pos, wi);
  return {Insert::Inserted, pos};
}

}  // namespace sticky
