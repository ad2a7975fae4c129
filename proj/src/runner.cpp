#include "sticky/runner.hpp"

#include <omp.h>

#include <cstdio>
#include <exception>

#include "sticky/errors.hpp"
#include "sticky/rng.hpp"

namespace sticky {

S0Spec S0Spec::fixed(std::vector<double> p) {
  S0Spec s;
  s.points = std::move(p);
  return s;
}

S0Spec S0Spec::uniform(double a, double b, int m) {
  if (!(a < b)) throw ValidationError("s0", "random support spec needs a < b");
  if (m < 3) throw ValidationError("s0", "random support spec needs at least 3 points");
  S0Spec s;
  s.lo = a;
  s.hi = b;
  s.m = m;
  s.random = true;
  return s;
}

S0Spec S0Spec::parse(const std::string& spec) {
  if (spec.rfind("uniform:", 0) != 0)
    throw ValidationError("s0", "unknown random support spec '" + spec + "'");
  double a, b;
  int m;
  if (std::sscanf(spec.c_str() + 8, "%lf,%lf,%d", &a, &b, &m) != 3)
    throw ValidationError("s0", "expected uniform:<a>,<b>,<m> in '" + spec + "'");
  return uniform(a, b, m);
}

std::vector<double> S0Spec::realize(RngStream& rng) const {
  if (!random) return points;
  std::vector<double> s(m);
  for (double& v : s) v = rng.uniform(lo, hi);
  return s;
}

namespace {

struct Slot {
  Trace trace;
  bool ok = false;
  std::string error;
};

Slot one_run(const TargetModel& target, const KernelSpec& kernel, Construction kind,
             const UpdateRule& rule, const S0Spec& s0, double x0, long T,
             std::uint64_t master_seed, int r, const ChainOptions& opts) {
  Slot slot;
  const std::uint64_t seed = derive_run_seed(master_seed, static_cast<std::uint64_t>(r));
  RngStream rng(seed);
  try {
    const std::vector<double> pts = s0.realize(rng);
    slot.trace = run_chain(target, kernel, kind, rule, pts, x0, T, rng, opts);
    slot.trace.seed = seed;
    slot.ok = true;
  } catch (const std::exception& e) {
    slot.error = e.what();
  } catch (...) {
    slot.error = "unknown error";
  }
  return slot;
}

ManyResult merge(std::vector<Slot>& slots) {
  ManyResult res;
  for (int r = 0; r < static_cast<int>(slots.size()); ++r) {
    if (slots[r].ok)
      res.traces.push_back(std::move(slots[r].trace));
    else
      res.failures.push_back({r, slots[r].error});
  }
  return res;
}

}  // namespace

ManyResult run_many_serial(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                           const UpdateRule& rule, const S0Spec& s0, double x0, long T,
                           std::uint64_t master_seed, int R, const ChainOptions& opts) {
  std::vector<Slot> slots(R);
  for (int r = 0; r < R; ++r)
    slots[r] = one_run(target, kernel, kind, rule, s0, x0, T, master_seed, r, opts);
  return merge(slots);
}

ManyResult run_many(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                    const UpdateRule& rule, const S0Spec& s0, double x0, long T,
                    std::uint64_t master_seed, int R, int workers, const ChainOptions& opts) {
  const int nthreads = workers > 0 ? workers : omp_get_max_threads();
  std::vector<Slot> slots(R);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int r = 0; r < R; ++r)
    slots[r] = one_run(target, kernel, kind, rule, s0, x0, T, master_seed, r, opts);
  return merge(slots);
}

}  // namespace sticky
