#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sticky/proposal.hpp"
#include "sticky/samplers.hpp"
#include "sticky/targets.hpp"

namespace sticky {

// Initial support points: either a fixed list or m points drawn uniformly
// per replication ("uniform:<a>,<b>,<m>") from the run's own stream, before
// any chain draw.
struct S0Spec {
  std::vector<double> points;
  double lo = 0, hi = 0;
  int m = 0;
  bool random = false;

  static S0Spec fixed(std::vector<double> p);
  static S0Spec uniform(double a, double b, int m);
  static S0Spec parse(const std::string& spec);  // "uniform:<a>,<b>,<m>"

  std::vector<double> realize(RngStream& rng) const;
};

struct RunFailure {
  int run_index = -1;
  std::string what;
};

struct ManyResult {
  std::vector<Trace> traces;  // successful runs, ordered by run index
  std::vector<RunFailure> failures;
};

// R independent replications of one chain configuration.  Run r draws from
// its own stream seeded by derive_run_seed(master_seed, r), so the result
// set is identical however the runs are scheduled.  Failures are collected
// per run index; the successful traces are still returned.
//
// run_many_serial is the plain reference loop; run_many distributes the
// replications over OpenMP threads (workers <= 0 picks the library default)
// and must produce byte-identical traces.
ManyResult run_many_serial(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                           const UpdateRule& rule, const S0Spec& s0, double x0, long T,
                           std::uint64_t master_seed, int R, const ChainOptions& opts = {});

ManyResult run_many(const TargetModel& target, const KernelSpec& kernel, Construction kind,
                    const UpdateRule& rule, const S0Spec& s0, double x0, long T,
                    std::uint64_t master_seed, int R, int workers, const ChainOptions& opts = {});

}  // namespace sticky
