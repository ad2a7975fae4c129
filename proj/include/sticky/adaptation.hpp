#pragma once
#include <string>
#include <vector>

#include "sticky/rng.hpp"

namespace sticky {

// Test for adding a non-retained point z to the support set: z joins with
// probability eta(d(z)) where d measures the proposal/target mismatch at z.
// Distances take the *unnormalized* log values (target and proposal pieces
// live on the same scale because the pieces interpolate the target).
struct UpdateRule {
  enum class Kind { RandomExp, Threshold, RatioPower };
  Kind kind = Kind::RatioPower;
  double eps = 0.01;   // Threshold only
  double beta = 1.0;   // RatioPower only

  // RandomExp / Threshold use d = |pi(z) - q(z)| in the density domain;
  // RatioPower uses d = 1 - min(pi,q)/max(pi,q), which is scale-free.
  double distance(double logpi, double logq) const;
  double eta(double d) const;
  // Convenience: eta(distance(...)).
  double include_prob(double logpi, double logq) const;

  static UpdateRule parse(const std::string& name, double eps, double beta);
  std::string name() const;
};

// Two-step update for the multiple-try kernel: among the non-retained points
// z_1..z_M with weights w_i = pi(z_i)/q(z_i), at most one is selected for
// inclusion.  With phi_i = max{w_i, 1/w_i} the selection probabilities are
//   eta_i = (phi_i - 1) / sum_j phi_j,   keep = M / sum_j phi_j,
// which sum to one.  Computed in a shifted form so that huge |log w| cannot
// overflow: with l_i = |log w_i| and L = max l_i,
//   eta_i = (e^{l_i - L} - e^{-L}) / D,  keep = M e^{-L} / D,  D = sum e^{l_j - L}.
// For M = 1 this reduces to eta = 1 - e^{-l}, the RatioPower(beta=1) rule.
//
// Returns the index of the selected z, or -1 for "keep the set unchanged".
// Consumes exactly one uniform draw.
int select_update_candidate(const std::vector<double>& logw, RngStream& rng);

// The selection probabilities themselves (eta_1..eta_M, keep) for testing.
std::vector<double> update_candidate_probs(const std::vector<double>& logw);

}  // namespace sticky
