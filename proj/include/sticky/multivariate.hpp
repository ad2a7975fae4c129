#pragma once
#include <functional>
#include <string>
#include <vector>

#include "sticky/adaptation.hpp"
#include "sticky/proposal.hpp"
#include "sticky/rng.hpp"
#include "sticky/samplers.hpp"

namespace sticky {

using MultiLogDensity = std::function<double(const std::vector<double>&)>;

struct TargetModelMulti {
  std::string name;
  int dim = 0;
  MultiLogDensity logf;
  std::vector<double> lo, hi;  // per-coordinate support
};

// Coordinate-wise sampling: each full conditional is explored with K steps
// of the sticky kernel, and the per-coordinate support set is rebuilt fresh
// from s0[j] at every visit so it never contains the conditioning state.
struct GibbsConfig {
  int dim = 0;
  std::vector<std::vector<double>> s0;  // per-coordinate initial support
  int K = 20;                           // inner kernel iterations per conditional
  KernelSpec kernel;                    // asm or asmtm:<M>
  Construction construction = Construction::C4;
  UpdateRule rule;
};

// One sweep over all coordinates; returns the updated state.  Throws
// ValidationError if an initial support set contains the coordinate's
// current value (the conditional must never interpolate its own state).
std::vector<double> gibbs_sweep(const std::vector<double>& x, const TargetModelMulti& target,
                                const GibbsConfig& cfg, RngStream& rng);

// Piecewise-constant proposal on a bounded box: per-axis point sets tile the
// box into Prod_j (m_j - 1) cells, each cell's height being the maximum of
// the target density over its 2^L corner vertices (the box analogue of the
// uniform-pieces construction).  Vertex evaluations are cached so a point
// insertion only evaluates the target on the new hyperplane.
struct GridProposal {
  std::vector<std::vector<double>> axes;  // sorted, endpoints = box bounds
  std::vector<double> lo, hi;
  std::vector<double> vertex_logf;   // row-major over axes, last axis fastest
  std::vector<double> cell_logh;     // per-cell log height
  std::vector<double> masses;        // height * volume per cell
  std::vector<double> cum;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t cells() const;
  double total_mass() const { return cum.empty() ? 0.0 : cum.back(); }
  double log_value(const std::vector<double>& x) const;  // -inf outside the box
  std::vector<double> sample(RngStream& rng) const;
};

GridProposal build_grid_proposal(const std::vector<std::vector<double>>& axis_sets,
                                 const MultiLogDensity& logf, const std::vector<double>& lo,
                                 const std::vector<double>& hi);

// Insert one point: its j-th coordinate joins axis j (exact duplicates are
// skipped per axis), and only the slabs of cells touching a new hyperplane
// are recomputed.  Equivalent to a full rebuild with the enlarged axes.
void grid_insert(GridProposal& gp, const MultiLogDensity& logf, const std::vector<double>& s);

// Independence MH on the box driven by the grid proposal, with a sticky
// update: the non-retained point is tested with the scale-free single-try
// rule and, on inclusion, its coordinates join every axis.
struct GridChainResult {
  std::vector<std::vector<double>> x;  // T states
  long accepts = 0;
  std::vector<double> total_mass;      // proposal mass after each step
};

GridChainResult run_grid_chain(const TargetModelMulti& target,
                               const std::vector<std::vector<double>>& axis_sets,
                               const std::vector<double>& x0, long T, RngStream& rng);

}  // namespace sticky
