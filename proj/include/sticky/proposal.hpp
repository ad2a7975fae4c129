#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "sticky/rng.hpp"
#include "sticky/support_set.hpp"

namespace sticky {

// The four interpolation schemes for building the proposal from the support
// set.  All of them share the same exponential tails (extended secants).
//   C1: piecewise-linear upper construction in the log domain (the classic
//       accept/reject Metropolis envelope): per interval, max/min over the
//       interval secant and its neighbours.
//   C2: the interval secant itself, exponentiated.
//   C3: uniform pieces at the taller endpoint density.
//   C4: trapezoidal (linear-in-density) pieces.
enum class Construction { C1 = 1, C2 = 2, C3 = 3, C4 = 4 };

Construction parse_construction(const std::string& s);  // "c1".."c4"
std::string to_string(Construction c);

// One contiguous piece of the proposal.  Log-linear pieces cover the
// exponential segments and tails; density-linear pieces are the trapezoids
// of construction 4.
struct Piece {
  double lo, hi;        // covers (lo, hi]; lo = -inf / hi = +inf only in tails
  bool pdf_linear = false;
  // log-linear: log q(x) = w0 + b*(x - x0) with x0 a finite anchor
  double x0 = 0, w0 = 0, b = 0;
  // density-linear: q(x) = y0 + (y1 - y0)*(x - lo)/(hi - lo)
  double y0 = 0, y1 = 0;
  // log_mass is authoritative; mass = exp(log_mass) is kept for convenience
  // and may over/underflow to inf/0 at extreme scales (a truncated rising
  // secant over a wide bounded domain can hold thousands of nats while the
  // sampler is still adapting toward an unexplored mode).
  double mass = 0;
  double log_mass = -std::numeric_limits<double>::infinity();

  double log_value(double x) const;
};

// A normalizable piecewise proposal built from a support set.  Pieces are
// kept grouped by the support interval that produced them so that a point
// insertion only recomputes the handful of affected intervals.
struct Proposal {
  Construction kind = Construction::C4;
  double lo_bound, hi_bound;                     // target support
  std::vector<std::vector<Piece>> by_interval;   // slot j = interval I_j
  std::vector<Piece> pieces;                     // flattened, in order
  // Prefix piece masses in units of exp(log_shift).  The shift (the largest
  // piece log-mass) keeps the table representable no matter how many nats a
  // transient piece holds, so adaptation never dies of double overflow.
  std::vector<double> cum;
  double log_shift = 0;
  int extra_breakpoints = 0;  // interior sub-piece boundaries (construction 1)

  // c_t = integral of the unnormalized proposal.  The plain accessor can
  // over/underflow at extreme scales; the log form never does.
  double total_mass() const {
    return cum.empty() ? 0.0 : std::exp(log_shift) * cum.back();
  }
  double log_total_mass() const {
    return cum.empty() ? -std::numeric_limits<double>::infinity()
                       : log_shift + std::log(cum.back());
  }
  double log_value(double x) const;       // log q~(x); -inf outside support
  double sample(RngStream& rng) const;

  // Support-point count plus the interpolation-line intersection points
  // (the latter only arise under construction 1).
  int nsp(std::size_t support_count) const {
    return static_cast<int>(support_count) + extra_breakpoints;
  }
};

// Build from scratch.  Throws TooFewPoints (< 3 points), InvalidTailSlope
// (an unbounded side whose tail secant does not decay), NonIntegrable.
Proposal build_proposal(const SupportSet& set, Construction kind,
                        double lo_bound, double hi_bound);

// Recompute only the intervals affected by the insertion of the point at
// `pos` (set already contains it).  Uses the cached log-values only; never
// evaluates the target.  Result identical to a full rebuild.
void update_for_insert(Proposal& prop, const SupportSet& set, int pos);

// Diagnostics against a (unnormalized) log-target on a finite window.
// l1_distance is the midpoint-grid estimate of the integral of
// |q~(x) - f(x)| between the two unnormalized densities; divide by the
// target's normalizing constant for a scale-free figure.
double l1_distance(const Proposal& prop, const std::function<double(double)>& logf,
                   double a, double b, int n);

// Largest a in [0,1] with q >= a*pi on the grid (points with pi = 0 skipped);
// c_pi is the target's normalizing constant.
double doeblin_coeff(const Proposal& prop, const std::function<double(double)>& logf,
                     double a, double b, int n, double c_pi);

}  // namespace sticky
