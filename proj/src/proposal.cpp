#include "sticky/proposal.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "sticky/errors.hpp"

namespace sticky {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative threshold below which an exponential piece degenerates to the
// uniform limit (both in mass and in sampling).
constexpr double kFlatTol = 1e-12;

struct Line {
  double x0, w0, b;  // value(x) = w0 + b*(x - x0)
  double at(double x) const { return w0 + b * (x - x0); }
};

Line secant(const SupportSet& s, int k) {
  // Line through support points k-1 and k (0-based), k in [1, m-1].
  double xa = s.point(k - 1), xb = s.point(k);
  double wa = s.logf(k - 1), wb = s.logf(k);
  return {xa, wa, (wb - wa) / (xb - xa)};
}

// Log-mass of exp(w_lo + b*(x-lo)) over a finite (lo, hi].  Anchoring at the
// taller end keeps every exponentiation argument non-positive, and working in
// logs keeps the result representable for any |b*dx| (the direct product
// overflows past ~709 nats, which truncated rising secants on wide bounded
// domains exceed routinely while the sampler is still adapting).
double log_loglin_mass(double w_lo, double b, double dx) {
  if (!(dx > 0)) return -kInf;
  double bdx = b * dx;
  if (std::abs(bdx) < kFlatTol) return w_lo + std::log(dx);
  if (b > 0) return w_lo + bdx + std::log(-std::expm1(-bdx)) - std::log(b);
  return w_lo + std::log(-std::expm1(bdx)) - std::log(-b);
}

Piece make_loglin(double lo, double hi, const Line& ln) {
  Piece p;
  p.lo = lo;
  p.hi = hi;
  p.pdf_linear = false;
  if (lo == -kInf) {  // left tail, anchored at hi
    p.x0 = hi;
    p.w0 = ln.at(hi);
    p.b = ln.b;
    p.log_mass = (ln.b > 0) ? p.w0 - std::log(ln.b) : kInf;
  } else if (hi == kInf) {  // right tail, anchored at lo
    p.x0 = lo;
    p.w0 = ln.at(lo);
    p.b = ln.b;
    p.log_mass = (ln.b < 0) ? p.w0 - std::log(-ln.b) : kInf;
  } else {
    p.x0 = lo;
    p.w0 = ln.at(lo);
    p.b = ln.b;
    p.log_mass = log_loglin_mass(p.w0, p.b, hi - lo);
  }
  p.mass = std::exp(p.log_mass);
  return p;
}

Piece make_trapezoid(double lo, double hi, double w_lo, double w_hi) {
  Piece p;
  p.lo = lo;
  p.hi = hi;
  p.pdf_linear = true;
  p.y0 = std::exp(w_lo);
  p.y1 = std::exp(w_hi);
  p.mass = 0.5 * (p.y0 + p.y1) * (hi - lo);
  p.log_mass = (p.mass > 0) ? std::log(p.mass) : -kInf;
  return p;
}

// Sub-pieces of max{A, min{B, C}} (or max{A, B} with C absent) on (a, b]:
// the active line is constant between pairwise intersection points.
void emit_active_pieces(double a, double b, const Line& A, const Line* B, const Line* C,
                        bool interior_min, std::vector<Piece>& out) {
  double tol = kFlatTol * (b - a);
  double cut[3];
  int ncut = 0;
  auto cross = [&](const Line& p, const Line& q) {
    if (p.b == q.b) return;
    double x = (q.w0 - q.b * q.x0 - p.w0 + p.b * p.x0) / (p.b - q.b);
    if (x > a + tol && x < b - tol) cut[ncut++] = x;
  };
  if (B) cross(A, *B);
  if (C) {
    cross(A, *C);
    cross(*B, *C);
  }
  std::sort(cut, cut + ncut);
  double edge[5];
  int ne = 0;
  edge[ne++] = a;
  for (int i = 0; i < ncut; ++i)
    if (cut[i] - edge[ne - 1] > tol) edge[ne++] = cut[i];
  if (b - edge[ne - 1] > tol)
    edge[ne++] = b;
  else
    edge[ne - 1] = b;

  const Line* prev = nullptr;
  for (int i = 0; i + 1 < ne; ++i) {
    double mid = 0.5 * (edge[i] + edge[i + 1]);
    const Line* act = &A;
    if (B && !interior_min) {
      if (B->at(mid) > act->at(mid)) act = B;
    } else if (B) {
      const Line* mn = (B->at(mid) <= C->at(mid)) ? B : C;
      if (mn->at(mid) > A.at(mid)) act = mn;
    }
    if (prev == act && !out.empty()) {
      // same line continues: extend the previous sub-piece
      Piece& q = out.back();
      q.hi = edge[i + 1];
      q.log_mass = log_loglin_mass(q.w0, q.b, q.hi - q.lo);
      q.mass = std::exp(q.log_mass);
    } else {
      out.push_back(make_loglin(edge[i], edge[i + 1], *act));
    }
    prev = act;
  }
}

// Pieces of interval I_j (j = 0..m) for the given construction.
std::vector<Piece> build_interval(const SupportSet& s, Construction kind, int j,
                                  double lo_bound, double hi_bound) {
  const int m = static_cast<int>(s.size());
  std::vector<Piece> out;
  if (j == 0) {
    double hi = s.point(0);
    if (lo_bound >= hi) return out;  // support starts at the first point
    Line ln = secant(s, 1);
    if (lo_bound == -kInf && !(ln.b > 0))
      throw InvalidTailSlope("left tail secant slope must be positive on unbounded support");
    out.push_back(make_loglin(lo_bound, hi, ln));
    return out;
  }
  if (j == m) {
    double lo = s.point(m - 1);
    if (hi_bound <= lo) return out;
    Line ln = secant(s, m - 1);
    if (hi_bound == kInf && !(ln.b < 0))
      throw InvalidTailSlope("right tail secant slope must be negative on unbounded support");
    out.push_back(make_loglin(lo, hi_bound, ln));
    return out;
  }

  double a = s.point(j - 1), b = s.point(j);
  switch (kind) {
    case Construction::C2:
      out.push_back(make_loglin(a, b, secant(s, j)));
      break;
    case Construction::C3: {
      Line flat{a, std::max(s.logf(j - 1), s.logf(j)), 0.0};
      out.push_back(make_loglin(a, b, flat));
      break;
    }
    case Construction::C4:
      out.push_back(make_trapezoid(a, b, s.logf(j - 1), s.logf(j)));
      break;
    case Construction::C1: {
      Line A = secant(s, j);
      if (j == 1 && j == m - 1) {
        out.push_back(make_loglin(a, b, A));  // m == 2: only one secant exists
      } else if (j == 1) {
        Line B = secant(s, 2);
        emit_active_pieces(a, b, A, &B, nullptr, false, out);
      } else if (j == m - 1) {
        Line B = secant(s, m - 2);
        emit_active_pieces(a, b, A, &B, nullptr, false, out);
      } else {
        Line B = secant(s, j - 1);
        Line C = secant(s, j + 1);
        emit_active_pieces(a, b, A, &B, &C, true, out);
      }
      break;
    }
  }
  return out;
}

void flatten(Proposal& p) {
  p.pieces.clear();
  p.cum.clear();
  p.extra_breakpoints = 0;
  // Accumulate relative to the largest piece log-mass so the cumulative
  // table stays representable whatever scale the pieces reach.
  double shift = -kInf;
  for (const auto& group : p.by_interval)
    for (const Piece& q : group) shift = std::max(shift, q.log_mass);
  if (shift == kInf) throw NonIntegrable("proposal mass is not finite");
  if (shift == -kInf) throw NonIntegrable("proposal mass is not positive");
  p.log_shift = shift;
  double run = 0;
  for (const auto& group : p.by_interval) {
    if (group.size() > 1) p.extra_breakpoints += static_cast<int>(group.size()) - 1;
    for (const Piece& q : group) {
      run += std::exp(q.log_mass - shift);
      p.pieces.push_back(q);
      p.cum.push_back(run);
    }
  }
  if (!(run > 0) || !std::isfinite(run))
    throw NonIntegrable("proposal mass is not finite and positive");
}

}  // namespace

Construction parse_construction(const std::string& s) {
  if (s == "c1") return Construction::C1;
  if (s == "c2") return Construction::C2;
  if (s == "c3") return Construction::C3;
  if (s == "c4") return Construction::C4;
  throw ValidationError("construction", "unknown construction '" + s + "'");
}

std::string to_string(Construction c) {
  switch (c) {
    case Construction::C1: return "c1";
    case Construction::C2: return "c2";
    case Construction::C3: return "c3";
    case Construction::C4: return "c4";
  }
  return "?";
}

double Piece::log_value(double x) const {
  if (pdf_linear) {
    // Interpolate from the nearer endpoint: the value at an endpoint is then
    // exact even when the two ordinates differ by hundreds of orders of
    // magnitude (anchoring at one fixed end would cancel the thin end away).
    double t = (x - lo) / (hi - lo);
    double y = (t < 0.5) ? y0 + (y1 - y0) * t : y1 + (y0 - y1) * (1.0 - t);
    return (y > 0) ? std::log(y) : -kInf;
  }
  return w0 + b * (x - x0);
}

double Proposal::log_value(double x) const {
  if (pieces.empty() || x <= pieces.front().lo || x > pieces.back().hi) return -kInf;
  auto it = std::lower_bound(pieces.begin(), pieces.end(), x,
                             [](const Piece& p, double v) { return p.hi < v; });
  if (it == pieces.end()) return -kInf;
  return it->log_value(x);
}

double Proposal::sample(RngStream& rng) const {
  double u = rng.uniform01() * cum.back();
  std::size_t i = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
  if (i >= pieces.size()) i = pieces.size() - 1;
  const Piece& p = pieces[i];

  if (p.pdf_linear) {
    double a = rng.uniform(p.lo, p.hi);
    double b = rng.uniform(p.lo, p.hi);
    double w = rng.uniform01();
    return (w < p.y0 / (p.y0 + p.y1)) ? std::min(a, b) : std::max(a, b);
  }
  if (p.lo == -kInf) return p.hi + std::log(rng.uniform_pos()) / p.b;
  if (p.hi == kInf) return p.lo + std::log1p(-rng.uniform01()) / p.b;
  double dx = p.hi - p.lo;
  double v = rng.uniform01();
  if (std::abs(p.b * dx) < kFlatTol) return p.lo + v * dx;
  // inverse CDF anchored at the taller end; arguments stay in (-1, 0]
  if (p.b > 0) return p.hi + std::log1p(-v * (-std::expm1(-p.b * dx))) / p.b;
  return p.lo + std::log1p(-v * (-std::expm1(p.b * dx))) / p.b;
}

Proposal build_proposal(const SupportSet& set, Construction kind,
                        double lo_bound, double hi_bound) {
  const int m = static_cast<int>(set.size());
  if (m < 3) throw TooFewPoints("need at least 3 support points, got " + std::to_string(m));
  Proposal p;
  p.kind = kind;
  p.lo_bound = lo_bound;
  p.hi_bound = hi_bound;
  p.by_interval.resize(m + 1);
  for (int j = 0; j <= m; ++j) p.by_interval[j] = build_interval(set, kind, j, lo_bound, hi_bound);
  flatten(p);
  return p;
}

void update_for_insert(Proposal& p, const SupportSet& set, int pos) {
  const int m = static_cast<int>(set.size());
  // The old interval `pos` splits in two; every other slot keeps its pieces
  // shifted.  Recompute a conservative window: interval j depends on at most
  // points j-2..j+1 (construction 1 reaches the furthest).
  p.by_interval.insert(p.by_interval.begin() + pos, std::vector<Piece>{});
  int lo = std::max(0, pos - 2), hi = std::min(m, pos + 3);
  for (int j = lo; j <= hi; ++j)
    p.by_interval[j] = build_interval(set, p.kind, j, p.lo_bound, p.hi_bound);
  flatten(p);
}

double l1_distance(const Proposal& prop, const std::function<double(double)>& logf,
                   double a, double b, int n) {
  double h = (b - a) / n, acc = 0;
  for (int i = 0; i < n; ++i) {
    double x = a + (i + 0.5) * h;
    acc += std::abs(std::exp(prop.log_value(x)) - std::exp(logf(x)));
  }
  return acc * h;
}

double doeblin_coeff(const Proposal& prop, const std::function<double(double)>& logf,
                     double a, double b, int n, double c_pi) {
  double h = (b - a) / n, cq = prop.total_mass();
  double best = 1.0;
  for (int i = 0; i <= n; ++i) {
    double x = a + i * h;
    double lp = logf(x);
    if (lp == -kInf) continue;
    double ratio = std::exp(prop.log_value(x) - std::log(cq) - lp + std::log(c_pi));
    best = std::min(best, ratio);
  }
  return std::max(0.0, std::min(1.0, best));
}

}  // namespace sticky
