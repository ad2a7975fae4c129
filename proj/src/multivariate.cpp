#include "sticky/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sticky/errors.hpp"
#include "sticky/targets.hpp"

namespace sticky {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t count_of(const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::size_t flat_of(const std::vector<int>& idx, const std::vector<int>& dims) {
  std::size_t f = 0;
  for (std::size_t j = 0; j < dims.size(); ++j) f = f * dims[j] + idx[j];
  return f;
}

// Visit every multi-index of `dims` in row-major order (last axis fastest);
// `flat` tracks the linear position.
template <class F>
void for_each_index(const std::vector<int>& dims, F&& f) {
  const int L = static_cast<int>(dims.size());
  std::vector<int> idx(L, 0);
  const std::size_t n = count_of(dims);
  for (std::size_t flat = 0; flat < n; ++flat) {
    f(idx, flat);
    for (int j = L; j-- > 0;) {
      if (++idx[j] < dims[j]) break;
      idx[j] = 0;
    }
  }
}

std::vector<int> vertex_dims(const GridProposal& gp) {
  std::vector<int> d(gp.axes.size());
  for (std::size_t j = 0; j < gp.axes.size(); ++j) d[j] = static_cast<int>(gp.axes[j].size());
  return d;
}

std::vector<int> cell_dims(const GridProposal& gp) {
  std::vector<int> d = vertex_dims(gp);
  for (int& v : d) --v;
  return d;
}

double cell_height(const GridProposal& gp, const std::vector<int>& cidx,
                   const std::vector<int>& vdims) {
  const int L = gp.dim();
  double h = kNegInf;
  std::vector<int> corner(cidx);
  for (unsigned mask = 0; mask < (1u << L); ++mask) {
    for (int j = 0; j < L; ++j) corner[j] = cidx[j] + ((mask >> j) & 1u);
    h = std::max(h, gp.vertex_logf[flat_of(corner, vdims)]);
  }
  return h;
}

double cell_volume(const GridProposal& gp, const std::vector<int>& cidx) {
  double v = 1;
  for (int j = 0; j < gp.dim(); ++j) v *= gp.axes[j][cidx[j] + 1] - gp.axes[j][cidx[j]];
  return v;
}

void rebuild_cum(GridProposal& gp) {
  gp.cum.resize(gp.masses.size());
  double acc = 0;
  for (std::size_t i = 0; i < gp.masses.size(); ++i) {
    acc += gp.masses[i];
    gp.cum[i] = acc;
  }
  if (!(acc > 0) || !std::isfinite(acc))
    throw NonIntegrable("grid proposal has non-positive or non-finite total mass");
}

void rebuild_all_cells(GridProposal& gp) {
  const auto vdims = vertex_dims(gp);
  const auto cdims = cell_dims(gp);
  gp.cell_logh.assign(count_of(cdims), kNegInf);
  gp.masses.assign(count_of(cdims), 0.0);
  for_each_index(cdims, [&](const std::vector<int>& cidx, std::size_t flat) {
    double h = cell_height(gp, cidx, vdims);
    gp.cell_logh[flat] = h;
    gp.masses[flat] = std::exp(h) * cell_volume(gp, cidx);
  });
  rebuild_cum(gp);
}

// Add one point to one axis: evaluates the target only on the inserted
// hyperplane, then rebuilds the two touching cell slabs and remaps the rest.
void insert_axis(GridProposal& gp, const MultiLogDensity& logf, int ax, double v) {
  auto& A = gp.axes[ax];
  auto it = std::lower_bound(A.begin(), A.end(), v);
  if (it != A.end() && *it == v) return;  // duplicate abscissa: skipped
  const int p = static_cast<int>(it - A.begin());

  const auto vdims_old = vertex_dims(gp);
  const auto cdims_old = cell_dims(gp);
  A.insert(it, v);
  const auto vdims_new = vertex_dims(gp);
  const auto cdims_new = cell_dims(gp);

  std::vector<double> vnew(count_of(vdims_new));
  std::vector<double> point(gp.dim());
  std::vector<int> old_idx(gp.dim());
  for_each_index(vdims_new, [&](const std::vector<int>& idx, std::size_t flat) {
    if (idx[ax] == p) {
      for (int j = 0; j < gp.dim(); ++j) point[j] = gp.axes[j][idx[j]];
      vnew[flat] = logf(point);
    } else {
      old_idx = idx;
      if (old_idx[ax] > p) --old_idx[ax];
      vnew[flat] = gp.vertex_logf[flat_of(old_idx, vdims_old)];
    }
  });
  gp.vertex_logf = std::move(vnew);

  std::vector<double> lnew(count_of(cdims_new)), mnew(count_of(cdims_new));
  for_each_index(cdims_new, [&](const std::vector<int>& cidx, std::size_t flat) {
    if (cidx[ax] == p - 1 || cidx[ax] == p) {
      double h = cell_height(gp, cidx, vdims_new);
      lnew[flat] = h;
      mnew[flat] = std::exp(h) * cell_volume(gp, cidx);
    } else {
      old_idx = cidx;
      if (old_idx[ax] > p) --old_idx[ax];
      std::size_t of = flat_of(old_idx, cdims_old);
      lnew[flat] = gp.cell_logh[of];
      mnew[flat] = gp.masses[of];
    }
  });
  gp.cell_logh = std::move(lnew);
  gp.masses = std::move(mnew);
  rebuild_cum(gp);
}

}  // namespace

std::size_t GridProposal::cells() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size() - 1;
  return n;
}

double GridProposal::log_value(const std::vector<double>& x) const {
  const int L = dim();
  std::vector<int> cidx(L);
  for (int j = 0; j < L; ++j) {
    if (x[j] < lo[j] || x[j] > hi[j]) return kNegInf;
    auto it = std::lower_bound(axes[j].begin(), axes[j].end(), x[j]);
    int k = static_cast<int>(it - axes[j].begin());
    cidx[j] = std::max(0, k - 1);
  }
  std::vector<int> cd(L);
  for (int j = 0; j < L; ++j) cd[j] = static_cast<int>(axes[j].size()) - 1;
  return cell_logh[flat_of(cidx, cd)];
}

std::vector<double> GridProposal::sample(RngStream& rng) const {
  const double u = rng.uniform01() * total_mass();
  auto it = std::lower_bound(cum.begin(), cum.end(), u);
  std::size_t flat = std::min<std::size_t>(it - cum.begin(), cum.size() - 1);
  const int L = dim();
  std::vector<int> cidx(L);
  for (int j = L; j-- > 0;) {
    std::size_t w = axes[j].size() - 1;
    cidx[j] = static_cast<int>(flat % w);
    flat /= w;
  }
  std::vector<double> x(L);
  for (int j = 0; j < L; ++j) x[j] = rng.uniform(axes[j][cidx[j]], axes[j][cidx[j] + 1]);
  return x;
}

GridProposal build_grid_proposal(const std::vector<std::vector<double>>& axis_sets,
                                 const MultiLogDensity& logf, const std::vector<double>& lo,
                                 const std::vector<double>& hi) {
  const int L = static_cast<int>(axis_sets.size());
  if (L == 0) throw EmptyAxis("no axes given");
  if (lo.size() != axis_sets.size() || hi.size() != axis_sets.size())
    throw InvalidShape("box bounds and axis count disagree");
  GridProposal gp;
  gp.lo = lo;
  gp.hi = hi;
  gp.axes.resize(L);
  for (int j = 0; j < L; ++j) {
    auto a = axis_sets[j];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.size() < 2) throw EmptyAxis("axis " + std::to_string(j) + " needs at least 2 points");
    if (a.front() != lo[j] || a.back() != hi[j])
      throw ValidationError("axes", "axis " + std::to_string(j) + " must span the box exactly");
    gp.axes[j] = std::move(a);
  }
  const auto vdims = vertex_dims(gp);
  gp.vertex_logf.resize(count_of(vdims));
  std::vector<double> point(L);
  for_each_index(vdims, [&](const std::vector<int>& idx, std::size_t flat) {
    for (int j = 0; j < L; ++j) point[j] = gp.axes[j][idx[j]];
    gp.vertex_logf[flat] = logf(point);
  });
  rebuild_all_cells(gp);
  return gp;
}

void grid_insert(GridProposal& gp, const MultiLogDensity& logf, const std::vector<double>& s) {
  if (static_cast<int>(s.size()) != gp.dim())
    throw InvalidShape("insertion point dimension mismatch");
  for (int j = 0; j < gp.dim(); ++j)
    if (s[j] < gp.lo[j] || s[j] > gp.hi[j])
      throw ValidationError("point", "grid insertion point outside the box");
  for (int j = 0; j < gp.dim(); ++j) insert_axis(gp, logf, j, s[j]);
}

std::vector<double> gibbs_sweep(const std::vector<double>& x, const TargetModelMulti& target,
                                const GibbsConfig& cfg, RngStream& rng) {
  const int L = cfg.dim;
  if (static_cast<int>(x.size()) != L || target.dim != L ||
      static_cast<int>(cfg.s0.size()) != L)
    throw InvalidShape("state/target/config dimensions disagree");
  if (cfg.K < 1) throw ValidationError("K", "inner iteration count must be >= 1");
  if (cfg.kernel.kind != KernelSpec::Kind::Asm && cfg.kernel.kind != KernelSpec::Kind::Asmtm)
    throw ValidationError("kernel", "coordinate sampler must be asm or asmtm");
  const int M = cfg.kernel.kind == KernelSpec::Kind::Asmtm ? cfg.kernel.M : 1;

  std::vector<double> cur = x;
  for (int j = 0; j < L; ++j) {
    for (double s : cfg.s0[j])
      if (s == cur[j])
        throw ValidationError("s0", "initial support for coordinate " + std::to_string(j) +
                                        " contains the current state");
    TargetModel cond;
    cond.name = target.name + "|" + std::to_string(j);
    cond.lo = target.lo[j];
    cond.hi = target.hi[j];
    cond.x0 = cur[j];
    cond.logf = [y = cur, j, &target](double v) mutable {
      y[j] = v;
      return target.logf(y);
    };
    cond.true_mean = std::numeric_limits<double>::quiet_NaN();
    ChainState st = init_chain(cond, cfg.construction, cfg.s0[j], cur[j]);
    for (int k = 0; k < cfg.K; ++k) asm_step(st, cond, cfg.rule, M, rng);
    cur[j] = st.x;
  }
  return cur;
}

GridChainResult run_grid_chain(const TargetModelMulti& target,
                               const std::vector<std::vector<double>>& axis_sets,
                               const std::vector<double>& x0, long T, RngStream& rng) {
  GridProposal gp = build_grid_proposal(axis_sets, target.logf, target.lo, target.hi);
  const UpdateRule rule;  // scale-free single-try test
  GridChainResult res;
  res.x.reserve(T);
  res.total_mass.reserve(T);
  std::vector<double> x = x0;
  double logpi_x = target.logf(x);
  for (long t = 0; t < T; ++t) {
    std::vector<double> y = gp.sample(rng);
    double logpi_y = target.logf(y);
    double la = (logpi_y - gp.log_value(y)) - (logpi_x - gp.log_value(x));
    bool acc = rng.uniform01() < std::min(1.0, std::exp(la));
    std::vector<double> z = acc ? x : y;  // the non-retained point
    double logpi_z = acc ? logpi_x : logpi_y;
    double eta = rule.include_prob(logpi_z, gp.log_value(z));
    bool ins = rng.uniform01() < eta;
    if (acc) {
      x = y;
      logpi_x = logpi_y;
      ++res.accepts;
    }
    if (ins) grid_insert(gp, target.logf, z);
    res.x.push_back(x);
    res.total_mass.push_back(gp.total_mass());
  }
  return res;
}

}  // namespace sticky
