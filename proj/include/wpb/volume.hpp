#ifndef WPB_VOLUME_HPP
#define WPB_VOLUME_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "problems.hpp"

namespace wpb
{

/// Region of points dominating `reference` that are weakly dominated by the front.
struct EnclosedRegionSpec
{
  FrontSpec front;
  ObjectiveVector reference;
};

enum class VolumeMethod { exact, monte_carlo, scalarized, limit_pinf, limit_pzero };

inline auto to_string(VolumeMethod m) -> std::string
{
  switch (m) {
    case VolumeMethod::exact: return "exact";
    case VolumeMethod::monte_carlo: return "mc";
    case VolumeMethod::scalarized: return "scalarized";
    case VolumeMethod::limit_pinf: return "pinf";
    case VolumeMethod::limit_pzero: return "pzero";
  }
  return "?";
}

inline auto parse_volume_method(const std::string& s) -> VolumeMethod
{
  if (s == "exact")
    return VolumeMethod::exact;
  if (s == "mc" || s == "monte_carlo")
    return VolumeMethod::monte_carlo;
  if (s == "scalarized")
    return VolumeMethod::scalarized;
  if (s == "pinf")
    return VolumeMethod::limit_pinf;
  if (s == "pzero")
    return VolumeMethod::limit_pzero;
  throw std::invalid_argument("unknown volume method '" + s + "' (exact, mc, scalarized, pinf, pzero)");
}

struct VolumeEstimate
{
  double value = 0.0;
  double std_error = 0.0;
  VolumeMethod method = VolumeMethod::exact;
  std::size_t samples = 0;
};

namespace detail
{
inline auto region_dim(const EnclosedRegionSpec& spec)
{
  auto m = front_dim(spec.front);
  if (spec.reference.size() != m)
    throw std::invalid_argument("volume: reference dimension differs from the front");
  return m;
}

inline auto scale_of(const FrontBounds& b)
{
  double s = 1.0;
  for (std::size_t i = 0; i < b.dim(); ++i)
    s *= b.nadir[i] - b.ideal[i];
  return s;
}

/// Solves A x = b in place with partial pivoting. False when (near) singular.
inline auto solve(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) -> bool
{
  const auto n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c]))
        piv = r;
    if (std::abs(a[piv][c]) < 1e-12)
      return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      if (f == 0.0)
        continue;
      for (std::size_t k = c; k < n; ++k)
        a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    double acc = b[c];
    for (std::size_t k = c + 1; k < n; ++k)
      acc -= a[c][k] * x[k];
    x[c] = acc / a[c][c];
  }
  return true;
}

/// Rank of a set of row vectors.
inline auto rank(std::vector<std::vector<double>> rows, double tol = 1e-9) -> std::size_t
{
  if (rows.empty())
    return 0;
  const auto cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < rows.size(); ++i)
      if (std::abs(rows[i][c]) > std::abs(rows[piv][c]))
        piv = i;
    if (std::abs(rows[piv][c]) < tol)
      continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      double f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

inline auto determinant(std::vector<std::vector<double>> a) -> double
{
  const auto n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c]))
        piv = r;
    if (a[piv][c] == 0.0)
      return 0.0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k)
        a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

struct Polytope
{
  std::vector<std::vector<double>> vertices;
  std::vector<std::set<std::size_t>> active; // constraint rows tight at each vertex
};

/// Vertices of {x : A x <= b} via all m-row subsystems.
inline auto enumerate_vertices(const std::vector<std::vector<double>>& A, const std::vector<double>& b) -> Polytope
{
  const auto rows = A.size();
  const auto m = A.empty() ? 0 : A[0].size();
  Polytope poly;
  std::vector<double> x;
  for (auto& comb : combinations(rows, m)) {
    std::vector<std::vector<double>> sa;
    std::vector<double> sb;
    for (auto r : comb) {
      sa.push_back(A[r]);
      sb.push_back(b[r]);
    }
    if (!solve(sa, sb, x))
      continue;
    bool feasible = true;
    std::set<std::size_t> tight;
    for (std::size_t r = 0; r < rows && feasible; ++r) {
      double lhs = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        lhs += A[r][k] * x[k];
      if (lhs > b[r] + 1e-9)
        feasible = false;
      else if (lhs >= b[r] - 1e-9)
        tight.insert(r);
    }
    if (!feasible)
      continue;
    bool dup = false;
    for (auto& v : poly.vertices) {
      double d = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        d = std::max(d, std::abs(v[k] - x[k]));
      if (d < 1e-8) {
        dup = true;
        break;
      }
    }
    if (!dup) {
      poly.vertices.push_back(x);
      poly.active.push_back(std::move(tight));
    }
  }
  return poly;
}

inline auto affine_rank(const Polytope& poly, const std::vector<std::size_t>& idx) -> std::size_t
{
  if (idx.size() < 2)
    return 0;
  std::vector<std::vector<double>> diffs;
  const auto& v0 = poly.vertices[idx[0]];
  for (std::size_t i = 1; i < idx.size(); ++i) {
    std::vector<double> d(v0.size());
    for (std::size_t k = 0; k < v0.size(); ++k)
      d[k] = poly.vertices[idx[i]][k] - v0[k];
    diffs.push_back(std::move(d));
  }
  return rank(std::move(diffs));
}

/// Fan triangulation: each face is coned from its vertex centroid over its facets.
inline void triangulate(const Polytope& poly, const std::vector<std::size_t>& face, std::size_t dim,
                        std::size_t rows, std::vector<std::vector<std::vector<double>>>& out)
{
  if (dim == 0) {
    out.push_back({poly.vertices[face[0]]});
    return;
  }
  const auto m = poly.vertices[0].size();
  std::vector<double> centroid(m, 0.0);
  for (auto i : face)
    for (std::size_t k = 0; k < m; ++k)
      centroid[k] += poly.vertices[i][k] / static_cast<double>(face.size());

  std::set<std::vector<std::size_t>> seen;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::size_t> sub;
    for (auto i : face)
      if (poly.active[i].count(r))
        sub.push_back(i);
    if (sub.size() < dim || sub.size() == face.size())
      continue;
    if (!seen.insert(sub).second)
      continue;
    if (affine_rank(poly, sub) != dim - 1)
      continue;
    std::vector<std::vector<std::vector<double>>> lower;
    triangulate(poly, sub, dim - 1, rows, lower);
    for (auto& simplex : lower) {
      simplex.push_back(centroid);
      out.push_back(std::move(simplex));
    }
  }
}
} // namespace detail

/// Exact volume for the linear (p = 1) case-study front by vertex enumeration and a centroid fan.
inline auto volume_exact_linear(const EnclosedRegionSpec& spec) -> VolumeEstimate
{
  const auto m = detail::region_dim(spec);
  auto* cs = std::get_if<CaseStudyFront>(&spec.front);
  if (!cs || cs->p != 1.0)
    throw std::invalid_argument("volume_exact_linear: requires a case-study front with p = 1");
  VolumeEstimate est{0.0, 0.0, VolumeMethod::exact, 0};
  auto r = cs->bounds.normalize(spec.reference);
  for (double v : r)
    if (!(v > 0.0))
      return est;

  std::vector<std::vector<double>> A;
  std::vector<double> b;
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> row(m, 0.0);
    row[j] = -1.0;
    A.push_back(row);
    b.push_back(0.0);
    row[j] = 1.0;
    A.push_back(row);
    b.push_back(r[j]);
  }
  for (std::size_t k = 2; k <= m; ++k)
    for (auto& S : combinations(m, k)) {
      std::vector<double> row(m, 0.0);
      for (auto j : S)
        row[j] = -1.0;
      A.push_back(row);
      b.push_back(1.0 - static_cast<double>(k));
    }

  auto poly = detail::enumerate_vertices(A, b);
  if (poly.vertices.size() < m + 1)
    return est;
  std::vector<std::size_t> all(poly.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    all[i] = i;
  if (detail::affine_rank(poly, all) < m)
    return est;

  std::vector<std::vector<std::vector<double>>> simplices;
  detail::triangulate(poly, all, m, A.size(), simplices);
  double total = 0.0, fact = 1.0;
  for (std::size_t k = 2; k <= m; ++k)
    fact *= static_cast<double>(k);
  for (auto& s : simplices) {
    std::vector<std::vector<double>> mat;
    for (std::size_t i = 1; i <= m; ++i) {
      std::vector<double> row(m);
      for (std::size_t k = 0; k < m; ++k)
        row[k] = s[i][k] - s[0][k];
      mat.push_back(std::move(row));
    }
    total += std::abs(detail::determinant(std::move(mat))) / fact;
  }
  est.value = total * detail::scale_of(cs->bounds);
  return est;
}

namespace detail
{
/// Smallest value of coordinate j (others held at r) that is still inside; returned from the outside bracket.
inline auto lower_extent(const FrontSpec& front, const std::vector<double>& rbar, std::size_t j) -> double
{
  auto z = rbar;
  z[j] = 0.0;
  if (weakly_dominated_normalized(front, z))
    return 0.0;
  double lo = 0.0, hi = rbar[j];
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    z[j] = mid;
    if (weakly_dominated_normalized(front, z))
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}
} // namespace detail

/// Uniform rejection sampling in the box below r, tightened to where members can exist.
inline auto volume_monte_carlo(const EnclosedRegionSpec& spec, std::size_t n_samples, std::uint64_t seed)
  -> VolumeEstimate
{
  const auto m = detail::region_dim(spec);
  if (n_samples < 1)
    throw std::invalid_argument("volume_monte_carlo: n_samples must be positive");
  VolumeEstimate est{0.0, 0.0, VolumeMethod::monte_carlo, n_samples};
  auto bounds = front_bounds(spec.front);
  auto r = bounds.normalize(spec.reference);
  for (double v : r)
    if (!(v > 0.0))
      return est;
  if (!weakly_dominated_normalized(spec.front, r))
    return est;
  std::vector<double> lo(m);
  double box = 1.0;
  for (std::size_t j = 0; j < m; ++j) {
    lo[j] = detail::lower_extent(spec.front, r, j);
    // thinner than the membership tolerance: r sits on the front itself
    if (r[j] - lo[j] <= 1e-9)
      return est;
    box *= r[j] - lo[j];
  }
  Rng rng(seed);
  std::vector<double> z(m);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t j = 0; j < m; ++j)
      z[j] = lo[j] + (r[j] - lo[j]) * rng.uniform();
    if (weakly_dominated_normalized(spec.front, z))
      ++hits;
  }
  const double n = static_cast<double>(n_samples);
  const double ph = static_cast<double>(hits) / n;
  const double scale = detail::scale_of(bounds);
  est.value = box * ph * scale;
  est.std_error = box * std::sqrt(ph * (1.0 - ph) / n) * scale;
  return est;
}

/// Box product; the p -> infinity limit.
inline auto volume_limit_pinf(std::span<const double> reference, const FrontBounds& bounds) -> double
{
  require_same_dim(reference, bounds.ideal, "volume_limit_pinf");
  double v = 1.0;
  for (std::size_t j = 0; j < reference.size(); ++j) {
    if (reference[j] < bounds.ideal[j])
      throw std::invalid_argument("volume_limit_pinf: reference below the ideal point");
    v *= reference[j] - bounds.ideal[j];
  }
  return v;
}

/// p -> 0 limit: at most one coordinate may sit below nadir.
inline auto volume_limit_pzero(std::span<const double> reference, const FrontBounds& bounds) -> double
{
  require_same_dim(reference, bounds.ideal, "volume_limit_pzero");
  const auto m = reference.size();
  std::vector<double> above(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (reference[j] < bounds.ideal[j])
      throw std::invalid_argument("volume_limit_pzero: reference below the ideal point");
    above[j] = std::max(reference[j] - bounds.nadir[j], 0.0);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double term = std::min(bounds.nadir[k], reference[k]) - bounds.ideal[k];
    for (std::size_t j = 0; j < m; ++j)
      if (j != k)
        term *= above[j];
    total += term;
  }
  double corner = 1.0;
  for (double a : above)
    corner *= a;
  return total + corner;
}

/// Area of the unit sphere's positive orthant in R^m.
inline auto orthant_sphere_area(std::size_t m) -> double
{
  const double md = static_cast<double>(m);
  return 2.0 * std::pow(std::numbers::pi, md / 2.0) / std::tgamma(md / 2.0) / std::pow(2.0, md);
}

/// Largest t with r - t*lambda still inside (normalized units).
inline auto scalarized_radius(const FrontSpec& front, std::span<const double> rbar, std::span<const double> lambda)
  -> double
{
  const auto m = rbar.size();
  double tmax = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < m; ++j)
    if (lambda[j] > 0)
      tmax = std::min(tmax, rbar[j] / lambda[j]);
  std::vector<double> z(m);
  auto inside = [&](double t) {
    for (std::size_t j = 0; j < m; ++j)
      z[j] = rbar[j] - t * lambda[j];
    return weakly_dominated_normalized(front, z);
  };
  if (!inside(0.0))
    return 0.0;
  if (inside(tmax))
    return tmax;
  double lo = 0.0, hi = tmax;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (inside(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

/// Polar integral around r over random positive directions: V = A_+ / m * E[rho^m].
inline auto volume_scalarized(const EnclosedRegionSpec& spec, std::size_t n_directions, std::uint64_t seed)
  -> VolumeEstimate
{
  const auto m = detail::region_dim(spec);
  if (n_directions < 2)
    throw std::invalid_argument("volume_scalarized: need at least two directions");
  VolumeEstimate est{0.0, 0.0, VolumeMethod::scalarized, n_directions};
  auto bounds = front_bounds(spec.front);
  auto r = bounds.normalize(spec.reference);
  for (double v : r)
    if (!(v > 0.0))
      return est;
  if (!weakly_dominated_normalized(spec.front, r))
    return est;
  Rng rng(seed);
  std::vector<double> lambda(m);
  double sum = 0.0, sum2 = 0.0;
  const double md = static_cast<double>(m);
  for (std::size_t s = 0; s < n_directions; ++s) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (auto& l : lambda) {
        l = std::abs(rng.normal());
        norm += l * l;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (auto& l : lambda)
      l /= norm;
    double v = std::pow(scalarized_radius(spec.front, r, lambda), md);
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(n_directions);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  const double c = orthant_sphere_area(m) / md * detail::scale_of(bounds);
  est.value = c * mean;
  est.std_error = c * std::sqrt(var / n);
  return est;
}

struct VolumeOptions
{
  VolumeMethod method = VolumeMethod::exact;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
};

inline auto estimate_volume(const EnclosedRegionSpec& spec, const VolumeOptions& opt) -> VolumeEstimate
{
  switch (opt.method) {
    case VolumeMethod::exact: return volume_exact_linear(spec);
    case VolumeMethod::monte_carlo: return volume_monte_carlo(spec, opt.samples, opt.seed);
    case VolumeMethod::scalarized: return volume_scalarized(spec, opt.samples, opt.seed);
    case VolumeMethod::limit_pinf:
    case VolumeMethod::limit_pzero: {
      auto b = front_bounds(spec.front);
      for (std::size_t j = 0; j < b.dim(); ++j)
        if (spec.reference[j] < b.ideal[j])
          return {0.0, 0.0, opt.method, 0};
      double v = opt.method == VolumeMethod::limit_pinf ? volume_limit_pinf(spec.reference, b)
                                                        : volume_limit_pzero(spec.reference, b);
      return {v, 0.0, opt.method, 0};
    }
  }
  throw std::invalid_argument("estimate_volume: unknown method");
}

// ---- sweeps ----

struct SweepPoint
{
  double x = 0.0; // delta or position
  VolumeEstimate estimate;
};

/// Normalized value shared by the constrained coordinates at the middle of the WPB surface.
inline auto wpb_base(double p, std::size_t nu) -> double
{
  return 1.0 - std::pow(static_cast<double>(nu), -1.0 / p);
}

/// Reference at normal offset delta from the middle of WPB_I, free coordinates at r_free (normalized).
inline auto delta_sweep_reference(const CaseStudyFront& front, const IndexSet& I, double r_free, double delta)
  -> ObjectiveVector
{
  const auto nu = I.size();
  std::vector<double> rbar(front.m, r_free);
  const double base = wpb_base(front.p, nu);
  for (auto j : I)
    rbar[j] = base + delta / std::sqrt(static_cast<double>(nu));
  return front.bounds.denormalize(rbar);
}

template <typename Fn>
auto run_sweep(const std::vector<double>& xs, const VolumeOptions& opt, Fn&& reference_at) -> std::vector<SweepPoint>
{
  std::vector<SweepPoint> out(xs.size());
  parallel_for(xs.size(), opt.workers, [&](std::size_t i) {
    auto o = opt;
    o.seed = opt.seed + i;
    out[i] = {xs[i], estimate_volume(reference_at(xs[i]), o)};
  });
  return out;
}

inline auto delta_sweep(const CaseStudyFront& front, const IndexSet& I, double r_free, const std::vector<double>& deltas,
                        const VolumeOptions& opt = {}) -> std::vector<SweepPoint>
{
  if (I.size() < 1 || I.size() >= front.m)
    throw std::invalid_argument("delta_sweep: index set size must lie in [1, m-1]");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < 0)
      throw std::invalid_argument("delta_sweep: deltas must be nonnegative");
    if (i && deltas[i] < deltas[i - 1])
      throw std::invalid_argument("delta_sweep: deltas must be ascending");
  }
  return run_sweep(deltas, opt, [&](double d) {
    return EnclosedRegionSpec{front, delta_sweep_reference(front, I, r_free, d)};
  });
}

/// Point on WPB_I moved from the middle (0) to the boundary at the first index of I (1), then offset along the normal.
inline auto midline_reference(const CaseStudyFront& front, const IndexSet& I, double delta, double position,
                              double r_free) -> ObjectiveVector
{
  if (position < 0 || position > 1)
    throw std::invalid_argument("midline_reference: position must lie in [0,1]");
  const auto nu = I.size();
  const double p = front.p;
  std::vector<double> u(nu, (1.0 - position) / static_cast<double>(nu));
  u[0] += position;
  std::vector<double> n(nu);
  bool any_inf = false;
  for (std::size_t a = 0; a < nu; ++a) {
    n[a] = std::pow(u[a], (p - 1.0) / p);
    any_inf = any_inf || std::isinf(n[a]);
  }
  if (any_inf)
    for (auto& v : n)
      v = std::isinf(v) ? 1.0 : 0.0;
  double norm = 0.0;
  for (double v : n)
    norm += v * v;
  norm = std::sqrt(norm);
  std::vector<double> rbar(front.m, r_free);
  for (std::size_t a = 0; a < nu; ++a)
    rbar[I[a]] = 1.0 - std::pow(u[a], 1.0 / p) + delta * n[a] / norm;
  return front.bounds.denormalize(rbar);
}

inline auto midline_sweep(const CaseStudyFront& front, const IndexSet& I, double delta,
                          const std::vector<double>& positions, double r_free = 1.3, const VolumeOptions& opt = {})
  -> std::vector<SweepPoint>
{
  if (I.size() < 1 || I.size() >= front.m)
    throw std::invalid_argument("midline_sweep: index set size must lie in [1, m-1]");
  return run_sweep(positions, opt, [&](double s) {
    return EnclosedRegionSpec{front, midline_reference(front, I, delta, s, r_free)};
  });
}

/// Log-log least-squares slope over the points with 0 < delta <= 0.1 and positive volume.
inline constexpr std::size_t growth_window = 5;

inline auto growth_order(const std::vector<std::pair<double, double>>& curve) -> double
{
  std::vector<std::pair<double, double>> pts;
  for (auto [d, v] : curve)
    if (d > 0 && d <= 0.1 && v > 0)
      pts.emplace_back(std::log(d), std::log(v));
  if (pts.size() < 3)
    throw std::invalid_argument("growth_order: fewer than 3 usable points with 0 < delta <= 0.1");
  // higher-order terms bend the curve well before 0.1 when p != 1; keep only the smallest deltas
  std::sort(pts.begin(), pts.end());
  if (pts.size() > growth_window)
    pts.resize(growth_window);
  double mx = 0, my = 0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0, sxx = 0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0)
    throw std::invalid_argument("growth_order: all deltas coincide");
  return sxy / sxx;
}

inline auto growth_order(const std::vector<SweepPoint>& curve) -> double
{
  std::vector<std::pair<double, double>> c;
  for (auto& p : curve)
    c.emplace_back(p.x, p.estimate.value);
  return growth_order(c);
}

} // namespace wpb

#endif
