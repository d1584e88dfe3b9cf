#ifndef WPB_METRICS_HPP
#define WPB_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "core.hpp"
#include "evolve.hpp"
#include "problems.hpp"

namespace wpb
{

struct BaselineSet
{
  enum class Origin { pf_sample, ideal_union };

  std::vector<ObjectiveVector> points;
  Origin origin = Origin::pf_sample;
};

namespace detail
{
inline auto hv_recursive(std::vector<ObjectiveVector> pts, std::span<const double> ref, std::size_t k) -> double
{
  if (pts.empty())
    return 0.0;
  if (k == 1) {
    double best = ref[0];
    for (auto& p : pts)
      best = std::min(best, p[0]);
    return ref[0] - best;
  }
  std::sort(pts.begin(), pts.end(), [k](auto& a, auto& b) { return a[k - 1] < b[k - 1]; });
  if (k == 2) {
    // sweep in the last coordinate, keeping the running minimum of the first
    double vol = 0.0, best = ref[0];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      best = std::min(best, pts[i][0]);
      double top = i + 1 < pts.size() ? pts[i + 1][1] : ref[1];
      vol += (ref[0] - best) * (top - pts[i][1]);
    }
    return vol;
  }
  double vol = 0.0;
  std::vector<ObjectiveVector> slice;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    // keep only the slice's nondominated members in the first k-1 coordinates
    ObjectiveVector head(pts[i].begin(), pts[i].begin() + static_cast<std::ptrdiff_t>(k - 1));
    bool covered = false;
    for (auto& s : slice)
      if (std::equal(s.begin(), s.end(), head.begin(), [](double a, double b) { return a <= b; })) {
        covered = true;
        break;
      }
    if (!covered) {
      std::erase_if(slice, [&](const ObjectiveVector& s) {
        return std::equal(head.begin(), head.end(), s.begin(), [](double a, double b) { return a <= b; });
      });
      slice.push_back(std::move(head));
    }
    double top = i + 1 < pts.size() ? pts[i + 1][k - 1] : ref[k - 1];
    double h = top - pts[i][k - 1];
    if (h > 0)
      vol += hv_recursive(slice, ref, k - 1) * h;
  }
  return vol;
}
} // namespace detail

/// Lebesgue measure of the union of boxes [z, reference]; points not strictly below the reference add nothing.
inline auto hypervolume(const std::vector<ObjectiveVector>& set, std::span<const double> reference) -> double
{
  const auto m = reference.size();
  if (m < 1)
    throw std::invalid_argument("hypervolume: empty reference");
  std::vector<ObjectiveVector> pts;
  for (auto& z : set) {
    require_same_dim(z, reference, "hypervolume");
    bool inside = true;
    for (std::size_t j = 0; j < m; ++j)
      inside = inside && z[j] < reference[j];
    if (inside)
      pts.push_back(z);
  }
  return detail::hv_recursive(std::move(pts), reference, m);
}

/// Mean distance from each baseline point to its nearest approximation point, both normalized by bounds.
inline auto igd(const std::vector<ObjectiveVector>& approx, const BaselineSet& baseline, const FrontBounds& bounds)
  -> double
{
  if (approx.empty())
    throw std::invalid_argument("igd: empty approximation set");
  if (baseline.points.empty())
    throw std::invalid_argument("igd: empty baseline");
  std::vector<ObjectiveVector> a;
  for (auto& z : approx) {
    require_same_dim(z, bounds.ideal, "igd");
    a.push_back(bounds.normalize(z));
  }
  double total = 0.0;
  for (auto& b : baseline.points) {
    require_same_dim(b, bounds.ideal, "igd");
    auto bn = bounds.normalize(b);
    double best = std::numeric_limits<double>::infinity();
    for (auto& z : a) {
      double d = 0.0;
      for (std::size_t j = 0; j < z.size(); ++j)
        d += (z[j] - bn[j]) * (z[j] - bn[j]);
      best = std::min(best, d);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(baseline.points.size());
}

/// Lattice image of the position function; h = 50 gives more than C(50+m-1, m-1) lattice points before deduplication.
inline auto pf_baseline(const ProblemInstance& inst, std::size_t h = 50) -> BaselineSet
{
  return {pf_sample(inst, h), BaselineSet::Origin::pf_sample};
}

/// Union of final populations of `runs` seeded runs on the position-only variant of the instance.
inline auto build_ideal_baseline(const ProblemInstance& inst, const EvolutionConfig& config, std::size_t runs,
                                 std::uint64_t seed, std::size_t workers = 1) -> BaselineSet
{
  if (runs < 1)
    throw std::invalid_argument("build_ideal_baseline: runs must be at least 1");
  auto pos = inst.position_only();
  std::vector<std::vector<ObjectiveVector>> finals(runs);
  parallel_for(runs, workers, [&](std::size_t r) {
    auto cfg = config;
    cfg.seed = seed + r;
    finals[r] = run(pos, cfg).final_objectives();
  });
  BaselineSet out;
  out.origin = BaselineSet::Origin::ideal_union;
  for (auto& f : finals)
    out.points.insert(out.points.end(), f.begin(), f.end());
  return out;
}

} // namespace wpb

#endif
