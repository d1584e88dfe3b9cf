#ifndef WPB_WPB_HPP
#define WPB_WPB_HPP

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "core.hpp"
#include "problems.hpp"

namespace wpb
{

/// One WPB category member. Coordinates in index_set sit on a surface; the rest are free above a floor.
struct WpbDescriptor
{
  enum class Kind {
    flange, // free coordinates pinned at nadir on the front, flange grows above it
    outer,  // constrained coordinates at the ideal, free part rides on a lower-dimensional subfront
    gap     // G2 only: the jump of a discontinuous front along one axis
  };

  IndexSet index_set;
  std::size_t nu = 0;
  FrontSpec front;
  Kind kind = Kind::flange;
  std::size_t gap_axis = 0;
  /// objective-unit range of each free coordinate, ordered as index_set.complement(m)
  std::vector<std::pair<double, double>> extent;

  auto m() const { return front_dim(front); }
  auto free_indices() const { return index_set.complement(m()); }

  auto label() const -> std::string
  {
    std::string s = "nu" + std::to_string(nu) + "_" + index_set.label();
    if (kind == Kind::outer && front.index() == 1 && std::get<ProblemInstance>(front).generator == Generator::G2)
      s += "_outer";
    if (kind == Kind::gap)
      s += "_gap";
    return s;
  }
};

/// Box in the free coordinates, normalized units.
struct FreeBox
{
  std::vector<double> lo;
  std::vector<double> hi;
};

struct WpbSample
{
  WpbDescriptor descriptor;
  std::size_t resolution = 0;
  FrontBounds bounds;
  std::vector<std::vector<double>> surface;        // normalized values of the index_set coordinates
  std::vector<std::vector<double>> surface_params; // simplex weights that produced each surface point
  std::vector<FreeBox> boxes;

  auto empty() const { return surface.empty() || boxes.empty(); }

  /// Materialized objective vectors. Single box: full grid; many boxes: one diagonal per box.
  auto points() const -> std::vector<ObjectiveVector>
  {
    const auto m = bounds.dim();
    const auto& I = descriptor.index_set;
    const auto free = descriptor.free_indices();
    const std::size_t k = free.size();
    const std::size_t r = std::max<std::size_t>(resolution, 2);
    std::vector<std::vector<double>> free_pts;
    auto lerp = [](double a, double b, std::size_t i, std::size_t n) {
      return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    if (boxes.size() == 1) {
      const auto& bx = boxes[0];
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        std::vector<double> w(k);
        for (std::size_t j = 0; j < k; ++j)
          w[j] = lerp(bx.lo[j], bx.hi[j], idx[j], r);
        free_pts.push_back(std::move(w));
        std::size_t j = 0;
        while (j < k && ++idx[j] == r)
          idx[j++] = 0;
        if (j == k)
          break;
      }
    } else {
      for (const auto& bx : boxes)
        for (std::size_t i = 0; i < r; ++i) {
          std::vector<double> w(k);
          for (std::size_t j = 0; j < k; ++j)
            w[j] = lerp(bx.lo[j], bx.hi[j], i, r);
          free_pts.push_back(std::move(w));
        }
    }
    std::vector<ObjectiveVector> out;
    out.reserve(surface.size() * free_pts.size());
    for (const auto& s : surface)
      for (const auto& w : free_pts) {
        ObjectiveVector zbar(m);
        for (std::size_t a = 0; a < I.size(); ++a)
          zbar[I[a]] = s[a];
        for (std::size_t a = 0; a < k; ++a)
          zbar[free[a]] = w[a];
        out.push_back(bounds.denormalize(zbar));
      }
    return out;
  }
};

inline auto default_resolution(std::size_t m) -> std::size_t
{
  if (m <= 3)
    return 200;
  if (m == 4)
    return 40;
  return 20;
}

namespace detail
{
// which flavour of geometry the front has, with per-axis shape and flange
struct Geometry
{
  Generator gen = Generator::CaseStudy;
  std::vector<double> p, ell, d, gap;
  FrontBounds bounds;
};

inline auto geometry(const FrontSpec& front) -> Geometry
{
  Geometry g;
  if (auto* cs = std::get_if<CaseStudyFront>(&front)) {
    if (cs->is_box())
      throw std::invalid_argument("wpb: the box front (p = inf) has no surface parametrization");
    g.gen = Generator::CaseStudy;
    g.p.assign(cs->m, cs->p);
    g.ell.assign(cs->m, cs->flange);
    g.bounds = cs->bounds;
    return g;
  }
  const auto& inst = std::get<ProblemInstance>(front);
  g.gen = inst.generator;
  g.p = inst.params.p;
  g.ell = inst.params.ell;
  g.d = inst.params.d;
  if (inst.params.gap)
    g.gap = *inst.params.gap;
  g.bounds = inst.bounds();
  return g;
}

inline auto pick(const std::vector<double>& v, const std::vector<std::size_t>& idx)
{
  std::vector<double> out;
  for (auto i : idx)
    out.push_back(v[i]);
  return out;
}

/// 1 - sum of d over the complement, floored at zero.
inline auto g1_slack(const Geometry& g, const std::vector<std::size_t>& free)
{
  double s = 0.0;
  for (auto j : free)
    s += g.d[j];
  return std::max(0.0, 1.0 - s);
}

inline auto g2_map(double yhat, double d, double gap, double p)
{
  double y = yhat > d ? yhat + gap : yhat;
  return std::pow(y / (1.0 + gap), p);
}

inline auto g2_jump(const Geometry& g, std::size_t k)
{
  double lo = std::pow(g.d[k] / (1.0 + g.gap[k]), g.p[k]);
  double hi = std::min(std::pow((g.d[k] + g.gap[k]) / (1.0 + g.gap[k]), g.p[k]), lo * (1.0 + g.ell[k]));
  return std::pair{lo, hi};
}
} // namespace detail

/// All nonempty WPB categories of the front.
inline auto enumerate_wpbs(const FrontSpec& front) -> std::vector<WpbDescriptor>
{
  auto geo = detail::geometry(front);
  const auto m = geo.bounds.dim();
  const auto& ide = geo.bounds.ideal;
  const auto& nad = geo.bounds.nadir;
  std::vector<WpbDescriptor> out;
  for (std::size_t nu = 1; nu < m; ++nu) {
    for (auto& comb : combinations(m, nu)) {
      IndexSet I(comb);
      auto free = I.complement(m);
      bool open = true;
      for (auto j : free)
        open = open && geo.ell[j] > 0;
      if (!open)
        continue;
      WpbDescriptor dsc;
      dsc.index_set = I;
      dsc.nu = nu;
      dsc.front = front;
      bool at_nadir = geo.gen == Generator::CaseStudy || (geo.gen == Generator::G1 && detail::g1_slack(geo, free) > 1e-12);
      dsc.kind = at_nadir ? WpbDescriptor::Kind::flange : WpbDescriptor::Kind::outer;
      for (auto j : free) {
        double span = nad[j] - ide[j];
        double lo = at_nadir ? nad[j] : ide[j];
        dsc.extent.emplace_back(lo, nad[j] + span * geo.ell[j]);
      }
      out.push_back(std::move(dsc));
    }
  }
  if (geo.gen == Generator::G2) {
    for (std::size_t k = 0; k < m; ++k) {
      if (geo.gap[k] <= 0 || geo.d[k] >= 1.0)
        continue;
      auto [lo, hi] = detail::g2_jump(geo, k);
      if (!(hi > lo))
        continue;
      std::vector<std::size_t> members;
      for (std::size_t j = 0; j < m; ++j)
        if (j != k)
          members.push_back(j);
      WpbDescriptor dsc;
      dsc.index_set = IndexSet(members);
      dsc.nu = m - 1;
      dsc.front = front;
      dsc.kind = WpbDescriptor::Kind::gap;
      dsc.gap_axis = k;
      double span = nad[k] - ide[k];
      dsc.extent.emplace_back(ide[k] + span * lo, ide[k] + span * hi);
      out.push_back(std::move(dsc));
    }
  }
  return out;
}

/// Grid sample of one descriptor. resolution counts points per surface edge and per free axis.
inline auto sample_wpb(const WpbDescriptor& desc, std::size_t resolution) -> WpbSample
{
  if (resolution < 2)
    throw std::invalid_argument("sample_wpb: resolution must be at least 2");
  auto geo = detail::geometry(desc.front);
  const auto m = geo.bounds.dim();
  const auto& I = desc.index_set.members();
  const auto free = desc.index_set.complement(m);
  const auto nu = I.size();

  WpbSample out;
  out.descriptor = desc;
  out.resolution = resolution;
  out.bounds = geo.bounds;

  auto push_surface = [&](std::vector<double> zI, std::vector<double> u) {
    out.surface.push_back(std::move(zI));
    out.surface_params.push_back(std::move(u));
  };
  const auto lattice = simplex_lattice(nu, resolution - 1);

  auto one_box_at_nadir = [&] {
    FreeBox bx;
    for (auto j : free) {
      bx.lo.push_back(1.0);
      bx.hi.push_back(1.0 + geo.ell[j]);
    }
    out.boxes.push_back(std::move(bx));
  };
  // boxes [h, h*(1+ell)] over a lattice of the free face
  auto subfront_boxes = [&](auto&& h_of) {
    for (auto& w : simplex_lattice(free.size(), resolution - 1)) {
      auto h = h_of(w);
      FreeBox bx;
      for (std::size_t a = 0; a < free.size(); ++a) {
        bx.lo.push_back(h[a]);
        bx.hi.push_back(h[a] * (1.0 + geo.ell[free[a]]));
      }
      out.boxes.push_back(std::move(bx));
    }
  };

  switch (geo.gen) {
    case Generator::CaseStudy: {
      for (auto& u : lattice) {
        std::vector<double> zI(nu);
        for (std::size_t a = 0; a < nu; ++a)
          zI[a] = 1.0 - std::pow(u[a], 1.0 / geo.p[I[a]]);
        push_surface(std::move(zI), u);
      }
      one_box_at_nadir();
      break;
    }
    case Generator::G1: {
      const double c = detail::g1_slack(geo, free);
      if (desc.kind == WpbDescriptor::Kind::flange) {
        auto dI = detail::pick(geo.d, I);
        std::vector<double> scaled(nu);
        for (std::size_t a = 0; a < nu; ++a)
          scaled[a] = dI[a] / c;
        for (auto& u : lattice) {
          auto y = clip_to_d(u, scaled);
          std::vector<double> zI(nu);
          for (std::size_t a = 0; a < nu; ++a)
            zI[a] = std::pow(y[a] * c / dI[a], geo.p[I[a]]);
          push_surface(std::move(zI), u);
        }
        one_box_at_nadir();
      } else {
        push_surface(std::vector<double>(nu, 0.0), std::vector<double>(nu, 1.0 / static_cast<double>(nu)));
        auto dF = detail::pick(geo.d, free);
        subfront_boxes([&](const std::vector<double>& w) {
          auto y = clip_to_d(w, dF);
          std::vector<double> h(free.size());
          for (std::size_t a = 0; a < free.size(); ++a)
            h[a] = std::pow(y[a] / dF[a], geo.p[free[a]]);
          return h;
        });
      }
      break;
    }
    case Generator::G2: {
      if (desc.kind == WpbDescriptor::Kind::gap) {
        const auto k = desc.gap_axis;
        const double mass = 1.0 - geo.d[k];
        for (auto& u : lattice) {
          std::vector<double> zI(nu);
          for (std::size_t a = 0; a < nu; ++a)
            zI[a] = detail::g2_map(u[a] * mass, geo.d[I[a]], geo.gap[I[a]], geo.p[I[a]]);
          push_surface(std::move(zI), u);
        }
        auto [lo, hi] = detail::g2_jump(geo, k);
        out.boxes.push_back(FreeBox{{lo}, {hi}});
      } else {
        push_surface(std::vector<double>(nu, 0.0), std::vector<double>(nu, 1.0 / static_cast<double>(nu)));
        subfront_boxes([&](const std::vector<double>& w) {
          std::vector<double> h(free.size());
          for (std::size_t a = 0; a < free.size(); ++a) {
            auto j = free[a];
            h[a] = detail::g2_map(w[a], geo.d[j], geo.gap[j], geo.p[j]);
          }
          return h;
        });
      }
      break;
    }
  }
  return out;
}

inline auto sample_all(const FrontSpec& front, std::size_t resolution) -> std::vector<WpbSample>
{
  std::vector<WpbSample> out;
  for (auto& d : enumerate_wpbs(front))
    out.push_back(sample_wpb(d, resolution));
  return out;
}

namespace detail
{
struct Nearest
{
  double dist2 = std::numeric_limits<double>::infinity();
  std::size_t surface_index = 0;
};

inline auto nearest(std::span<const double> zbar, const WpbSample& sample) -> Nearest
{
  const auto& I = sample.descriptor.index_set.members();
  const auto free = sample.descriptor.free_indices();
  Nearest best;
  for (std::size_t s = 0; s < sample.surface.size(); ++s) {
    double acc = 0.0;
    for (std::size_t a = 0; a < I.size() && acc < best.dist2; ++a) {
      double t = zbar[I[a]] - sample.surface[s][a];
      acc += t * t;
    }
    if (acc < best.dist2) {
      best.dist2 = acc;
      best.surface_index = s;
    }
  }
  double boxd = std::numeric_limits<double>::infinity();
  for (const auto& bx : sample.boxes) {
    double acc = 0.0;
    for (std::size_t a = 0; a < free.size() && acc < boxd; ++a) {
      double v = zbar[free[a]];
      double t = std::clamp(v, bx.lo[a], bx.hi[a]) - v;
      acc += t * t;
    }
    boxd = std::min(boxd, acc);
  }
  best.dist2 += boxd;
  return best;
}
} // namespace detail

/// Euclidean distance, in normalized objective units, from z to the sampled WPB.
inline auto distance_to_wpb(std::span<const double> z, const WpbSample& sample) -> double
{
  if (sample.empty())
    throw std::invalid_argument("distance_to_wpb: empty sample");
  if (z.size() != sample.bounds.dim())
    throw std::invalid_argument("distance_to_wpb: dimension mismatch");
  auto zbar = sample.bounds.normalize(z);
  return std::sqrt(detail::nearest(zbar, sample).dist2);
}

/// Simplex weights of the surface point nearest to z; a position along the WPB.
inline auto nearest_surface_params(std::span<const double> z, const WpbSample& sample) -> std::vector<double>
{
  if (sample.empty())
    throw std::invalid_argument("nearest_surface_params: empty sample");
  auto zbar = sample.bounds.normalize(z);
  return sample.surface_params[detail::nearest(zbar, sample).surface_index];
}

using Population = std::vector<ObjectiveVector>;

/// gamma_nu: vectors within threshold of some WPB of category nu, counted once per category.
inline auto count_drs(const std::vector<Population>& history, const std::vector<WpbSample>& samples,
                      double threshold = 0.05) -> std::map<std::size_t, std::size_t>
{
  if (threshold < 0)
    throw std::invalid_argument("count_drs: threshold must be nonnegative");
  std::map<std::size_t, std::size_t> gamma;
  for (const auto& s : samples)
    gamma[s.descriptor.nu] = 0;
  const double t2 = threshold * threshold;
  for (const auto& pop : history)
    for (const auto& z : pop) {
      std::map<std::size_t, bool> hit;
      for (const auto& s : samples) {
        auto nu = s.descriptor.nu;
        if (hit[nu])
          continue;
        auto zbar = s.bounds.normalize(z);
        if (detail::nearest(zbar, s).dist2 < t2)
          hit[nu] = true;
      }
      for (auto& [nu, h] : hit)
        if (h)
          ++gamma[nu];
    }
  return gamma;
}

} // namespace wpb

#endif
