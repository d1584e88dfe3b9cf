#ifndef WPB_PROBLEMS_HPP
#define WPB_PROBLEMS_HPP

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"

namespace wpb
{

enum class Generator { G1, G2, CaseStudy };

inline auto to_string(Generator g) -> std::string
{
  switch (g) {
    case Generator::G1: return "G1";
    case Generator::G2: return "G2";
    case Generator::CaseStudy: return "CaseStudy";
  }
  return "?";
}

inline auto parse_generator(const std::string& s) -> Generator
{
  if (s == "G1" || s == "g1" || s == "1")
    return Generator::G1;
  if (s == "G2" || s == "g2" || s == "2")
    return Generator::G2;
  if (s == "CaseStudy" || s == "casestudy" || s == "case")
    return Generator::CaseStudy;
  throw std::invalid_argument("unknown generator '" + s + "' (expected G1, G2 or CaseStudy)");
}

struct GeneratorParams
{
  std::size_t m = 3;
  std::vector<double> s;
  std::vector<double> p;
  std::vector<double> ell;
  std::vector<double> d;
  std::optional<std::vector<double>> gap;
  std::vector<double> ideal;

  /// Fills every vector with a broadcast scalar; handy for tests.
  static auto uniform(std::size_t m, double p, double ell, double d) -> GeneratorParams
  {
    GeneratorParams g;
    g.m = m;
    g.s.assign(m, 1.0);
    g.p.assign(m, p);
    g.ell.assign(m, ell);
    g.d.assign(m, d);
    g.ideal.assign(m, 0.0);
    return g;
  }

  auto bounds() const -> FrontBounds
  {
    ObjectiveVector nad(m);
    for (std::size_t i = 0; i < m; ++i)
      nad[i] = ideal[i] + s[i];
    return {ideal, nad};
  }
};

struct ProblemInstance
{
  GeneratorParams params;
  Generator generator = Generator::G1;
  std::optional<std::string> name;

  ProblemInstance() = default;
  ProblemInstance(GeneratorParams prm, Generator gen, std::optional<std::string> label = std::nullopt)
    : params(std::move(prm))
    , generator(gen)
    , name(std::move(label))
  {
    validate();
  }

  auto m() const { return params.m; }
  auto n() const { return 2 * params.m; }
  auto bounds() const { return params.bounds(); }
  auto label() const -> std::string { return name.value_or("custom"); }

  void validate() const
  {
    const auto m = params.m;
    if (m < 2)
      throw std::invalid_argument("ProblemInstance: m must be at least 2");
    auto check_len = [m](const std::vector<double>& v, const char* key) {
      if (v.size() != m)
        throw std::invalid_argument(std::string("ProblemInstance: '") + key + "' needs " + std::to_string(m) +
                                    " entries, got " + std::to_string(v.size()));
      for (double x : v)
        if (!std::isfinite(x))
          throw std::invalid_argument(std::string("ProblemInstance: '") + key + "' has a non-finite entry");
    };
    check_len(params.s, "s");
    check_len(params.p, "p");
    check_len(params.ell, "ell");
    check_len(params.ideal, "ideal");
    for (std::size_t i = 0; i < m; ++i) {
      if (!(params.s[i] > 0))
        throw std::invalid_argument("ProblemInstance: s entries must be positive");
      if (!(params.p[i] > 0))
        throw std::invalid_argument("ProblemInstance: p entries must be positive");
      if (params.ell[i] < 0)
        throw std::invalid_argument("ProblemInstance: ell entries must be nonnegative");
    }
    if (generator == Generator::CaseStudy) {
      if (params.gap)
        throw std::invalid_argument("ProblemInstance: gap is only meaningful for G2");
      return;
    }
    check_len(params.d, "d");
    const double dmin = 1.0 / static_cast<double>(m - 1);
    for (double di : params.d)
      if (di < dmin - 1e-12 || di > 1.0)
        throw std::invalid_argument("ProblemInstance: d entries must lie in [1/(m-1), 1]");
    if (generator == Generator::G2) {
      if (!params.gap)
        throw std::invalid_argument("ProblemInstance: G2 requires a gap vector");
      check_len(*params.gap, "gap");
      for (double g : *params.gap)
        if (g < 0)
          throw std::invalid_argument("ProblemInstance: gap entries must be nonnegative");
    } else if (params.gap) {
      throw std::invalid_argument("ProblemInstance: gap is only meaningful for G2");
    }
  }

  /// Same instance with every distance weight zeroed.
  auto position_only() const -> ProblemInstance
  {
    auto copy = *this;
    copy.params.ell.assign(params.m, 0.0);
    if (name)
      copy.name = *name + "-pos";
    return copy;
  }
};

/// Front sum (1 - zbar_i)^p = 1 over normalized coordinates. flange is the free-coordinate extent above nadir used when sampling WPBs.
struct CaseStudyFront
{
  std::size_t m = 3;
  double p = 1.0;
  FrontBounds bounds;
  double flange = 1.0;

  CaseStudyFront() = default;
  CaseStudyFront(std::size_t dim, double shape, std::optional<FrontBounds> b = std::nullopt, double fl = 1.0)
    : m(dim)
    , p(shape)
    , bounds(b ? *b : FrontBounds::unit(dim))
    , flange(fl)
  {
    if (m < 2)
      throw std::invalid_argument("CaseStudyFront: m must be at least 2");
    if (!(p > 0))
      throw std::invalid_argument("CaseStudyFront: p must be positive");
    if (bounds.dim() != m)
      throw std::invalid_argument("CaseStudyFront: bounds dimension differs from m");
    if (!(flange > 0))
      throw std::invalid_argument("CaseStudyFront: flange must be positive");
  }

  auto is_box() const { return std::isinf(p); }
};

// ---- position and distance parts ----

inline auto simplex_projection(std::span<const double> xI) -> std::vector<double>
{
  double total = 0.0;
  for (double x : xI)
    total += x;
  std::vector<double> out(xI.size());
  if (total <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(xI.size()));
    return out;
  }
  for (std::size_t i = 0; i < xI.size(); ++i)
    out[i] = xI[i] / total;
  return out;
}

inline auto clip_to_d(std::span<const double> yhat, std::span<const double> d) -> std::vector<double>
{
  require_same_dim(yhat, d, "clip_to_d");
  double excess = 0.0, deficit = 0.0;
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    excess += std::max(0.0, yhat[i] - d[i]);
    deficit += std::max(0.0, d[i] - yhat[i]);
  }
  std::vector<double> y(yhat.size());
  if (deficit <= 0.0) {
    std::copy(d.begin(), d.end(), y.begin());
    return y;
  }
  for (std::size_t i = 0; i < yhat.size(); ++i)
    y[i] = std::min(yhat[i], d[i]) + std::max(0.0, d[i] - yhat[i]) / deficit * excess;
  // roundoff can push a clipped entry a hair above d
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = std::min(y[i], d[i]);
  return y;
}

inline auto g1_position(std::span<const double> xI, const GeneratorParams& prm) -> ObjectiveVector
{
  auto y = clip_to_d(simplex_projection(xI), prm.d);
  ObjectiveVector h(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    h[i] = std::pow(y[i] / prm.d[i], prm.p[i]);
  return h;
}

inline auto g2_position(std::span<const double> xI, const GeneratorParams& prm) -> ObjectiveVector
{
  if (!prm.gap)
    throw std::invalid_argument("g2_position: params carry no gap vector");
  const auto& gap = *prm.gap;
  auto yhat = simplex_projection(xI);
  ObjectiveVector h(yhat.size());
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    double y = yhat[i] > prm.d[i] ? yhat[i] + gap[i] : yhat[i];
    h[i] = std::pow(y / (1.0 + gap[i]), prm.p[i]);
  }
  return h;
}

/// Surface z_i = 1 - yhat_i^(1/p_i); its image satisfies sum (1 - h_i)^p_i = 1.
inline auto case_study_position(std::span<const double> xI, const GeneratorParams& prm) -> ObjectiveVector
{
  auto yhat = simplex_projection(xI);
  ObjectiveVector h(yhat.size());
  for (std::size_t i = 0; i < yhat.size(); ++i)
    h[i] = 1.0 - std::pow(yhat[i], 1.0 / prm.p[i]);
  return h;
}

inline auto distance_function(std::span<const double> xII, std::span<const double> ell) -> std::vector<double>
{
  require_same_dim(xII, ell, "distance_function");
  std::vector<double> g(xII.size());
  for (std::size_t i = 0; i < xII.size(); ++i)
    g[i] = ell[i] * std::abs(2.0 * xII[i] - 1.0);
  return g;
}

inline auto position(const ProblemInstance& inst, std::span<const double> xI) -> ObjectiveVector
{
  switch (inst.generator) {
    case Generator::G1: return g1_position(xI, inst.params);
    case Generator::G2: return g2_position(xI, inst.params);
    case Generator::CaseStudy: return case_study_position(xI, inst.params);
  }
  throw std::invalid_argument("position: unknown generator");
}

inline auto evaluate(const ProblemInstance& inst, std::span<const double> x) -> ObjectiveVector
{
  const auto m = inst.m();
  if (x.size() != inst.n())
    throw std::invalid_argument("evaluate: expected " + std::to_string(inst.n()) + " variables, got " +
                                std::to_string(x.size()));
  auto h = position(inst, x.subspan(0, m));
  auto g = distance_function(x.subspan(m, m), inst.params.ell);
  ObjectiveVector f(m);
  for (std::size_t i = 0; i < m; ++i)
    f[i] = inst.params.s[i] * h[i] * (1.0 + g[i]) + inst.params.ideal[i];
  return f;
}

inline auto evaluate(const ProblemInstance& inst, const Solution& x) -> ObjectiveVector
{
  return evaluate(inst, std::span<const double>(x.variables));
}

// ---- catalog ----

namespace detail
{
inline auto bc(std::size_t m, double v) { return std::vector<double>(m, v); }

inline auto make(std::size_t m, Generator gen, std::vector<double> p, std::vector<double> ell, std::vector<double> d,
                 std::optional<std::vector<double>> gap, std::vector<double> s, std::vector<double> ide,
                 std::string name) -> ProblemInstance
{
  GeneratorParams g;
  g.m = m;
  g.p = std::move(p);
  g.ell = std::move(ell);
  g.d = std::move(d);
  g.gap = std::move(gap);
  g.s = std::move(s);
  g.ideal = std::move(ide);
  return ProblemInstance(std::move(g), gen, std::move(name));
}
} // namespace detail

inline auto catalog_names() -> std::vector<std::string>
{
  std::vector<std::string> out;
  for (int i = 1; i <= 16; ++i)
    out.push_back("EMOP" + std::to_string(i));
  for (int i = 1; i <= 16; ++i)
    out.push_back("MOPW" + std::to_string(i));
  return out;
}

/// Named instances. EMOPs scale with m; MOPWs are fixed at m = 3.
inline auto catalog(const std::string& name, std::size_t m = 3) -> ProblemInstance
{
  using detail::bc;
  using detail::make;
  auto unknown = [&] {
    std::string msg = "catalog: unknown instance '" + name + "'; valid names:";
    for (auto& n : catalog_names())
      msg += " " + n;
    return std::invalid_argument(msg);
  };
  auto number = [&](const std::string& prefix) -> int {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size())
      return 0;
    auto tail = name.substr(prefix.size());
    if (tail.find_first_not_of("0123456789") != std::string::npos)
      return 0;
    int k = std::stoi(tail);
    return (k >= 1 && k <= 16) ? k : 0;
  };

  if (int k = number("EMOP"); k) {
    if (m < 2)
      throw std::invalid_argument("catalog: m must be at least 2");
    const double dlin = 1.0 / static_cast<double>(m - 1);
    double p = 1, ell = 4, d = 0.7;
    std::optional<double> gap;
    switch (k) {
      case 1: p = 2, d = dlin; break;
      case 2: p = 1, d = dlin; break;
      case 3: p = 0.5, d = dlin; break;
      case 4: ell = 4; break;
      case 5: ell = 40; break;
      case 6: ell = 400; break;
      case 7: ell = 4000; break;
      case 8: ell = 40000; break;
      case 9: ell = 400, d = 0.9; break;
      case 10: ell = 400, d = 0.8; break;
      case 11: ell = 400, d = 0.7; break;
      case 12: ell = 400, d = 0.6; break;
      case 13: ell = 400, d = 0.5; break;
      case 14: p = 2, d = 0.5, gap = 1; break;
      case 15: p = 1, d = 0.5, gap = 1; break;
      case 16: p = 0.5, d = 0.5, gap = 1; break;
    }
    // fixed d below 1/(m-1) is not a valid setting
    d = std::max(d, dlin);
    std::optional<std::vector<double>> gv;
    if (gap)
      gv = bc(m, *gap);
    return make(m, gap ? Generator::G2 : Generator::G1, bc(m, p), bc(m, ell), bc(m, d), gv, bc(m, 1.0), bc(m, 0.0),
                name);
  }

  if (int k = number("MOPW"); k) {
    if (m != 3)
      throw std::invalid_argument("catalog: MOPW instances are defined for m = 3 only");
    using V = std::vector<double>;
    const V mixed{0.5, 0.5, 2.0};
    V p, ell, d;
    std::optional<V> gap;
    switch (k) {
      case 1: p = bc(3, 2), ell = bc(3, 4), d = bc(3, 0.5); break;
      case 2: p = mixed, ell = bc(3, 4), d = bc(3, 0.5); break;
      case 3: p = bc(3, 0.5), ell = bc(3, 4), d = bc(3, 0.5); break;
      case 4: p = bc(3, 0.5), ell = bc(3, 400), d = bc(3, 0.9); break;
      case 5: p = bc(3, 2), ell = bc(3, 4), d = bc(3, 0.5), gap = bc(3, 0.2); break;
      case 6: p = bc(3, 0.5), ell = bc(3, 4), d = bc(3, 0.9), gap = bc(3, 2); break;
      case 7: p = bc(3, 2), ell = bc(3, 400), d = V{0.5, 0.7, 0.7}; break;
      case 8: p = mixed, ell = bc(3, 400), d = V{0.7, 0.5, 0.5}; break;
      case 9: p = bc(3, 0.5), ell = bc(3, 40000), d = V{1, 1, 0.5}; break;
      case 10: p = bc(3, 0.5), ell = V{4, 400, 40000}, d = bc(3, 0.7); break;
      case 11: p = mixed, ell = bc(3, 4), d = bc(3, 0.5), gap = V{2, 0, 0}; break;
      case 12: p = bc(3, 0.5), ell = bc(3, 4), d = V{1, 0.5, 0.5}, gap = bc(3, 1); break;
      case 13: p = bc(3, 2), ell = bc(3, 40000), d = bc(3, 0.5); break;
      case 14: p = mixed, ell = bc(3, 40000), d = bc(3, 0.5); break;
      case 15: p = bc(3, 0.5), ell = bc(3, 40000), d = bc(3, 0.5); break;
      case 16: p = bc(3, 0.5), ell = bc(3, 4), d = bc(3, 0.5), gap = bc(3, 2); break;
    }
    return make(3, gap ? Generator::G2 : Generator::G1, p, ell, d, gap, V{100, 10, 1}, V{1, 2, 3}, name);
  }
  throw unknown();
}

// ---- weak-dominance membership ----

/// Normalized form: sum max(0, 1 - zbar_i)^p <= 1 with zbar >= 0.
inline auto case_study_membership_normalized(std::span<const double> zbar, double p) -> bool
{
  for (double v : zbar)
    if (v < 0.0)
      return false;
  if (std::isinf(p))
    return true;
  double total = 0.0;
  for (double v : zbar)
    if (v < 1.0)
      total += std::pow(1.0 - v, p);
  return total <= 1.0 + 1e-12;
}

inline auto case_study_membership(const CaseStudyFront& front, std::span<const double> z) -> bool
{
  if (z.size() != front.m)
    throw std::invalid_argument("case_study_membership: dimension mismatch");
  auto zbar = front.bounds.normalize(z);
  return case_study_membership_normalized(zbar, front.p);
}

/// zbar = (z - ideal) / s. Is it weakly dominated by some attainable point (g = 0 suffices)?
inline auto weakly_dominated_normalized(const ProblemInstance& inst, std::span<const double> zbar) -> bool
{
  // the 1/p root blows up rounding near zbar = 0 (p = 3: 1e-16 -> 5e-6), so G1/G2 get a looser slack
  constexpr double root_tol = 1e-9;
  const auto m = inst.m();
  const auto& prm = inst.params;
  for (double v : zbar)
    if (v < 0.0)
      return false;
  switch (inst.generator) {
    case Generator::CaseStudy: {
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        if (zbar[j] < 1.0)
          total += std::pow(1.0 - zbar[j], prm.p[j]);
      return total <= 1.0 + 1e-12;
    }
    case Generator::G1: {
      // largest y_j compatible with h_j <= zbar_j, capped by d_j
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j)
        total += prm.d[j] * std::min(1.0, std::pow(zbar[j], 1.0 / prm.p[j]));
      return total >= 1.0 - root_tol;
    }
    case Generator::G2: {
      const auto& gap = *prm.gap;
      double total = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        double t = (1.0 + gap[j]) * std::pow(zbar[j], 1.0 / prm.p[j]);
        total += (t - gap[j] > prm.d[j]) ? std::min(1.0, t - gap[j]) : std::min(prm.d[j], t);
      }
      return total >= 1.0 - root_tol;
    }
  }
  return false;
}

inline auto weakly_dominated(const ProblemInstance& inst, std::span<const double> z) -> bool
{
  if (z.size() != inst.m())
    throw std::invalid_argument("weakly_dominated: dimension mismatch");
  auto zbar = inst.bounds().normalize(z);
  return weakly_dominated_normalized(inst, zbar);
}

inline auto weakly_dominated(const CaseStudyFront& front, std::span<const double> z) -> bool
{
  return case_study_membership(front, z);
}

/// A front usable by the volume and wpb modules.
using FrontSpec = std::variant<CaseStudyFront, ProblemInstance>;

inline auto weakly_dominated(const FrontSpec& front, std::span<const double> z) -> bool
{
  return std::visit([&](const auto& f) { return weakly_dominated(f, z); }, front);
}

/// Membership in normalized coordinates of the front's own bounds.
inline auto weakly_dominated_normalized(const FrontSpec& front, std::span<const double> zbar) -> bool
{
  if (auto* cs = std::get_if<CaseStudyFront>(&front))
    return case_study_membership_normalized(zbar, cs->p);
  return weakly_dominated_normalized(std::get<ProblemInstance>(front), zbar);
}

inline auto front_bounds(const FrontSpec& front) -> FrontBounds
{
  if (auto* cs = std::get_if<CaseStudyFront>(&front))
    return cs->bounds;
  return std::get<ProblemInstance>(front).bounds();
}

inline auto front_dim(const FrontSpec& front) -> std::size_t { return front_bounds(front).dim(); }

/// PF points from a simplex lattice of x_I with g = 0; exact duplicates removed.
inline auto pf_sample(const ProblemInstance& inst, std::size_t h) -> std::vector<ObjectiveVector>
{
  const auto m = inst.m();
  std::vector<ObjectiveVector> out;
  std::set<ObjectiveVector> seen;
  std::vector<double> x(inst.n(), 0.5);
  for (auto& w : simplex_lattice(m, h)) {
    std::copy(w.begin(), w.end(), x.begin());
    auto f = evaluate(inst, x);
    if (seen.insert(f).second)
      out.push_back(std::move(f));
  }
  return out;
}

// ---- flat key=value config ----

namespace detail
{
inline auto join(const std::vector<double>& v) -> std::string
{
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      os << ',';
    os << v[i];
  }
  return os.str();
}

inline auto split_doubles(const std::string& text) -> std::vector<double>
{
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos)
      continue;
    std::size_t used = 0;
    double v = std::stod(tok.substr(b), &used);
    out.push_back(v);
  }
  return out;
}

inline auto trim(std::string s) -> std::string
{
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}
} // namespace detail

inline auto serialize_config(const ProblemInstance& inst) -> std::string
{
  using detail::join;
  std::ostringstream os;
  if (inst.name)
    os << "name=" << *inst.name << '\n';
  os << "m=" << inst.m() << '\n';
  os << "generator=" << to_string(inst.generator) << '\n';
  os << "s=" << join(inst.params.s) << '\n';
  os << "p=" << join(inst.params.p) << '\n';
  os << "ell=" << join(inst.params.ell) << '\n';
  if (!inst.params.d.empty())
    os << "d=" << join(inst.params.d) << '\n';
  if (inst.params.gap)
    os << "gap=" << join(*inst.params.gap) << '\n';
  os << "ideal=" << join(inst.params.ideal) << '\n';
  return os.str();
}

/// Parses key=value lines; scalars broadcast to length m. Missing s/ideal default to 1/0.
inline auto parse_config(const std::string& text) -> ProblemInstance
{
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line without '=': " + line);
    kv[detail::trim(line.substr(0, eq))] = detail::trim(line.substr(eq + 1));
  }
  static const std::set<std::string> known{"name", "m", "generator", "s", "p", "ell", "d", "gap", "ideal"};
  for (auto& [k, v] : kv)
    if (!known.count(k))
      throw std::invalid_argument("config: unknown key '" + k + "'");
  if (!kv.count("m"))
    throw std::invalid_argument("config: missing key 'm'");
  GeneratorParams g;
  g.m = std::stoul(kv["m"]);
  auto vec = [&](const std::string& key, std::optional<double> fallback) -> std::vector<double> {
    if (!kv.count(key)) {
      if (!fallback)
        throw std::invalid_argument("config: missing key '" + key + "'");
      return std::vector<double>(g.m, *fallback);
    }
    auto v = detail::split_doubles(kv[key]);
    if (v.size() == 1)
      v.assign(g.m, v[0]);
    return v;
  };
  auto gen = kv.count("generator") ? parse_generator(kv["generator"]) : Generator::G1;
  g.s = vec("s", 1.0);
  g.p = vec("p", std::nullopt);
  g.ell = vec("ell", std::nullopt);
  g.ideal = vec("ideal", 0.0);
  if (gen != Generator::CaseStudy)
    g.d = vec("d", std::nullopt);
  if (kv.count("gap"))
    g.gap = vec("gap", std::nullopt);
  std::optional<std::string> name;
  if (kv.count("name"))
    name = kv["name"];
  return ProblemInstance(std::move(g), gen, name);
}

inline auto load_config(const std::string& path) -> ProblemInstance
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace wpb

#endif
