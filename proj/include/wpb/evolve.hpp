#ifndef WPB_EVOLVE_HPP
#define WPB_EVOLVE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "problems.hpp"

namespace wpb
{

struct SelectionScheme
{
  enum class Kind { pareto_crowding, cone_crowding, decomposition };

  Kind kind = Kind::pareto_crowding;
  std::vector<double> delta;  // cone widths; empty means 0.1 on every axis
  double rho = 0.05;          // augmentation weight of g_gen
  std::size_t neighborhood = 20;
  std::optional<ObjectiveVector> fixed_reference; // freezes z* (decomposition); used for elitism checks

  static auto pareto() -> SelectionScheme { return {}; }
  static auto cone(std::vector<double> d = {})
  {
    SelectionScheme s;
    s.kind = Kind::cone_crowding;
    s.delta = std::move(d);
    return s;
  }
  static auto decomposition(double rho = 0.05, std::size_t t = 20)
  {
    SelectionScheme s;
    s.kind = Kind::decomposition;
    s.rho = rho;
    s.neighborhood = t;
    return s;
  }
};

inline auto to_string(SelectionScheme::Kind k) -> std::string
{
  switch (k) {
    case SelectionScheme::Kind::pareto_crowding: return "pareto_crowding";
    case SelectionScheme::Kind::cone_crowding: return "cone_crowding";
    case SelectionScheme::Kind::decomposition: return "decomposition";
  }
  return "?";
}

inline auto parse_selection(const std::string& s) -> SelectionScheme::Kind
{
  if (s == "pareto_crowding" || s == "pareto")
    return SelectionScheme::Kind::pareto_crowding;
  if (s == "cone_crowding" || s == "cone")
    return SelectionScheme::Kind::cone_crowding;
  if (s == "decomposition")
    return SelectionScheme::Kind::decomposition;
  throw std::invalid_argument("unknown selection '" + s + "' (pareto_crowding, cone_crowding, decomposition)");
}

struct EvolutionConfig
{
  std::size_t population_size = 0; // 0: default for m
  std::size_t max_evaluations = 0; // 0: default for m
  std::uint64_t seed = 1;
  SelectionScheme selection;
  double sbx_index = 20.0;
  double pm_index = 20.0;
  double crossover_prob = 1.0;
  double mutation_prob = -1.0; // negative: 1/n
};

/// Lattice divisions matching the usual population sizes (91, 165, 330).
inline auto default_lattice_h(std::size_t m) -> std::size_t
{
  switch (m) {
    case 2: return 99;
    case 3: return 12;
    case 4: return 8;
    case 5: return 7;
    default: break;
  }
  std::size_t h = 1;
  while (binomial(h + m - 1, m - 1) < 100)
    ++h;
  return h;
}

inline auto default_population(std::size_t m) -> std::size_t
{
  return binomial(default_lattice_h(m) + m - 1, m - 1);
}

inline auto default_budget(std::size_t m) -> std::size_t
{
  if (m <= 3)
    return 50000;
  if (m == 4)
    return 90000;
  return 180000;
}

struct RunRecord
{
  std::vector<std::vector<ObjectiveVector>> snapshots; // generation 0 is the initial population
  std::vector<Solution> final_population;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> subproblem_values; // decomposition only: g_gen of each slot per generation

  auto final_objectives() const
  {
    std::vector<ObjectiveVector> out;
    for (auto& s : final_population)
      out.push_back(*s.objectives);
    return out;
  }
};

// ---- variation ----

inline auto sbx_crossover(const Solution& a, const Solution& b, double index, double prob, Rng& rng)
  -> std::pair<Solution, Solution>
{
  if (a.size() != b.size())
    throw std::invalid_argument("sbx_crossover: parents differ in dimension");
  Solution c1(a.variables), c2(b.variables);
  if (rng.uniform() >= prob)
    return {c1, c2};
  const double e = 1.0 / (index + 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (rng.uniform() >= 0.5)
      continue;
    double x1 = a.variables[i], x2 = b.variables[i];
    if (x1 == x2)
      continue;
    double u = rng.uniform();
    double beta = u <= 0.5 ? std::pow(2.0 * u, e) : std::pow(1.0 / (2.0 * (1.0 - u)), e);
    double y1 = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
    double y2 = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
    c1.variables[i] = std::clamp(y1, 0.0, 1.0);
    c2.variables[i] = std::clamp(y2, 0.0, 1.0);
  }
  return {c1, c2};
}

inline auto polynomial_mutation(const Solution& x, double index, double prob, Rng& rng) -> Solution
{
  Solution y(x.variables);
  const double e = 1.0 / (index + 1.0);
  for (auto& v : y.variables) {
    if (rng.uniform() >= prob)
      continue;
    double d1 = v, d2 = 1.0 - v;
    double u = rng.uniform();
    double dq;
    if (u < 0.5) {
      double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, index + 1.0);
      dq = std::pow(val, e) - 1.0;
    } else {
      double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, index + 1.0);
      dq = 1.0 - std::pow(val, e);
    }
    v = std::clamp(v + dq, 0.0, 1.0);
  }
  return y;
}

/// max_i w_i (f_i - z_i + rho * sum_j (f_j - z_j))
inline auto g_gen(std::span<const double> f, std::span<const double> w, std::span<const double> z_star, double rho)
  -> double
{
  require_same_dim(f, w, "g_gen");
  require_same_dim(f, z_star, "g_gen");
  double total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    total += f[j] - z_star[j];
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i)
    best = std::max(best, w[i] * (f[i] - z_star[i] + rho * total));
  return best;
}

// ---- sorting helpers ----

/// Front index of each member (0 = nondominated) under plain Pareto dominance of the given vectors.
inline auto nondominated_ranks(const std::vector<ObjectiveVector>& objs) -> std::vector<std::size_t>
{
  const auto n = objs.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> count(n, 0), rank(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(objs[i], objs[j])) {
        dominated_by_me[i].push_back(j);
        ++count[j];
      } else if (dominates(objs[j], objs[i])) {
        dominated_by_me[j].push_back(i);
        ++count[i];
      }
    }
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i)
    if (count[i] == 0)
      current.push_back(i);
  std::size_t level = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto i : current) {
      rank[i] = level;
      for (auto j : dominated_by_me[i])
        if (--count[j] == 0)
          next.push_back(j);
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
    ++level;
  }
  return rank;
}

inline auto crowding_distance(const std::vector<ObjectiveVector>& objs, const std::vector<std::size_t>& front)
  -> std::vector<double>
{
  const auto k = front.size();
  std::vector<double> dist(k, 0.0);
  if (k == 0)
    return dist;
  const auto m = objs[front[0]].size();
  std::vector<std::size_t> order(k);
  for (std::size_t j = 0; j < m; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return objs[front[a]][j] < objs[front[b]][j]; });
    double lo = objs[front[order.front()]][j], hi = objs[front[order.back()]][j];
    dist[order.front()] = dist[order.back()] = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0)
      continue;
    for (std::size_t a = 1; a + 1 < k; ++a)
      dist[order[a]] += (objs[front[order[a + 1]]][j] - objs[front[order[a - 1]]][j]) / (hi - lo);
  }
  return dist;
}

namespace detail
{
inline auto random_solution(std::size_t n, Rng& rng)
{
  Solution s{std::vector<double>(n)};
  for (auto& v : s.variables)
    v = rng.uniform();
  return s;
}

inline auto resolve_delta(const SelectionScheme& sel, std::size_t m)
{
  if (sel.delta.empty())
    return std::vector<double>(m, 0.1);
  if (sel.delta.size() == 1)
    return std::vector<double>(m, sel.delta[0]);
  if (sel.delta.size() != m)
    throw std::invalid_argument("cone selection: delta needs 1 or m entries");
  return sel.delta;
}

struct Ctx
{
  const ProblemInstance& inst;
  EvolutionConfig cfg;
  Rng rng;
  RunRecord rec;
  double pm = 0;

  auto eval(Solution& s)
  {
    s.objectives = evaluate(inst, s);
    ++rec.evaluations;
  }

  void snapshot(const std::vector<Solution>& pop)
  {
    std::vector<ObjectiveVector> objs;
    objs.reserve(pop.size());
    for (auto& s : pop)
      objs.push_back(*s.objectives);
    rec.snapshots.push_back(std::move(objs));
  }
};

/// NSGA-II skeleton; ranks come from Pareto dominance of either raw or cone-transformed vectors.
inline void run_crowding(Ctx& c, bool cone)
{
  const auto N = c.cfg.population_size;
  const auto n = c.inst.n();
  const auto m = c.inst.m();
  std::vector<double> delta;
  if (cone) {
    delta = resolve_delta(c.cfg.selection, m);
    for (double d : delta)
      if (!(d >= 0 && d < 1))
        throw std::invalid_argument("cone selection: delta entries must lie in [0,1)");
  }
  auto rank_view = [&](const std::vector<Solution>& pop) {
    std::vector<ObjectiveVector> v;
    for (auto& s : pop)
      v.push_back(cone ? cone_transform(*s.objectives, delta) : *s.objectives);
    return v;
  };

  std::vector<Solution> pop;
  for (std::size_t i = 0; i < N; ++i) {
    pop.push_back(random_solution(n, c.rng));
    c.eval(pop.back());
  }
  c.snapshot(pop);

  // rank and crowding of the current population, for tournaments
  auto annotate = [&](const std::vector<Solution>& p, std::vector<std::size_t>& rank, std::vector<double>& crowd) {
    rank = nondominated_ranks(rank_view(p));
    crowd.assign(p.size(), 0.0);
    std::vector<ObjectiveVector> raw;
    for (auto& s : p)
      raw.push_back(*s.objectives);
    std::size_t maxr = *std::max_element(rank.begin(), rank.end());
    for (std::size_t r = 0; r <= maxr; ++r) {
      std::vector<std::size_t> front;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (rank[i] == r)
          front.push_back(i);
      auto cd = crowding_distance(raw, front);
      for (std::size_t a = 0; a < front.size(); ++a)
        crowd[front[a]] = cd[a];
    }
  };

  std::vector<std::size_t> rank;
  std::vector<double> crowd;
  annotate(pop, rank, crowd);

  while (c.rec.evaluations + N <= c.cfg.max_evaluations) {
    auto tournament = [&] {
      auto a = c.rng.index(N), b = c.rng.index(N);
      if (rank[a] != rank[b])
        return rank[a] < rank[b] ? a : b;
      if (crowd[a] != crowd[b])
        return crowd[a] > crowd[b] ? a : b;
      return std::min(a, b);
    };
    std::vector<Solution> kids;
    while (kids.size() < N) {
      auto pa = tournament(), pb = tournament();
      auto [k1, k2] = sbx_crossover(pop[pa], pop[pb], c.cfg.sbx_index, c.cfg.crossover_prob, c.rng);
      kids.push_back(polynomial_mutation(k1, c.cfg.pm_index, c.pm, c.rng));
      if (kids.size() < N)
        kids.push_back(polynomial_mutation(k2, c.cfg.pm_index, c.pm, c.rng));
    }
    for (auto& k : kids)
      c.eval(k);

    std::vector<Solution> merged = pop;
    merged.insert(merged.end(), kids.begin(), kids.end());
    auto mr = nondominated_ranks(rank_view(merged));
    std::vector<ObjectiveVector> raw;
    for (auto& s : merged)
      raw.push_back(*s.objectives);
    std::vector<Solution> next;
    for (std::size_t r = 0; next.size() < N; ++r) {
      std::vector<std::size_t> front;
      for (std::size_t i = 0; i < merged.size(); ++i)
        if (mr[i] == r)
          front.push_back(i);
      if (next.size() + front.size() <= N) {
        for (auto i : front)
          next.push_back(merged[i]);
        continue;
      }
      auto cd = crowding_distance(raw, front);
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
      for (std::size_t a = 0; next.size() < N; ++a)
        next.push_back(merged[front[order[a]]]);
    }
    pop = std::move(next);
    annotate(pop, rank, crowd);
    c.snapshot(pop);
  }
  c.rec.final_population = std::move(pop);
}

inline void run_decomposition(Ctx& c)
{
  const auto m = c.inst.m();
  const auto n = c.inst.n();
  const auto& sel = c.cfg.selection;
  std::size_t h = 1;
  while (binomial(h + m - 1, m - 1) < c.cfg.population_size)
    ++h;
  if (binomial(h + m - 1, m - 1) != c.cfg.population_size)
    throw std::invalid_argument("decomposition: population size " + std::to_string(c.cfg.population_size) +
                                " is not a simplex-lattice size for m = " + std::to_string(m));
  auto W = simplex_lattice(m, h);
  const auto N = W.size();
  const auto T = std::min(std::max<std::size_t>(sel.neighborhood, 2), N);
  if (sel.rho < 0)
    throw std::invalid_argument("decomposition: rho must be nonnegative");

  std::vector<std::vector<std::size_t>> B(N);
  for (std::size_t i = 0; i < N; ++i) {
    std::vector<std::pair<double, std::size_t>> d;
    for (std::size_t j = 0; j < N; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k)
        acc += (W[i][k] - W[j][k]) * (W[i][k] - W[j][k]);
      d.emplace_back(acc, j);
    }
    std::stable_sort(d.begin(), d.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (std::size_t t = 0; t < T; ++t)
      B[i].push_back(d[t].second);
  }

  std::vector<Solution> pop;
  ObjectiveVector z(m, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < N; ++i) {
    pop.push_back(random_solution(n, c.rng));
    c.eval(pop.back());
    for (std::size_t k = 0; k < m; ++k)
      z[k] = std::min(z[k], (*pop.back().objectives)[k]);
  }
  if (sel.fixed_reference) {
    if (sel.fixed_reference->size() != m)
      throw std::invalid_argument("decomposition: fixed reference has the wrong dimension");
    z = *sel.fixed_reference;
  }
  auto record_values = [&] {
    std::vector<double> v(N);
    for (std::size_t i = 0; i < N; ++i)
      v[i] = g_gen(*pop[i].objectives, W[i], z, sel.rho);
    c.rec.subproblem_values.push_back(std::move(v));
  };
  c.snapshot(pop);
  record_values();

  while (c.rec.evaluations + N <= c.cfg.max_evaluations) {
    for (std::size_t i = 0; i < N; ++i) {
      auto a = B[i][c.rng.index(T)];
      auto b = B[i][c.rng.index(T)];
      while (b == a)
        b = B[i][c.rng.index(T)];
      auto kids = sbx_crossover(pop[a], pop[b], c.cfg.sbx_index, c.cfg.crossover_prob, c.rng);
      auto y = polynomial_mutation(kids.first, c.cfg.pm_index, c.pm, c.rng);
      c.eval(y);
      if (!sel.fixed_reference)
        for (std::size_t k = 0; k < m; ++k)
          z[k] = std::min(z[k], (*y.objectives)[k]);
      for (auto j : B[i])
        if (g_gen(*y.objectives, W[j], z, sel.rho) <= g_gen(*pop[j].objectives, W[j], z, sel.rho))
          pop[j] = y;
    }
    c.snapshot(pop);
    record_values();
  }
  c.rec.final_population = std::move(pop);
}
} // namespace detail

/// One seeded run. Deterministic in (instance, config).
inline auto run(const ProblemInstance& inst, EvolutionConfig cfg) -> RunRecord
{
  const auto m = inst.m();
  if (cfg.population_size == 0)
    cfg.population_size = default_population(m);
  if (cfg.max_evaluations == 0)
    cfg.max_evaluations = default_budget(m);
  if (cfg.population_size < 2)
    throw std::invalid_argument("run: population size must be at least 2");
  if (cfg.max_evaluations < cfg.population_size)
    throw std::invalid_argument("run: budget of " + std::to_string(cfg.max_evaluations) +
                                " evaluations is smaller than one population of " +
                                std::to_string(cfg.population_size));
  if (cfg.crossover_prob < 0 || cfg.crossover_prob > 1)
    throw std::invalid_argument("run: crossover probability must lie in [0,1]");
  if (cfg.mutation_prob > 1)
    throw std::invalid_argument("run: mutation probability must not exceed 1");

  detail::Ctx c{inst, cfg, Rng(cfg.seed), {}, 0.0};
  c.rec.seed = cfg.seed;
  c.pm = cfg.mutation_prob < 0 ? 1.0 / static_cast<double>(inst.n()) : cfg.mutation_prob;
  switch (cfg.selection.kind) {
    case SelectionScheme::Kind::pareto_crowding: detail::run_crowding(c, false); break;
    case SelectionScheme::Kind::cone_crowding: detail::run_crowding(c, true); break;
    case SelectionScheme::Kind::decomposition: detail::run_decomposition(c); break;
  }
  return std::move(c.rec);
}

} // namespace wpb

#endif
