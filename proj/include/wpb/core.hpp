#ifndef WPB_CORE_HPP
#define WPB_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <thread>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpb
{

/// A point in objective space. Minimization convention throughout.
using ObjectiveVector = std::vector<double>;

/// Decision vector with an optional cached image. Variables live in [0,1].
struct Solution
{
  std::vector<double> variables;
  std::optional<ObjectiveVector> objectives;

  Solution() = default;
  explicit Solution(std::vector<double> x)
    : variables(std::move(x))
  {
  }

  auto size() const { return variables.size(); }
};

/// Ideal and nadir objective vectors of a front.
struct FrontBounds
{
  ObjectiveVector ideal;
  ObjectiveVector nadir;

  FrontBounds() = default;
  FrontBounds(ObjectiveVector ide, ObjectiveVector nad)
    : ideal(std::move(ide))
    , nadir(std::move(nad))
  {
    if (ideal.size() != nadir.size())
      throw std::invalid_argument("FrontBounds: ideal and nadir differ in dimension");
    for (std::size_t i = 0; i < ideal.size(); ++i)
      if (!(ideal[i] < nadir[i]))
        throw std::invalid_argument("FrontBounds: ideal must lie strictly below nadir");
  }

  static auto unit(std::size_t m) -> FrontBounds
  {
    return {ObjectiveVector(m, 0.0), ObjectiveVector(m, 1.0)};
  }

  auto dim() const { return ideal.size(); }

  /// (z - ideal) / (nadir - ideal), componentwise.
  auto normalize(std::span<const double> z) const -> ObjectiveVector
  {
    ObjectiveVector out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      out[i] = (z[i] - ideal[i]) / (nadir[i] - ideal[i]);
    return out;
  }

  auto denormalize(std::span<const double> zbar) const -> ObjectiveVector
  {
    ObjectiveVector out(zbar.size());
    for (std::size_t i = 0; i < zbar.size(); ++i)
      out[i] = ideal[i] + zbar[i] * (nadir[i] - ideal[i]);
    return out;
  }
};

/// Sorted set of objective indices. Stored 0-based; printed 1-based.
class IndexSet
{
public:
  IndexSet() = default;
  explicit IndexSet(std::vector<std::size_t> members)
    : members_(std::move(members))
  {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty())
      throw std::invalid_argument("IndexSet: must be nonempty");
  }

  auto size() const { return members_.size(); }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  auto operator[](std::size_t i) const { return members_[i]; }
  auto members() const -> const std::vector<std::size_t>& { return members_; }

  auto contains(std::size_t j) const
  {
    return std::binary_search(members_.begin(), members_.end(), j);
  }

  /// [m] \ I, 0-based.
  auto complement(std::size_t m) const -> std::vector<std::size_t>
  {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < m; ++j)
      if (!contains(j))
        out.push_back(j);
    return out;
  }

  /// "1-2" style label using 1-based indices.
  auto label(char sep = '-') const -> std::string
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i)
        os << sep;
      os << members_[i] + 1;
    }
    return os.str();
  }

  /// Parses a 1-based list such as "1,2" or "1-2".
  static auto parse(const std::string& text, std::size_t m) -> IndexSet
  {
    std::vector<std::size_t> out;
    std::string token;
    auto flush = [&] {
      if (token.empty())
        return;
      auto v = std::stoul(token);
      if (v < 1 || v > m)
        throw std::invalid_argument("IndexSet: index " + token + " outside [1.." + std::to_string(m) + "]");
      out.push_back(v - 1);
      token.clear();
    };
    for (char c : text) {
      if (c == ',' || c == '-' || c == ' ')
        flush();
      else
        token.push_back(c);
    }
    flush();
    return IndexSet(std::move(out));
  }

  friend auto operator==(const IndexSet&, const IndexSet&) -> bool = default;

private:
  std::vector<std::size_t> members_;
};

inline void require_same_dim(std::span<const double> u, std::span<const double> v, const char* what)
{
  if (u.size() != v.size())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
}

/// Pareto dominance: u <= v everywhere and u < v somewhere. Exact comparisons.
inline auto dominates(std::span<const double> u, std::span<const double> v) -> bool
{
  require_same_dim(u, v, "dominates");
  bool strict = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] > v[i])
      return false;
    if (u[i] < v[i])
      strict = true;
  }
  return strict;
}

/// u'_i = u_i + delta_i * sum_{k != i} u_k
inline auto cone_transform(std::span<const double> u, std::span<const double> delta) -> ObjectiveVector
{
  require_same_dim(u, delta, "cone_transform");
  double total = 0.0;
  for (double x : u)
    total += x;
  ObjectiveVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = u[i] + delta[i] * (total - u[i]);
  return out;
}

inline auto cone_dominates(std::span<const double> u, std::span<const double> v, std::span<const double> delta) -> bool
{
  require_same_dim(u, v, "cone_dominates");
  require_same_dim(u, delta, "cone_dominates");
  for (double d : delta)
    if (!(d >= 0.0 && d < 1.0))
      throw std::invalid_argument("cone_dominates: delta entries must lie in [0,1)");
  auto ut = cone_transform(u, delta);
  auto vt = cone_transform(v, delta);
  return dominates(ut, vt);
}

/// Selects between plain Pareto dominance and the additive cone relation.
class DominanceRelation
{
public:
  enum class Kind { pareto, cone };

  static auto pareto() -> DominanceRelation { return {}; }
  static auto cone(std::vector<double> delta)
  {
    DominanceRelation r;
    r.kind_ = Kind::cone;
    r.delta_ = std::move(delta);
    return r;
  }

  auto kind() const { return kind_; }
  auto delta() const -> const std::vector<double>& { return delta_; }

  auto operator()(std::span<const double> u, std::span<const double> v) const -> bool
  {
    if (kind_ == Kind::pareto)
      return dominates(u, v);
    return cone_dominates(u, v, delta_);
  }

private:
  Kind kind_ = Kind::pareto;
  std::vector<double> delta_;
};

/// Members not dominated by any other member; input order kept.
inline auto nondominated_filter(const std::vector<ObjectiveVector>& set,
                                const DominanceRelation& relation = DominanceRelation::pareto())
  -> std::vector<ObjectiveVector>
{
  std::vector<ObjectiveVector> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < set.size() && !dominated; ++j)
      dominated = j != i && relation(set[j], set[i]);
    if (!dominated)
      out.push_back(set[i]);
  }
  return out;
}

inline auto binomial(std::size_t n, std::size_t k) -> std::size_t
{
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline auto combinations(std::size_t n, std::size_t k) -> std::vector<std::vector<std::size_t>>
{
  std::vector<std::vector<std::size_t>> out;
  if (k > n)
    return out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i)
    c[i] = i;
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j)
      c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Das-Dennis lattice: all points of the unit simplex in R^m with coordinates in {0, 1/h, ..., 1}.
inline auto simplex_lattice(std::size_t m, std::size_t h) -> std::vector<std::vector<double>>
{
  std::vector<std::vector<double>> out;
  if (m == 0)
    return out;
  if (m == 1) {
    out.push_back({1.0});
    return out;
  }
  if (h == 0)
    throw std::invalid_argument("simplex_lattice: h must be positive when m > 1");
  std::vector<std::size_t> counts(m, 0);
  // stars and bars over m-1 free coordinates
  auto rec = [&](auto&& self, std::size_t idx, std::size_t remaining) -> void {
    if (idx == m - 1) {
      counts[idx] = remaining;
      std::vector<double> p(m);
      for (std::size_t i = 0; i < m; ++i)
        p[i] = static_cast<double>(counts[i]) / static_cast<double>(h);
      out.push_back(std::move(p));
      return;
    }
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts[idx] = c;
      self(self, idx + 1, remaining - c);
    }
  };
  rec(rec, 0, h);
  return out;
}

/// Seeded 64-bit generator; uniform draws use the top 53 bits.
class Rng
{
public:
  explicit Rng(std::uint64_t seed = 1)
    : engine_(seed)
  {
  }

  auto uniform() -> double { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  auto uniform(double lo, double hi) -> double { return lo + (hi - lo) * uniform(); }
  auto normal() -> double { return normal_(engine_); }
  auto index(std::size_t n) -> std::size_t { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  auto engine() -> std::mt19937_64& { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Exceptions propagate from the first failure.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn)
{
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers)
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool)
    t.join();
  for (auto& e : errors)
    if (e)
      std::rethrow_exception(e);
}

} // namespace wpb

#endif
