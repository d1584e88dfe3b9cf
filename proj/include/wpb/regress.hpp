#ifndef WPB_REGRESS_HPP
#define WPB_REGRESS_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wpb
{

/// Polynomial without constant term: sum_k coefficients[k-1] * delta^k.
struct PolyFit
{
  std::vector<double> coefficients;
  double lambda = 0.0;
  std::size_t degree_cap = 0;
  std::size_t sweeps = 0;

  auto operator()(double x) const
  {
    double acc = 0.0, pw = 1.0;
    for (double c : coefficients) {
      pw *= x;
      acc += c * pw;
    }
    return acc;
  }
};

using Curve = std::vector<std::pair<double, double>>;

namespace detail
{
struct Design
{
  std::vector<std::vector<double>> cols; // unit-norm monomial columns
  std::vector<double> norms;
};

inline auto design(const Curve& curve, std::size_t D) -> Design
{
  Design d;
  d.cols.assign(D, std::vector<double>(curve.size()));
  d.norms.assign(D, 0.0);
  for (std::size_t k = 0; k < D; ++k) {
    for (std::size_t i = 0; i < curve.size(); ++i)
      d.cols[k][i] = std::pow(curve[i].first, static_cast<double>(k + 1));
    double nn = 0.0;
    for (double v : d.cols[k])
      nn += v * v;
    d.norms[k] = std::sqrt(nn);
    if (d.norms[k] > 0)
      for (auto& v : d.cols[k])
        v /= d.norms[k];
  }
  return d;
}

inline auto soft(double x, double t) { return x > t ? x - t : (x < -t ? x + t : 0.0); }

inline auto objective(const Design& d, const std::vector<double>& y, const std::vector<double>& beta, double lambda)
{
  const auto n = y.size();
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = 0.0;
    for (std::size_t k = 0; k < beta.size(); ++k)
      f += d.cols[k][i] * beta[k];
    rss += (y[i] - f) * (y[i] - f);
  }
  double l1 = 0.0;
  for (double b : beta)
    l1 += std::abs(b);
  return rss / (2.0 * static_cast<double>(n)) + lambda * l1;
}

/// Coordinate descent on standardized columns; beta is the warm start and result.
inline auto descend(const Design& d, const std::vector<double>& y, double lambda, std::vector<double>& beta,
                    std::vector<double>* trace) -> std::size_t
{
  const auto n = y.size();
  const auto D = beta.size();
  const double nd = static_cast<double>(n);
  std::vector<double> resid(y);
  for (std::size_t k = 0; k < D; ++k)
    for (std::size_t i = 0; i < n; ++i)
      resid[i] -= d.cols[k][i] * beta[k];
  std::size_t sweep = 0;
  for (; sweep < 100000; ++sweep) {
    double maxchange = 0.0;
    for (std::size_t k = 0; k < D; ++k) {
      if (d.norms[k] == 0)
        continue;
      double rho = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        rho += d.cols[k][i] * resid[i];
      rho = rho / nd + beta[k] / nd; // columns have unit norm, so x_k'x_k / n = 1/n
      double nb = soft(rho, lambda) * nd;
      double diff = nb - beta[k];
      if (diff != 0.0) {
        for (std::size_t i = 0; i < n; ++i)
          resid[i] -= d.cols[k][i] * diff;
        beta[k] = nb;
      }
      maxchange = std::max(maxchange, std::abs(diff));
    }
    if (trace)
      trace->push_back(objective(d, y, beta, lambda));
    if (maxchange < 1e-10)
      return sweep + 1;
  }
  return sweep;
}

inline auto lambda_max(const Design& d, const std::vector<double>& y)
{
  double best = 0.0;
  for (const auto& c : d.cols) {
    double dot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
      dot += c[i] * y[i];
    best = std::max(best, std::abs(dot));
  }
  return best / static_cast<double>(y.size());
}

inline void check_curve(const Curve& curve, std::size_t D)
{
  if (D < 1)
    throw std::invalid_argument("lasso_poly_fit: degree cap must be at least 1");
  if (curve.size() < D + 2)
    throw std::invalid_argument("lasso_poly_fit: need at least degree_cap + 2 points");
  for (auto& [x, v] : curve)
    if (!(x > 0))
      throw std::invalid_argument("lasso_poly_fit: deltas must be positive");
}
} // namespace detail

/// Lasso fit with a fixed lambda. Objective (1/2n)||y - Xb||^2 + lambda ||b||_1 on unit-norm columns.
inline auto lasso_poly_fit(const Curve& curve, std::size_t degree_cap, double lambda,
                           std::vector<double>* objective_trace = nullptr) -> PolyFit
{
  detail::check_curve(curve, degree_cap);
  if (lambda < 0)
    throw std::invalid_argument("lasso_poly_fit: lambda must be nonnegative");
  PolyFit fit;
  fit.lambda = lambda;
  fit.degree_cap = degree_cap;
  fit.coefficients.assign(degree_cap, 0.0);
  std::vector<double> y;
  bool all_zero = true;
  for (auto& [x, v] : curve) {
    y.push_back(v);
    all_zero = all_zero && v == 0.0;
  }
  if (all_zero)
    return fit;
  auto d = detail::design(curve, degree_cap);
  std::vector<double> beta(degree_cap, 0.0);
  fit.sweeps = detail::descend(d, y, lambda, beta, objective_trace);
  for (std::size_t k = 0; k < degree_cap; ++k)
    fit.coefficients[k] = d.norms[k] > 0 ? beta[k] / d.norms[k] : 0.0;
  return fit;
}

/// Log-spaced grid from lambda_max down to lambda_max * 1e-8.
inline auto lambda_grid(const Curve& curve, std::size_t degree_cap, std::size_t count = 30) -> std::vector<double>
{
  detail::check_curve(curve, degree_cap);
  std::vector<double> y;
  for (auto& [x, v] : curve)
    y.push_back(v);
  double top = detail::lambda_max(detail::design(curve, degree_cap), y);
  std::vector<double> grid;
  if (top <= 0)
    return {0.0};
  for (std::size_t i = 0; i < count; ++i)
    grid.push_back(top * std::pow(1e-8, static_cast<double>(i) / static_cast<double>(count - 1)));
  return grid;
}

/// Lambda picked by 5-fold cross validation (fold = index mod 5), then refit on all points.
inline auto lasso_poly_fit_cv(const Curve& curve, std::size_t degree_cap) -> PolyFit
{
  auto grid = lambda_grid(curve, degree_cap);
  double best_err = std::numeric_limits<double>::infinity();
  double best_lambda = grid.back();
  for (double lam : grid) {
    double err = 0.0;
    bool usable = true;
    for (std::size_t fold = 0; fold < 5 && usable; ++fold) {
      Curve train, test;
      for (std::size_t i = 0; i < curve.size(); ++i)
        (i % 5 == fold ? test : train).push_back(curve[i]);
      if (train.size() < degree_cap + 2) {
        usable = false;
        break;
      }
      auto f = lasso_poly_fit(train, degree_cap, lam);
      for (auto& [x, v] : test)
        err += (f(x) - v) * (f(x) - v);
    }
    if (usable && err < best_err) {
      best_err = err;
      best_lambda = lam;
    }
  }
  return lasso_poly_fit(curve, degree_cap, best_lambda);
}

/// Smallest degree whose |coefficient| exceeds tol; 0 when none does.
inline auto lowest_active_degree(const PolyFit& fit, double tol) -> std::size_t
{
  if (!(tol > 0))
    throw std::invalid_argument("lowest_active_degree: tol must be positive");
  for (std::size_t k = 0; k < fit.coefficients.size(); ++k)
    if (std::abs(fit.coefficients[k]) > tol)
      return k + 1;
  return 0;
}

} // namespace wpb

#endif
