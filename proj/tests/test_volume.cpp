#include <catch_amalgamated.hpp>

#include <wpb/volume.hpp>

using namespace wpb;
using V = std::vector<double>;
using Catch::Approx;

namespace
{
// closed forms for m = 3, p = 1 with free coordinates at 1 + a
double nu1_closed(double a, double D) { return a * a * D + a * D * D + D * D * D / 6.0; }
double nu2_closed(double a, double D)
{
  double d = D / std::sqrt(2.0);
  return 2 * a * d * d + 4.0 / 3.0 * d * d * d;
}

auto spec(const CaseStudyFront& f, V r) { return EnclosedRegionSpec{f, std::move(r)}; }
} // namespace

TEST_CASE("exact polytope volume matches hand-derived closed forms")
{
  CaseStudyFront f(3, 1.0);
  IndexSet I1({0}), I2({0, 1});
  for (double a : {0.03, 0.3}) {
    for (double D : {0.01, 0.1, 0.2, 0.4}) {
      auto v1 = volume_exact_linear(spec(f, delta_sweep_reference(f, I1, 1 + a, D)));
      auto v2 = volume_exact_linear(spec(f, delta_sweep_reference(f, I2, 1 + a, D)));
      INFO("a=" << a << " D=" << D);
      CHECK(v1.value == Approx(nu1_closed(a, D)).epsilon(1e-9));
      CHECK(v2.value == Approx(nu2_closed(a, D)).epsilon(1e-9));
      CHECK(v1.std_error == 0.0);
    }
  }
}

TEST_CASE("exact volume scales with the bounds")
{
  CaseStudyFront u(3, 1.0);
  CaseStudyFront s(3, 1.0, FrontBounds({1, 2, 3}, {101, 12, 4}));
  V rbar{0.6, 0.7, 1.2};
  double vu = volume_exact_linear(spec(u, rbar)).value;
  double vs = volume_exact_linear(spec(s, s.bounds.denormalize(rbar))).value;
  CHECK(vs == Approx(vu * 100 * 10 * 1).epsilon(1e-9));
}

TEST_CASE("exact volume degenerate and invalid cases")
{
  CaseStudyFront f(3, 1.0);
  CHECK(volume_exact_linear(spec(f, delta_sweep_reference(f, IndexSet({0, 1}), 1.3, 0.0))).value ==
        Approx(0.0).margin(1e-12));
  CHECK(volume_exact_linear(spec(f, V{0.2, 0.2, 0.2})).value == 0.0);
  CHECK_THROWS_AS(volume_exact_linear(spec(CaseStudyFront(3, 2.0), V{1, 1, 1})), std::invalid_argument);
  // r at the nadir: only the corner simplex above z1 + z2 + z3 = 2
  CHECK(volume_exact_linear(spec(f, V{1, 1, 1})).value == Approx(1.0 / 6.0));
}

TEST_CASE("exact and Monte Carlo agree")
{
  CaseStudyFront f(3, 1.0);
  double o = 0.2 / std::sqrt(2.0);
  auto s = spec(f, V{0.5 + o, 0.5 + o, 1.3});
  auto ex = volume_exact_linear(s);
  auto mc = volume_monte_carlo(s, 2000000, 17);
  CHECK(std::abs(ex.value - mc.value) <= 3 * mc.std_error);
  CHECK(mc.std_error > 0);

  CaseStudyFront f4(4, 1.0);
  auto s4 = spec(f4, V{0.7, 0.8, 0.9, 1.2});
  auto ex4 = volume_exact_linear(s4);
  auto mc4 = volume_monte_carlo(s4, 1000000, 3);
  CHECK(std::abs(ex4.value - mc4.value) <= 3 * mc4.std_error);
}

TEST_CASE("Monte Carlo limits and edge cases")
{
  // large p approaches the box product
  CaseStudyFront f50(3, 50.0);
  auto mc = volume_monte_carlo(spec(f50, V{0.9, 0.9, 0.9}), 400000, 5);
  CHECK(mc.value == Approx(0.729).epsilon(0.02));

  // box front: every sample accepted
  CaseStudyFront box(3, std::numeric_limits<double>::infinity());
  auto all = volume_monte_carlo(spec(box, V{0.5, 1.3, 1.3}), 1000, 1);
  CHECK(all.value == Approx(0.845).epsilon(1e-12));
  CHECK(all.std_error == 0.0);

  CHECK(volume_monte_carlo(spec(f50, V{0.0, 0.5, 0.5}), 100, 1).value == 0.0);
  CHECK_THROWS_AS(volume_monte_carlo(spec(f50, V{1, 1, 1}), 0, 1), std::invalid_argument);

  // same seed, same answer
  CaseStudyFront f(3, 2.0);
  auto a = volume_monte_carlo(spec(f, V{0.4, 0.4, 1.2}), 10000, 9);
  auto b = volume_monte_carlo(spec(f, V{0.4, 0.4, 1.2}), 10000, 9);
  CHECK(a.value == b.value);
}

TEST_CASE("closed-form limits")
{
  FrontBounds u = FrontBounds::unit(3);
  CHECK(volume_limit_pinf(V{1, 1, 1}, u) == 1.0);
  CHECK(volume_limit_pinf(V{0.5, 1.3, 1.3}, u) == Approx(0.845));
  CHECK(volume_limit_pinf(V{0.0, 1.3, 1.3}, u) == 0.0);
  CHECK(volume_limit_pzero(V{0.5, 1.2, 1.2}, u) == Approx(0.02));
  CHECK(volume_limit_pzero(V{0.5, 0.5, 0.5}, u) == 0.0);
  CHECK(volume_limit_pzero(V{1.1, 1.1, 1.1}, u) == Approx(0.031));
  CHECK_THROWS_AS(volume_limit_pinf(V{-1, 1, 1}, u), std::invalid_argument);
}

TEST_CASE("Monte Carlo converges to the p -> 0 limit")
{
  CaseStudyFront f(3, 0.02);
  for (V r : {V{0.5, 1.2, 1.2}, V{1.1, 1.1, 1.1}, V{0.3, 1.4, 1.05}}) {
    auto mc = volume_monte_carlo(spec(f, r), 1000000, 21);
    double lim = volume_limit_pzero(r, f.bounds);
    CHECK(std::abs(mc.value - lim) <= 3 * mc.std_error + 1e-12);
  }
}

TEST_CASE("scalarized estimator")
{
  // box front: rho is the exact box exit distance
  CaseStudyFront box(3, std::numeric_limits<double>::infinity());
  V r{0.5, 1.3, 1.3};
  auto sc = volume_scalarized(spec(box, r), 200000, 7);
  CHECK(std::abs(sc.value - 0.845) <= 3 * sc.std_error);

  CaseStudyFront f2(3, 2.0);
  V r2{0.29 + 0.2 / std::sqrt(2.0), 0.29 + 0.2 / std::sqrt(2.0), 1.3};
  auto s2 = volume_scalarized(spec(f2, r2), 100000, 3);
  auto m2 = volume_monte_carlo(spec(f2, r2), 1000000, 4);
  CHECK(std::abs(s2.value - m2.value) <= 3 * std::hypot(s2.std_error, m2.std_error));

  CaseStudyFront f1(3, 1.0);
  V r1{0.6, 0.55, 1.2};
  auto s1 = volume_scalarized(spec(f1, r1), 100000, 8);
  auto e1 = volume_exact_linear(spec(f1, r1));
  CHECK(std::abs(s1.value - e1.value) <= 3 * s1.std_error);

  // a dominated reference always has a positive radius along any direction
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    V lam{rng.uniform() + 1e-3, rng.uniform() + 1e-3, rng.uniform() + 1e-3};
    CHECK(scalarized_radius(f2, r2, lam) > 0);
  }
  CHECK(volume_scalarized(spec(f2, V{0.1, 0.1, 0.1}), 100, 1).value == 0.0);
}

TEST_CASE("volume is monotone in the reference")
{
  CaseStudyFront f(3, 1.0);
  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    V r{1.3 * rng.uniform(), 1.3 * rng.uniform(), 1.3 * rng.uniform()};
    V r2 = r;
    for (auto& v : r2)
      v += 0.2 * rng.uniform();
    REQUIRE(volume_exact_linear(spec(f, r)).value <= volume_exact_linear(spec(f, r2)).value + 1e-12);
  }
}

TEST_CASE("sweep references sit on the WPB at zero offset")
{
  for (double p : {0.5, 1.0, 2.0}) {
    CaseStudyFront f(3, p);
    auto r = delta_sweep_reference(f, IndexSet({0, 1}), 1.3, 0.0);
    CHECK(std::pow(1 - r[0], p) + std::pow(1 - r[1], p) == Approx(1.0));
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
      auto m = midline_reference(f, IndexSet({0, 1}), 0.0, s, 1.3);
      CHECK(std::pow(1 - m[0], p) + std::pow(1 - m[1], p) == Approx(1.0));
    }
  }
  CHECK(wpb_base(2.0, 2) == Approx(0.29).margin(0.005));
  CHECK(wpb_base(0.5, 2) == Approx(0.75));
  CHECK(wpb_base(1.0, 2) == Approx(0.5));
}

TEST_CASE("delta sweep passes through the origin and checks its input")
{
  CaseStudyFront f(3, 1.0);
  auto c = delta_sweep(f, IndexSet({0, 1}), 1.3, {0.0, 0.1, 0.2});
  CHECK(c[0].estimate.value == Approx(0.0).margin(1e-12));
  CHECK(c[1].estimate.value < c[2].estimate.value);
  CHECK_THROWS_AS(delta_sweep(f, IndexSet({0, 1}), 1.3, {0.2, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(delta_sweep(f, IndexSet({0, 1, 2}), 1.3, {0.1}), std::invalid_argument);
}

TEST_CASE("growth order")
{
  std::vector<std::pair<double, double>> c;
  for (double d : {0.01, 0.02, 0.04, 0.08})
    c.emplace_back(d, d * d);
  CHECK(growth_order(c) == Approx(2.0));
  CHECK_THROWS_AS(growth_order(std::vector<std::pair<double, double>>{{0.01, 1.0}, {0.2, 2.0}, {0.3, 3.0}}), std::invalid_argument);

  CaseStudyFront f(3, 1.0);
  std::vector<double> ds{0.001, 0.002, 0.004, 0.006, 0.008, 0.01};
  auto c1 = delta_sweep(f, IndexSet({0}), 1.3, ds);
  auto c2 = delta_sweep(f, IndexSet({0, 1}), 1.3, ds);
  CHECK(growth_order(c1) == Approx(1.0).margin(0.15));
  CHECK(growth_order(c2) == Approx(2.0).margin(0.15));
}
