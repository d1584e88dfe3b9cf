#include <catch_amalgamated.hpp>

#include <wpb/problems.hpp>

using namespace wpb;
using V = std::vector<double>;
using Catch::Approx;

namespace
{
auto third() { return 1.0 / 3.0; }

// random instance with a mix of generators, used for nadir checks
auto random_instance(Rng& rng, std::size_t m, bool g2) -> ProblemInstance
{
  GeneratorParams g;
  g.m = m;
  const double dmin = 1.0 / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    g.s.push_back(0.5 + 10 * rng.uniform());
    g.p.push_back(std::pow(4.0, 2 * rng.uniform() - 1)); // 0.25 .. 4
    g.ell.push_back(10 * rng.uniform());
    g.d.push_back(m == 2 ? 1.0 : dmin + (0.99 - dmin) * rng.uniform());
    g.ideal.push_back(10 * rng.uniform() - 5);
  }
  if (g2) {
    V gap;
    for (std::size_t i = 0; i < m; ++i)
      gap.push_back(2 * rng.uniform());
    g.gap = gap;
  }
  return ProblemInstance(g, g2 ? Generator::G2 : Generator::G1);
}
} // namespace

TEST_CASE("simplex projection")
{
  auto a = simplex_projection(V{1, 1, 1});
  auto b = simplex_projection(V{0, 0, 0});
  for (int i = 0; i < 3; ++i) {
    CHECK(a[i] == Approx(third()));
    CHECK(b[i] == Approx(third()));
  }
  CHECK(simplex_projection(V{1, 0, 0}) == V{1, 0, 0});
}

TEST_CASE("clip_to_d hand cases")
{
  auto y = clip_to_d(V{third(), third(), third()}, V{0.5, 0.5, 0.5});
  for (double v : y)
    CHECK(v == Approx(third()));
  auto z = clip_to_d(V{1, 0, 0}, V{0.5, 0.5, 0.5});
  CHECK(z[0] == Approx(0.5));
  CHECK(z[1] == Approx(0.25));
  CHECK(z[2] == Approx(0.25));
  // degenerate denominator: yhat == d
  auto w = clip_to_d(V{0.5, 0.5}, V{0.5, 0.5});
  CHECK(w == V{0.5, 0.5});
}

TEST_CASE("clip_to_d keeps sum one and y <= d on random draws")
{
  Rng rng(3);
  for (int t = 0; t < 100000; ++t) {
    std::size_t m = 2 + t % 4;
    V x(m), d(m);
    const double dmin = 1.0 / static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = rng.uniform();
      d[i] = dmin + (1.0 - dmin) * rng.uniform();
    }
    auto y = clip_to_d(simplex_projection(x), d);
    double s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      REQUIRE(y[i] <= d[i]);
      REQUIRE(y[i] >= 0.0);
      s += y[i];
    }
    REQUIRE(s == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("generator 1 position")
{
  auto prm = GeneratorParams::uniform(3, 1.0, 0.0, 0.5);
  auto h = g1_position(V{1, 1, 1}, prm);
  for (double v : h)
    CHECK(v == Approx(2.0 / 3.0));
  auto h2 = g1_position(V{1, 0, 0}, prm);
  CHECK(h2[0] == Approx(1.0));
  CHECK(h2[1] == Approx(0.5));
  CHECK(h2[2] == Approx(0.5));
  prm.p.assign(3, 2.0);
  auto h3 = g1_position(V{1, 0, 0}, prm);
  CHECK(h3[0] == Approx(1.0));
  CHECK(h3[1] == Approx(0.25));
  CHECK(h3[2] == Approx(0.25));
}

TEST_CASE("generator 2 position")
{
  auto prm = GeneratorParams::uniform(3, 1.0, 0.0, 0.5);
  prm.gap = V{0, 0, 0};
  auto h0 = g2_position(V{0.2, 0.3, 0.5}, prm);
  CHECK(h0[0] == Approx(0.2));
  CHECK(h0[1] == Approx(0.3));
  CHECK(h0[2] == Approx(0.5));
  prm.gap = V{1, 1, 1};
  auto h = g2_position(V{1, 0, 0}, prm);
  CHECK(h[0] == Approx(1.0));
  CHECK(h[1] == 0.0);
  CHECK(h[2] == 0.0);
  auto hm = g2_position(V{1, 1, 1}, prm);
  for (double v : hm)
    CHECK(v == Approx(1.0 / 6.0));
}

TEST_CASE("distance function")
{
  CHECK(distance_function(V{0.5}, V{4})[0] == 0.0);
  CHECK(distance_function(V{1.0}, V{4})[0] == Approx(4.0));
  CHECK(distance_function(V{0.0}, V{4})[0] == Approx(4.0));
  auto g = distance_function(V{0.1, 0.9}, V{0, 0});
  CHECK(g == V{0, 0});
}

TEST_CASE("evaluate composes position and distance")
{
  auto emop2 = catalog("EMOP2");
  auto f = evaluate(emop2, V{1, 1, 1, 0.5, 0.5, 0.5});
  for (double v : f)
    CHECK(v == Approx(2.0 / 3.0));
  CHECK_THROWS_AS(evaluate(emop2, V{1, 1, 1}), std::invalid_argument);

  auto prm = GeneratorParams::uniform(3, 2.0, 0.0, 0.5);
  ProblemInstance pos(prm, Generator::G1);
  V x{0.3, 0.1, 0.7, 0.0, 1.0, 0.2};
  auto h = g1_position(std::span<const double>(x).subspan(0, 3), prm);
  auto fx = evaluate(pos, x);
  for (int i = 0; i < 3; ++i)
    CHECK(fx[i] == Approx(h[i]));
}

TEST_CASE("evaluate scales to m = 2..5")
{
  for (std::size_t m = 2; m <= 5; ++m) {
    auto inst = catalog("EMOP1", m);
    V x(2 * m, 0.5);
    auto f = evaluate(inst, x);
    REQUIRE(f.size() == m);
    auto g2 = catalog("EMOP15", m);
    REQUIRE(evaluate(g2, x).size() == m);
  }
}

TEST_CASE("nadir of the image is s + ideal")
{
  Rng rng(2024);
  for (int t = 0; t < 100; ++t) {
    std::size_t m = 2 + t % 4;
    auto inst = random_instance(rng, m, t % 2 == 1);
    V top(m, -1e300);
    V x(2 * m, 0.5);
    for (int k = 0; k < 10000; ++k) {
      for (std::size_t i = 0; i < m; ++i)
        x[i] = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
      auto f = evaluate(inst, x);
      for (std::size_t i = 0; i < m; ++i)
        top[i] = std::max(top[i], f[i]);
    }
    auto b = inst.bounds();
    for (std::size_t i = 0; i < m; ++i) {
      INFO("instance " << t << " axis " << i);
      REQUIRE(top[i] <= b.nadir[i] + 1e-9);
      REQUIRE(top[i] >= b.nadir[i] - 0.02 * inst.params.s[i]);
    }
  }
}

TEST_CASE("p = 1 generator 1 front is the linear simplex in y")
{
  auto prm = GeneratorParams::uniform(4, 1.0, 0.0, 0.5);
  ProblemInstance inst(prm, Generator::G1);
  Rng rng(8);
  for (int t = 0; t < 2000; ++t) {
    V x(8, 0.5);
    for (int i = 0; i < 4; ++i)
      x[i] = rng.uniform();
    auto f = evaluate(inst, x);
    double s = 0;
    for (int i = 0; i < 4; ++i)
      s += f[i] * prm.d[i];
    REQUIRE(s == Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("catalog entries")
{
  auto e5 = catalog("EMOP5");
  CHECK(e5.generator == Generator::G1);
  CHECK(e5.params.p == V(3, 1.0));
  CHECK(e5.params.ell == V(3, 40.0));
  CHECK(e5.params.d == V(3, 0.7));

  auto m10 = catalog("MOPW10");
  CHECK(m10.generator == Generator::G1);
  CHECK(m10.params.p == V(3, 0.5));
  CHECK(m10.params.ell == (V{4, 400, 40000}));
  CHECK(m10.params.d == V(3, 0.7));
  CHECK(m10.params.s == (V{100, 10, 1}));
  CHECK(m10.params.ideal == (V{1, 2, 3}));

  auto e14 = catalog("EMOP14");
  CHECK(e14.generator == Generator::G2);
  CHECK(e14.params.p == V(3, 2.0));
  CHECK(e14.params.d == V(3, 0.5));
  CHECK(*e14.params.gap == V(3, 1.0));

  CHECK(catalog("EMOP1", 5).params.d == V(5, 0.25));
  CHECK(catalog("MOPW11").params.gap == V{2, 0, 0});
  CHECK(catalog("MOPW9").params.d == (V{1, 1, 0.5}));

  for (auto& n : catalog_names())
    CHECK_NOTHROW(catalog(n));
  CHECK_THROWS_WITH(catalog("EMOP17"), Catch::Matchers::ContainsSubstring("MOPW16"));
  CHECK_THROWS_AS(catalog("MOPW1", 4), std::invalid_argument);
}

TEST_CASE("case-study membership")
{
  CaseStudyFront f(3, 1.0);
  CHECK(case_study_membership(f, V{0.3, 0.9, 1.2}));
  CHECK_FALSE(case_study_membership(f, V{0.3, 0.3, 5}));
  CHECK(case_study_membership(f, V{0, 1, 1}));
  CHECK_FALSE(case_study_membership(f, V{-0.01, 1, 1}));
  // scaled bounds give the same answer in normalized terms
  CaseStudyFront g(3, 1.0, FrontBounds({1, 2, 3}, {101, 12, 4}));
  CHECK(case_study_membership(g, g.bounds.denormalize(V{0.3, 0.9, 1.2})));
  CHECK_THROWS_AS(CaseStudyFront(3, 0.0), std::invalid_argument);
}

TEST_CASE("generator membership agrees with sampled images")
{
  // every image point is a member; moving it down along all axes leaves the set
  for (auto name : {"EMOP1", "EMOP3", "EMOP9", "EMOP14", "EMOP16", "MOPW2", "MOPW11"}) {
    auto inst = catalog(name);
    Rng rng(1);
    for (int t = 0; t < 2000; ++t) {
      V x(6);
      for (auto& v : x)
        v = rng.uniform();
      auto f = evaluate(inst, x);
      INFO(name);
      REQUIRE(weakly_dominated(inst, f));
      auto pf = x;
      for (int i = 3; i < 6; ++i)
        pf[i] = 0.5;
      auto z = evaluate(inst, pf);
      auto b = inst.bounds();
      for (int i = 0; i < 3; ++i)
        z[i] -= 1e-3 * (b.nadir[i] - b.ideal[i]);
      REQUIRE_FALSE(weakly_dominated(inst, z));
    }
  }
}

TEST_CASE("config round trip")
{
  for (auto name : {"EMOP3", "EMOP15", "MOPW8", "MOPW11"}) {
    auto inst = catalog(name);
    auto text = serialize_config(inst);
    auto back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(back.params.p == inst.params.p);
    CHECK(back.generator == inst.generator);
  }
  auto inst = parse_config("m=3\ngenerator=G1\np=2\nell=4\nd=0.5\n");
  CHECK(inst.params.s == V(3, 1.0));
  CHECK(inst.params.ideal == V(3, 0.0));
  CHECK_THROWS_AS(parse_config("m=3\np=1\nell=1\nd=0.2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("m=3\nfoo=1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("m=3\ngenerator=G2\np=1\nell=1\nd=0.5\n"), std::invalid_argument);
}

TEST_CASE("pf sample lies on the front")
{
  auto inst = catalog("EMOP2");
  auto pts = pf_sample(inst, 20);
  CHECK(pts.size() > 100);
  for (auto& z : pts) {
    double s = 0;
    for (std::size_t i = 0; i < 3; ++i)
      s += z[i] * 0.5;
    REQUIRE(s == Approx(1.0).margin(1e-12));
  }
}
