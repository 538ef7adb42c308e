#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "maeigen/domain.hpp"
#include "maeigen/errors.hpp"
#include "maeigen/grid.hpp"
#include "maeigen/measure.hpp"

using namespace maeigen;

TEST_CASE("domain parsing and containment") {
  const ConvexDomain disc = build_domain("disc 0 0 1");
  CHECK(disc.contains({0.5, 0.0}));
  CHECK(!disc.contains({1.5, 0.0}));
  CHECK(disc.dimension() == 2);

  const ConvexDomain iv = build_domain("interval 0 1");
  CHECK(iv.dimension() == 1);
  CHECK(iv.contains({0.5, 0.0}));
  CHECK(!iv.contains({0.0, 0.0}));
  CHECK(!iv.contains({1.0, 0.0}));

  CHECK_NOTHROW(build_domain("polygon 0 0 2 0 2 1 0 1"));
  CHECK_THROWS_AS(build_domain("polygon 0 0 2 0 1 0.5 2 1 0 1"), InvalidInput);
  CHECK_THROWS_WITH_AS(build_domain("polygon 0 0 2 0 1 0.5 2 1 0 1"),
                       doctest::Contains("vertex"), InvalidInput);

  CHECK_THROWS_AS(build_domain("interval 1 0"), InvalidInput);
  CHECK_THROWS_AS(build_domain("disc 0 0 -1"), InvalidInput);
  CHECK_THROWS_AS(build_domain("box 1 1 0 0"), InvalidInput);
  CHECK_THROWS_AS(build_domain("pentagon 1 2 3"), InvalidInput);
  CHECK_THROWS_AS(build_domain("disc 0 0"), InvalidInput);
}

TEST_CASE("domain vertices on boundary, centroid inside") {
  const std::vector<Vec2> vs = {{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  const ConvexDomain poly = ConvexDomain::polygon(vs);
  for (const Vec2& v : vs) CHECK(!poly.contains(v));
  CHECK(poly.contains(poly.centroid()));
  CHECK(poly.volume() == doctest::Approx(2.0));
  CHECK(poly.diameter() == doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("distance to boundary") {
  const ConvexDomain disc = ConvexDomain::disc({0, 0}, 1.0);
  CHECK(disc.distance_to_boundary({0, 0}) == doctest::Approx(1.0));
  const ConvexDomain box = ConvexDomain::box({0, 0}, {1, 1});
  CHECK(box.distance_to_boundary({0.5, 0.25}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(disc.distance_to_boundary({2, 0}), InvalidInput);

  // Midpoint concavity on random interior pairs.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  int tested = 0;
  while (tested < 1000) {
    const Vec2 a{c(rng), c(rng)}, b{c(rng), c(rng)};
    if (!disc.contains(a) || !disc.contains(b)) continue;
    ++tested;
    const double mid = disc.distance_to_boundary(0.5 * (a + b));
    const double avg = 0.5 * (disc.distance_to_boundary(a) + disc.distance_to_boundary(b));
    CHECK(mid >= avg - 1e-12);
  }
}

TEST_CASE("polygon membership agrees with the equivalent box") {
  const ConvexDomain box = ConvexDomain::box({0, 0}, {2, 1});
  const ConvexDomain poly = ConvexDomain::polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cx(-0.5, 2.5), cy(-0.5, 1.5);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p{cx(rng), cy(rng)};
    CHECK(box.contains(p) == poly.contains(p));
  }
}

TEST_CASE("interior node enumeration") {
  // interval(0,1), h = 0.25: interior lattice points 0.25, 0.5, 0.75.
  const GridPtr g1 = discretize(ConvexDomain::interval(0, 1), 0.25, 1);
  REQUIRE(g1->size() == 3);
  CHECK(g1->node(0).x == doctest::Approx(0.25));
  CHECK(g1->node(1).x == doctest::Approx(0.5));
  CHECK(g1->node(2).x == doctest::Approx(0.75));

  // Unit box, h = 1/3: two interior coordinates per axis.
  const GridPtr g2 = discretize(ConvexDomain::box({0, 0}, {1, 1}), 1.0 / 3.0, 1);
  CHECK(g2->size() == 4);

  // disc(0,1), h = 0.5: independent enumeration of the anchored lattice.
  const ConvexDomain disc = ConvexDomain::disc({0, 0}, 1.0);
  const GridPtr g3 = discretize(disc, 0.5, 1);
  std::size_t expected = 0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j)
      if (0.25 * (i * i + j * j) < 1.0) ++expected;
  CHECK(expected == 9); // strictly interior lattice points
  CHECK(g3->size() == expected);

  CHECK_THROWS_AS(discretize(ConvexDomain::interval(0, 1), 0.5, 1), InvalidInput);
}

TEST_CASE("stencil directions are orthogonal coprime pairs") {
  for (int W : {1, 2, 3}) {
    const std::vector<IVec2> dirs = stencil_directions_2d(W);
    for (const IVec2 v : dirs) {
      CHECK(std::max(std::abs(v.x), std::abs(v.y)) <= W);
      CHECK(std::gcd(std::abs(v.x), std::abs(v.y)) == 1);
    }
    // Every direction's rotation appears up to sign.
    for (const IVec2 v : dirs) {
      const IVec2 r = rot90(v);
      bool found = false;
      for (const IVec2 w : dirs)
        found = found || (w == r) || (w == IVec2{-r.x, -r.y});
      CHECK(found);
    }
  }
  CHECK(stencil_directions_2d(1).size() == 4);
  CHECK(stencil_directions_2d(2).size() == 8);

  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), 0.125, 2);
  CHECK(g->direction_pairs().size() == 4);
  for (const auto& [a, b] : g->direction_pairs()) {
    const IVec2 va = g->directions()[a], vb = g->directions()[b];
    CHECK(va.x * vb.x + va.y * vb.y == 0);
  }
}

TEST_CASE("stencil arms land on the boundary or on an interior neighbor") {
  for (const char* spec : {"disc 0 0 1", "box 0 0 2 1", "polygon 0 0 2 0 2.5 1 1 2 0 1"}) {
    const ConvexDomain dom = build_domain(spec);
    const GridPtr g = discretize(dom, dom.diameter() / 24.0, 2);
    const double tol = 1e-12 * dom.diameter();
    for (std::size_t i = 0; i < g->size(); ++i) {
      for (std::size_t d = 0; d < g->directions().size(); ++d) {
        const DirStencil& st = g->stencil(i, d);
        for (const StencilArm* arm : {&st.plus, &st.minus}) {
          CHECK(arm->frac > 0.0);
          if (arm->neighbor >= 0) {
            CHECK(arm->frac == 1.0);
            CHECK(norm(arm->endpoint - g->node(arm->neighbor)) <= tol);
          } else {
            // Endpoint sits on the boundary.
            CHECK(std::abs(dom.ray_exit(g->node(i), arm->endpoint - g->node(i)) - 1.0) <= 1e-9);
          }
        }
      }
    }
  }
}

TEST_CASE("node count scales with volume over h^n") {
  const ConvexDomain disc = ConvexDomain::disc({0, 0}, 1.0);
  std::size_t prev = 0;
  for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const GridPtr g = discretize(disc, h, 1);
    const double ideal = disc.volume() / (h * h);
    if (h <= disc.diameter() / 16.0) {
      CHECK(g->size() >= ideal / 2.0);
      CHECK(g->size() <= ideal * 2.0);
    }
    if (prev > 0) CHECK(g->size() >= 3 * prev); // halving h at least triples the count
    prev = g->size();
  }
}

TEST_CASE("measure specs evaluate and validate") {
  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), 0.125, 2);

  const std::vector<double> leb = MeasureSpec::lebesgue().densities(*g);
  for (double v : leb) CHECK(v == 1.0);

  const std::vector<double> rp =
      MeasureSpec::radial_power(2.0, 0.5, {0.0037, 0.0021}).densities(*g);
  for (double v : rp) CHECK(v > 0.0);

  CHECK_THROWS_AS(MeasureSpec::constant(-1.0), InvalidInput);
  CHECK_THROWS_AS(
      MeasureSpec::expression([](Vec2 p) { return p.x; }, "signed").densities(*g),
      NegativeDensity);
  CHECK_THROWS_AS(MeasureSpec::expression([](Vec2) { return 0.0; }, "null").densities(*g),
                  InvalidInput);
  // A node sitting exactly on the singularity is rejected, not silently inf.
  CHECK_THROWS_AS(MeasureSpec::radial_power(1.0, 1.5, {0, 0}).densities(*g), InvalidInput);

  CHECK_NOTHROW(MeasureSpec::parse("lebesgue"));
  CHECK_NOTHROW(MeasureSpec::parse("const:2.5"));
  CHECK_NOTHROW(MeasureSpec::parse("radial:1:0.5:0.1:0.1"));
  CHECK_THROWS_AS(MeasureSpec::parse("fancy:1"), InvalidInput);
  // Integrability bound on the radial exponent.
  CHECK_THROWS_AS(MeasureSpec::radial_power(1.0, 2.0, {0.1, 0.1}).densities(*g), InvalidInput);
}

TEST_CASE("grid functions reject non-finite values") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 16, 1);
  std::vector<double> vals(g->size(), -1.0);
  vals[3] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(GridFunction(g, std::move(vals)), InvalidInput);
}
