#include <cmath>

#include "doctest.h"
#include "maeigen/continuation.hpp"
#include "maeigen/domain.hpp"
#include "maeigen/eigen_iteration.hpp"
#include "maeigen/errors.hpp"

using namespace maeigen;

TEST_CASE("semilinear with F = 0 returns the zero solution") {
  const GridPtr g = discretize(ConvexDomain::disc({0, 0}, 1.0), 1.0 / 16, 2);
  SemilinearSpec spec{[](Vec2, double) { return 0.0; }, 0.0, 1.0};
  const SemilinearResult res = solve_semilinear(g, MeasureSpec::lebesgue(), spec);
  CHECK(res.u.sup_norm() <= 1e-8);
  CHECK(res.residual <= 1e-12);
}

TEST_CASE("semilinear with constant F reduces to the plain Dirichlet problem") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 512, 1);
  SemilinearSpec spec{[](Vec2, double) { return 1.0; }, 0.0, 1.0};
  const SemilinearResult res = solve_semilinear(g, MeasureSpec::lebesgue(), spec);
  // u'' = 1 integrates to (x^2 - x)/2, value -1/8 at the midpoint.
  double mid = 0.0, best = 1.0;
  for (std::size_t i = 0; i < g->size(); ++i) {
    const double d = std::abs(g->node(i).x - 0.5);
    if (d < best) {
      best = d;
      mid = res.u[i];
    }
  }
  CHECK(mid == doctest::Approx(-0.125).epsilon(1e-6));

  // The lambda = 0 member of the continuation family is exactly the plain
  // solve output.
  const GridFunction direct =
      solve_dirichlet(g, MeasureSpec::lebesgue().densities(*g));
  CHECK(sup_diff(res.u, direct) <= 1e-10);
}

TEST_CASE("semilinear continuation member below the eigenvalue") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 512, 1);
  const MeasureSpec leb = MeasureSpec::lebesgue();
  const EigenResult eig = inverse_iterate(g, leb);
  REQUIRE(eig.converged);
  const double lam = 0.5 * eig.lambda_hat;
  SemilinearSpec spec{[lam](Vec2, double t) { return 1.0 - lam * t; }, lam, 1.0};
  const SemilinearResult res = solve_semilinear(g, leb, spec);
  CHECK(res.residual <= 1e-6);
  CHECK(res.worst_ascent <= 1e-8); // iterates descend nodewise from u0 = 0
  // Sup norms of the Picard iterates are nondecreasing.
  for (std::size_t j = 1; j < res.sup_norms.size(); ++j)
    CHECK(res.sup_norms[j] >= res.sup_norms[j - 1] - 1e-10);
}

TEST_CASE("declared Lipschitz bound is spot-checked") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 64, 1);
  SemilinearSpec lying{[](Vec2, double t) { return 1.0 - 2.0 * t; }, 0.5, 1.0};
  CHECK_THROWS_AS(validate_semilinear_spec(*g, lying), InvalidInput);
  SemilinearSpec honest{[](Vec2, double t) { return 1.0 - 2.0 * t; }, 2.0, 1.0};
  CHECK_NOTHROW(validate_semilinear_spec(*g, honest));
}

TEST_CASE("supercritical lambda grows past the guard with a diagnostic") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 128, 1);
  const double lam = 1.2 * M_PI * M_PI;
  SemilinearSpec spec{[lam](Vec2, double t) { return 1.0 - lam * t; }, lam, 1.0};
  try {
    solve_semilinear(g, MeasureSpec::lebesgue(), spec);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.diagnostic == "lambda0 may exceed lambda1");
  }
}

TEST_CASE("1D lions bracket contains pi^2") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 256, 1);
  LionsOptions opts;
  opts.lambda_max = 20.0;
  const BracketResult res = lions_bracket(g, MeasureSpec::lebesgue(), opts);
  const double pi2 = M_PI * M_PI;
  CHECK(res.lambda_lo <= pi2);
  CHECK(res.lambda_hi >= pi2);
  CHECK(res.lambda_hi - res.lambda_lo <= 0.02 * res.lambda_hi);

  // Witness solves the family member at lambda_lo.
  CHECK(res.witness_lo.sup_norm() > 0.0);

  // Converged sup norms grow with lambda.
  double prev = 0.0;
  for (const LionsProbe& p : res.sup_norm_curve) {
    if (!p.converged) continue;
    CHECK(p.sup_norm >= prev * (1.0 - 0.01));
    prev = p.sup_norm;
  }
}

TEST_CASE("lions window errors") {
  const GridPtr g = discretize(ConvexDomain::interval(0, 1), 1.0 / 128, 1);
  LionsOptions opts;
  opts.lambda_max = 1.0; // far below pi^2
  CHECK_THROWS_AS(lions_bracket(g, MeasureSpec::lebesgue(), opts), AllSubcritical);
  opts.lambda_max = 0.0;
  CHECK_THROWS_AS(lions_bracket(g, MeasureSpec::lebesgue(), opts), InvalidInput);
}
