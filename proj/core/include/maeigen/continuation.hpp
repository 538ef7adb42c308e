#ifndef MAEIGEN_CONTINUATION_HPP
#define MAEIGEN_CONTINUATION_HPP

#include <functional>
#include <vector>

#include "maeigen/measure.hpp"
#include "maeigen/ma_operator.hpp"

namespace maeigen {

/// Semilinear right-hand side F(x, t) with a declared one-sided Lipschitz
/// bound: dF/dt >= -lipschitz_down for t <= 0. The declaration is
/// spot-checked by finite differences before the solve runs.
struct SemilinearSpec {
  std::function<double(Vec2, double)> F;
  double lipschitz_down = 0.0;
  /// t range for the spot check; samples are drawn from [-t_span, 0].
  double t_span = 1.0;
};

struct SemilinearOptions {
  double tol_diff = 1e-8;     ///< Picard iterate sup-difference target
  double tol_residual = 1e-6; ///< |M(u) - F(.,u)^n nu|_inf target
  int max_iter = 400;
  /// Sup-norm ceiling relative to the first Picard iterate; 0 disables.
  double growth_guard_factor = 50.0;
  DirichletOptions inner;
};

struct SemilinearResult {
  GridFunction u;
  int iterations = 0;
  double residual = 0.0;
  /// Largest nodewise ascent u_{j+1} - u_j over the run; Picard iterates
  /// from u_0 = 0 descend monotonically, so this stays at roundoff scale.
  double worst_ascent = 0.0;
  std::vector<double> sup_norms; ///< |u_j|_inf per iterate
};

/// Picard iteration u_{j+1} = solve(M(u) = F(., u_j)^n nu) from u_0 = 0.
/// Throws NonConvergence with diagnostic "lambda0 may exceed lambda1" when
/// the iterates grow monotonically past the guard without contracting.
SemilinearResult solve_semilinear(const GridPtr& grid, const MeasureSpec& nu,
                                  const SemilinearSpec& spec, const SemilinearOptions& opts = {});

/// Validates the declared lipschitz_down against finite-difference slopes at
/// sampled (node, t) pairs. Throws InvalidInput on violation. Deterministic.
void validate_semilinear_spec(const Grid& grid, const SemilinearSpec& spec, int samples = 100,
                              double slope_slack = 0.05);

struct LionsOptions {
  double lambda_max = 0.0; ///< required, > 0
  double growth_guard_factor = 50.0;
  double bisect_tol = 0.02; ///< stop when (hi - lo) <= bisect_tol * hi
  int picard_max_iter = 2000;
  double picard_tol = 1e-8;
  /// Increment ratios q within this margin of 1 trigger a longer re-probe
  /// before a verdict; ratios above 1 mean divergence.
  double ratio_margin = 1e-3;
  DirichletOptions inner;
};

struct LionsProbe {
  double lambda = 0.0;
  double sup_norm = 0.0; ///< converged or projected |u_lambda|_inf
  bool converged = false;
  bool subcritical = false;
};

struct BracketResult {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  GridFunction witness_lo;            ///< converged solution at lambda_lo
  std::vector<LionsProbe> sup_norm_curve; ///< all probes, sorted by lambda
};

/// Brackets the eigenvalue by bisection on the family M(u) = (1 - lambda u)^n nu.
/// A lambda is subcritical when Picard contracts (converges, or its sup-norm
/// increments decay geometrically); supercritical when increments stop
/// contracting or the growth guard trips without contraction. The bracket is
/// an estimate, not a certificate.
BracketResult lions_bracket(const GridPtr& grid, const MeasureSpec& nu, const LionsOptions& opts);

} // namespace maeigen

#endif
