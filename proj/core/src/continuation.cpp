#include "maeigen/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "maeigen/errors.hpp"

namespace maeigen {

namespace {

std::vector<double> semilinear_rhs(const Grid& grid, const std::vector<double>& density,
                                   const std::function<double(Vec2, double)>& F,
                                   const std::vector<double>& u) {
  const int n = grid.dimension();
  std::vector<double> rhs(grid.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    const double f = F(grid.node(i), u[i]);
    if (f < 0.0) {
      std::ostringstream msg;
      msg << "semilinear: F evaluated negative (" << f << ") at node " << i;
      throw InvalidInput(msg.str());
    }
    rhs[i] = (n == 1 ? f : f * f) * density[i];
  }
  return rhs;
}

double semilinear_residual(const GridFunction& u, const std::vector<double>& density,
                           const std::function<double(Vec2, double)>& F) {
  const Grid& grid = u.grid();
  const int n = grid.dimension();
  const DiscreteMAResult ma = ma_apply(u);
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double f = F(grid.node(i), u[i]);
    r = std::max(r, std::abs(ma.value[i] - (n == 1 ? f : f * f) * density[i]));
  }
  return r;
}

} // namespace

void validate_semilinear_spec(const Grid& grid, const SemilinearSpec& spec, int samples,
                              double slope_slack) {
  if (!spec.F) throw InvalidInput("semilinear: F callback is empty");
  if (spec.lipschitz_down < 0.0)
    throw InvalidInput("semilinear: lipschitz_down must be nonnegative");
  std::mt19937_64 rng(0x6d61656967656eULL);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> tdist(-spec.t_span, 0.0);
  const double delta = 1e-6 * std::max(spec.t_span, 1.0);
  const double bound = -spec.lipschitz_down * (1.0 + slope_slack) - 1e-9;
  for (int s = 0; s < samples; ++s) {
    const Vec2 x = grid.node(pick(rng));
    double t = tdist(rng);
    if (t + delta > 0.0) t -= delta;
    const double slope = (spec.F(x, t + delta) - spec.F(x, t)) / delta;
    if (slope < bound) {
      std::ostringstream msg;
      msg << "semilinear: sampled dF/dt = " << slope << " at t = " << t
          << " violates the declared bound -" << spec.lipschitz_down;
      throw InvalidInput(msg.str());
    }
  }
}

SemilinearResult solve_semilinear(const GridPtr& grid, const MeasureSpec& nu,
                                  const SemilinearSpec& spec, const SemilinearOptions& opts) {
  validate_semilinear_spec(*grid, spec);
  const std::vector<double> density = nu.densities(*grid);

  SemilinearResult result;
  std::vector<double> u(grid->size(), 0.0);
  double guard = 0.0;
  double prev_norm = 0.0;
  int growing_streak = 0;

  for (int j = 0; j < opts.max_iter; ++j) {
    const std::vector<double> rhs = semilinear_rhs(*grid, density, spec.F, u);
    DirichletOptions inner = opts.inner;
    inner.warm_start = &u;
    double sup_rhs = 0.0;
    for (double r : rhs) sup_rhs = std::max(sup_rhs, r);
    inner.tolerance = opts.inner.tolerance * std::max(1.0, sup_rhs);
    GridFunction next = solve_dirichlet(grid, rhs, {}, inner);

    double ascent = 0.0, diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      ascent = std::max(ascent, next[i] - u[i]);
      diff = std::max(diff, std::abs(next[i] - u[i]));
      norm = std::max(norm, std::abs(next[i]));
    }
    result.worst_ascent = std::max(result.worst_ascent, ascent);
    result.sup_norms.push_back(norm);
    u = next.values();
    result.iterations = j + 1;

    if (j == 0) guard = opts.growth_guard_factor * norm;

    if (diff < opts.tol_diff) {
      const double res = semilinear_residual(next, density, spec.F);
      result.residual = res;
      if (res <= opts.tol_residual) {
        result.u = std::move(next);
        return result;
      }
    }

    growing_streak = norm > prev_norm ? growing_streak + 1 : 0;
    prev_norm = norm;
    if (guard > 0.0 && j > 2 && norm > guard && growing_streak == j + 1) {
      throw NonConvergence("solve_semilinear: iterate sup-norms grow monotonically past the guard",
                           norm, j + 1, "lambda0 may exceed lambda1");
    }
  }
  GridFunction last(grid, u);
  const double res = semilinear_residual(last, density, spec.F);
  throw NonConvergence("solve_semilinear: Picard budget exhausted", res, opts.max_iter,
                       res < 1e-2 ? "slow contraction near the critical value" : "");
}

namespace {

struct ProbeOutcome {
  bool subcritical = false;
  bool converged = false;
  double sup_norm = 0.0;
  GridFunction u;
};

// One Picard run for F = (1 - lambda t) with an increment-ratio contraction
// test. Guard exceedance alone is not a supercritical verdict: near the
// critical value genuinely subcritical solutions have large norms, so the
// verdict rests on whether the sup-norm increments keep contracting.
// Returns true when decided; false when q stayed inside the ambiguity band.
bool lions_probe_once(const GridPtr& grid, const std::vector<double>& density, double lambda,
                      double guard, const LionsOptions& opts, int max_iter, double margin,
                      ProbeOutcome& out) {
  const int n = grid->dimension();
  std::vector<double> u(grid->size(), 0.0);
  double prev_norm = 0.0;
  double prev_delta = 0.0;
  std::vector<double> ratios;

  auto median_ratio = [&] {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    return sorted[sorted.size() / 2];
  };

  for (int j = 0; j < max_iter; ++j) {
    std::vector<double> rhs(grid->size());
    double sup_rhs = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const double f = 1.0 - lambda * u[i];
      rhs[i] = (n == 1 ? f : f * f) * density[i];
      sup_rhs = std::max(sup_rhs, rhs[i]);
    }
    DirichletOptions inner = opts.inner;
    inner.warm_start = &u;
    // Deep-subcritical iterates blow the right-hand side up by the guard
    // factor squared; an absolute residual target at the base tolerance is
    // then below roundoff. Scale with the data.
    inner.tolerance = opts.inner.tolerance * std::max(1.0, sup_rhs);
    GridFunction next = solve_dirichlet(grid, rhs, {}, inner);

    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      diff = std::max(diff, std::abs(next[i] - u[i]));
      norm = std::max(norm, std::abs(next[i]));
    }
    u = next.values();

    if (diff < std::max(opts.picard_tol, inner.tolerance)) {
      out.subcritical = true;
      out.converged = true;
      out.sup_norm = norm;
      out.u = std::move(next);
      return true;
    }

    const double delta = norm - prev_norm;
    if (j > 0 && prev_delta > 0.0 && delta > 0.0) {
      ratios.push_back(delta / prev_delta);
      if (ratios.size() > 6) ratios.erase(ratios.begin());
    }
    prev_delta = delta;
    prev_norm = norm;

    if (ratios.size() >= 5) {
      const double q = median_ratio();
      if (q >= 1.0 + margin && norm > guard) {
        out.subcritical = false;
        out.sup_norm = norm;
        return true; // increments grow: divergent
      }
      if (norm > 20.0 * guard && q >= 1.0 - margin) {
        out.subcritical = false;
        out.sup_norm = norm;
        return true; // runaway without contraction
      }
    }
  }
  // Budget exhausted: project the limit when the ratio clearly contracts.
  if (!ratios.empty()) {
    const double q = median_ratio();
    if (q < 1.0 - margin) {
      out.subcritical = true;
      out.converged = false;
      out.sup_norm = prev_norm + prev_delta * q / (1.0 - q);
      return true;
    }
    if (q < 1.0 + margin) {
      out.sup_norm = prev_norm;
      return false; // ambiguous: q too close to 1 for this budget
    }
  }
  out.subcritical = false;
  out.sup_norm = prev_norm;
  return true;
}

// Ambiguous probes re-run with a larger budget and a tighter band.
ProbeOutcome lions_probe(const GridPtr& grid, const std::vector<double>& density, double lambda,
                         double guard, const LionsOptions& opts) {
  ProbeOutcome out;
  int budget = opts.picard_max_iter;
  double margin = opts.ratio_margin;
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (lions_probe_once(grid, density, lambda, guard, opts, budget, margin, out)) return out;
    budget *= 4;
    margin *= 0.25;
  }
  out.subcritical = false; // still ambiguous: err on the supercritical side
  return out;
}

} // namespace

BracketResult lions_bracket(const GridPtr& grid, const MeasureSpec& nu, const LionsOptions& opts) {
  if (!(opts.lambda_max > 0.0)) throw InvalidInput("lions_bracket: lambda_max must be positive");
  const std::vector<double> density = nu.densities(*grid);

  // lambda = 0 member: the plain Dirichlet solution, sets the growth guard.
  GridFunction base = solve_dirichlet(grid, density, {}, opts.inner);
  const double guard = opts.growth_guard_factor * base.sup_norm();

  BracketResult result;
  auto probe = [&](double lambda) {
    ProbeOutcome out = lions_probe(grid, density, lambda, guard, opts);
    result.sup_norm_curve.push_back({lambda, out.sup_norm, out.converged, out.subcritical});
    return out;
  };

  ProbeOutcome top = probe(opts.lambda_max);
  if (top.subcritical)
    throw AllSubcritical("lions_bracket: lambda_max " + std::to_string(opts.lambda_max) +
                         " is still subcritical, raise it");

  double lo = 0.0, hi = opts.lambda_max;
  GridFunction witness = base;
  double witness_lambda = 0.0;
  bool have_lo = false;
  for (double trial = 0.5 * opts.lambda_max; trial > opts.lambda_max * 1e-9; trial *= 0.5) {
    ProbeOutcome out = probe(trial);
    if (out.subcritical) {
      lo = trial;
      have_lo = true;
      if (out.converged) {
        witness = std::move(out.u);
        witness_lambda = trial;
      }
      break;
    }
    hi = trial;
  }
  if (!have_lo)
    throw AllSupercritical("lions_bracket: no subcritical lambda found down to " +
                           std::to_string(opts.lambda_max * 1e-9));

  while (hi - lo > opts.bisect_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    ProbeOutcome out = probe(mid);
    if (out.subcritical) {
      lo = mid;
      if (out.converged) {
        witness = std::move(out.u);
        witness_lambda = mid;
      }
    } else {
      hi = mid;
    }
  }

  if (witness_lambda != lo) {
    // The final lo was certified by projection only; try to converge there
    // for the witness, keeping the best converged one otherwise.
    LionsOptions retry = opts;
    retry.picard_max_iter = 8 * opts.picard_max_iter;
    ProbeOutcome out = lions_probe(grid, density, lo, guard, retry);
    if (out.converged) witness = std::move(out.u);
  }

  result.lambda_lo = lo;
  result.lambda_hi = hi;
  result.witness_lo = std::move(witness);
  std::sort(result.sup_norm_curve.begin(), result.sup_norm_curve.end(),
            [](const LionsProbe& a, const LionsProbe& b) { return a.lambda < b.lambda; });
  return result;
}

} // namespace maeigen
