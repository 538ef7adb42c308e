#include "maeigen/eigen_iteration.hpp"

#include <cmath>
#include <sstream>

#include "maeigen/errors.hpp"

namespace maeigen {

namespace {

double lift_pow(double scale, int n) {
  // sigma^{n+1} for the (n+1)-homogeneous functionals
  return n == 1 ? scale * scale : scale * scale * scale;
}

double fixed_point_residual(const GridFunction& u, double R, std::span<const double> nu) {
  const int n = u.grid().dimension();
  const DiscreteMAResult ma = ma_apply(u);
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = -u[i];
    const double rhs = R * (n == 1 ? w : w * w) * nu[i];
    r = std::max(r, std::abs(ma.value[i] - rhs));
  }
  return r;
}

} // namespace

std::string CertificateViolation::describe() const {
  const char* name = "";
  switch (quantity) {
  case Quantity::Energy: name = "E decreased"; break;
  case Quantity::Mass: name = "I decreased"; break;
  case Quantity::Ratio: name = "R increased"; break;
  case Quantity::NormalizedEnergy: name = "E/I^{1/(n+1)} increased"; break;
  }
  std::ostringstream s;
  s << "step " << k << ": " << name << " by relative " << observed;
  return s.str();
}

std::vector<CertificateViolation> certify_monotone(const IterationTrace& trace, double tol_cert) {
  std::vector<CertificateViolation> out;
  using Q = CertificateViolation::Quantity;
  const double expo = 1.0 / (trace.dimension + 1);
  for (std::size_t k = 0; k + 1 < trace.steps.size(); ++k) {
    const TraceStep& a = trace.steps[k];
    const TraceStep& b = trace.steps[k + 1];
    const auto flag = [&](Q q, double observed) {
      out.push_back({int(k + 1), q, observed});
    };
    if (b.E < a.E * (1.0 - tol_cert)) flag(Q::Energy, 1.0 - b.E / a.E);
    if (b.I < a.I * (1.0 - tol_cert)) flag(Q::Mass, 1.0 - b.I / a.I);
    if (b.R > a.R * (1.0 + tol_cert)) flag(Q::Ratio, b.R / a.R - 1.0);
    if (a.E > 0.0 && a.I > 0.0) {
      const double qa = a.E / std::pow(a.I, expo);
      const double qb = b.E / std::pow(b.I, expo);
      if (qb > qa * (1.0 + tol_cert)) flag(Q::NormalizedEnergy, qb / qa - 1.0);
    }
  }
  return out;
}

EigenResult inverse_iterate(const GridPtr& grid, const MeasureSpec& nu,
                            std::optional<GridFunction> u0, const IterationOptions& opts) {
  const int n = grid->dimension();
  const std::vector<double> density = nu.densities(*grid);
  const double tol_residual =
      opts.tol_residual > 0.0 ? opts.tol_residual : 10.0 * opts.inner.tolerance;

  GridFunction u = [&] {
    if (u0) {
      if (!u0->zero_boundary())
        throw InvalidInput("inverse_iterate: u0 must carry zero boundary data");
      if (u0->sup_norm() == 0.0) throw DegenerateStart("inverse_iterate: u0 vanishes identically");
      for (double v : u0->values())
        if (v > 0.0) throw InvalidInput("inverse_iterate: u0 must be nonpositive");
      return std::move(*u0);
    }
    return solve_dirichlet(grid, density, {}, opts.inner);
  }();

  double sigma = 1.0;
  if (opts.normalize) {
    const double s = u.sup_norm();
    sigma = s;
    u.scale(1.0 / s);
  }

  EigenResult result;
  IterationTrace& trace = result.trace;
  trace.dimension = n;
  double prev_R = 0.0;
  double sup_diff_rel = 0.0;
  double inner_residual = 0.0;

  int k = 0;
  for (; k <= opts.max_iter; ++k) {
    FunctionalReport rep = rayleigh(u, density);
    if (!(rep.E > 0.0))
      throw DegenerateStart("inverse_iterate: energy collapsed to zero at step " +
                            std::to_string(k));
    const double lift = lift_pow(sigma, n);
    trace.steps.push_back({k, lift * rep.E, lift * rep.I, rep.R, rep.lambda_hat, sup_diff_rel,
                           inner_residual, sigma});

    const bool r_settled = k > 0 && std::abs(rep.R - prev_R) < opts.tol_R * rep.R;
    if (k > 0 && sup_diff_rel < opts.tol_diff && r_settled) {
      const double fp = fixed_point_residual(u, rep.R, density);
      result.final_residual = fp;
      if (fp <= tol_residual) {
        result.converged = true;
        break;
      }
    }
    prev_R = rep.R;
    if (k == opts.max_iter) break;

    std::vector<double> rhs(grid->size());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
      const double w = -u[i];
      rhs[i] = rep.R * (n == 1 ? w : w * w) * density[i];
    }
    DirichletOptions inner = opts.inner;
    inner.warm_start = &u.values();
    SolveReport inner_rep;
    GridFunction next = [&] {
      try {
        return solve_dirichlet(grid, rhs, {}, inner, &inner_rep);
      } catch (const NonConvergence& e) {
        throw NonConvergence("inverse_iterate: inner Dirichlet solve failed at step " +
                                 std::to_string(k) + ": " + e.what(),
                             e.residual, k);
      }
    }();
    inner_residual = inner_rep.residual;
    sup_diff_rel = sup_diff(next, u) / u.sup_norm();

    if (opts.normalize) {
      const double s = next.sup_norm();
      sigma *= s;
      next.scale(1.0 / s);
    }
    u = std::move(next);
  }

  result.iterations = k;
  const double s = u.sup_norm();
  u.scale(1.0 / s);
  const FunctionalReport final_rep = rayleigh(u, density);
  result.lambda_hat = final_rep.lambda_hat;
  if (result.final_residual == 0.0)
    result.final_residual = fixed_point_residual(u, final_rep.R, density);
  result.u = std::move(u);
  result.certificate_violations = certify_monotone(trace, 1e-6);
  return result;
}

Proportionality proportionality(const GridFunction& u, const GridFunction& v) {
  const double nu = u.sup_norm();
  const double nv = v.sup_norm();
  if (nu == 0.0 || nv == 0.0) throw ZeroFunction("proportionality: zero input function");

  const auto dev = [&](double c) {
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - c * v[i]));
    return m / nu;
  };

  // dev is convex in c (max of affine absolute values); golden section.
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = nu / nv / 3.0, hi = nu / nv * 3.0;
  double c1 = hi - golden * (hi - lo), c2 = lo + golden * (hi - lo);
  double f1 = dev(c1), f2 = dev(c2);
  for (int it = 0; it < 90; ++it) {
    if (f1 <= f2) {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - golden * (hi - lo);
      f1 = dev(c1);
    } else {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + golden * (hi - lo);
      f2 = dev(c2);
    }
  }
  const double c = f1 <= f2 ? c1 : c2;
  return {c, dev(c)};
}

} // namespace maeigen
