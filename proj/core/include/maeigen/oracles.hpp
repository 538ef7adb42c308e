#ifndef MAEIGEN_ORACLES_HPP
#define MAEIGEN_ORACLES_HPP

#include <functional>
#include <utility>
#include <vector>

#include "maeigen/domain.hpp"
#include "maeigen/measure.hpp"
#include "maeigen/ma_operator.hpp"

namespace maeigen {

/// Closed-form 1D eigenpair on an interval of length L: the problem reduces
/// to u'' = lambda (-u) with zero boundary, so lambda1 = (pi/L)^2 and the
/// normalized eigenfunction is -sin(pi x / L) (x measured from the left end).
struct Oracle1DResult {
  double lambda1 = 0.0;
  std::function<double(double)> eigenfunction; ///< of the offset from the left end
};
Oracle1DResult oracle_1d(double length);

/// Radial eigenproblem on a disc of radius R with radial density f(r):
///   u'' u'/r = lambda^2 u^2 f(r),  u(0) = -1, u'(0) = 0, u(R) = 0.
struct RadialProblem {
  double radius = 1.0;
  std::function<double(double)> density; ///< f(r) >= 0, continuous on (0, R]
};

struct ShootOptions {
  double ode_rel_tol = 1e-10;
  double ode_abs_tol = 1e-12;
  double lambda_tol = 1e-11; ///< relative bisection/secant tolerance on lambda
  int max_bracket_doublings = 60;
};

struct RadialSolution {
  double lambda1 = 0.0;
  std::vector<std::pair<double, double>> profile; ///< (r, u(r)) samples
};

/// Shooting with an adaptive Runge-Kutta integrator; the r = 0 singularity is
/// resolved by a series start. Throws NoBracket when no sign change is found.
RadialSolution oracle_radial(const RadialProblem& problem, const ShootOptions& opts = {});

/// Piecewise-linear convex function: max over affine pieces g.x + b.
struct PLConvexFunction {
  struct Piece {
    Vec2 gradient;
    double offset;
  };
  std::vector<Piece> pieces;

  double eval(Vec2 x) const;
  /// Tangent-plane approximation of the cone |x - center| - radius with m
  /// pieces, gradients equally spaced on the unit circle.
  static PLConvexFunction cone(Vec2 center, double radius, int m);
};

/// Atomic Alexandrov measure of a PL convex function: one atom per vertex of
/// the max-of-affine graph inside the domain, mass = area of the convex hull
/// of the gradients active there (the subdifferential cell).
struct AtomicMeasure {
  struct Atom {
    Vec2 point;
    double mass;
    std::vector<int> active_pieces;
  };
  std::vector<Atom> atoms;
  double total_mass = 0.0;
};
AtomicMeasure oracle_pl_ma(const PLConvexFunction& u, const ConvexDomain& domain);

/// Total discrete MA mass of -(-u_h)^alpha across a refinement sequence,
/// where u_h solves M(u) = g on each grid. For alpha in (0,1) the continuum
/// mass is infinite and the discrete totals grow under refinement; alpha = 1
/// is the finite-mass control.
struct MassProbeRow {
  double h = 0.0;
  double mass = 0.0;
  double ratio = 0.0; ///< mass / previous coarser mass, 0 for the first row
};
std::vector<MassProbeRow> mass_divergence_probe(const ConvexDomain& domain, const MeasureSpec& rhs,
                                                double alpha, const std::vector<double>& spacings,
                                                int width = 2,
                                                const DirichletOptions& inner = {});

/// Smooth 1D test input given by closed-form value and second derivative;
/// must be evaluable slightly beyond the interval (one stencil layer).
struct SmoothFunction1D {
  std::function<double(double)> value;
  std::function<double(double)> second_derivative;
};

/// Both sides of the toric pushforward identity at n = 1: the annulus
/// integral of the discrete Laplacian of u(log|z|) against chi(log|z|),
/// normalized so that the identity is exact for u = x^2 in the continuum,
/// versus the 1D integral of chi u''.
struct ToricCheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
};
ToricCheckResult toric_check_1d(const SmoothFunction1D& u, double a, double b,
                                const std::function<double(double)>& chi, int n_rho = 256,
                                int n_theta = 256);

/// Normalization of the complex Monge-Ampere mass at n = 1 relative to the
/// plain polar Laplacian: fixed once so that the pushforward identity holds
/// exactly for u = x^2, chi = 1; never refit per test.
inline constexpr double kDdcNormalization1D = 1.0 / (2.0 * M_PI);

} // namespace maeigen

#endif
