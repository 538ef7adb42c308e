#ifndef MAEIGEN_FUNCTIONALS_HPP
#define MAEIGEN_FUNCTIONALS_HPP

#include <span>

#include "maeigen/grid_function.hpp"
#include "maeigen/measure.hpp"

namespace maeigen {

/// E, I, their ratio R = E/I, and the eigenvalue estimate R^{1/n}.
///
/// lambda_hat is the n-th root of the Rayleigh ratio: on an eigenfunction
/// the energy and mass integrals satisfy E = lambda^n I, so the infimum of
/// E/I is the n-th power of the eigenvalue, not the eigenvalue itself.
struct FunctionalReport {
  double E = 0.0;
  double I = 0.0;
  double R = 0.0;
  double lambda_hat = 0.0;
};

/// E(u) = sum (-u) * M(u) * h^n. Expects zero boundary data.
double energy(const GridFunction& u);

/// I(u) = sum (-u)^{n+1} * nu * h^n.
double mass_integral(const GridFunction& u, std::span<const double> nu_density);
double mass_integral(const GridFunction& u, const MeasureSpec& nu);

/// Throws ZeroFunction when u vanishes identically.
FunctionalReport rayleigh(const GridFunction& u, std::span<const double> nu_density);
FunctionalReport rayleigh(const GridFunction& u, const MeasureSpec& nu);

/// Both sides of the energy product inequality
///   sum (-u) M(v) h^n  <=  E(u)^{1/(n+1)} E(v)^{n/(n+1)}
/// and their ratio. Report only; the continuum inequality holds discretely
/// only up to a refinement-dependent slack.
struct CegrellReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0; ///< lhs / rhs
};
CegrellReport cegrell_check(const GridFunction& u, const GridFunction& v);

} // namespace maeigen

#endif
