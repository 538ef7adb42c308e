#include "maeigen/functionals.hpp"

#include <cmath>

#include "maeigen/errors.hpp"
#include "maeigen/ma_operator.hpp"

namespace maeigen {

double energy(const GridFunction& u) {
  const DiscreteMAResult ma = ma_apply(u);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += (-u[i]) * ma.value[i];
  return s * u.grid().cell_volume();
}

double mass_integral(const GridFunction& u, std::span<const double> nu_density) {
  const int n = u.grid().dimension();
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double w = -u[i];
    const double wn1 = n == 1 ? w * w : w * w * w;
    s += wn1 * nu_density[i];
  }
  return s * u.grid().cell_volume();
}

double mass_integral(const GridFunction& u, const MeasureSpec& nu) {
  return mass_integral(u, nu.densities(u.grid()));
}

FunctionalReport rayleigh(const GridFunction& u, std::span<const double> nu_density) {
  if (u.sup_norm() == 0.0) throw ZeroFunction("rayleigh: u vanishes identically");
  FunctionalReport rep;
  rep.E = energy(u);
  rep.I = mass_integral(u, nu_density);
  if (!(rep.I > 0.0))
    throw ZeroFunction("rayleigh: mass integral vanishes (u is zero on the measure support)");
  rep.R = rep.E / rep.I;
  rep.lambda_hat = u.grid().dimension() == 1 ? rep.R : std::sqrt(rep.R);
  return rep;
}

FunctionalReport rayleigh(const GridFunction& u, const MeasureSpec& nu) {
  return rayleigh(u, nu.densities(u.grid()));
}

CegrellReport cegrell_check(const GridFunction& u, const GridFunction& v) {
  const int n = u.grid().dimension();
  const DiscreteMAResult mav = ma_apply(v);
  double lhs = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) lhs += (-u[i]) * mav.value[i];
  lhs *= u.grid().cell_volume();
  const double Eu = energy(u);
  const double Ev = energy(v);
  CegrellReport rep;
  rep.lhs = lhs;
  rep.rhs = std::pow(Eu, 1.0 / (n + 1)) * std::pow(Ev, double(n) / (n + 1));
  rep.slack = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

} // namespace maeigen
