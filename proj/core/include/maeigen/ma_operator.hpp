#ifndef MAEIGEN_MA_OPERATOR_HPP
#define MAEIGEN_MA_OPERATOR_HPP

#include <span>
#include <string>
#include <vector>

#include "maeigen/grid_function.hpp"

namespace maeigen {

/// Discrete Monge-Ampere values: at each node the minimum over orthogonal
/// stencil pairs of the product of clamped directional second differences.
/// Units are density (measure per unit volume); multiply by h^n for mass.
struct DiscreteMAResult {
  std::vector<double> value;     ///< clamped min-of-products, >= 0
  std::vector<int> pair_index;   ///< argmin pair witness (lowest index wins)
  std::vector<double> defect;    ///< min over directions of the raw second
                                 ///< difference; negative where u bends concave
  double min_defect = 0.0;       ///< min over nodes of defect

  double total_mass(const Grid& g) const {
    double s = 0.0;
    for (double v : value) s += v;
    return s * g.cell_volume();
  }
};

/// Applies the monotone wide-stencil operator to u. Pure function; exact
/// n-homogeneity in u holds for zero boundary data by construction.
DiscreteMAResult ma_apply(const GridFunction& u);

/// Inner solver strategy. Sweep is plain nonlinear Gauss-Seidel (symmetric
/// lexicographic sweeps, closed-form per-node root); Newton is damped
/// semismooth Newton on the active stencil selection with mandatory
/// Gauss-Seidel fallback on line-search failure; Auto interleaves Newton
/// rounds with fallback sweeps.
enum class SolvePolicy { Sweep, Newton, Auto };

struct DirichletOptions {
  SolvePolicy policy = SolvePolicy::Auto;
  double tolerance = 1e-8;  ///< sup-norm residual target
  long max_sweeps = 100000; ///< Gauss-Seidel budget (Sweep policy)
  int max_newton = 60;      ///< Newton step budget per round
  const std::vector<double>* warm_start = nullptr;
};

struct SolveReport {
  long sweeps = 0;
  int newton_steps = 0;
  int fallbacks = 0;
  double residual = 0.0;
  std::vector<std::string> notes;
};

/// Solves M(u) = g with the given boundary data (zero when empty).
/// g must be nonnegative at every node. Throws NegativeDensity and
/// NonConvergence (residual and step count populated).
GridFunction solve_dirichlet(const GridPtr& grid, std::span<const double> g,
                             BoundaryData boundary = {}, const DirichletOptions& opts = {},
                             SolveReport* report = nullptr);

} // namespace maeigen

#endif
