#ifndef MAEIGEN_MEASURE_HPP
#define MAEIGEN_MEASURE_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maeigen/grid_function.hpp"

namespace maeigen {

/// The right-hand measure nu, given as a density dnu/dx. Densities are
/// sampled pointwise at grid nodes; node value times h^n is the node mass.
class MeasureSpec {
public:
  /// Lebesgue measure (density 1).
  static MeasureSpec lebesgue();
  static MeasureSpec constant(double c);
  /// c * |x - center|^{-beta}. Integrable against Lebesgue iff beta < n;
  /// beta <= 0 gives bounded radial growth densities.
  static MeasureSpec radial_power(double c, double beta, Vec2 center);
  static MeasureSpec expression(std::function<double(Vec2)> density, std::string label = "expression");
  /// Density equal to the discrete Monge-Ampere values of a grid-convex
  /// source function; only usable on the source's own grid.
  static MeasureSpec hessian_of(GridFunction source);

  /// CLI grammar: "lebesgue" | "const:c" | "radial:c:beta[:cx:cy]".
  /// The radial center defaults to the domain centroid at evaluation time.
  static MeasureSpec parse(std::string_view text);

  /// Samples the density at all nodes and validates: every value finite and
  /// nonnegative, total mass positive. Throws NegativeDensity / InvalidInput.
  std::vector<double> densities(const Grid& grid) const;

  const std::string& label() const { return label_; }

private:
  MeasureSpec() = default;

  enum class Kind { Constant, RadialPower, Expression, HessianOf };
  Kind kind_ = Kind::Constant;
  double c_ = 1.0;
  double beta_ = 0.0;
  std::optional<Vec2> center_;
  std::function<double(Vec2)> density_;
  std::optional<GridFunction> source_;
  std::string label_ = "lebesgue";
};

} // namespace maeigen

#endif
