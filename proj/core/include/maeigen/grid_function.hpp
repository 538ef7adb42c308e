#ifndef MAEIGEN_GRID_FUNCTION_HPP
#define MAEIGEN_GRID_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "maeigen/errors.hpp"
#include "maeigen/grid.hpp"

namespace maeigen {

/// Real values at the interior nodes of a grid plus boundary data on the
/// domain boundary (zero when the callback is empty).
class GridFunction {
public:
  GridFunction() = default;
  explicit GridFunction(GridPtr grid, double fill = 0.0, BoundaryData bd = {})
      : grid_(std::move(grid)), values_(grid_->size(), fill), boundary_(std::move(bd)) {}
  GridFunction(GridPtr grid, std::vector<double> values, BoundaryData bd = {})
      : grid_(std::move(grid)), values_(std::move(values)), boundary_(std::move(bd)) {
    if (values_.size() != grid_->size())
      throw InvalidInput("GridFunction: value count does not match grid size");
    for (double v : values_)
      if (!std::isfinite(v)) throw InvalidInput("GridFunction: non-finite node value");
  }

  /// Samples a callback at the nodes.
  static GridFunction sample(GridPtr grid, const std::function<double(Vec2)>& f,
                             BoundaryData bd = {}) {
    GridFunction u(grid, 0.0, std::move(bd));
    for (std::size_t i = 0; i < grid->size(); ++i) u.values_[i] = f(grid->node(i));
    return u;
  }

  const Grid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  const BoundaryData& boundary() const { return boundary_; }
  bool zero_boundary() const { return !boundary_; }

  double sup_norm() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  GridFunction& scale(double c) {
    for (double& v : values_) v *= c;
    return *this;
  }

  GridFunction scaled(double c) const {
    GridFunction out = *this;
    out.scale(c);
    return out;
  }

private:
  GridPtr grid_;
  std::vector<double> values_;
  BoundaryData boundary_;
};

inline double sup_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace maeigen

#endif
