#ifndef MAEIGEN_GRID_HPP
#define MAEIGEN_GRID_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "maeigen/domain.hpp"
#include "maeigen/geometry.hpp"

namespace maeigen {

/// Values on the boundary of the domain. Empty function means zero data.
using BoundaryData = std::function<double(Vec2)>;

/// One arm of a directional stencil: either a full step to an interior
/// lattice neighbor, or a shortened step ending on the boundary.
struct StencilArm {
  std::int32_t neighbor = -1; ///< interior node index, or -1 for boundary arm
  std::int32_t bslot = -1;    ///< dense index into the boundary-value table
  double length = 0.0;        ///< arclength of the arm (absolute units)
  double frac = 0.0;          ///< length / (h * |v|); 1 for full steps
  Vec2 endpoint{};            ///< neighbor node or exact boundary crossing
};

/// Per-node, per-direction second-difference coefficients:
///   D2 u = kp*u_plus + km*u_minus - dcoef*u0
/// with arm lengths a (plus side), b (minus side):
///   kp = 2/(a(a+b)), km = 2/(b(a+b)), dcoef = 2/(ab).
struct DirStencil {
  StencilArm plus;
  StencilArm minus;
  double kp = 0.0;
  double km = 0.0;
  double dcoef = 0.0;
};

/// Uniform Cartesian discretization of a convex domain.
///
/// The lattice is anchored at the lower corner of the bounding box; interior
/// nodes are the lattice points whose distance to the boundary exceeds a
/// small multiple of h (nodes essentially on the boundary are dropped so
/// every stencil arm has positive length). Boundary intercepts are exact
/// ray-boundary intersections against the primitive.
class Grid {
public:
  static std::shared_ptr<const Grid> make(const ConvexDomain& domain, double h, int width);

  const ConvexDomain& domain() const { return domain_; }
  double spacing() const { return h_; }
  int stencil_width() const { return width_; }
  int dimension() const { return domain_.dimension(); }
  std::size_t size() const { return nodes_.size(); }
  double cell_volume() const { return cell_volume_; }

  const std::vector<Vec2>& nodes() const { return nodes_; }
  Vec2 node(std::size_t i) const { return nodes_[i]; }

  /// Stencil directions, unique up to sign. In 1D this is just {(1,0)}.
  const std::vector<IVec2>& directions() const { return directions_; }
  /// Orthogonal direction pairs as index pairs into directions(); in 1D each
  /// "pair" holds a single direction (second index -1).
  const std::vector<std::array<int, 2>>& direction_pairs() const { return pairs_; }

  /// Dense [node][direction] stencil table.
  const DirStencil& stencil(std::size_t node, std::size_t dir) const {
    return stencils_[node * directions_.size() + dir];
  }

  std::size_t boundary_slot_count() const { return n_boundary_slots_; }

  /// Evaluates boundary data at every boundary-arm crossing point.
  /// An empty BoundaryData gives all zeros.
  std::vector<double> boundary_values(const BoundaryData& bd) const;

  std::optional<std::size_t> interior_index(int ix, int iy) const;
  std::pair<int, int> lattice_coords(std::size_t node) const { return lattice_[node]; }
  Vec2 lattice_origin() const { return origin_; }

private:
  Grid() = default;

  ConvexDomain domain_ = ConvexDomain::interval(0, 1);
  double h_ = 0.0;
  int width_ = 1;
  double cell_volume_ = 0.0;
  Vec2 origin_{};
  std::vector<Vec2> nodes_;
  std::vector<std::pair<int, int>> lattice_;
  std::unordered_map<std::int64_t, std::size_t> index_;
  std::vector<IVec2> directions_;
  std::vector<std::array<int, 2>> pairs_;
  std::vector<DirStencil> stencils_;
  std::size_t n_boundary_slots_ = 0;
  std::vector<Vec2> boundary_points_; ///< crossing point per boundary slot
};

using GridPtr = std::shared_ptr<const Grid>;

/// discretize in the module map.
inline GridPtr discretize(const ConvexDomain& domain, double h, int width = 2) {
  return Grid::make(domain, h, width);
}

/// Generates the orthogonal coprime stencil directions for a given width.
/// Exposed for tests.
std::vector<IVec2> stencil_directions_2d(int width);

} // namespace maeigen

#endif
