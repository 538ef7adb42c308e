#ifndef MAEIGEN_DOMAIN_HPP
#define MAEIGEN_DOMAIN_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maeigen/geometry.hpp"

namespace maeigen {

/// A bounded convex domain in R^1 or R^2: interval, disc, axis-aligned box,
/// or strictly convex polygon (counterclockwise vertex list).
///
/// Membership, boundary distance and ray-boundary intersection are exact for
/// each primitive (up to floating point rounding); there is no tessellation.
class ConvexDomain {
public:
  enum class Kind { Interval, Disc, Box, Polygon };

  static ConvexDomain interval(double a, double b);
  static ConvexDomain disc(Vec2 center, double radius);
  static ConvexDomain box(Vec2 lo, Vec2 hi);
  static ConvexDomain polygon(std::vector<Vec2> vertices);

  /// Parses the textual grammar used by the CLI:
  ///   "interval a b" | "disc cx cy r" | "box lx ly ux uy"
  ///   | "polygon x1 y1 x2 y2 ..."
  static ConvexDomain parse(std::string_view spec);

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }

  /// Strict interior test.
  bool contains(Vec2 p) const { return signed_inner_distance(p) > 0.0; }

  /// Distance from p to the boundary. For points inside this is the exact
  /// Euclidean distance to the complement; throws InvalidInput outside.
  double distance_to_boundary(Vec2 p) const;

  /// Smallest t > 0 with p + t*dir on the boundary, for p inside.
  double ray_exit(Vec2 p, Vec2 dir) const;

  std::pair<Vec2, Vec2> bounding_box() const;
  double diameter() const;
  /// Length in 1D, area in 2D.
  double volume() const;
  Vec2 centroid() const;

  const std::vector<Vec2>& vertices() const { return verts_; }
  double interval_a() const { return a_; }
  double interval_b() const { return b_; }
  Vec2 disc_center() const { return center_; }
  double disc_radius() const { return radius_; }

  std::string describe() const;

private:
  ConvexDomain() = default;

  /// Positive inside, negative outside; equals distance_to_boundary inside.
  double signed_inner_distance(Vec2 p) const;

  Kind kind_ = Kind::Interval;
  int dim_ = 1;
  double a_ = 0.0, b_ = 0.0;          // interval
  Vec2 center_{};                     // disc
  double radius_ = 0.0;               // disc
  Vec2 lo_{}, hi_{};                  // box
  std::vector<Vec2> verts_;           // polygon (ccw)
  std::vector<Vec2> edge_normals_;    // outward unit normals, one per edge
  std::vector<double> edge_offsets_;  // n.x <= c half-plane offsets
};

/// build_domain in the module map: parse + validate.
inline ConvexDomain build_domain(std::string_view spec) { return ConvexDomain::parse(spec); }

} // namespace maeigen

#endif
