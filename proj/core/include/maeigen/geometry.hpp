#ifndef MAEIGEN_GEOMETRY_HPP
#define MAEIGEN_GEOMETRY_HPP

#include <cmath>

namespace maeigen {

/// Point/vector in the plane. One-dimensional domains use x and keep y = 0.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return s * a; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }

/// Integer lattice vector (stencil direction).
struct IVec2 {
  int x = 0;
  int y = 0;

  friend bool operator==(IVec2 a, IVec2 b) { return a.x == b.x && a.y == b.y; }
};

inline IVec2 rot90(IVec2 v) { return {-v.y, v.x}; }
inline Vec2 to_vec(IVec2 v) { return {double(v.x), double(v.y)}; }
inline double norm(IVec2 v) { return std::sqrt(double(v.x) * v.x + double(v.y) * v.y); }

} // namespace maeigen

#endif
