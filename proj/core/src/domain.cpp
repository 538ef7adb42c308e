#include "maeigen/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maeigen/errors.hpp"

namespace maeigen {

namespace {

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::istringstream in{std::string(text)};
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw InvalidInput("domain spec: trailing garbage in '" + std::string(text) + "'");
  return out;
}

} // namespace

ConvexDomain ConvexDomain::interval(double a, double b) {
  if (!(a < b)) throw InvalidInput("interval: need a < b");
  ConvexDomain d;
  d.kind_ = Kind::Interval;
  d.dim_ = 1;
  d.a_ = a;
  d.b_ = b;
  return d;
}

ConvexDomain ConvexDomain::disc(Vec2 center, double radius) {
  if (!(radius > 0.0)) throw InvalidInput("disc: need radius > 0");
  ConvexDomain d;
  d.kind_ = Kind::Disc;
  d.dim_ = 2;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

ConvexDomain ConvexDomain::box(Vec2 lo, Vec2 hi) {
  if (!(lo.x < hi.x && lo.y < hi.y)) throw InvalidInput("box: need lo < hi componentwise");
  ConvexDomain d;
  d.kind_ = Kind::Box;
  d.dim_ = 2;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> vertices) {
  const std::size_t m = vertices.size();
  if (m < 3) throw InvalidInput("polygon: need at least 3 vertices");
  // Strict convexity: all consecutive edge cross products positive (ccw).
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = vertices[i];
    const Vec2 b = vertices[(i + 1) % m];
    const Vec2 c = vertices[(i + 2) % m];
    const double cr = cross(b - a, c - b);
    if (!(cr > 0.0)) {
      std::ostringstream msg;
      msg << "polygon: vertex " << (i + 1) % m << " at (" << b.x << ", " << b.y
          << ") is not strictly convex (ccw order required)";
      throw InvalidInput(msg.str());
    }
  }
  ConvexDomain d;
  d.kind_ = Kind::Polygon;
  d.dim_ = 2;
  d.verts_ = std::move(vertices);
  d.edge_normals_.reserve(m);
  d.edge_offsets_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 a = d.verts_[i];
    const Vec2 b = d.verts_[(i + 1) % m];
    Vec2 n{(b - a).y, -(b - a).x}; // outward for ccw
    const double len = norm(n);
    n = (1.0 / len) * n;
    d.edge_normals_.push_back(n);
    d.edge_offsets_.push_back(dot(n, a));
  }
  return d;
}

ConvexDomain ConvexDomain::parse(std::string_view spec) {
  std::istringstream in{std::string(spec)};
  std::string word;
  if (!(in >> word)) throw InvalidInput("empty domain spec");
  std::string rest;
  std::getline(in, rest);
  const std::vector<double> p = parse_numbers(rest);
  if (word == "interval") {
    if (p.size() != 2) throw InvalidInput("interval: expected 'interval a b'");
    return interval(p[0], p[1]);
  }
  if (word == "disc") {
    if (p.size() != 3) throw InvalidInput("disc: expected 'disc cx cy r'");
    return disc({p[0], p[1]}, p[2]);
  }
  if (word == "box") {
    if (p.size() != 4) throw InvalidInput("box: expected 'box lx ly ux uy'");
    return box({p[0], p[1]}, {p[2], p[3]});
  }
  if (word == "polygon") {
    if (p.size() < 6 || p.size() % 2 != 0)
      throw InvalidInput("polygon: expected 'polygon x1 y1 x2 y2 ...' with >= 3 vertices");
    std::vector<Vec2> vs;
    for (std::size_t i = 0; i < p.size(); i += 2) vs.push_back({p[i], p[i + 1]});
    return polygon(std::move(vs));
  }
  throw InvalidInput("unknown domain kind '" + word + "'");
}

double ConvexDomain::signed_inner_distance(Vec2 p) const {
  switch (kind_) {
  case Kind::Interval:
    return std::min(p.x - a_, b_ - p.x);
  case Kind::Disc:
    return radius_ - norm(p - center_);
  case Kind::Box:
    return std::min(std::min(p.x - lo_.x, hi_.x - p.x), std::min(p.y - lo_.y, hi_.y - p.y));
  case Kind::Polygon: {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < edge_normals_.size(); ++i)
      d = std::min(d, edge_offsets_[i] - dot(edge_normals_[i], p));
    return d;
  }
  }
  return 0.0;
}

double ConvexDomain::distance_to_boundary(Vec2 p) const {
  const double d = signed_inner_distance(p);
  if (!(d > 0.0)) throw InvalidInput("distance_to_boundary: point is not inside the domain");
  return d;
}

double ConvexDomain::ray_exit(Vec2 p, Vec2 dir) const {
  if (!contains(p)) throw InvalidInput("ray_exit: ray origin is not inside the domain");
  switch (kind_) {
  case Kind::Interval: {
    if (dir.x > 0.0) return (b_ - p.x) / dir.x;
    if (dir.x < 0.0) return (a_ - p.x) / dir.x;
    throw InvalidInput("ray_exit: zero direction");
  }
  case Kind::Disc: {
    // |p + t d - c|^2 = r^2, positive root.
    const Vec2 q = p - center_;
    const double a = norm2(dir);
    const double b = dot(q, dir);
    const double c = norm2(q) - radius_ * radius_;
    const double disc = b * b - a * c;
    return (-b + std::sqrt(std::max(disc, 0.0))) / a;
  }
  case Kind::Box:
  case Kind::Polygon: {
    // Intersection of half-planes n.x <= c: exit where the first active
    // constraint is met along the ray.
    double t = std::numeric_limits<double>::infinity();
    auto visit = [&](Vec2 n, double c) {
      const double dn = dot(n, dir);
      if (dn > 0.0) t = std::min(t, (c - dot(n, p)) / dn);
    };
    if (kind_ == Kind::Box) {
      visit({1, 0}, hi_.x);
      visit({-1, 0}, -lo_.x);
      visit({0, 1}, hi_.y);
      visit({0, -1}, -lo_.y);
    } else {
      for (std::size_t i = 0; i < edge_normals_.size(); ++i)
        visit(edge_normals_[i], edge_offsets_[i]);
    }
    return t;
  }
  }
  throw Error("unreachable");
}

std::pair<Vec2, Vec2> ConvexDomain::bounding_box() const {
  switch (kind_) {
  case Kind::Interval:
    return {{a_, 0.0}, {b_, 0.0}};
  case Kind::Disc:
    return {{center_.x - radius_, center_.y - radius_}, {center_.x + radius_, center_.y + radius_}};
  case Kind::Box:
    return {lo_, hi_};
  case Kind::Polygon: {
    Vec2 lo = verts_[0], hi = verts_[0];
    for (const Vec2& v : verts_) {
      lo.x = std::min(lo.x, v.x);
      lo.y = std::min(lo.y, v.y);
      hi.x = std::max(hi.x, v.x);
      hi.y = std::max(hi.y, v.y);
    }
    return {lo, hi};
  }
  }
  throw Error("unreachable");
}

double ConvexDomain::diameter() const {
  switch (kind_) {
  case Kind::Interval:
    return b_ - a_;
  case Kind::Disc:
    return 2.0 * radius_;
  case Kind::Box:
    return norm(hi_ - lo_);
  case Kind::Polygon: {
    double d2 = 0.0;
    for (std::size_t i = 0; i < verts_.size(); ++i)
      for (std::size_t j = i + 1; j < verts_.size(); ++j)
        d2 = std::max(d2, norm2(verts_[i] - verts_[j]));
    return std::sqrt(d2);
  }
  }
  throw Error("unreachable");
}

double ConvexDomain::volume() const {
  switch (kind_) {
  case Kind::Interval:
    return b_ - a_;
  case Kind::Disc:
    return M_PI * radius_ * radius_;
  case Kind::Box:
    return (hi_.x - lo_.x) * (hi_.y - lo_.y);
  case Kind::Polygon: {
    double s = 0.0; // shoelace
    for (std::size_t i = 0; i < verts_.size(); ++i)
      s += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
    return 0.5 * s;
  }
  }
  throw Error("unreachable");
}

Vec2 ConvexDomain::centroid() const {
  switch (kind_) {
  case Kind::Interval:
    return {0.5 * (a_ + b_), 0.0};
  case Kind::Disc:
    return center_;
  case Kind::Box:
    return 0.5 * (lo_ + hi_);
  case Kind::Polygon: {
    double a = 0.0;
    Vec2 c{};
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      const Vec2 u = verts_[i], v = verts_[(i + 1) % verts_.size()];
      const double w = cross(u, v);
      a += w;
      c = c + w * (u + v);
    }
    return (1.0 / (3.0 * a)) * c;
  }
  }
  throw Error("unreachable");
}

std::string ConvexDomain::describe() const {
  std::ostringstream s;
  switch (kind_) {
  case Kind::Interval:
    s << "interval " << a_ << " " << b_;
    break;
  case Kind::Disc:
    s << "disc " << center_.x << " " << center_.y << " " << radius_;
    break;
  case Kind::Box:
    s << "box " << lo_.x << " " << lo_.y << " " << hi_.x << " " << hi_.y;
    break;
  case Kind::Polygon:
    s << "polygon";
    for (const Vec2& v : verts_) s << " " << v.x << " " << v.y;
    break;
  }
  return s.str();
}

} // namespace maeigen
