#include "maeigen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "maeigen/errors.hpp"

namespace maeigen {

namespace {

std::int64_t lattice_key(int ix, int iy) {
  return (std::int64_t(ix) << 32) ^ (std::int64_t(iy) & 0xffffffffll);
}

int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

// Nodes closer to the boundary than this fraction of h are treated as
// boundary points, so intercepts stay bounded away from zero.
constexpr double kBoundaryExclusion = 1e-7;

} // namespace

std::vector<IVec2> stencil_directions_2d(int width) {
  // Primitive vectors with sup-norm <= width, one representative per +-pair,
  // ordered axis-first for deterministic tie-breaking.
  std::vector<IVec2> dirs;
  for (int x = -width; x <= width; ++x) {
    for (int y = -width; y <= width; ++y) {
      if (x == 0 && y == 0) continue;
      if (!(x > 0 || (x == 0 && y > 0))) continue; // half-plane representative
      if (gcd_abs(x, y) != 1) continue;
      dirs.push_back({x, y});
    }
  }
  std::sort(dirs.begin(), dirs.end(), [](IVec2 a, IVec2 b) {
    const int na = std::max(std::abs(a.x), std::abs(a.y));
    const int nb = std::max(std::abs(b.x), std::abs(b.y));
    if (na != nb) return na < nb;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  return dirs;
}

std::shared_ptr<const Grid> Grid::make(const ConvexDomain& domain, double h, int width) {
  if (!(h > 0.0)) throw InvalidInput("discretize: spacing h must be positive");
  if (!(h <= domain.diameter() / 4.0))
    throw InvalidInput("discretize: need h <= diameter/4");
  if (width < 1) throw InvalidInput("discretize: stencil width must be >= 1");

  auto grid = std::shared_ptr<Grid>(new Grid());
  Grid& g = *grid;
  g.domain_ = domain;
  g.h_ = h;
  g.width_ = width;
  const int dim = domain.dimension();
  g.cell_volume_ = dim == 1 ? h : h * h;

  const auto [lo, hi] = domain.bounding_box();
  g.origin_ = lo;
  const int nx = int(std::floor((hi.x - lo.x) / h)) + 1;
  const int ny = dim == 1 ? 0 : int(std::floor((hi.y - lo.y) / h)) + 1;

  const double exclusion = kBoundaryExclusion * h;
  for (int ix = 0; ix <= nx; ++ix) {
    for (int iy = 0; iy <= ny; ++iy) {
      const Vec2 p{lo.x + ix * h, dim == 1 ? 0.0 : lo.y + iy * h};
      if (!domain.contains(p)) continue;
      if (domain.distance_to_boundary(p) <= exclusion) continue;
      g.index_.emplace(lattice_key(ix, iy), g.nodes_.size());
      g.nodes_.push_back(p);
      g.lattice_.emplace_back(ix, iy);
    }
  }
  if (g.nodes_.empty())
    throw InvalidInput("discretize: no interior node, spacing too large for this domain");

  if (dim == 1) {
    g.directions_ = {{1, 0}};
    g.pairs_ = {{0, -1}};
  } else {
    g.directions_ = stencil_directions_2d(width);
    // Pair each direction with its 90-degree rotation, dedup unordered pairs.
    const auto find_dir = [&](IVec2 v) -> int {
      IVec2 r = v;
      if (!(r.x > 0 || (r.x == 0 && r.y > 0))) r = {-r.x, -r.y};
      for (std::size_t i = 0; i < g.directions_.size(); ++i)
        if (g.directions_[i] == r) return int(i);
      return -1;
    };
    for (std::size_t i = 0; i < g.directions_.size(); ++i) {
      const int j = find_dir(rot90(g.directions_[i]));
      if (j < 0) throw Error("stencil: rotation of a direction missing");
      g.pairs_.push_back({std::min(int(i), j), std::max(int(i), j)});
    }
    std::sort(g.pairs_.begin(), g.pairs_.end());
    g.pairs_.erase(std::unique(g.pairs_.begin(), g.pairs_.end()), g.pairs_.end());
  }

  // Arms and second-difference coefficients.
  const std::size_t ndirs = g.directions_.size();
  g.stencils_.resize(g.nodes_.size() * ndirs);
  for (std::size_t n = 0; n < g.nodes_.size(); ++n) {
    const auto [ix, iy] = g.lattice_[n];
    const Vec2 p = g.nodes_[n];
    for (std::size_t d = 0; d < ndirs; ++d) {
      const IVec2 v = g.directions_[d];
      const double step_len = h * norm(v);
      DirStencil st;
      for (int side = 0; side < 2; ++side) {
        const int sx = side == 0 ? v.x : -v.x;
        const int sy = side == 0 ? v.y : -v.y;
        StencilArm arm;
        const auto it = g.index_.find(lattice_key(ix + sx, iy + sy));
        if (it != g.index_.end()) {
          arm.neighbor = std::int32_t(it->second);
          arm.frac = 1.0;
          arm.length = step_len;
          arm.endpoint = g.nodes_[it->second];
        } else {
          const Vec2 dir = h * to_vec(IVec2{sx, sy});
          double t = domain.ray_exit(p, dir);
          // The neighbor lattice point may sit in the thin exclusion band
          // just inside the boundary; the exact crossing then lies slightly
          // past the full step.
          t = std::max(t, kBoundaryExclusion);
          arm.frac = t;
          arm.length = t * step_len;
          arm.endpoint = p + t * dir;
          arm.bslot = std::int32_t(g.n_boundary_slots_++);
          g.boundary_points_.push_back(arm.endpoint);
        }
        (side == 0 ? st.plus : st.minus) = arm;
      }
      const double a = st.plus.length, b = st.minus.length;
      st.kp = 2.0 / (a * (a + b));
      st.km = 2.0 / (b * (a + b));
      st.dcoef = 2.0 / (a * b);
      g.stencils_[n * ndirs + d] = st;
    }
  }
  return grid;
}

std::vector<double> Grid::boundary_values(const BoundaryData& bd) const {
  std::vector<double> vals(n_boundary_slots_, 0.0);
  if (bd) {
    for (std::size_t s = 0; s < n_boundary_slots_; ++s) vals[s] = bd(boundary_points_[s]);
  }
  return vals;
}

std::optional<std::size_t> Grid::interior_index(int ix, int iy) const {
  const auto it = index_.find(lattice_key(ix, iy));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

} // namespace maeigen
