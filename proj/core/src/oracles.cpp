#include "maeigen/oracles.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "maeigen/errors.hpp"
#include "maeigen/functionals.hpp"

namespace maeigen {

Oracle1DResult oracle_1d(double length) {
  if (!(length > 0.0)) throw InvalidInput("oracle_1d: length must be positive");
  Oracle1DResult out;
  out.lambda1 = M_PI * M_PI / (length * length);
  out.eigenfunction = [length](double x) { return -std::sin(M_PI * x / length); };
  return out;
}

namespace {

using OdeState = std::array<double, 2>; // (u, u')

struct ShotResult {
  double score = 0.0; // u(R) if u stayed negative, else R - r_crossing > 0
  std::vector<std::pair<double, double>> samples;
};

ShotResult shoot_radial(const RadialProblem& p, double lambda, const ShootOptions& opts,
                        bool record) {
  namespace ode = boost::numeric::odeint;
  const double R = p.radius;
  const double f0 = p.density(0.0);
  if (!(f0 >= 0.0)) throw InvalidInput("oracle_radial: density must be nonnegative at 0");

  // Series start past the u'/r singularity: u = -1 + (c/2) r^2 - (c^2/16) r^4
  // with c = lambda sqrt(f(0)).
  const double r0 = 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 0.25) * R;
  const double c = lambda * std::sqrt(f0);
  OdeState y{-1.0 + 0.5 * c * r0 * r0 - c * c / 16.0 * std::pow(r0, 4),
             c * r0 - 0.25 * c * c * std::pow(r0, 3)};

  auto system = [&](const OdeState& s, OdeState& dsdr, double r) {
    dsdr[0] = s[1];
    dsdr[1] = lambda * lambda * s[0] * s[0] * p.density(r) * r / s[1];
  };

  auto stepper =
      ode::make_controlled(opts.ode_abs_tol, opts.ode_rel_tol,
                           ode::runge_kutta_cash_karp54<OdeState>());

  ShotResult out;
  double r = r0;
  double dr = 1e-3 * R;
  if (record) out.samples.push_back({0.0, -1.0});
  while (r < R) {
    if (r + dr > R) dr = R - r;
    OdeState prev = y;
    const double r_prev = r;
    if (stepper.try_step(system, y, r, dr) == ode::fail) continue;
    if (record) out.samples.push_back({r, y[0]});
    if (y[0] >= 0.0) {
      // Crossed zero inside (r_prev, r): linear interpolation of the radius.
      const double t = prev[0] / (prev[0] - y[0]);
      out.score = R - (r_prev + t * (r - r_prev));
      return out;
    }
  }
  out.score = y[0];
  return out;
}

} // namespace

RadialSolution oracle_radial(const RadialProblem& problem, const ShootOptions& opts) {
  if (!(problem.radius > 0.0)) throw InvalidInput("oracle_radial: radius must be positive");
  if (!problem.density) throw InvalidInput("oracle_radial: density callback is empty");

  auto score = [&](double lam) { return shoot_radial(problem, lam, opts, false).score; };

  // Bracket a sign change: negative score means u(R) < 0 (lambda too small).
  double lo = 1.0 / problem.radius, hi = lo;
  double s_lo = score(lo);
  int doublings = 0;
  if (s_lo < 0.0) {
    do {
      hi = 2.0 * hi;
      if (++doublings > opts.max_bracket_doublings)
        throw NoBracket("oracle_radial: no overshoot found while doubling lambda");
    } while (score(hi) < 0.0);
    lo = hi / 2.0;
  } else {
    do {
      lo = 0.5 * lo;
      if (++doublings > opts.max_bracket_doublings)
        throw NoBracket("oracle_radial: no undershoot found while halving lambda");
    } while (score(lo) >= 0.0);
    hi = 2.0 * lo;
  }

  while (hi - lo > opts.lambda_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (score(mid) < 0.0 ? lo : hi) = mid;
  }
  const double lambda1 = 0.5 * (lo + hi);

  RadialSolution sol;
  sol.lambda1 = lambda1;
  sol.profile = shoot_radial(problem, lambda1, opts, true).samples;
  return sol;
}

double PLConvexFunction::eval(Vec2 x) const {
  double m = -std::numeric_limits<double>::infinity();
  for (const Piece& p : pieces) m = std::max(m, dot(p.gradient, x) + p.offset);
  return m;
}

PLConvexFunction PLConvexFunction::cone(Vec2 center, double radius, int m) {
  PLConvexFunction f;
  f.pieces.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double th = 2.0 * M_PI * i / m;
    const Vec2 g{std::cos(th), std::sin(th)};
    f.pieces.push_back({g, -radius - dot(g, center)});
  }
  return f;
}

namespace {

// Area of the convex hull of a point set (monotone chain + shoelace).
double gradient_hull_area(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return 0.0;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    area += cross(hull[i], hull[(i + 1) % hull.size()]);
  return 0.5 * area;
}

} // namespace

AtomicMeasure oracle_pl_ma(const PLConvexFunction& u, const ConvexDomain& domain) {
  if (domain.dimension() != 2) throw InvalidInput("oracle_pl_ma: 2D domains only");
  const auto& ps = u.pieces;
  if (ps.empty()) throw InvalidInput("oracle_pl_ma: need at least one piece");

  double gscale = 0.0, bscale = 0.0;
  for (const auto& p : ps) {
    gscale = std::max(gscale, std::max(std::abs(p.gradient.x), std::abs(p.gradient.y)));
    bscale = std::max(bscale, std::abs(p.offset));
  }
  const double diam = domain.diameter();
  const double value_scale = 1.0 + gscale * diam + bscale;
  const double tol = 1e-9 * value_scale;

  // General-position scan first: three planes sharing a common line make the
  // middle piece redundant as well, so this must precede the redundancy check
  // to surface the right error.
  AtomicMeasure out;
  const double dedup = 1e-8 * diam;

  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      for (std::size_t k = j + 1; k < ps.size(); ++k) {
        const Vec2 r1 = ps[j].gradient - ps[i].gradient;
        const Vec2 r2 = ps[k].gradient - ps[i].gradient;
        const double rhs1 = ps[i].offset - ps[j].offset;
        const double rhs2 = ps[i].offset - ps[k].offset;
        const double det = cross(r1, r2);
        const double gnorm = std::max({norm(r1), norm(r2), 1e-300});
        if (std::abs(det) <= 1e-12 * gnorm * gnorm) {
          if (norm(r1) < 1e-14 * (1.0 + gscale) || norm(r2) < 1e-14 * (1.0 + gscale)) continue;
          // Collinear gradient differences: the three planes meet in a common
          // line exactly when the offset system is consistent.
          const double t = std::abs(r1.x) > std::abs(r1.y) ? r2.x / r1.x : r2.y / r1.y;
          if (std::abs(rhs2 - t * rhs1) <= tol)
            throw DegeneratePosition("oracle_pl_ma: three planes share a common line (pieces " +
                                     std::to_string(i) + ", " + std::to_string(j) + ", " +
                                     std::to_string(k) + ")");
          continue;
        }
        const Vec2 x{(rhs1 * r2.y - rhs2 * r1.y) / det, (r1.x * rhs2 - r2.x * rhs1) / det};
        if (!domain.contains(x)) continue;
        const double value = dot(ps[i].gradient, x) + ps[i].offset;
        if (u.eval(x) > value + tol) continue; // some other plane dominates here
        bool seen = false;
        for (const auto& atom : out.atoms)
          if (norm(atom.point - x) <= dedup) {
            seen = true;
            break;
          }
        if (!seen) out.atoms.push_back({x, 0.0, {}});
      }
    }
  }

  // Non-redundancy check by sampling: every piece must win somewhere inside.
  if (ps.size() > 1) {
    std::vector<char> wins(ps.size(), 0);
    const auto [lo, hi] = domain.bounding_box();
    const int K = 128;
    for (int i = 0; i <= K; ++i) {
      for (int j = 0; j <= K; ++j) {
        const Vec2 x{lo.x + (hi.x - lo.x) * i / K, lo.y + (hi.y - lo.y) * j / K};
        if (!domain.contains(x)) continue;
        int best = 0;
        double bv = -std::numeric_limits<double>::infinity();
        for (std::size_t l = 0; l < ps.size(); ++l) {
          const double v = dot(ps[l].gradient, x) + ps[l].offset;
          if (v > bv) {
            bv = v;
            best = int(l);
          }
        }
        wins[best] = 1;
      }
    }
    for (std::size_t l = 0; l < ps.size(); ++l)
      if (!wins[l]) {
        std::ostringstream msg;
        msg << "oracle_pl_ma: piece " << l << " never attains the max on the sample grid "
            << "(redundant piece)";
        throw InvalidInput(msg.str());
      }
  }

  for (auto& atom : out.atoms) {
    const double value = u.eval(atom.point);
    std::vector<Vec2> grads;
    for (std::size_t l = 0; l < ps.size(); ++l) {
      if (dot(ps[l].gradient, atom.point) + ps[l].offset >= value - tol) {
        grads.push_back(ps[l].gradient);
        atom.active_pieces.push_back(int(l));
      }
    }
    atom.mass = gradient_hull_area(std::move(grads));
    out.total_mass += atom.mass;
  }
  std::erase_if(out.atoms, [](const AtomicMeasure::Atom& a) { return a.mass <= 0.0; });
  return out;
}

std::vector<MassProbeRow> mass_divergence_probe(const ConvexDomain& domain, const MeasureSpec& rhs,
                                                double alpha, const std::vector<double>& spacings,
                                                int width, const DirichletOptions& inner) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw InvalidInput("mass_divergence_probe: alpha must lie in (0, 1]");
  std::vector<MassProbeRow> rows;
  double prev_mass = 0.0;
  for (double h : spacings) {
    const GridPtr grid = discretize(domain, h, width);
    const std::vector<double> g = rhs.densities(*grid);
    const GridFunction u = solve_dirichlet(grid, g, {}, inner);
    GridFunction w(grid);
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = -std::pow(std::max(-u[i], 0.0), alpha);
    const double mass = ma_apply(w).total_mass(*grid);
    rows.push_back({h, mass, rows.empty() ? 0.0 : mass / prev_mass});
    prev_mass = mass;
  }
  return rows;
}

ToricCheckResult toric_check_1d(const SmoothFunction1D& u, double a, double b,
                                const std::function<double(double)>& chi, int n_rho,
                                int n_theta) {
  if (!(b > a)) throw InvalidInput("toric_check_1d: need b > a");
  if (n_rho < 8 || n_theta < 8) throw InvalidInput("toric_check_1d: grid too coarse");

  // Reference side: composite Simpson of chi * u'' over (a, b).
  const int ns = 1 << 15;
  const double dx = (b - a) / ns;
  double rhs = 0.0;
  for (int i = 0; i <= ns; ++i) {
    const double x = a + i * dx;
    const double w = (i == 0 || i == ns) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    rhs += w * chi(x) * u.second_derivative(x);
  }
  rhs *= dx / 3.0;

  // Annulus side: midpoint quadrature of the discrete polar Laplacian of
  // u(log rho) against chi(log rho); the composition is evaluated one
  // stencil layer beyond the annulus at the edge rings.
  const double rho_a = std::exp(a), rho_b = std::exp(b);
  const double drho = (rho_b - rho_a) / n_rho;
  const double dth = 2.0 * M_PI / n_theta;
  auto phi = [&](double rho) { return u.value(std::log(rho)); };

  double lhs = 0.0;
  for (int i = 0; i < n_rho; ++i) {
    const double rho = rho_a + (i + 0.5) * drho;
    const double pc = phi(rho), pp = phi(rho + drho), pm = phi(rho - drho);
    const double lap_r = (pp - 2.0 * pc + pm) / (drho * drho) + (pp - pm) / (2.0 * rho * drho);
    for (int j = 0; j < n_theta; ++j) {
      // Tangential arm of the 5-point stencil: phi is constant along theta,
      // so (phi(th+dth) - 2 phi + phi(th-dth)) / (rho dth)^2 vanishes exactly.
      const double lap = lap_r;
      lhs += chi(std::log(rho)) * lap * rho * drho * dth;
    }
  }
  lhs *= kDdcNormalization1D;

  return {lhs, rhs, std::abs(lhs - rhs)};
}

} // namespace maeigen
