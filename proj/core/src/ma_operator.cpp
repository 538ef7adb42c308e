#include "maeigen/ma_operator.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "maeigen/errors.hpp"
#include "maeigen/parallel.hpp"

namespace maeigen {

namespace {

// Values of both arms of one direction under the current iterate.
struct ArmValues {
  double up, um;
};

inline double arm_value(const StencilArm& arm, const std::vector<double>& u,
                        const std::vector<double>& bvals) {
  return arm.neighbor >= 0 ? u[arm.neighbor] : bvals[arm.bslot];
}

inline ArmValues arm_values(const DirStencil& st, const std::vector<double>& u,
                            const std::vector<double>& bvals) {
  return {arm_value(st.plus, u, bvals), arm_value(st.minus, u, bvals)};
}

// Directional second difference at the node: kp*up + km*um - dcoef*u0.
inline double second_diff(const DirStencil& st, ArmValues av, double u0) {
  return st.kp * av.up + st.km * av.um - st.dcoef * u0;
}

// Smaller root of (c1 - d1 t)(c2 - d2 t) = g, the branch keeping both
// factors nonnegative. Stable quadratic formula; discriminant written as a
// sum of nonnegative terms.
inline double pair_root(double c1, double d1, double c2, double d2, double g) {
  const double A = d1 * d2;
  const double B = c1 * d2 + c2 * d1;
  const double diff = c1 * d2 - c2 * d1;
  const double sq = std::sqrt(diff * diff + 4.0 * A * g);
  if (B >= 0.0) {
    const double denom = B + sq;
    return denom > 0.0 ? 2.0 * (c1 * c2 - g) / denom : 0.0;
  }
  return (B - sq) / (2.0 * A);
}

struct Workspace {
  const Grid& grid;
  std::vector<double> bvals;
  std::size_t ndirs;

  Workspace(const Grid& g, const BoundaryData& bd)
      : grid(g), bvals(g.boundary_values(bd)), ndirs(g.directions().size()) {}

  // Monge-Ampere value at one node; optionally reports the argmin pair.
  double ma_at(std::size_t n, const std::vector<double>& u, int* which = nullptr) const {
    const auto& pairs = grid.direction_pairs();
    double best = std::numeric_limits<double>::infinity();
    int best_pair = 0;
    const double u0 = u[n];
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto [d1, d2] = pairs[p];
      const DirStencil& s1 = grid.stencil(n, d1);
      const double m1 = std::max(second_diff(s1, arm_values(s1, u, bvals), u0), 0.0);
      double prod = m1;
      if (d2 >= 0) {
        const DirStencil& s2 = grid.stencil(n, d2);
        const double m2 = std::max(second_diff(s2, arm_values(s2, u, bvals), u0), 0.0);
        prod = m1 * m2;
      }
      if (prod < best) {
        best = prod;
        best_pair = int(p);
      }
    }
    if (which) *which = best_pair;
    return best;
  }

  // Gauss-Seidel update: the value at node n solving the local equation
  // min over pairs of the clamped product = g, neighbors frozen.
  double node_update(std::size_t n, const std::vector<double>& u, double g) const {
    const auto& pairs = grid.direction_pairs();
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [d1, d2] : pairs) {
      const DirStencil& s1 = grid.stencil(n, d1);
      const ArmValues a1 = arm_values(s1, u, bvals);
      const double c1 = s1.kp * a1.up + s1.km * a1.um;
      double t;
      if (d2 < 0) {
        t = (c1 - g) / s1.dcoef;
      } else {
        const DirStencil& s2 = grid.stencil(n, d2);
        const ArmValues a2 = arm_values(s2, u, bvals);
        const double c2 = s2.kp * a2.up + s2.km * a2.um;
        t = pair_root(c1, s1.dcoef, c2, s2.dcoef, g);
      }
      best = std::min(best, t);
    }
    return best;
  }

  double residual(const std::vector<double>& u, std::span<const double> g) const {
    double r = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n)
      r = std::max(r, std::abs(ma_at(n, u) - g[n]));
    return r;
  }
};

// One symmetric Gauss-Seidel pass pair (forward then backward lexicographic).
// Returns the largest single-node change.
double symmetric_sweep(const Workspace& ws, std::vector<double>& u, std::span<const double> g) {
  const std::size_t n = ws.grid.size();
  double change = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = ws.node_update(i, u, g[i]);
    change = std::max(change, std::abs(t - u[i]));
    u[i] = t;
  }
  for (std::size_t i = n; i-- > 0;) {
    const double t = ws.node_update(i, u, g[i]);
    change = std::max(change, std::abs(t - u[i]));
    u[i] = t;
  }
  return change;
}

// Damped semismooth Newton on the active stencil selection. Returns true on
// residual <= tol; false when the line search stalls or the budget runs out.
bool newton_rounds(const Workspace& ws, std::vector<double>& u, std::span<const double> g,
                   double tol, int max_steps, SolveReport& report) {
  const Grid& grid = ws.grid;
  const std::size_t N = grid.size();
  const auto& pairs = grid.direction_pairs();

  std::vector<double> F(N), trial(N);
  auto eval_residual = [&](const std::vector<double>& v) {
    double r = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      F[i] = ws.ma_at(i, v) - g[i];
      r = std::max(r, std::abs(F[i]));
    }
    return r;
  };

  double r0 = eval_residual(u);
  if (r0 <= tol) return true;

  const Eigen::Index dim = Eigen::Index(N);
  Eigen::SparseMatrix<double> J(dim, dim);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs(N), step(N);

  for (int it = 0; it < max_steps; ++it) {
    trip.clear();
    for (std::size_t i = 0; i < N; ++i) {
      int which = 0;
      ws.ma_at(i, u, &which);
      const auto [d1, d2] = pairs[which];
      const DirStencil& s1 = grid.stencil(i, d1);
      const double D1 = second_diff(s1, arm_values(s1, u, ws.bvals), u[i]);
      // Derivative floor keeps the linearization an M-matrix even where the
      // clamps are active.
      const double floor1 = 1e-7 * (1.0 + std::abs(g[i]));
      auto add_dir = [&](const DirStencil& s, double weight) {
        if (weight == 0.0) return;
        trip.emplace_back(int(i), int(i), -weight * s.dcoef);
        if (s.plus.neighbor >= 0) trip.emplace_back(int(i), s.plus.neighbor, weight * s.kp);
        if (s.minus.neighbor >= 0) trip.emplace_back(int(i), s.minus.neighbor, weight * s.km);
      };
      if (d2 < 0) {
        add_dir(s1, 1.0);
      } else {
        const DirStencil& s2 = grid.stencil(i, d2);
        const double D2 = second_diff(s2, arm_values(s2, u, ws.bvals), u[i]);
        add_dir(s1, std::max(D2, floor1));
        add_dir(s2, std::max(D1, floor1));
      }
      rhs[i] = -F[i];
    }
    J.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(J);
    if (lu.info() != Eigen::Success) {
      report.notes.push_back("newton: singular linearization, falling back to sweeps");
      return false;
    }
    step = lu.solve(rhs);
    ++report.newton_steps;

    double alpha = 1.0;
    bool accepted = false;
    for (int back = 0; back < 10; ++back, alpha *= 0.5) {
      for (std::size_t i = 0; i < N; ++i) trial[i] = u[i] + alpha * step[i];
      double r = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        r = std::max(r, std::abs(ws.ma_at(i, trial) - g[i]));
      if (r <= (1.0 - 1e-4 * alpha) * r0) {
        u.swap(trial);
        r0 = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      report.notes.push_back("newton: line search failed at residual " + std::to_string(r0) +
                             ", falling back to sweeps");
      return false;
    }
    if (r0 <= tol) return true;
  }
  report.notes.push_back("newton: step budget exhausted at residual " + std::to_string(r0));
  return false;
}

} // namespace

DiscreteMAResult ma_apply(const GridFunction& u) {
  const Grid& grid = u.grid();
  Workspace ws(grid, u.boundary());
  const std::size_t N = grid.size();
  const std::size_t ndirs = grid.directions().size();

  DiscreteMAResult out;
  out.value.resize(N);
  out.pair_index.resize(N);
  out.defect.resize(N);
  const std::vector<double>& vals = u.values();
  parallel_for(N, [&](std::size_t n) {
    int which = 0;
    out.value[n] = ws.ma_at(n, vals, &which);
    out.pair_index[n] = which;
    double mind = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < ndirs; ++d) {
      const DirStencil& st = grid.stencil(n, d);
      mind = std::min(mind, second_diff(st, arm_values(st, vals, ws.bvals), vals[n]));
    }
    out.defect[n] = mind;
  });
  out.min_defect = *std::min_element(out.defect.begin(), out.defect.end());
  return out;
}

GridFunction solve_dirichlet(const GridPtr& grid, std::span<const double> g,
                             BoundaryData boundary, const DirichletOptions& opts,
                             SolveReport* report) {
  if (g.size() != grid->size())
    throw InvalidInput("solve_dirichlet: right-hand side size does not match grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::isnan(g[i])) throw InvalidInput("solve_dirichlet: NaN in right-hand side");
    if (g[i] < 0.0) {
      std::ostringstream msg;
      msg << "solve_dirichlet: negative density " << g[i] << " at node " << i;
      throw NegativeDensity(msg.str());
    }
  }

  Workspace ws(*grid, boundary);
  std::vector<double> u =
      opts.warm_start ? *opts.warm_start : std::vector<double>(grid->size(), 0.0);
  if (opts.warm_start && opts.warm_start->size() != grid->size())
    throw InvalidInput("solve_dirichlet: warm start size mismatch");

  SolveReport local;
  SolveReport& rep = report ? *report : local;

  const double tol = opts.tolerance;
  auto run_sweeps = [&](long budget) {
    double res = std::numeric_limits<double>::infinity();
    for (long s = 0; s < budget; ++s) {
      const double change = symmetric_sweep(ws, u, g);
      ++rep.sweeps;
      if (change < 0.25 * tol || (s % 4 == 3)) {
        res = ws.residual(u, g);
        if (res <= tol) return res;
      }
    }
    return ws.residual(u, g);
  };

  double res = std::numeric_limits<double>::infinity();
  switch (opts.policy) {
  case SolvePolicy::Sweep:
    res = run_sweeps(opts.max_sweeps);
    break;
  case SolvePolicy::Newton: {
    if (newton_rounds(ws, u, g, tol, opts.max_newton, rep)) {
      res = ws.residual(u, g);
    } else {
      ++rep.fallbacks;
      res = run_sweeps(opts.max_sweeps);
    }
    break;
  }
  case SolvePolicy::Auto: {
    // A few presmoothing sweeps settle the active pair selection.
    run_sweeps(2);
    for (int round = 0; round < 6; ++round) {
      if (newton_rounds(ws, u, g, tol, opts.max_newton, rep)) break;
      ++rep.fallbacks;
      res = run_sweeps(64L << round);
      if (res <= tol) break;
    }
    res = ws.residual(u, g);
    if (res > tol) res = run_sweeps(opts.max_sweeps);
    break;
  }
  }

  rep.residual = res;
  if (res > tol) {
    std::ostringstream msg;
    msg << "solve_dirichlet: residual " << res << " above tolerance " << tol << " after "
        << rep.sweeps << " sweeps / " << rep.newton_steps << " newton steps";
    throw NonConvergence(msg.str(), res, int(rep.sweeps));
  }
  return GridFunction(grid, std::move(u), std::move(boundary));
}

} // namespace maeigen
