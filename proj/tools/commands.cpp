#include "commands.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "maeigen/continuation.hpp"
#include "maeigen/domain.hpp"
#include "maeigen/eigen_iteration.hpp"
#include "maeigen/errors.hpp"
#include "maeigen/functionals.hpp"
#include "maeigen/io.hpp"
#include "maeigen/oracles.hpp"

namespace maeigen::cli {

namespace {

namespace fs = std::filesystem;

SolvePolicy parse_policy(const std::string& s) {
  if (s == "auto") return SolvePolicy::Auto;
  if (s == "sweep") return SolvePolicy::Sweep;
  if (s == "newton") return SolvePolicy::Newton;
  throw InvalidInput("--policy must be auto, sweep or newton (got '" + s + "')");
}

struct Problem {
  ConvexDomain domain;
  GridPtr grid;
  MeasureSpec measure;
  DirichletOptions inner;
};

Problem setup(const CommonConfig& c) {
  if (!(c.h > 0.0)) throw InvalidInput("--h must be positive");
  if (c.width < 1) throw InvalidInput("--W must be >= 1");
  if (!(c.solver_tol > 0.0)) throw InvalidInput("--tol must be positive");
  Problem p{build_domain(c.domain), nullptr, MeasureSpec::parse(c.measure), {}};
  p.grid = discretize(p.domain, c.h, c.width);
  p.inner.policy = parse_policy(c.policy);
  p.inner.tolerance = c.solver_tol;
  p.inner.max_sweeps = c.max_sweeps;
  return p;
}

std::string out_path(const std::string& dir, const char* name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

std::vector<std::pair<std::string, std::string>> echo_common(const char* cmd,
                                                             const CommonConfig& c) {
  return {{"command", cmd},
          {"domain", c.domain},
          {"measure", c.measure},
          {"h", format_double(c.h)},
          {"W", std::to_string(c.width)},
          {"policy", c.policy},
          {"solver_tol", format_double(c.solver_tol)}};
}

GridFunction make_start(const std::string& kind, const Problem& p) {
  if (kind == "dirichlet")
    return solve_dirichlet(p.grid, p.measure.densities(*p.grid), {}, p.inner);
  if (kind == "quadratic") {
    const Vec2 c = p.domain.centroid();
    double r2max = 0.0;
    for (const Vec2& q : p.grid->nodes()) r2max = std::max(r2max, norm2(q - c));
    if (p.domain.kind() == ConvexDomain::Kind::Disc)
      r2max = p.domain.disc_radius() * p.domain.disc_radius();
    return GridFunction::sample(*&p.grid, [c, r2max](Vec2 x) {
      return 0.5 * (norm2(x - c) - r2max);
    });
  }
  throw InvalidInput("--u0 must be dirichlet or quadratic (got '" + kind + "')");
}

std::vector<double> parse_csv_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    std::istringstream c(cell);
    double v;
    if (!(c >> v)) throw InvalidInput("bad number '" + cell + "' in list '" + text + "'");
    out.push_back(v);
  }
  return out;
}

// F expression grammar: "a + b*t" (and "a - b*t", "a"), or the presets
// zero | const:c | affine:a:b (a + b t) | lions:lambda.
bool parse_affine_expr(const std::string& expr, double& a, double& b) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::size_t tpos = s.find("*t");
  if (tpos == std::string::npos || tpos + 2 != s.size()) return false;
  // Split off the trailing signed coefficient of t.
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < tpos; ++i)
    if (s[i] == '+' || s[i] == '-') split = i;
  if (split == std::string::npos) return false;
  try {
    std::size_t used = 0;
    a = std::stod(s.substr(0, split), &used);
    if (used != split) return false;
    b = std::stod(s.substr(split, tpos - split), &used);
    if (used != tpos - split) return false;
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

std::pair<SemilinearSpec, std::string> parse_semilinear(const std::string& expr,
                                                        double lambda0_override) {
  SemilinearSpec spec;
  std::string label = expr;
  double ea = 0.0, eb = 0.0;
  if (expr == "zero") {
    spec.F = [](Vec2, double) { return 0.0; };
    spec.lipschitz_down = 0.0;
  } else if (parse_affine_expr(expr, ea, eb)) {
    spec.F = [ea, eb](Vec2, double t) { return ea + eb * t; };
    spec.lipschitz_down = eb < 0.0 ? -eb : 0.0;
  } else {
    const std::vector<std::string> parts = [&] {
      std::vector<std::string> ps;
      std::stringstream in(expr);
      std::string cell;
      while (std::getline(in, cell, ':')) ps.push_back(cell);
      return ps;
    }();
    auto num = [&](std::size_t i) {
      std::istringstream c(parts.at(i));
      double v;
      if (!(c >> v)) throw InvalidInput("bad number in F expression '" + expr + "'");
      return v;
    };
    if (parts[0] == "const" && parts.size() == 2) {
      const double a = num(1);
      spec.F = [a](Vec2, double) { return a; };
      spec.lipschitz_down = 0.0;
    } else if (parts[0] == "affine" && parts.size() == 3) {
      const double a = num(1), b = num(2);
      spec.F = [a, b](Vec2, double t) { return a + b * t; };
      spec.lipschitz_down = b < 0.0 ? -b : 0.0;
    } else if (parts[0] == "lions" && parts.size() == 2) {
      const double lam = num(1);
      spec.F = [lam](Vec2, double t) { return 1.0 - lam * t; };
      spec.lipschitz_down = lam > 0.0 ? lam : 0.0;
    } else {
      throw InvalidInput("--F must be zero | const:c | affine:a:b | lions:lambda (got '" + expr +
                         "')");
    }
  }
  if (lambda0_override >= 0.0) spec.lipschitz_down = lambda0_override;
  return {std::move(spec), std::move(label)};
}

} // namespace

int run_solve(const SolveConfig& cfg) {
  Problem p = setup(cfg.common);
  const MeasureSpec rhs = MeasureSpec::parse(cfg.rhs);
  SolveReport rep;
  GridFunction u = solve_dirichlet(p.grid, rhs.densities(*p.grid), {}, p.inner, &rep);

  write_solution_csv(out_path(cfg.common.out_dir, "solution.csv"), u);
  if (cfg.contour && p.grid->dimension() == 2)
    write_contour_svg(out_path(cfg.common.out_dir, "contour.svg"), u);

  SummaryData summary;
  summary.iterations = int(rep.sweeps);
  summary.converged = true;
  summary.config = echo_common("solve", cfg.common);
  summary.config.push_back({"rhs", cfg.rhs});
  summary.extra = {{"residual", rep.residual},
                   {"newton_steps", double(rep.newton_steps)},
                   {"sup_norm", u.sup_norm()},
                   {"total_mass", ma_apply(u).total_mass(*p.grid)}};
  write_summary_json(out_path(cfg.common.out_dir, "summary.json"), summary);
  std::printf("solve: residual %.3e, sup norm %.6f, %zu nodes\n", rep.residual, u.sup_norm(),
              p.grid->size());
  return 0;
}

int run_eigen(const EigenConfig& cfg) {
  Problem p = setup(cfg.common);
  IterationOptions opts;
  opts.tol_diff = cfg.tol_diff;
  opts.tol_R = cfg.tol_R;
  opts.max_iter = cfg.max_iter;
  opts.normalize = cfg.normalize;
  opts.inner = p.inner;

  EigenResult res = inverse_iterate(p.grid, p.measure, make_start(cfg.u0, p), opts);

  write_trace_jsonl(out_path(cfg.common.out_dir, "trace.jsonl"), res.trace);
  write_solution_csv(out_path(cfg.common.out_dir, "solution.csv"), res.u);
  if (cfg.contour && p.grid->dimension() == 2)
    write_contour_svg(out_path(cfg.common.out_dir, "contour.svg"), res.u);

  SummaryData summary;
  summary.lambda_hat = res.lambda_hat;
  summary.iterations = res.iterations;
  summary.converged = res.converged;
  for (const auto& v : res.certificate_violations)
    summary.certificate_violations.push_back(v.describe());
  summary.config = echo_common("eigen", cfg.common);
  summary.config.push_back({"u0", cfg.u0});
  summary.config.push_back({"tol_diff", format_double(cfg.tol_diff)});
  summary.config.push_back({"tol_R", format_double(cfg.tol_R)});
  summary.config.push_back({"normalize", cfg.normalize ? "true" : "false"});
  summary.extra = {{"final_residual", res.final_residual}};
  write_summary_json(out_path(cfg.common.out_dir, "summary.json"), summary);

  std::printf("eigen: lambda_hat %.10f after %d iterations (%s), residual %.3e, %zu certificate "
              "violation(s)\n",
              res.lambda_hat, res.iterations, res.converged ? "converged" : "NOT converged",
              res.final_residual, res.certificate_violations.size());
  return res.converged ? 0 : 1;
}

int run_lions(const LionsConfig& cfg) {
  Problem p = setup(cfg.common);
  LionsOptions opts;
  opts.bisect_tol = cfg.bisect_tol;
  opts.growth_guard_factor = cfg.growth_guard;
  opts.picard_max_iter = cfg.picard_max_iter;
  opts.inner = p.inner;
  opts.lambda_max = cfg.lambda_max;
  if (opts.lambda_max <= 0.0) {
    // Quick eigen estimate fixes the probing window.
    IterationOptions eopts;
    eopts.tol_diff = 1e-4;
    eopts.tol_R = 1e-6;
    eopts.inner = p.inner;
    const EigenResult quick = inverse_iterate(p.grid, p.measure, std::nullopt, eopts);
    opts.lambda_max = 2.0 * quick.lambda_hat;
  }

  BracketResult res = lions_bracket(p.grid, p.measure, opts);
  write_curve_csv(out_path(cfg.common.out_dir, "curve.csv"), res.sup_norm_curve);
  write_solution_csv(out_path(cfg.common.out_dir, "solution.csv"), res.witness_lo);

  SummaryData summary;
  summary.lambda_hat = 0.5 * (res.lambda_lo + res.lambda_hi);
  summary.iterations = int(res.sup_norm_curve.size());
  summary.converged = true;
  summary.config = echo_common("lions", cfg.common);
  summary.config.push_back({"lambda_max", format_double(opts.lambda_max)});
  summary.config.push_back({"bisect_tol", format_double(cfg.bisect_tol)});
  summary.extra = {{"lambda_lo", res.lambda_lo}, {"lambda_hi", res.lambda_hi}};
  write_summary_json(out_path(cfg.common.out_dir, "summary.json"), summary);

  std::printf("lions: bracket [%.8f, %.8f], width %.3f%%, %zu probes\n", res.lambda_lo,
              res.lambda_hi, 100.0 * (res.lambda_hi - res.lambda_lo) / res.lambda_hi,
              res.sup_norm_curve.size());
  return 0;
}

int run_semilinear(const SemilinearConfig& cfg) {
  Problem p = setup(cfg.common);
  auto [spec, label] = parse_semilinear(cfg.f_expr, cfg.lambda0);
  SemilinearOptions opts;
  opts.tol_residual = cfg.tol_residual;
  opts.max_iter = cfg.max_iter;
  opts.inner = p.inner;

  SemilinearResult res = solve_semilinear(p.grid, p.measure, spec, opts);
  write_solution_csv(out_path(cfg.common.out_dir, "solution.csv"), res.u);

  SummaryData summary;
  summary.iterations = res.iterations;
  summary.converged = true;
  summary.config = echo_common("semilinear", cfg.common);
  summary.config.push_back({"F", label});
  summary.config.push_back({"lambda0", format_double(spec.lipschitz_down)});
  summary.extra = {{"residual", res.residual},
                   {"sup_norm", res.u.sup_norm()},
                   {"worst_ascent", res.worst_ascent}};
  write_summary_json(out_path(cfg.common.out_dir, "summary.json"), summary);

  std::printf("semilinear: converged in %d Picard steps, residual %.3e, sup norm %.6f\n",
              res.iterations, res.residual, res.u.sup_norm());
  return 0;
}

int run_oracle(const OracleConfig& cfg) {
  if (cfg.kind == "1d") {
    const Oracle1DResult res = oracle_1d(cfg.length);
    std::ofstream out(out_path(cfg.out_dir, "oracle_1d.csv"));
    out << "x,u\n";
    for (int i = 0; i <= 200; ++i) {
      const double x = cfg.length * i / 200.0;
      out << format_double(x) << "," << format_double(res.eigenfunction(x)) << "\n";
    }
    std::printf("oracle 1d: lambda1 = %.12f\n", res.lambda1);
    return 0;
  }
  if (cfg.kind == "radial") {
    // The CLI exposes constant and centered radial-power densities; richer
    // radial profiles go through the library API.
    RadialProblem prob{cfg.radius, {}};
    if (cfg.density == "lebesgue") {
      prob.density = [](double) { return 1.0; };
    } else if (cfg.density.rfind("const:", 0) == 0) {
      const double c = std::stod(cfg.density.substr(6));
      if (!(c >= 0.0)) throw InvalidInput("oracle radial: density must be nonnegative");
      prob.density = [c](double) { return c; };
    } else if (cfg.density.rfind("radial:", 0) == 0) {
      const std::vector<double> ps = parse_csv_doubles([&] {
        std::string s = cfg.density.substr(7);
        for (char& ch : s)
          if (ch == ':') ch = ',';
        return s;
      }());
      if (ps.size() < 2) throw InvalidInput("oracle radial: expect radial:c:beta");
      const double c = ps[0], beta = ps[1];
      prob.density = [c, beta](double r) { return c * std::pow(r, -beta); };
    } else {
      throw InvalidInput("oracle radial: density must be lebesgue | const:c | radial:c:beta");
    }
    const RadialSolution res = oracle_radial(prob);
    std::ofstream out(out_path(cfg.out_dir, "oracle_radial.csv"));
    out << "r,u\n";
    for (const auto& [r, u] : res.profile)
      out << format_double(r) << "," << format_double(u) << "\n";
    std::printf("oracle radial: lambda1 = %.12f (R = %g)\n", res.lambda1, cfg.radius);
    return 0;
  }
  if (cfg.kind == "pl") {
    const ConvexDomain dom = build_domain(cfg.domain);
    const PLConvexFunction cone = PLConvexFunction::cone(dom.centroid(), 1.0, cfg.cone_pieces);
    const AtomicMeasure atoms = oracle_pl_ma(cone, dom);
    std::ofstream out(out_path(cfg.out_dir, "oracle_pl.csv"));
    out << "x,y,mass\n";
    for (const auto& a : atoms.atoms)
      out << format_double(a.point.x) << "," << format_double(a.point.y) << ","
          << format_double(a.mass) << "\n";
    std::printf("oracle pl: %zu atom(s), total mass %.12f (pi = %.12f)\n", atoms.atoms.size(),
                atoms.total_mass, M_PI);
    return 0;
  }
  if (cfg.kind == "toric") {
    SmoothFunction1D u{[](double x) { return x * x; }, [](double) { return 2.0; }};
    const ToricCheckResult res =
        toric_check_1d(u, 0.0, 1.0, [](double) { return 1.0; }, cfg.polar, cfg.polar);
    std::printf("oracle toric: lhs = %.10f, rhs = %.10f, |diff| = %.3e\n", res.lhs, res.rhs,
                res.abs_diff);
    return 0;
  }
  if (cfg.kind == "mass-probe") {
    const ConvexDomain dom = build_domain(cfg.domain);
    const std::vector<double> hs = parse_csv_doubles(cfg.spacings);
    const auto rows = mass_divergence_probe(dom, MeasureSpec::parse(cfg.density), cfg.alpha, hs);
    std::ofstream out(out_path(cfg.out_dir, "mass_probe.csv"));
    out << "h,mass,ratio\n";
    for (const auto& r : rows) {
      out << format_double(r.h) << "," << format_double(r.mass) << "," << format_double(r.ratio)
          << "\n";
      std::printf("mass-probe: h = %-10g mass = %-12.6f ratio = %.4f\n", r.h, r.mass, r.ratio);
    }
    return 0;
  }
  throw InvalidInput("oracle kind must be 1d | radial | pl | toric | mass-probe (got '" +
                     cfg.kind + "')");
}

int run_check(const CheckConfig& cfg) {
  Problem p = setup(cfg.common);
  const GridPtr grid = p.grid;
  const int n = grid->dimension();
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value) {
    std::printf("%-44s %s  (%.3e)\n", name, ok ? "PASS" : "FAIL", value);
    if (!ok) ++failures;
  };

  // Stencil arms land on the boundary or on an interior neighbor.
  {
    double worst = 0.0;
    for (std::size_t i = 0; i < grid->size(); ++i) {
      for (std::size_t d = 0; d < grid->directions().size(); ++d) {
        const DirStencil& st = grid->stencil(i, d);
        for (const StencilArm* arm : {&st.plus, &st.minus}) {
          if (arm->neighbor >= 0) continue;
          worst = std::max(worst, std::abs(p.domain.ray_exit(grid->node(i),
                                                             arm->endpoint - grid->node(i)) -
                                           1.0));
        }
      }
    }
    report("boundary intercepts exact", worst < 1e-9, worst);
  }

  // Distance-to-boundary midpoint concavity.
  {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, grid->size() - 1);
    double worst = 0.0;
    for (int s = 0; s < 1000; ++s) {
      const Vec2 a = grid->node(pick(rng)), b = grid->node(pick(rng));
      const double lhs = p.domain.distance_to_boundary(0.5 * (a + b));
      const double rhs = 0.5 * (p.domain.distance_to_boundary(a) + p.domain.distance_to_boundary(b));
      worst = std::min(worst, lhs - rhs);
    }
    report("distance concavity", worst > -1e-12 * p.domain.diameter(), worst);
  }

  // n-homogeneity of the operator on a random convex sample.
  {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < cfg.samples; ++s) {
      GridFunction u(grid);
      const double ax = coef(rng), ay = coef(rng), q = 0.5 + 0.5 * std::abs(coef(rng));
      for (std::size_t i = 0; i < grid->size(); ++i) {
        const Vec2 x = grid->node(i);
        u[i] = q * norm2(x) + ax * x.x + ay * x.y - 10.0;
      }
      const DiscreteMAResult m1 = ma_apply(u);
      const DiscreteMAResult mc = ma_apply(u.scaled(2.0));
      const double cn = n == 1 ? 2.0 : 4.0;
      double sup = 0.0, dev = 0.0;
      for (std::size_t i = 0; i < grid->size(); ++i) {
        sup = std::max(sup, std::abs(m1.value[i]));
        dev = std::max(dev, std::abs(mc.value[i] - cn * m1.value[i]));
      }
      worst = std::max(worst, dev / (cn * sup));
    }
    report("ma_apply 2^n-homogeneity", worst < 1e-12, worst);
  }

  // Monotonicity: raising a neighbor value does not lower the MA value.
  {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<std::size_t> pick(0, grid->size() - 1);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    double worst = 0.0;
    GridFunction u(grid);
    for (std::size_t i = 0; i < grid->size(); ++i)
      u[i] = 0.8 * norm2(grid->node(i)) + 0.3 * coef(rng) - 8.0;
    const DiscreteMAResult base = ma_apply(u);
    for (int s = 0; s < cfg.samples * 10; ++s) {
      const std::size_t j = pick(rng);
      GridFunction v = u;
      v[j] += 0.05;
      const DiscreteMAResult mv = ma_apply(v);
      for (std::size_t i = 0; i < grid->size(); ++i) {
        if (i == j) continue;
        worst = std::min(worst, mv.value[i] - base.value[i]);
      }
    }
    report("scheme monotone in neighbor values", worst > -1e-12, worst);
  }

  // Comparison principle on ordered random densities.
  {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coef(0.2, 1.0);
    bool ok = true;
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
      std::vector<double> g1(grid->size()), g2(grid->size());
      for (std::size_t i = 0; i < grid->size(); ++i) {
        g1[i] = coef(rng);
        g2[i] = g1[i] + coef(rng);
      }
      const GridFunction u1 = solve_dirichlet(grid, g1, {}, p.inner);
      const GridFunction u2 = solve_dirichlet(grid, g2, {}, p.inner);
      for (std::size_t i = 0; i < grid->size(); ++i)
        worst = std::min(worst, u1[i] - u2[i]); // expect u1 >= u2
      ok = ok && worst > -10.0 * p.inner.tolerance;
    }
    report("discrete comparison principle", ok, worst);
  }

  // Short eigen run: convergence and the certificate.
  {
    IterationOptions opts;
    opts.inner = p.inner;
    const EigenResult res = inverse_iterate(grid, p.measure, std::nullopt, opts);
    report("eigen converged", res.converged, res.lambda_hat);
    double worst = 0.0;
    for (const auto& v : res.certificate_violations) worst = std::max(worst, v.observed);
    report("monotonicity certificate (1e-6)", res.certificate_violations.empty(), worst);
  }

  std::printf("%d check(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

} // namespace maeigen::cli
