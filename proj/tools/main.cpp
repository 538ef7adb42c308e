#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "maeigen/errors.hpp"

namespace {

using namespace maeigen;
using namespace maeigen::cli;

void add_common(CLI::App* cmd, CommonConfig& c) {
  cmd->set_help_flag("--help", "print this help message and exit");
  cmd->set_config("--config", "", "config file (key = value lines, # comments); flags win");
  cmd->add_option("--domain", c.domain,
                  "domain spec: 'interval a b' | 'disc cx cy r' | 'box lx ly ux uy' | "
                  "'polygon x1 y1 ...'");
  cmd->add_option("--measure", c.measure, "measure: lebesgue | const:c | radial:c:beta[:cx:cy]");
  cmd->add_option("--h", c.h, "grid spacing");
  cmd->add_option("--W", c.width, "stencil width (coprime directions up to this sup-norm)");
  cmd->add_option("--policy", c.policy, "inner solver: auto | sweep | newton");
  cmd->add_option("--tol", c.solver_tol, "inner solver sup-residual tolerance");
  cmd->add_option("--max-sweeps", c.max_sweeps, "Gauss-Seidel sweep budget");
  cmd->add_option("--out", c.out_dir, "output directory");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monge-Ampere first-eigenvalue toolbox: inverse iteration with monotonicity "
               "certificates, a Lions-type continuation cross-check, a semilinear Dirichlet "
               "solver, and independent verification oracles"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");

  SolveConfig solve_cfg;
  auto* solve = app.add_subcommand("solve", "solve M(u) = g with zero boundary data");
  add_common(solve, solve_cfg.common);
  solve->add_option("--rhs", solve_cfg.rhs, "right-hand density: const:c | lebesgue | radial:...");
  solve->add_flag("--contour", solve_cfg.contour, "write contour.svg (2D)");

  EigenConfig eigen_cfg;
  auto* eigen = app.add_subcommand("eigen", "inverse iteration for the first eigenpair");
  add_common(eigen, eigen_cfg.common);
  eigen->add_option("--u0", eigen_cfg.u0, "start: dirichlet | quadratic");
  eigen->add_option("--tol-diff", eigen_cfg.tol_diff, "iterate sup-difference tolerance");
  eigen->add_option("--tol-R", eigen_cfg.tol_R, "relative Rayleigh-ratio tolerance");
  eigen->add_option("--max-iter", eigen_cfg.max_iter, "outer iteration budget");
  eigen->add_flag("!--no-normalize", eigen_cfg.normalize, "disable per-step sup normalization");
  eigen->add_flag("--contour", eigen_cfg.contour, "write contour.svg (2D)");

  LionsConfig lions_cfg;
  auto* lions = app.add_subcommand("lions", "bracket the eigenvalue by continuation");
  add_common(lions, lions_cfg.common);
  lions->add_option("--lambda-max", lions_cfg.lambda_max,
                    "upper end of the probing window (0: auto)");
  lions->add_option("--bisect-tol", lions_cfg.bisect_tol, "relative bracket width target");
  lions->add_option("--growth-guard", lions_cfg.growth_guard,
                    "sup-norm guard as a multiple of the lambda=0 solution");
  lions->add_option("--picard-max-iter", lions_cfg.picard_max_iter, "Picard budget per probe");

  SemilinearConfig semi_cfg;
  auto* semi = app.add_subcommand("semilinear", "solve M(u) = F(x,u)^n nu by Picard iteration");
  add_common(semi, semi_cfg.common);
  semi->add_option("--F", semi_cfg.f_expr,
                   "F: 'a + b*t' | zero | const:c | affine:a:b | lions:lambda");
  semi->add_option("--lambda0", semi_cfg.lambda0, "declared bound on -dF/dt (default: inferred)");
  semi->add_option("--tol-residual", semi_cfg.tol_residual, "fixed-point residual target");
  semi->add_option("--max-iter", semi_cfg.max_iter, "Picard budget");

  OracleConfig oracle_cfg;
  auto* oracle = app.add_subcommand("oracle", "independent reference computations");
  oracle->set_help_flag("--help", "print this help message and exit");
  oracle->add_option("kind", oracle_cfg.kind, "1d | radial | pl | toric | mass-probe")
      ->required();
  oracle->add_option("--length", oracle_cfg.length, "interval length (1d)");
  oracle->add_option("--radius", oracle_cfg.radius, "disc radius (radial)");
  oracle->add_option("--density", oracle_cfg.density, "density spec (radial, mass-probe)");
  oracle->add_option("--cone-pieces", oracle_cfg.cone_pieces, "tangent plane count (pl)");
  oracle->add_option("--alpha", oracle_cfg.alpha, "transform exponent (mass-probe)");
  oracle->add_option("--domain", oracle_cfg.domain, "domain spec (pl, mass-probe)");
  oracle->add_option("--spacings", oracle_cfg.spacings, "comma list of h values (mass-probe)");
  oracle->add_option("--polar", oracle_cfg.polar, "polar grid size per axis (toric)");
  oracle->add_option("--out", oracle_cfg.out_dir, "output directory");

  CheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "run the invariant suite on a configuration");
  add_common(check, check_cfg.common);
  check->add_option("--samples", check_cfg.samples, "random samples per property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) { // --help and friends
      app.exit(e);
      return 0;
    }
    std::fflush(stdout);
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
  }

  try {
    if (*solve) return run_solve(solve_cfg);
    if (*eigen) return run_eigen(eigen_cfg);
    if (*lions) return run_lions(lions_cfg);
    if (*semi) return run_semilinear(semi_cfg);
    if (*oracle) return run_oracle(oracle_cfg);
    if (*check) return run_check(check_cfg);
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  } catch (const NonConvergence& e) {
    std::fprintf(stderr, "non-convergence: %s (residual %.3e after %d steps)%s%s\n", e.what(),
                 e.residual, e.steps, e.diagnostic.empty() ? "" : " - ", e.diagnostic.c_str());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
