#ifndef MAEIGEN_TOOLS_COMMANDS_HPP
#define MAEIGEN_TOOLS_COMMANDS_HPP

#include <string>
#include <utility>
#include <vector>

namespace maeigen::cli {

struct CommonConfig {
  std::string domain = "interval 0 1";
  std::string measure = "lebesgue";
  double h = 0.01;
  int width = 2;
  std::string policy = "auto"; // auto | sweep | newton
  double solver_tol = 1e-8;
  long max_sweeps = 100000;
  std::string out_dir = ".";
};

struct EigenConfig {
  CommonConfig common;
  std::string u0 = "dirichlet"; // dirichlet | quadratic
  double tol_diff = 1e-6;
  double tol_R = 1e-8;
  int max_iter = 200;
  bool normalize = true;
  bool contour = false;
};

struct SolveConfig {
  CommonConfig common;
  std::string rhs = "const:1";
  bool contour = false;
};

struct LionsConfig {
  CommonConfig common;
  double lambda_max = 0.0; // 0: auto from a quick eigen estimate
  double bisect_tol = 0.02;
  double growth_guard = 50.0;
  int picard_max_iter = 2000;
};

struct SemilinearConfig {
  CommonConfig common;
  std::string f_expr = "const:1"; // zero | const:c | affine:a:b | lions:lambda
  double lambda0 = -1.0;          // declared bound; -1: infer from the expression
  double tol_residual = 1e-6;
  int max_iter = 400;
};

struct OracleConfig {
  std::string kind; // 1d | radial | pl | toric | mass-probe
  double length = 1.0;
  double radius = 1.0;
  std::string density = "const:1";
  int cone_pieces = 64;
  double alpha = 0.5;
  std::string domain = "disc 0 0 1";
  std::string spacings = "0.0625,0.03125,0.015625";
  int polar = 256;
  std::string out_dir = ".";
};

struct CheckConfig {
  CommonConfig common;
  int samples = 20;
};

int run_solve(const SolveConfig& cfg);
int run_eigen(const EigenConfig& cfg);
int run_lions(const LionsConfig& cfg);
int run_semilinear(const SemilinearConfig& cfg);
int run_oracle(const OracleConfig& cfg);
int run_check(const CheckConfig& cfg);

} // namespace maeigen::cli

#endif
