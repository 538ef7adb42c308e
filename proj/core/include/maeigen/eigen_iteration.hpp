#ifndef MAEIGEN_EIGEN_ITERATION_HPP
#define MAEIGEN_EIGEN_ITERATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "maeigen/functionals.hpp"
#include "maeigen/ma_operator.hpp"

namespace maeigen {

/// One record per iteration step. E, I and the ratio quantity are the
/// de-rescaled lift: when per-step normalization is on, the recorded values
/// are those of the unnormalized trajectory, reconstructed through the
/// cumulative scale factor (E and I are (n+1)-homogeneous, R is invariant).
struct TraceStep {
  int k = 0;
  double E = 0.0;
  double I = 0.0;
  double R = 0.0;
  double lambda_hat = 0.0;
  double sup_diff = 0.0; ///< |u_k - u_{k-1}|_inf / |u_{k-1}|_inf, 0 at k=0
  double residual = 0.0; ///< inner Dirichlet solve residual producing u_k
  double scale = 1.0;    ///< cumulative rescale factor sigma_k
};

struct IterationTrace {
  int dimension = 1; ///< n, fixes the 1/(n+1) exponent in the certificate
  std::vector<TraceStep> steps;
};

struct IterationOptions {
  double tol_diff = 1e-6;
  double tol_R = 1e-8;
  /// Fixed-point residual target |M(u) - R(-u)^n nu|_inf; 0 means
  /// 10 x the inner Dirichlet tolerance.
  double tol_residual = 0.0;
  int max_iter = 200;
  bool normalize = true;
  DirichletOptions inner;
};

/// Monotonicity certificate: E and I must not decrease, R and E/I^{1/(n+1)}
/// must not increase, each up to a relative tolerance.
struct CertificateViolation {
  enum class Quantity { Energy, Mass, Ratio, NormalizedEnergy };
  int k = 0; ///< step at which the monotone order broke
  Quantity quantity;
  double observed = 0.0; ///< offending relative change
  std::string describe() const;
};

std::vector<CertificateViolation> certify_monotone(const IterationTrace& trace,
                                                   double tol_cert = 1e-6);

struct EigenResult {
  double lambda_hat = 0.0;
  GridFunction u; ///< sup-norm normalized to 1
  IterationTrace trace;
  bool converged = false;
  std::vector<CertificateViolation> certificate_violations;
  double final_residual = 0.0; ///< |M(u) - R (-u)^n nu|_inf at the last step
  int iterations = 0;
};

/// Inverse iteration for the Monge-Ampere eigenvalue problem:
/// u_{k+1} solves M(u_{k+1}) = R(u_k) (-u_k)^n nu with zero boundary data.
/// Stops when the iterate difference, the R difference and the fixed-point
/// residual all meet their tolerances. When u0 is absent, the start is the
/// plain Dirichlet solution of M(u) = nu.
EigenResult inverse_iterate(const GridPtr& grid, const MeasureSpec& nu,
                            std::optional<GridFunction> u0 = std::nullopt,
                            const IterationOptions& opts = {});

/// Best positive scale c minimizing |u - c v|_inf / |u|_inf and the attained
/// deviation; golden-section refinement around |u|_inf / |v|_inf.
struct Proportionality {
  double c = 0.0;
  double dev = 0.0;
};
Proportionality proportionality(const GridFunction& u, const GridFunction& v);

} // namespace maeigen

#endif
