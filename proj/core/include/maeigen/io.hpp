#ifndef MAEIGEN_IO_HPP
#define MAEIGEN_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "maeigen/continuation.hpp"
#include "maeigen/eigen_iteration.hpp"
#include "maeigen/grid_function.hpp"

namespace maeigen {

/// Locale-independent shortest-width formatting with 17 significant digits;
/// round-trips doubles exactly.
std::string format_double(double v);

/// Writes one JSON object per iteration step with keys
/// {k, E, I, R, lambda_hat, sup_diff, residual, scale}.
void write_trace_jsonl(const std::string& path, const IterationTrace& trace);

/// Header "x,y,u" (2D) or "x,u" (1D), one row per interior node in node
/// order, 17 significant digits.
void write_solution_csv(const std::string& path, const GridFunction& u);

/// Reads a solution written by write_solution_csv back onto its grid.
/// Node coordinates must match the grid within 1e-12 * diameter.
GridFunction read_solution_csv(const std::string& path, const GridPtr& grid);

/// Lions continuation curve: header "lambda,sup_norm,converged".
void write_curve_csv(const std::string& path, const std::vector<LionsProbe>& curve);

struct SummaryData {
  double lambda_hat = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> certificate_violations;
  /// Effective configuration echoed for reproducibility (key, value).
  std::vector<std::pair<std::string, std::string>> config;
  /// Optional extras rendered into the summary verbatim (key, number).
  std::vector<std::pair<std::string, double>> extra;
};
void write_summary_json(const std::string& path, const SummaryData& summary);

/// Level sets of u at 10 equispaced levels, fixed palette. 2D only.
void write_contour_svg(const std::string& path, const GridFunction& u);

} // namespace maeigen

#endif
