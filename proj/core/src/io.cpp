#include "maeigen/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "maeigen/errors.hpp"

namespace maeigen {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary); // binary: no platform newline mangling
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{}) throw InvalidInput("bad number '" + std::string(s) + "'");
  return v;
}

using ordered_json = nlohmann::ordered_json;

} // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trace_jsonl(const std::string& path, const IterationTrace& trace) {
  std::ofstream out = open_out(path);
  for (const TraceStep& s : trace.steps) {
    ordered_json j;
    j["k"] = s.k;
    j["E"] = s.E;
    j["I"] = s.I;
    j["R"] = s.R;
    j["lambda_hat"] = s.lambda_hat;
    j["sup_diff"] = s.sup_diff;
    j["residual"] = s.residual;
    j["scale"] = s.scale;
    out << j.dump() << "\n";
  }
  if (!out) throw Error("write failed on '" + path + "'");
}

void write_solution_csv(const std::string& path, const GridFunction& u) {
  std::ofstream out = open_out(path);
  const bool two_d = u.grid().dimension() == 2;
  out << (two_d ? "x,y,u\n" : "x,u\n");
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Vec2 p = u.grid().node(i);
    out << format_double(p.x);
    if (two_d) out << "," << format_double(p.y);
    out << "," << format_double(u[i]) << "\n";
  }
  if (!out) throw Error("write failed on '" + path + "'");
}

GridFunction read_solution_csv(const std::string& path, const GridPtr& grid) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty solution file '" + path + "'");
  const bool two_d = grid->dimension() == 2;
  const double tol = 1e-12 * grid->domain().diameter();

  std::vector<double> values(grid->size(), std::numeric_limits<double>::quiet_NaN());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t next = line.find(',', pos);
      cells.push_back(line.substr(pos, next == std::string::npos ? next : next - pos));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    if (cells.size() != std::size_t(two_d ? 3 : 2))
      throw InvalidInput("solution csv: bad column count on row " + std::to_string(row));
    if (row >= grid->size()) throw InvalidInput("solution csv: more rows than grid nodes");
    const Vec2 p{parse_double(cells[0]), two_d ? parse_double(cells[1]) : 0.0};
    const Vec2 q = grid->node(row);
    if (std::abs(p.x - q.x) > tol || std::abs(p.y - q.y) > tol)
      throw InvalidInput("solution csv: node coordinates do not match the grid at row " +
                         std::to_string(row));
    values[row] = parse_double(cells[two_d ? 2 : 1]);
    ++row;
  }
  if (row != grid->size()) throw InvalidInput("solution csv: row count does not match the grid");
  return GridFunction(grid, std::move(values));
}

void write_curve_csv(const std::string& path, const std::vector<LionsProbe>& curve) {
  std::ofstream out = open_out(path);
  out << "lambda,sup_norm,converged\n";
  for (const LionsProbe& p : curve)
    out << format_double(p.lambda) << "," << format_double(p.sup_norm) << ","
        << (p.converged ? 1 : 0) << "\n";
  if (!out) throw Error("write failed on '" + path + "'");
}

void write_summary_json(const std::string& path, const SummaryData& summary) {
  ordered_json j;
  j["lambda_hat"] = summary.lambda_hat;
  j["iterations"] = summary.iterations;
  j["converged"] = summary.converged;
  j["certificate_violations"] = summary.certificate_violations;
  for (const auto& [k, v] : summary.extra) j[k] = v;
  ordered_json cfg;
  for (const auto& [k, v] : summary.config) cfg[k] = v;
  j["config"] = cfg;
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
  if (!out) throw Error("write failed on '" + path + "'");
}

namespace {

// Fixed 10-color palette, dark to light.
const char* kPalette[10] = {"#0d0887", "#46039f", "#7201a8", "#9c179e", "#bd3786",
                            "#d8576b", "#ed7953", "#fb9f3a", "#fdca26", "#f0f921"};

} // namespace

void write_contour_svg(const std::string& path, const GridFunction& u) {
  const Grid& grid = u.grid();
  if (grid.dimension() != 2) throw InvalidInput("contour svg: 2D grids only");

  // Dense lattice with zero padding outside the interior mask; fine for the
  // zero-boundary solutions this plot is meant for.
  const auto [lo, hi] = grid.domain().bounding_box();
  const double h = grid.spacing();
  const int nx = int(std::floor((hi.x - lo.x) / h)) + 1;
  const int ny = int(std::floor((hi.y - lo.y) / h)) + 1;
  std::vector<double> field(std::size_t(nx + 1) * (ny + 1), 0.0);
  auto at = [&](int ix, int iy) -> double& { return field[std::size_t(ix) * (ny + 1) + iy]; };
  double min_u = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto [ix, iy] = grid.lattice_coords(i);
    at(ix, iy) = u[i];
    min_u = std::min(min_u, u[i]);
  }

  std::ofstream out = open_out(path);
  const double w = hi.x - lo.x, ht = hi.y - lo.y;
  const double margin = 0.05 * std::max(w, ht);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(lo.x - margin)
      << " " << format_double(lo.y - margin) << " " << format_double(w + 2 * margin) << " "
      << format_double(ht + 2 * margin) << "\">\n";
  out << "<g fill=\"none\" stroke-width=\"" << format_double(0.25 * h) << "\">\n";

  for (int level = 0; level < 10; ++level) {
    const double c = min_u + (level + 1) * (0.0 - min_u) / 11.0;
    out << "<g stroke=\"" << kPalette[level] << "\">\n";
    // Marching squares over lattice cells.
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy < ny; ++iy) {
        const double v00 = at(ix, iy), v10 = at(ix + 1, iy);
        const double v01 = at(ix, iy + 1), v11 = at(ix + 1, iy + 1);
        const double x0 = lo.x + ix * h, y0 = lo.y + iy * h;
        auto interp = [&](double a, double b) { return (c - a) / (b - a); };
        std::vector<Vec2> pts;
        if ((v00 < c) != (v10 < c)) pts.push_back({x0 + h * interp(v00, v10), y0});
        if ((v10 < c) != (v11 < c)) pts.push_back({x0 + h, y0 + h * interp(v10, v11)});
        if ((v01 < c) != (v11 < c)) pts.push_back({x0 + h * interp(v01, v11), y0 + h});
        if ((v00 < c) != (v01 < c)) pts.push_back({x0, y0 + h * interp(v00, v01)});
        if (pts.size() == 2) {
          out << "<line x1=\"" << format_double(pts[0].x) << "\" y1=\"" << format_double(pts[0].y)
              << "\" x2=\"" << format_double(pts[1].x) << "\" y2=\"" << format_double(pts[1].y)
              << "\"/>\n";
        } else if (pts.size() == 4) {
          // Saddle: connect by center-value disambiguation.
          const double center = 0.25 * (v00 + v10 + v01 + v11);
          const int a = center < c ? 0 : 1;
          out << "<line x1=\"" << format_double(pts[a].x) << "\" y1=\"" << format_double(pts[a].y)
              << "\" x2=\"" << format_double(pts[(a + 1) % 4].x) << "\" y2=\""
              << format_double(pts[(a + 1) % 4].y) << "\"/>\n";
          out << "<line x1=\"" << format_double(pts[(a + 2) % 4].x) << "\" y1=\""
              << format_double(pts[(a + 2) % 4].y) << "\" x2=\"" << format_double(pts[(a + 3) % 4].x)
              << "\" y2=\"" << format_double(pts[(a + 3) % 4].y) << "\"/>\n";
        }
      }
    }
    out << "</g>\n";
  }
  out << "</g>\n</svg>\n";
  if (!out) throw Error("write failed on '" + path + "'");
}

} // namespace maeigen
