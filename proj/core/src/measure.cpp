#include "maeigen/measure.hpp"

#include <cmath>
#include <sstream>

#include "maeigen/errors.hpp"
#include "maeigen/ma_operator.hpp"

namespace maeigen {

MeasureSpec MeasureSpec::lebesgue() { return constant(1.0); }

MeasureSpec MeasureSpec::constant(double c) {
  if (!(c >= 0.0)) throw InvalidInput("measure: constant density must be nonnegative");
  MeasureSpec m;
  m.kind_ = Kind::Constant;
  m.c_ = c;
  m.label_ = c == 1.0 ? "lebesgue" : "const:" + std::to_string(c);
  return m;
}

MeasureSpec MeasureSpec::radial_power(double c, double beta, Vec2 center) {
  if (!(c >= 0.0)) throw InvalidInput("measure: radial_power amplitude must be nonnegative");
  MeasureSpec m;
  m.kind_ = Kind::RadialPower;
  m.c_ = c;
  m.beta_ = beta;
  m.center_ = center;
  std::ostringstream s;
  s << "radial:" << c << ":" << beta << ":" << center.x << ":" << center.y;
  m.label_ = s.str();
  return m;
}

MeasureSpec MeasureSpec::expression(std::function<double(Vec2)> density, std::string label) {
  MeasureSpec m;
  m.kind_ = Kind::Expression;
  m.density_ = std::move(density);
  m.label_ = std::move(label);
  return m;
}

MeasureSpec MeasureSpec::hessian_of(GridFunction source) {
  MeasureSpec m;
  m.kind_ = Kind::HessianOf;
  m.source_ = std::move(source);
  m.label_ = "hessian-of-source";
  return m;
}

MeasureSpec MeasureSpec::parse(std::string_view text) {
  std::string s(text);
  if (s == "lebesgue") return lebesgue();
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(':', pos);
    parts.push_back(s.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  auto num = [&](std::size_t i) {
    std::istringstream in(parts[i]);
    double v;
    if (!(in >> v)) throw InvalidInput("measure: bad number '" + parts[i] + "' in '" + s + "'");
    return v;
  };
  if (parts[0] == "const" && parts.size() == 2) return constant(num(1));
  if (parts[0] == "radial" && (parts.size() == 3 || parts.size() == 5)) {
    MeasureSpec m = radial_power(num(1), num(2), parts.size() == 5 ? Vec2{num(3), num(4)} : Vec2{});
    if (parts.size() == 3) m.center_.reset(); // centroid chosen at evaluation
    return m;
  }
  throw InvalidInput("measure: unknown spec '" + s + "' (expect lebesgue | const:c | radial:c:beta[:cx:cy])");
}

std::vector<double> MeasureSpec::densities(const Grid& grid) const {
  const std::size_t N = grid.size();
  std::vector<double> out(N);
  switch (kind_) {
  case Kind::Constant:
    std::fill(out.begin(), out.end(), c_);
    break;
  case Kind::RadialPower: {
    if (beta_ >= grid.dimension())
      throw InvalidInput("measure: radial_power exponent must satisfy beta < n for integrability");
    const Vec2 center = center_ ? *center_ : grid.domain().centroid();
    for (std::size_t i = 0; i < N; ++i) {
      const double r = norm(grid.node(i) - center);
      out[i] = c_ * std::pow(r, -beta_);
    }
    break;
  }
  case Kind::Expression:
    for (std::size_t i = 0; i < N; ++i) out[i] = density_(grid.node(i));
    break;
  case Kind::HessianOf: {
    if (&source_->grid() != &grid)
      throw InvalidInput("measure: hessian_of density is only defined on the source's grid");
    out = ma_apply(*source_).value;
    break;
  }
  }

  double total = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    if (std::isnan(out[i]) || std::isinf(out[i])) {
      std::ostringstream msg;
      msg << "measure '" << label_ << "': non-finite density at node " << i << " ("
          << grid.node(i).x << ", " << grid.node(i).y << ")";
      throw InvalidInput(msg.str());
    }
    if (out[i] < 0.0) {
      std::ostringstream msg;
      msg << "measure '" << label_ << "': negative density at node " << i;
      throw NegativeDensity(msg.str());
    }
    total += out[i];
  }
  if (!(total * grid.cell_volume() > 0.0))
    throw InvalidInput("measure '" + label_ + "': total discretized mass is zero");
  return out;
}

} // namespace maeigen
