#include "kp/scattering.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kp {

SolitonComponent make_soliton(double a, double b) {
  if (!(a + b > 0.0))
    throw std::invalid_argument(
        "make_soliton: requires a + b > 0 (kernel must decay on the "
        "half-line)");
  SolitonComponent c;
  c.a = a;
  c.b = b;
  c.lambda = a * a - b * b;
  c.omega = 4.0 * (a * a * a + b * b * b);
  return c;
}

ScatteringData::ScatteringData(std::vector<SolitonComponent> components,
                               double amplitude_scale)
    : components_(std::move(components)), amplitude_scale_(amplitude_scale) {
  if (components_.empty())
    throw std::invalid_argument("ScatteringData: component list is empty");
}

double eval_kernel(const ScatteringData& data, double s, double sigma,
                   double y, double t) {
  if (data.amplitude_scale() == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& c : data.components()) {
    sum -= (c.a + c.b) *
           std::exp(c.a * s + c.b * sigma + c.lambda * y + c.omega * t);
  }
  return data.amplitude_scale() * sum;
}

namespace {

double theta(const SolitonComponent& c, double x, double y, double t) {
  return 0.5 * ((c.a + c.b) * x + c.lambda * y + c.omega * t);
}

}  // namespace

double analytic_soliton_g(const SolitonComponent& c, double x, double y,
                          double t) {
  // -(a+b) e^{2T}/(1+e^{2T}) written so large positive Theta cannot overflow.
  return -(c.a + c.b) / (1.0 + std::exp(-2.0 * theta(c, x, y, t)));
}

double analytic_soliton_u(const SolitonComponent& c, double x, double y,
                          double t) {
  const double sech = 1.0 / std::cosh(theta(c, x, y, t));
  return -0.25 * (c.a + c.b) * (c.a + c.b) * sech * sech;
}

double analytic_soliton_tau(const SolitonComponent& c, double x, double y,
                            double t) {
  return 1.0 + std::exp(2.0 * theta(c, x, y, t));
}

ConstraintResiduals constraint_residuals(const ScatteringData& data, double s,
                                         double sigma, double y, double t) {
  ConstraintResiduals r;
  const double scale = data.amplitude_scale();
  for (const auto& c : data.components()) {
    const double p =
        -scale * (c.a + c.b) *
        std::exp(c.a * s + c.b * sigma + c.lambda * y + c.omega * t);
    const double d2 = c.a * c.a - c.b * c.b;       // slot-derivative identity
    const double d3 = c.a * c.a * c.a + c.b * c.b * c.b;
    r.r_y += (c.lambda - d2) * p;
    r.r_t += (c.omega - 4.0 * d3) * p;
    r.y_scale += std::abs(c.lambda * p) + std::abs(d2 * p);
    r.t_scale += std::abs(c.omega * p) + std::abs(4.0 * d3 * p);
  }
  return r;
}

ScatteringData parse_solitons(const std::string& text) {
  std::vector<SolitonComponent> components;
  std::istringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("parse_solitons: expected \"a,b\" in '" +
                                  item + "'");
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    double a, b;
    try {
      a = std::stod(item.substr(0, comma), &used_a);
      b = std::stod(item.substr(comma + 1), &used_b);
    } catch (const std::exception&) {
      throw std::invalid_argument("parse_solitons: bad number in '" + item +
                                  "'");
    }
    if (used_a != comma || used_b != item.size() - comma - 1)
      throw std::invalid_argument("parse_solitons: trailing junk in '" + item +
                                  "'");
    components.push_back(make_soliton(a, b));
  }
  return ScatteringData(std::move(components));
}

}  // namespace kp
