#include "kp/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kp {

namespace {

void validate(double L, int M) {
  if (!(L > 0.0))
    throw std::invalid_argument("quadrature: L must be positive");
  if (M < 2 || M % 2 != 0)
    throw std::invalid_argument("quadrature: M must be even and >= 2");
}

}  // namespace

QuadratureRule riemann_rule(double L, int M) {
  validate(L, M);
  const int n = M / 2;
  const double h = L / M;
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::Riemann;
  rule.interval_length = 0.5 * L;
  rule.nodes.resize(n + 1);
  rule.weights.assign(n + 1, h);
  for (int m = 0; m < n; ++m) rule.nodes[m] = -0.5 * L + m * h;
  rule.nodes[n] = 0.0;  // forced exact; -L/2 + n*h need not round to 0
  return rule;
}

QuadratureRule clenshaw_curtis_rule(double L, int M) {
  validate(L, M);
  const int n = M / 2;
  QuadratureRule rule;
  rule.kind = QuadratureRule::Kind::ClenshawCurtis;
  rule.interval_length = 0.5 * L;
  rule.nodes.resize(n + 1);
  rule.weights.resize(n + 1);

  // Reference nodes cos(j pi / n) on [-1, 1], mapped so j = 0 -> -L/2 and
  // j = n -> 0; the array is ascending with exact endpoints.
  const double pi = std::numbers::pi;
  for (int j = 0; j <= n; ++j)
    rule.nodes[j] = -0.25 * L * (1.0 + std::cos(j * pi / n));
  rule.nodes[0] = -0.5 * L;
  rule.nodes[n] = 0.0;
  if (n % 2 == 0) rule.nodes[n / 2] = -0.25 * L;

  // Classical cosine-sum weights on [-1, 1], scaled by L/4. The half-weight
  // coefficient b_k applies at k = n/2 for even n.
  for (int j = 0; j <= n; ++j) {
    double sum = 1.0;
    for (int k = 1; k <= n / 2; ++k) {
      const double bk = (2 * k == n) ? 1.0 : 2.0;
      sum -= bk * std::cos(2.0 * k * j * pi / n) / (4.0 * k * k - 1.0);
    }
    const double cj = (j == 0 || j == n) ? 1.0 : 2.0;
    rule.weights[j] = 0.25 * L * cj * sum / n;
  }
  return rule;
}

}  // namespace kp
