#pragma once

#include <vector>

namespace kp {

/// Quadrature nodes and weights on [-L/2, 0]. Nodes are ascending with
/// nodes.front() == -L/2 and nodes.back() == 0 exactly, so the last entry of
/// a GLM solution vector always corresponds to zeta = 0. Rules use M/2 + 1
/// points for even M.
struct QuadratureRule {
  enum class Kind { Riemann, ClenshawCurtis };

  Kind kind = Kind::Riemann;
  std::vector<double> nodes;
  std::vector<double> weights;
  double interval_length = 0.0;  // L/2

  int point_count() const { return static_cast<int>(nodes.size()); }
  /// The M parameter the rule was built with (point_count == M/2 + 1).
  int m_parameter() const { return 2 * (point_count() - 1); }
};

/// Left-hand Riemann rule: uniform nodes -L/2 + m*h with h = L/M and weight h
/// at every node. Deliberately weights all M/2+1 nodes (one more than the
/// panel count), mirroring the uniform I - h*Q scaling of the matrix system;
/// the weights therefore sum to L/2 + h, not L/2.
QuadratureRule riemann_rule(double L, int M);

/// Clenshaw-Curtis rule: Chebyshev extreme points cos(j*pi/n), n = M/2,
/// mapped to [-L/2, 0], with the classical cosine-sum weights scaled by L/4.
/// Exact for polynomials of degree <= n; geometrically convergent for
/// analytic integrands. Weights are strictly positive and sum to L/2.
QuadratureRule clenshaw_curtis_rule(double L, int M);

}  // namespace kp
