#pragma once

#include <vector>

#include "kp/field.hpp"
#include "kp/linalg.hpp"
#include "kp/quadrature.hpp"
#include "kp/scattering.hpp"

namespace kp {

/// Discretization of the truncated GLM equation at one (x, y, t):
///   phat[m]     = p(x, zeta_m + x; y, t)
///   qhat(mp, m) = p(xi_mp + x, zeta_m + x; y, t)
/// The row index mp of qhat is the integration index: the quadrature sum is
/// the row-vector product G * W * Q with W = diag(weights). The orientation
/// is fixed by the rank-one closed form (see the scattering oracles).
struct GlmSystem {
  std::vector<double> phat;
  DenseMatrix qhat;
};

GlmSystem assemble_glm(const ScatteringData& data, const QuadratureRule& rule,
                       double x, double y, double t);

/// Solves G (I - W Q) = P and returns the last component of G, the
/// approximation to g(0,0;x,y,t). For the Riemann rule W = h I, which is the
/// uniform I - hQ system. Throws SingularMatrixError (with point context)
/// when the truncated system is singular.
double solve_glm_point(const ScatteringData& data, const QuadratureRule& rule,
                       double x, double y, double t);

/// One independent GLM solve per grid node, evaluated at kernel arguments
/// (x + xshift, y + yshift). Per-point singular or overflowed systems become
/// NaN cells counted in flagged_cells. Points are processed in parallel;
/// results do not depend on scheduling.
SolutionField solve_glm_grid(const ScatteringData& data,
                             QuadratureRule::Kind rule_kind, int M,
                             const Grid2D& grid, double t,
                             double xshift = 0.0, double yshift = 0.0);

/// KP field u = dx g by central differences in x (second-order one-sided at
/// the two x-boundary columns). NaN cells propagate to their stencil.
SolutionField u_from_g(const SolutionField& gfield);

}  // namespace kp
