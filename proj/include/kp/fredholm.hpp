#pragma once

#include "kp/field.hpp"
#include "kp/quadrature.hpp"
#include "kp/scattering.hpp"

namespace kp {

/// Nystrom approximation of the Fredholm determinant,
///   tau(x,y,t) = det(I - W^{1/2} Q W^{1/2}),
/// with Clenshaw-Curtis nodes and weights (the rule kind is enforced).
double tau_point(const ScatteringData& data, const QuadratureRule& rule,
                 double x, double y, double t);

/// tau_point mapped over a grid; deterministic and parallel-safe. Non-finite
/// determinants become NaN cells counted in flagged_cells.
SolutionField tau_grid(const ScatteringData& data, int M, const Grid2D& grid,
                       double t, double xshift = 0.0, double yshift = 0.0);

/// KP field u = -dxx log tau by central second differences (second-order
/// one-sided at the x-boundary columns). log tau uses log1p on tau-1 near 1
/// to keep far-field digits. Non-positive or NaN tau cells are flagged, not
/// fatal.
SolutionField u_from_tau(const SolutionField& taufield);

/// Potential g = -dx log tau by the same difference scheme (first
/// derivative); links the determinant route to the GLM route.
SolutionField g_from_tau(const SolutionField& taufield);

/// Conservative digit-loss estimate for the Nystrom determinant,
///   log10( sqrt(M) * ||P|| / tau ),
/// where ||P|| is the Frobenius norm of the kernel sample matrix Q scaled by
/// sqrt(Lx*Ly / (Nx*Ny)) of the evaluation grid. Returns -inf for
/// zero-amplitude data (no loss).
double digit_loss_estimate(const ScatteringData& data,
                           const QuadratureRule& rule, const Grid2D& grid,
                           double x, double y, double t);

}  // namespace kp
