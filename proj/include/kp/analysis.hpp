#pragma once

#include <vector>

#include "kp/field.hpp"
#include "kp/scattering.hpp"

namespace kp {

/// Domain-scaled RMS difference: Frobenius norm of A - B scaled by
/// sqrt(Lx*Ly/(Nx*Ny)). Grids and quantities must match.
double rms_error(const SolutionField& a, const SolutionField& b);

/// Max-abs difference over cells with x <= x_max (pass +inf for the full
/// domain; 10.8 and 0 are the restricted "mod" and "mod2" domains of the
/// error studies).
double max_error(const SolutionField& a, const SolutionField& b, double x_max);

inline constexpr double kModXMax = 10.8;
inline constexpr double kMod2XMax = 0.0;

struct ConvergenceRecord {
  int M = 0;
  double rms = 0.0;
  double max_full = 0.0;
  double max_mod = 0.0;
  double max_mod2 = 0.0;
  double pointwise = 0.0;
  double cpu_seconds = 0.0;
};

struct ConvergenceReport {
  Method method = Method::GLM_CC;
  Quantity quantity = Quantity::g;  // quantity the differences are taken in
  int reference_M = 0;
  double probe_x = 0.0;  // probe point after snapping to the grid
  double probe_y = 0.0;
  std::vector<ConvergenceRecord> records;  // ascending M
};

struct StudyOptions {
  /// Compare u-fields (derived per method) instead of the per-method native
  /// quantity (g for the GLM routes, tau for Det-CC).
  bool compare_u = false;
  double xshift = 0.0;
  double yshift = 0.0;
};

/// Quadrature-refinement study: for each M = 2^m computes the method's field
/// at time t, the error against the 2^reference_exponent field of the same
/// method, restricted max errors, the pointwise error at the probe (6.4, 6.4)
/// snapped to the grid, and the wall-clock seconds of the grid sweep.
///
/// Error quantities: g-differences for the GLM methods; relative
/// tau-differences (tau_M/tau_ref - 1) for Det-CC, whose tau spans many
/// orders of magnitude across the domain.
ConvergenceReport convergence_study(const ScatteringData& data, Method method,
                                    const Grid2D& grid, double t,
                                    const std::vector<int>& m_exponents,
                                    int reference_exponent,
                                    const StudyOptions& options = {});

}  // namespace kp
