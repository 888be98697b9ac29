#include "kp/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kp/fredholm.hpp"
#include "kp/glm.hpp"
#include "kp/linalg.hpp"

namespace kp {

namespace {

void require_comparable(const SolutionField& a, const SolutionField& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("error metric: grid mismatch");
  if (a.quantity != b.quantity)
    throw std::invalid_argument("error metric: quantity mismatch");
}

double grid_scale(const Grid2D& g) {
  return std::sqrt(g.Lx * g.Ly / (static_cast<double>(g.Nx) * g.Ny));
}

}  // namespace

double rms_error(const SolutionField& a, const SolutionField& b) {
  require_comparable(a, b);
  std::vector<double> diff(a.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i)
    diff[i] = a.values[i] - b.values[i];
  return scaled_frobenius(diff, grid_scale(a.grid));
}

double max_error(const SolutionField& a, const SolutionField& b,
                 double x_max) {
  require_comparable(a, b);
  const Grid2D& g = a.grid;
  double best = 0.0;
  for (int iy = 0; iy < g.Ny; ++iy)
    for (int ix = 0; ix < g.Nx; ++ix) {
      if (g.x(ix) > x_max) continue;
      best = std::max(best, std::abs(a.at(ix, iy) - b.at(ix, iy)));
    }
  return best;
}

namespace {

SolutionField compute_field(const ScatteringData& data, Method method, int M,
                            const Grid2D& grid, double t,
                            const StudyOptions& opts) {
  switch (method) {
    case Method::GLM_RR:
      return solve_glm_grid(data, QuadratureRule::Kind::Riemann, M, grid, t,
                            opts.xshift, opts.yshift);
    case Method::GLM_CC:
      return solve_glm_grid(data, QuadratureRule::Kind::ClenshawCurtis, M,
                            grid, t, opts.xshift, opts.yshift);
    case Method::DET_CC:
      return tau_grid(data, M, grid, t, opts.xshift, opts.yshift);
    default:
      throw std::invalid_argument(
          "convergence_study: method must be glm-rr, glm-cc or det-cc");
  }
}

// Error samples: plain differences for O(1) quantities, relative differences
// for tau, which spans many orders of magnitude over the domain.
std::vector<double> difference_field(const SolutionField& approx,
                                     const SolutionField& ref, bool relative) {
  std::vector<double> d(approx.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = approx.values[i] - ref.values[i];
    if (relative) d[i] /= ref.values[i];
  }
  return d;
}

}  // namespace

ConvergenceReport convergence_study(const ScatteringData& data, Method method,
                                    const Grid2D& grid, double t,
                                    const std::vector<int>& m_exponents,
                                    int reference_exponent,
                                    const StudyOptions& options) {
  if (m_exponents.empty())
    throw std::invalid_argument("convergence_study: no M exponents given");
  std::vector<int> exps = m_exponents;
  std::sort(exps.begin(), exps.end());
  if (exps.front() < 1)
    throw std::invalid_argument("convergence_study: exponents must be >= 1");
  if (reference_exponent <= exps.back())
    throw std::invalid_argument(
        "convergence_study: reference exponent must exceed studied ones");

  ConvergenceReport report;
  report.method = method;
  const bool tau_based = method == Method::DET_CC && !options.compare_u;
  report.quantity = options.compare_u
                        ? Quantity::u
                        : (tau_based ? Quantity::tau : Quantity::g);
  report.reference_M = 1 << reference_exponent;

  const int probe_ix = grid.nearest_ix(6.4);
  const int probe_iy = grid.nearest_iy(6.4);
  report.probe_x = grid.x(probe_ix);
  report.probe_y = grid.y(probe_iy);
  const std::size_t probe_idx =
      static_cast<std::size_t>(probe_iy) * grid.Nx + probe_ix;

  SolutionField reference =
      compute_field(data, method, report.reference_M, grid, t, options);
  if (options.compare_u)
    reference = method == Method::DET_CC ? u_from_tau(reference)
                                         : u_from_g(reference);

  const double scale = std::sqrt(
      grid.Lx * grid.Ly / (static_cast<double>(grid.Nx) * grid.Ny));

  for (int m : exps) {
    ConvergenceRecord rec;
    rec.M = 1 << m;
    const auto start = std::chrono::steady_clock::now();
    SolutionField field = compute_field(data, method, rec.M, grid, t, options);
    rec.cpu_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (options.compare_u)
      field = method == Method::DET_CC ? u_from_tau(field) : u_from_g(field);

    const std::vector<double> diff =
        difference_field(field, reference, tau_based);
    rec.rms = scaled_frobenius(diff, scale);
    double max_full = 0.0, max_mod = 0.0, max_mod2 = 0.0;
    for (int iy = 0; iy < grid.Ny; ++iy)
      for (int ix = 0; ix < grid.Nx; ++ix) {
        const double d =
            std::abs(diff[static_cast<std::size_t>(iy) * grid.Nx + ix]);
        max_full = std::max(max_full, d);
        if (grid.x(ix) <= kModXMax) max_mod = std::max(max_mod, d);
        if (grid.x(ix) <= kMod2XMax) max_mod2 = std::max(max_mod2, d);
      }
    rec.max_full = max_full;
    rec.max_mod = max_mod;
    rec.max_mod2 = max_mod2;
    rec.pointwise = std::abs(diff[probe_idx]);
    report.records.push_back(rec);
  }
  return report;
}

}  // namespace kp
