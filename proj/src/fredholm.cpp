#include "kp/fredholm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kp/linalg.hpp"
#include "kp/parallel.hpp"

namespace kp {

namespace {

DenseMatrix symmetrized_system(const ScatteringData& data,
                               const QuadratureRule& rule, double x, double y,
                               double t, double* frobenius_q = nullptr) {
  const int n = rule.point_count();
  std::vector<double> sqw(n);
  for (int i = 0; i < n; ++i) sqw[i] = std::sqrt(rule.weights[i]);

  // Factored kernel sampling, as in assemble_glm: coherent rounding along
  // rows and columns keeps the sample matrix rank-k to rounding.
  DenseMatrix Q(n, n);
  std::vector<double> row_factor(n), col_factor(n);
  for (const auto& c : data.components()) {
    const double amp =
        -(c.a + c.b) *
        std::exp(c.a * x + c.b * x + c.lambda * y + c.omega * t);
    for (int i = 0; i < n; ++i) {
      row_factor[i] = std::exp(c.a * rule.nodes[i]);
      col_factor[i] = std::exp(c.b * rule.nodes[i]);
    }
    for (int i = 0; i < n; ++i) {
      const double row_amp = amp * row_factor[i];
      for (int j = 0; j < n; ++j) Q(i, j) += row_amp * col_factor[j];
    }
  }
  const double scale = data.amplitude_scale();
  if (scale != 1.0)
    for (auto& v : Q.entries()) v *= scale;

  DenseMatrix B(n, n);
  double qsq = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double q = Q(i, j);
      qsq += q * q;
      B(i, j) = -sqw[i] * q * sqw[j];
    }
    B(i, i) += 1.0;
  }
  if (frobenius_q) *frobenius_q = std::sqrt(qsq);
  B.validate_finite();
  return B;
}

}  // namespace

double tau_point(const ScatteringData& data, const QuadratureRule& rule,
                 double x, double y, double t) {
  if (rule.kind != QuadratureRule::Kind::ClenshawCurtis)
    throw std::invalid_argument(
        "tau_point: Nystrom determinant requires the Clenshaw-Curtis rule");
  return determinant(symmetrized_system(data, rule, x, y, t));
}

SolutionField tau_grid(const ScatteringData& data, int M, const Grid2D& grid,
                       double t, double xshift, double yshift) {
  const QuadratureRule rule = clenshaw_curtis_rule(grid.Lx, M);
  SolutionField field(grid, Quantity::tau, Method::DET_CC, t);
  std::vector<char> flagged(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t idx) {
    const int ix = static_cast<int>(idx) % grid.Nx;
    const int iy = static_cast<int>(idx) / grid.Nx;
    double tau;
    try {
      tau = tau_point(data, rule, grid.x(ix) + xshift, grid.y(iy) + yshift, t);
    } catch (const std::domain_error&) {
      tau = std::nan("");
    }
    if (!std::isfinite(tau)) {
      field.values[idx] = std::nan("");
      flagged[idx] = 1;
    } else {
      field.values[idx] = tau;
    }
  });
  for (char f : flagged) field.flagged_cells += f;
  return field;
}

namespace {

// log tau, via log1p near 1 to keep far-field digits; NaN for tau <= 0.
double log_tau(double tau) {
  if (!(tau > 0.0)) return std::nan("");
  const double d = tau - 1.0;
  return std::abs(d) < 0.5 ? std::log1p(d) : std::log(tau);
}

}  // namespace

SolutionField u_from_tau(const SolutionField& taufield) {
  if (taufield.quantity != Quantity::tau)
    throw std::invalid_argument("u_from_tau: input must be a tau field");
  const Grid2D& grid = taufield.grid;
  std::vector<double> lt(taufield.values.size());
  for (std::size_t i = 0; i < lt.size(); ++i)
    lt[i] = log_tau(taufield.values[i]);

  SolutionField u(grid, Quantity::u, taufield.method, taufield.t);
  const double invdx2 = 1.0 / (grid.dx() * grid.dx());
  auto L = [&](int ix, int iy) {
    return lt[static_cast<std::size_t>(iy) * grid.Nx + ix];
  };
  for (int iy = 0; iy < grid.Ny; ++iy) {
    for (int ix = 1; ix + 1 < grid.Nx; ++ix)
      u.at(ix, iy) =
          -(L(ix + 1, iy) - 2.0 * L(ix, iy) + L(ix - 1, iy)) * invdx2;
    const int n = grid.Nx - 1;
    u.at(0, iy) = -(2.0 * L(0, iy) - 5.0 * L(1, iy) + 4.0 * L(2, iy) -
                    L(3, iy)) *
                  invdx2;
    u.at(n, iy) = -(2.0 * L(n, iy) - 5.0 * L(n - 1, iy) + 4.0 * L(n - 2, iy) -
                    L(n - 3, iy)) *
                  invdx2;
  }
  long flagged = 0;
  for (double v : u.values)
    if (!std::isfinite(v)) ++flagged;
  u.flagged_cells = flagged;
  return u;
}

SolutionField g_from_tau(const SolutionField& taufield) {
  if (taufield.quantity != Quantity::tau)
    throw std::invalid_argument("g_from_tau: input must be a tau field");
  const Grid2D& grid = taufield.grid;
  std::vector<double> lt(taufield.values.size());
  for (std::size_t i = 0; i < lt.size(); ++i)
    lt[i] = log_tau(taufield.values[i]);

  SolutionField g(grid, Quantity::g, taufield.method, taufield.t);
  const double inv2dx = 1.0 / (2.0 * grid.dx());
  auto L = [&](int ix, int iy) {
    return lt[static_cast<std::size_t>(iy) * grid.Nx + ix];
  };
  for (int iy = 0; iy < grid.Ny; ++iy) {
    for (int ix = 1; ix + 1 < grid.Nx; ++ix)
      g.at(ix, iy) = -(L(ix + 1, iy) - L(ix - 1, iy)) * inv2dx;
    const int n = grid.Nx - 1;
    g.at(0, iy) =
        -(-3.0 * L(0, iy) + 4.0 * L(1, iy) - L(2, iy)) * inv2dx;
    g.at(n, iy) =
        -(3.0 * L(n, iy) - 4.0 * L(n - 1, iy) + L(n - 2, iy)) * inv2dx;
  }
  long flagged = 0;
  for (double v : g.values)
    if (!std::isfinite(v)) ++flagged;
  g.flagged_cells = flagged;
  return g;
}

double digit_loss_estimate(const ScatteringData& data,
                           const QuadratureRule& rule, const Grid2D& grid,
                           double x, double y, double t) {
  if (rule.kind != QuadratureRule::Kind::ClenshawCurtis)
    throw std::invalid_argument(
        "digit_loss_estimate: requires the Clenshaw-Curtis rule");
  double frob_q = 0.0;
  const DenseMatrix B = symmetrized_system(data, rule, x, y, t, &frob_q);
  const double tau = determinant(B);
  const double hs_norm =
      frob_q * std::sqrt(grid.Lx * grid.Ly /
                         (static_cast<double>(grid.Nx) * grid.Ny));
  // log10(0) = -inf is the documented "no loss" sentinel.
  return std::log10(std::sqrt(static_cast<double>(rule.m_parameter())) *
                    hs_norm / tau);
}

}  // namespace kp
