#include "kp/glm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kp/errors.hpp"
#include "kp/parallel.hpp"

namespace kp {

GlmSystem assemble_glm(const ScatteringData& data, const QuadratureRule& rule,
                       double x, double y, double t) {
  const int n = rule.point_count();
  GlmSystem sys;
  sys.phat.assign(n, 0.0);
  sys.qhat = DenseMatrix(n, n);

  // Factored evaluation of the separable kernel: one amplitude and two node
  // factor vectors per component. Mathematically the same sum of
  // exponentials, but the shared factors keep entry rounding coherent along
  // rows and columns (the sampled matrix stays rank-k to rounding), which
  // the solve accuracy at large kernel values depends on. Also O(n), not
  // O(n^2), exponentials.
  std::vector<double> row_factor(n), col_factor(n);
  for (const auto& c : data.components()) {
    const double amp =
        -(c.a + c.b) *
        std::exp(c.a * x + c.b * x + c.lambda * y + c.omega * t);
    for (int i = 0; i < n; ++i) {
      row_factor[i] = std::exp(c.a * rule.nodes[i]);
      col_factor[i] = std::exp(c.b * rule.nodes[i]);
    }
    for (int m = 0; m < n; ++m) sys.phat[m] += amp * col_factor[m];
    for (int mp = 0; mp < n; ++mp) {
      const double row_amp = amp * row_factor[mp];
      for (int m = 0; m < n; ++m) sys.qhat(mp, m) += row_amp * col_factor[m];
    }
  }
  const double scale = data.amplitude_scale();
  if (scale != 1.0) {
    for (auto& v : sys.phat) v *= scale;
    for (auto& v : sys.qhat.entries()) v *= scale;
  }
  return sys;
}

namespace {

// A = I - W Q with W = diag(weights) scaling the integration (row) index.
DenseMatrix glm_matrix(const GlmSystem& sys, const QuadratureRule& rule) {
  const int n = rule.point_count();
  DenseMatrix A(n, n);
  for (int i = 0; i < n; ++i) {
    const double w = rule.weights[i];
    for (int j = 0; j < n; ++j) A(i, j) = -w * sys.qhat(i, j);
    A(i, i) += 1.0;
  }
  A.validate_finite();
  return A;
}

std::string point_context(double x, double y, double t) {
  return "at (x=" + std::to_string(x) + ", y=" + std::to_string(y) +
         ", t=" + std::to_string(t) + ")";
}

}  // namespace

double solve_glm_point(const ScatteringData& data, const QuadratureRule& rule,
                       double x, double y, double t) {
  const GlmSystem sys = assemble_glm(data, rule, x, y, t);
  const DenseMatrix A = glm_matrix(sys, rule);
  try {
    return solve_row_system(sys.phat, A).back();
  } catch (const SingularMatrixError& e) {
    throw SingularMatrixError(e.pivot_index(), point_context(x, y, t));
  }
}

SolutionField solve_glm_grid(const ScatteringData& data,
                             QuadratureRule::Kind rule_kind, int M,
                             const Grid2D& grid, double t, double xshift,
                             double yshift) {
  const QuadratureRule rule = rule_kind == QuadratureRule::Kind::Riemann
                                  ? riemann_rule(grid.Lx, M)
                                  : clenshaw_curtis_rule(grid.Lx, M);
  const Method method = rule_kind == QuadratureRule::Kind::Riemann
                            ? Method::GLM_RR
                            : Method::GLM_CC;
  SolutionField field(grid, Quantity::g, method, t);
  std::vector<char> flagged(grid.size(), 0);
  parallel_for(grid.size(), [&](std::size_t idx) {
    const int ix = static_cast<int>(idx) % grid.Nx;
    const int iy = static_cast<int>(idx) / grid.Nx;
    try {
      field.values[idx] = solve_glm_point(data, rule, grid.x(ix) + xshift,
                                          grid.y(iy) + yshift, t);
    } catch (const SingularMatrixError&) {
      field.values[idx] = std::nan("");
      flagged[idx] = 1;
    } catch (const std::domain_error&) {  // non-finite kernel samples
      field.values[idx] = std::nan("");
      flagged[idx] = 1;
    }
  });
  for (char f : flagged) field.flagged_cells += f;
  return field;
}

SolutionField u_from_g(const SolutionField& gfield) {
  if (gfield.quantity != Quantity::g)
    throw std::invalid_argument("u_from_g: input must be a g field");
  const Grid2D& grid = gfield.grid;
  SolutionField u(grid, Quantity::u, gfield.method, gfield.t);
  u.flagged_cells = gfield.flagged_cells;
  const double inv2dx = 1.0 / (2.0 * grid.dx());
  for (int iy = 0; iy < grid.Ny; ++iy) {
    for (int ix = 1; ix + 1 < grid.Nx; ++ix)
      u.at(ix, iy) = (gfield.at(ix + 1, iy) - gfield.at(ix - 1, iy)) * inv2dx;
    const int n = grid.Nx - 1;
    u.at(0, iy) = (-3.0 * gfield.at(0, iy) + 4.0 * gfield.at(1, iy) -
                   gfield.at(2, iy)) *
                  inv2dx;
    u.at(n, iy) = (3.0 * gfield.at(n, iy) - 4.0 * gfield.at(n - 1, iy) +
                   gfield.at(n - 2, iy)) *
                  inv2dx;
  }
  return u;
}

}  // namespace kp
