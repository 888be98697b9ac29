#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace kp {

/// Uniform evaluation lattice on [-Lx/2, Lx/2] x [-Ly/2, Ly/2].
///
/// Two spacing conventions coexist: the quadrature-method grids include both
/// endpoints (dx = Lx/(Nx-1)), while the pseudo-spectral lattice is periodic
/// and drops the right endpoint (dx = Lx/Nx).
struct Grid2D {
  enum class Spacing { Inclusive, Periodic };

  double Lx = 0.0;
  double Ly = 0.0;
  int Nx = 0;
  int Ny = 0;
  Spacing spacing = Spacing::Inclusive;

  Grid2D() = default;
  Grid2D(double Lx_, double Ly_, int Nx_, int Ny_,
         Spacing spacing_ = Spacing::Inclusive);

  double dx() const {
    return spacing == Spacing::Inclusive ? Lx / (Nx - 1) : Lx / Nx;
  }
  double dy() const {
    return spacing == Spacing::Inclusive ? Ly / (Ny - 1) : Ly / Ny;
  }
  double x(int ix) const { return -0.5 * Lx + ix * dx(); }
  double y(int iy) const { return -0.5 * Ly + iy * dy(); }

  /// Index of the grid node nearest to the given x (clamped to range).
  int nearest_ix(double xq) const;
  int nearest_iy(double yq) const;

  std::size_t size() const {
    return static_cast<std::size_t>(Nx) * static_cast<std::size_t>(Ny);
  }

  bool operator==(const Grid2D& o) const {
    return Lx == o.Lx && Ly == o.Ly && Nx == o.Nx && Ny == o.Ny &&
           spacing == o.spacing;
  }
};

enum class Quantity { g, u, tau };
enum class Method { GLM_RR, GLM_CC, DET_CC, FFT2_EXP, ANALYTIC };

std::string to_string(Quantity q);
std::string to_string(Method m);

/// Real-valued samples of g, u or tau over a Grid2D at a fixed time.
/// Values are stored row-major with y as the slow index: values[iy*Nx + ix].
/// Cells where a per-point solve failed hold NaN and are counted in
/// flagged_cells; everything else is finite.
struct SolutionField {
  Grid2D grid;
  Quantity quantity = Quantity::g;
  Method method = Method::ANALYTIC;
  double t = 0.0;
  std::vector<double> values;
  long flagged_cells = 0;

  SolutionField() = default;
  SolutionField(const Grid2D& grid_, Quantity quantity_, Method method_,
                double t_)
      : grid(grid_), quantity(quantity_), method(method_), t(t_),
        values(grid_.size(), 0.0) {}

  double& at(int ix, int iy) {
    return values[static_cast<std::size_t>(iy) * grid.Nx + ix];
  }
  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * grid.Nx + ix];
  }
};

}  // namespace kp
