#include "kp/field.hpp"

#include <cmath>
#include <stdexcept>

namespace kp {

Grid2D::Grid2D(double Lx_, double Ly_, int Nx_, int Ny_, Spacing spacing_)
    : Lx(Lx_), Ly(Ly_), Nx(Nx_), Ny(Ny_), spacing(spacing_) {
  if (!(Lx > 0.0) || !(Ly > 0.0))
    throw std::invalid_argument("Grid2D: domain lengths must be positive");
  if (Nx < 3 || Ny < 3)
    throw std::invalid_argument("Grid2D: need at least 3 points per axis");
}

int Grid2D::nearest_ix(double xq) const {
  long i = std::lround((xq + 0.5 * Lx) / dx());
  if (i < 0) i = 0;
  if (i > Nx - 1) i = Nx - 1;
  return static_cast<int>(i);
}

int Grid2D::nearest_iy(double yq) const {
  long i = std::lround((yq + 0.5 * Ly) / dy());
  if (i < 0) i = 0;
  if (i > Ny - 1) i = Ny - 1;
  return static_cast<int>(i);
}

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::g: return "g";
    case Quantity::u: return "u";
    case Quantity::tau: return "tau";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::GLM_RR: return "glm-rr";
    case Method::GLM_CC: return "glm-cc";
    case Method::DET_CC: return "det-cc";
    case Method::FFT2_EXP: return "fft2-exp";
    case Method::ANALYTIC: return "analytic";
  }
  return "?";
}

}  // namespace kp
