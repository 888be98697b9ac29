#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "kp/field.hpp"

namespace kp {

using Complex = std::complex<double>;

bool is_power_of_two(int n);

/// Unnormalized forward 2-D DFT of a row-major Nx x Ny array (y slow).
/// Sizes must be powers of two.
std::vector<Complex> fft2(const std::vector<Complex>& field, int Nx, int Ny);
std::vector<Complex> fft2(const std::vector<double>& field, int Nx, int Ny);

/// Inverse 2-D DFT, normalized by 1/(Nx*Ny); ifft2(fft2(f)) == f to rounding.
std::vector<Complex> ifft2(const std::vector<Complex>& coeffs, int Nx, int Ny);

/// Fourier coefficients of the KP field u on a periodic lattice.
struct SpectralState {
  Grid2D grid;
  double t = 0.0;
  std::vector<Complex> coefficients;  // [iy*Nx + ix], signed-frequency layout
};

/// Fourier symbol of the linear KP operator dx^3 + 3 dx^{-1} dy^2:
///   (2 pi i kx/Lx)^3 + 3 (2 pi i ky/Ly)^2 / ((2 pi i kx/Lx) + 2 pi delta)
/// with delta = 2^-52 regularizing dx^{-1}. kx at the Nyquist index is
/// zeroed (odd-order derivative on an even grid), which also routes the
/// Nyquist row through the regularized denominator.
struct KPSymbol {
  Grid2D grid;
  std::vector<Complex> values;
};

KPSymbol kp_symbol(const Grid2D& grid);

/// Super-Gaussian boundary taper exp(-c (|2x/Lx|^n + |2y/Ly|^n)), about
/// 10^-36 at the boundary and about 1 on the central half of the domain.
struct Window {
  Grid2D grid;
  std::vector<double> values;
};

inline constexpr double kWindowDefaultExponent = 27.0;
double window_default_coefficient();  // 36 ln 10

Window make_window(const Grid2D& grid,
                   double exponent = kWindowDefaultExponent,
                   double coefficient = -1.0 /* default 36 ln 10 */);

struct StepOptions {
  bool nonlinear = true;
};

/// One exponential split step:
///   v       = exp(dt A) .* u_hat          (exact linear substep)
///   u_hat'  = v - dt F(6 dx (F^-1 v)^2)   (explicit nonlinear correction)
/// followed by the window applied multiplicatively in physical space when
/// one is supplied. Advances t by dt. Throws StepError on overflow.
SpectralState split_step(const SpectralState& state, double dt,
                         const KPSymbol& symbol, const Window* window,
                         const StepOptions& options = {});

/// Reusable stepper: caches FFT plans, exp(dt A) and the derivative factors
/// for a fixed grid and dt.
class SplitStepper {
 public:
  SplitStepper(const Grid2D& grid, double dt, const KPSymbol& symbol,
               const Window* window, const StepOptions& options = {});
  ~SplitStepper();
  SplitStepper(SplitStepper&&) noexcept;
  SplitStepper& operator=(SplitStepper&&) noexcept;

  /// In-place step; step_index is only used to label StepError.
  void step(SpectralState& state, long step_index);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct IntegrateOptions {
  bool use_window = true;
  double window_exponent = kWindowDefaultExponent;
  double window_coefficient = -1.0;  // default 36 ln 10
  long window_every = 1;             // apply every k-th step
  bool nonlinear = true;
};

/// Transforms u0, runs `steps` split steps of dt = T/steps, and returns the
/// physical-space real field at time u0.t + T. The grid must be periodic
/// with power-of-two sizes. steps == 0 requires T == 0 and returns u0.
SolutionField integrate(const SolutionField& u0, double T, long steps,
                        const IntegrateOptions& options = {});

/// Physical-space complex field of a state (for reality diagnostics).
std::vector<Complex> to_physical(const SpectralState& state);

/// Builds a state from a real physical field on a periodic grid.
SpectralState to_spectral(const SolutionField& field);

}  // namespace kp
