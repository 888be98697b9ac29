#include "kp/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "kp/errors.hpp"

namespace kp {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

// FFTW plan creation/destruction is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void require_pow2(int Nx, int Ny) {
  if (!is_power_of_two(Nx) || !is_power_of_two(Ny))
    throw std::invalid_argument("fft2: grid sizes must be powers of two");
}

// RAII pair of forward/backward plans on a caller-owned buffer.
class Fft2Plan {
 public:
  Fft2Plan(Complex* buffer, int Nx, int Ny) {
    require_pow2(Nx, Ny);
    auto* b = reinterpret_cast<fftw_complex*>(buffer);
    std::lock_guard<std::mutex> lock(planner_mutex());
    // n0 is the slow index; fields are stored [iy*Nx + ix].
    forward_ = fftw_plan_dft_2d(Ny, Nx, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_2d(Ny, Nx, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  Fft2Plan(const Fft2Plan&) = delete;
  Fft2Plan& operator=(const Fft2Plan&) = delete;

  void forward() const { fftw_execute(forward_); }
  void backward() const { fftw_execute(backward_); }

 private:
  fftw_plan forward_;
  fftw_plan backward_;
};

int signed_frequency(int j, int N) { return j < N / 2 ? j : j - N; }

// Signed frequency with the Nyquist index zeroed (odd-order derivative
// convention on an even grid).
int derivative_frequency(int j, int N) {
  if (j == N / 2) return 0;
  return signed_frequency(j, N);
}

}  // namespace

std::vector<Complex> fft2(const std::vector<Complex>& field, int Nx, int Ny) {
  if (field.size() != static_cast<std::size_t>(Nx) * Ny)
    throw std::invalid_argument("fft2: size mismatch");
  std::vector<Complex> out = field;
  Fft2Plan plan(out.data(), Nx, Ny);
  plan.forward();
  return out;
}

std::vector<Complex> fft2(const std::vector<double>& field, int Nx, int Ny) {
  std::vector<Complex> buf(field.begin(), field.end());
  return fft2(buf, Nx, Ny);
}

std::vector<Complex> ifft2(const std::vector<Complex>& coeffs, int Nx,
                           int Ny) {
  if (coeffs.size() != static_cast<std::size_t>(Nx) * Ny)
    throw std::invalid_argument("ifft2: size mismatch");
  std::vector<Complex> out = coeffs;
  Fft2Plan plan(out.data(), Nx, Ny);
  plan.backward();
  const double norm = 1.0 / (static_cast<double>(Nx) * Ny);
  for (auto& v : out) v *= norm;
  return out;
}

KPSymbol kp_symbol(const Grid2D& grid) {
  constexpr double kDelta = 0x1p-52;
  const double pi = std::acos(-1.0);
  KPSymbol sym;
  sym.grid = grid;
  sym.values.resize(grid.size());
  for (int jy = 0; jy < grid.Ny; ++jy) {
    const double ky = 2.0 * pi * derivative_frequency(jy, grid.Ny) / grid.Ly;
    for (int jx = 0; jx < grid.Nx; ++jx) {
      const double kx = 2.0 * pi * derivative_frequency(jx, grid.Nx) / grid.Lx;
      const Complex ikx(0.0, kx);
      const Complex dispersion = ikx * ikx * ikx;
      const Complex dyy(-ky * ky, 0.0);  // (i ky)^2
      const Complex inv_dx = Complex(1.0, 0.0) / (ikx + 2.0 * pi * kDelta);
      sym.values[static_cast<std::size_t>(jy) * grid.Nx + jx] =
          dispersion + 3.0 * dyy * inv_dx;
    }
  }
  return sym;
}

double window_default_coefficient() { return 36.0 * std::log(10.0); }

Window make_window(const Grid2D& grid, double exponent, double coefficient) {
  if (coefficient < 0.0) coefficient = window_default_coefficient();
  Window w;
  w.grid = grid;
  w.values.resize(grid.size());
  std::vector<double> wx(grid.Nx), wy(grid.Ny);
  for (int ix = 0; ix < grid.Nx; ++ix)
    wx[ix] = std::exp(-coefficient *
                      std::pow(std::abs(2.0 * grid.x(ix) / grid.Lx), exponent));
  for (int iy = 0; iy < grid.Ny; ++iy)
    wy[iy] = std::exp(-coefficient *
                      std::pow(std::abs(2.0 * grid.y(iy) / grid.Ly), exponent));
  for (int iy = 0; iy < grid.Ny; ++iy)
    for (int ix = 0; ix < grid.Nx; ++ix)
      w.values[static_cast<std::size_t>(iy) * grid.Nx + ix] = wx[ix] * wy[iy];
  return w;
}

struct SplitStepper::Impl {
  Grid2D grid;
  double dt = 0.0;
  StepOptions options;
  std::vector<Complex> exp_symbol;
  std::vector<Complex> deriv_x;  // 6 * (2 pi i kx / Lx), Nyquist zeroed
  std::vector<double> window;    // empty when no window is applied
  std::vector<Complex> work;
  std::unique_ptr<Fft2Plan> plan;

  Impl(const Grid2D& g, double dt_, const KPSymbol& symbol,
       const Window* win, const StepOptions& opts)
      : grid(g), dt(dt_), options(opts) {
    require_pow2(g.Nx, g.Ny);
    if (!(dt > 0.0))
      throw std::invalid_argument("SplitStepper: dt must be positive");
    if (symbol.values.size() != g.size())
      throw std::invalid_argument("SplitStepper: symbol size mismatch");
    if (win && win->values.size() != g.size())
      throw std::invalid_argument("SplitStepper: window size mismatch");
    exp_symbol.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      exp_symbol[i] = std::exp(dt * symbol.values[i]);
    const double pi = std::acos(-1.0);
    deriv_x.resize(g.size());
    for (int jy = 0; jy < g.Ny; ++jy)
      for (int jx = 0; jx < g.Nx; ++jx)
        deriv_x[static_cast<std::size_t>(jy) * g.Nx + jx] = Complex(
            0.0, 6.0 * 2.0 * pi * derivative_frequency(jx, g.Nx) / g.Lx);
    if (win) window = win->values;
    work.resize(g.size());
    plan = std::make_unique<Fft2Plan>(work.data(), g.Nx, g.Ny);
  }

  void step(SpectralState& state, long step_index) {
    auto& c = state.coefficients;
    auto& buf = work;
    const std::size_t n = grid.size();

    // Exact linear substep.
    for (std::size_t i = 0; i < n; ++i) c[i] *= exp_symbol[i];

    if (options.nonlinear) {
      // N(v) = 6 dx (F^-1 v)^2, subtracted with an explicit Euler weight.
      for (std::size_t i = 0; i < n; ++i) buf[i] = c[i];
      plan->backward();
      const double norm = 1.0 / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        buf[i] *= norm;
        buf[i] *= buf[i];
      }
      plan->forward();
      for (std::size_t i = 0; i < n; ++i) c[i] -= dt * deriv_x[i] * buf[i];
    }

    if (!window.empty()) {
      for (std::size_t i = 0; i < n; ++i) buf[i] = c[i];
      plan->backward();
      const double norm = 1.0 / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) buf[i] *= norm * window[i];
      plan->forward();
      for (std::size_t i = 0; i < n; ++i) c[i] = buf[i];
    }

    for (std::size_t i = 0; i < n; ++i)
      if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag()))
        throw StepError(step_index, "non-finite Fourier coefficient");
    state.t += dt;
  }
};

SplitStepper::SplitStepper(const Grid2D& grid, double dt,
                           const KPSymbol& symbol, const Window* window,
                           const StepOptions& options)
    : impl_(std::make_unique<Impl>(grid, dt, symbol, window, options)) {}

SplitStepper::~SplitStepper() = default;
SplitStepper::SplitStepper(SplitStepper&&) noexcept = default;
SplitStepper& SplitStepper::operator=(SplitStepper&&) noexcept = default;

void SplitStepper::step(SpectralState& state, long step_index) {
  if (!(state.grid == impl_->grid))
    throw std::invalid_argument("SplitStepper: state grid mismatch");
  impl_->step(state, step_index);
}

SpectralState split_step(const SpectralState& state, double dt,
                         const KPSymbol& symbol, const Window* window,
                         const StepOptions& options) {
  SplitStepper stepper(state.grid, dt, symbol, window, options);
  SpectralState out = state;
  stepper.step(out, 0);
  return out;
}

SpectralState to_spectral(const SolutionField& field) {
  if (field.grid.spacing != Grid2D::Spacing::Periodic)
    throw std::invalid_argument("to_spectral: grid must be periodic");
  SpectralState state;
  state.grid = field.grid;
  state.t = field.t;
  state.coefficients = fft2(field.values, field.grid.Nx, field.grid.Ny);
  return state;
}

std::vector<Complex> to_physical(const SpectralState& state) {
  return ifft2(state.coefficients, state.grid.Nx, state.grid.Ny);
}

SolutionField integrate(const SolutionField& u0, double T, long steps,
                        const IntegrateOptions& options) {
  if (u0.quantity != Quantity::u)
    throw std::invalid_argument("integrate: initial field must be u");
  if (steps < 0) throw std::invalid_argument("integrate: negative step count");
  if (steps == 0) {
    if (T != 0.0)
      throw std::invalid_argument("integrate: steps == 0 requires T == 0");
    return u0;
  }
  const Grid2D& grid = u0.grid;
  SpectralState state = to_spectral(u0);
  const KPSymbol symbol = kp_symbol(grid);
  Window window;
  if (options.use_window)
    window = make_window(grid, options.window_exponent,
                         options.window_coefficient);
  const double dt = T / static_cast<double>(steps);
  StepOptions step_opts;
  step_opts.nonlinear = options.nonlinear;
  const long every = options.window_every > 0 ? options.window_every : 1;

  std::optional<SplitStepper> windowed;
  std::optional<SplitStepper> plain;
  if (options.use_window)
    windowed.emplace(grid, dt, symbol, &window, step_opts);
  if (!options.use_window || every > 1)
    plain.emplace(grid, dt, symbol, nullptr, step_opts);
  for (long s = 0; s < steps; ++s) {
    const bool apply_window = options.use_window && ((s + 1) % every == 0);
    (apply_window ? *windowed : *plain).step(state, s);
  }

  SolutionField out(grid, Quantity::u, Method::FFT2_EXP, u0.t + T);
  const std::vector<Complex> phys = to_physical(state);
  for (std::size_t i = 0; i < phys.size(); ++i) out.values[i] = phys[i].real();
  return out;
}

}  // namespace kp
