// Command-line front end: computes KP fields from exponential scattering
// data (GLM quadrature methods, Fredholm determinants, split-step
// pseudo-spectral time stepping) and writes CSV fields plus JSON metadata.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kp/analysis.hpp"
#include "kp/errors.hpp"
#include "kp/fredholm.hpp"
#include "kp/glm.hpp"
#include "kp/io.hpp"
#include "kp/parallel.hpp"
#include "kp/quadrature.hpp"
#include "kp/scattering.hpp"
#include "kp/spectral.hpp"

namespace {

using json = nlohmann::json;

const double kPi = std::acos(-1.0);

struct CommonOptions {
  std::string solitons = "1.55,1.45;1.3,0";
  double Lx = 10 * kPi;
  double Ly = 10 * kPi;
  int Nx = 128;
  int Ny = 128;
  int M = 128;
  double t = 0.0;
  double xshift = 0.0;
  double yshift = 0.0;
  std::string out;
  std::string config;  // recognized and expanded before parsing
};

// Explicit command-line flags override config-file values: config-derived
// arguments are injected before the user's flags and every option keeps the
// last value it sees.
template <typename T>
CLI::Option* opt(CLI::App* cmd, const std::string& name, T& var,
                 const std::string& desc) {
  return cmd->add_option(name, var, desc)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

void add_common(CLI::App* cmd, CommonOptions& o, const std::string& out_def) {
  o.out = out_def;
  opt(cmd, "--solitons", o.solitons, "components as \"a1,b1;a2,b2;...\"");
  opt(cmd, "--Lx", o.Lx, "x domain length");
  opt(cmd, "--Ly", o.Ly, "y domain length");
  opt(cmd, "--Nx", o.Nx, "x evaluation points");
  opt(cmd, "--Ny", o.Ny, "y evaluation points");
  opt(cmd, "--M", o.M, "quadrature parameter (M/2+1 nodes)");
  opt(cmd, "--t", o.t, "evaluation time");
  opt(cmd, "--xshift", o.xshift, "shift of the kernel x argument");
  opt(cmd, "--yshift", o.yshift, "shift of the kernel y argument");
  opt(cmd, "--out", o.out, "output path");
  opt(cmd, "--config", o.config, "flat key=value config file");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Turns a flat key=value file into command-line arguments. '#' starts a
// comment; values may be double-quoted; bare-flag keys take true/false.
std::vector<std::string> config_file_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    if (key.empty())
      throw std::invalid_argument("config line has empty key: " + line);
    if (value == "true" || value == "yes")
      args.push_back("--" + key);
    else if (value == "false" || value == "no")
      continue;
    else
      args.push_back("--" + key + "=" + value);
  }
  return args;
}

// Rewrites argv so config-file arguments come right after the subcommand
// name, ahead of the explicit flags that must override them.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      config_path = args[i].substr(9);
  }
  if (config_path.empty() || args.empty()) return args;
  const std::vector<std::string> extra = config_file_args(config_path);
  std::vector<std::string> out;
  out.push_back(args[0]);  // subcommand
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

json solitons_json(const kp::ScatteringData& data) {
  json list = json::array();
  for (const auto& c : data.components()) list.push_back({c.a, c.b});
  return list;
}

json loss_json(double loss) {
  if (!std::isfinite(loss)) return nullptr;  // -inf: no loss anywhere
  return loss;
}

std::vector<std::string> echo_lines(const std::string& command,
                                    const CommonOptions& o,
                                    const std::vector<std::string>& extra) {
  std::vector<std::string> lines;
  lines.push_back("command=" + command);
  lines.push_back("solitons=" + o.solitons);
  lines.push_back("Lx=" + kp::format_double(o.Lx) +
                  " Ly=" + kp::format_double(o.Ly) +
                  " Nx=" + std::to_string(o.Nx) +
                  " Ny=" + std::to_string(o.Ny) +
                  " M=" + std::to_string(o.M));
  lines.push_back("t=" + kp::format_double(o.t) +
                  " xshift=" + kp::format_double(o.xshift) +
                  " yshift=" + kp::format_double(o.yshift));
  for (const auto& e : extra) lines.push_back(e);
  return lines;
}

void write_meta(const std::string& csv_path, const json& meta) {
  std::ofstream out(csv_path + ".meta.json");
  if (!out) throw std::runtime_error("cannot write metadata for " + csv_path);
  out << meta.dump(2) << "\n";
}

// Max of the digit-loss estimate over the grid (CC-rule methods only).
double digit_loss_max(const kp::ScatteringData& data, int M,
                      const kp::Grid2D& grid, double t, double xshift,
                      double yshift) {
  const kp::QuadratureRule rule = kp::clenshaw_curtis_rule(grid.Lx, M);
  std::vector<double> loss(grid.size());
  kp::parallel_for(grid.size(), [&](std::size_t idx) {
    const int ix = static_cast<int>(idx) % grid.Nx;
    const int iy = static_cast<int>(idx) / grid.Nx;
    loss[idx] = kp::digit_loss_estimate(data, rule, grid,
                                        grid.x(ix) + xshift,
                                        grid.y(iy) + yshift, t);
  });
  double best = -std::numeric_limits<double>::infinity();
  for (double v : loss)
    if (v > best) best = v;
  return best;
}

struct SolveOptions {
  CommonOptions common;
  std::string method = "glm-cc";
  std::string quantity;  // empty: native quantity of the method
};

int run_solve(const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const CommonOptions& c = opt.common;
  const kp::ScatteringData data = kp::parse_solitons(c.solitons);
  const kp::Grid2D grid(c.Lx, c.Ly, c.Nx, c.Ny);

  std::string quantity = opt.quantity;
  if (quantity.empty()) quantity = opt.method == "det-cc" ? "tau" : "g";

  kp::SolutionField field;
  if (opt.method == "det-cc") {
    const kp::SolutionField tau =
        kp::tau_grid(data, c.M, grid, c.t, c.xshift, c.yshift);
    if (quantity == "tau")
      field = tau;
    else if (quantity == "u")
      field = kp::u_from_tau(tau);
    else
      field = kp::g_from_tau(tau);
  } else {
    const auto kind = opt.method == "glm-rr"
                          ? kp::QuadratureRule::Kind::Riemann
                          : kp::QuadratureRule::Kind::ClenshawCurtis;
    if (quantity == "tau")
      throw std::invalid_argument(
          "quantity tau requires --method det-cc");
    const kp::SolutionField g =
        kp::solve_glm_grid(data, kind, c.M, grid, c.t, c.xshift, c.yshift);
    field = quantity == "u" ? kp::u_from_g(g) : g;
  }

  double loss = -std::numeric_limits<double>::infinity();
  const bool cc_rule = opt.method != "glm-rr";
  if (cc_rule)
    loss = digit_loss_max(data, c.M, grid, c.t, c.xshift, c.yshift);

  // With one component the closed forms provide an oracle; record the
  // comparison so every solve documents its own accuracy.
  json oracle = nullptr;
  if (data.components().size() == 1 && data.amplitude_scale() == 1.0) {
    const auto& comp = data.components()[0];
    if (quantity == "g" && opt.method != "glm-rr") {
      double worst = 0.0;
      for (int iy = 0; iy < grid.Ny; ++iy)
        for (int ix = 0; ix < grid.Nx; ++ix)
          worst = std::max(
              worst, std::abs(field.at(ix, iy) -
                              kp::analytic_soliton_g(comp,
                                                     grid.x(ix) + c.xshift,
                                                     grid.y(iy) + c.yshift,
                                                     c.t)));
      oracle = {{"quantity", "g"}, {"max_abs_err", worst}};
    } else if (quantity == "tau") {
      double worst = 0.0;
      for (int iy = 0; iy < grid.Ny; ++iy)
        for (int ix = 0; ix < grid.Nx; ++ix) {
          const double expected = kp::analytic_soliton_tau(
              comp, grid.x(ix) + c.xshift, grid.y(iy) + c.yshift, c.t);
          worst = std::max(
              worst, std::abs(field.at(ix, iy) / expected - 1.0));
        }
      oracle = {{"quantity", "tau"}, {"max_rel_err", worst}};
    }
  }

  kp::write_field_csv(
      c.out, field,
      echo_lines("solve", c,
                 {"method=" + opt.method + " quantity=" + quantity}));

  json meta;
  meta["command"] = "solve";
  meta["method"] = opt.method;
  meta["quantity"] = quantity;
  meta["solitons"] = solitons_json(data);
  meta["Lx"] = c.Lx;
  meta["Ly"] = c.Ly;
  meta["Nx"] = c.Nx;
  meta["Ny"] = c.Ny;
  meta["M"] = c.M;
  meta["t"] = c.t;
  meta["xshift"] = c.xshift;
  meta["yshift"] = c.yshift;
  meta["flagged_cells"] = field.flagged_cells;
  meta["digit_loss_max"] = cc_rule ? loss_json(loss) : json(nullptr);
  if (!oracle.is_null()) meta["analytic_oracle"] = oracle;
  meta["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_meta(c.out, meta);
  std::cout << "wrote " << c.out << " (" << to_string(field.quantity)
            << " field, " << field.flagged_cells << " flagged cells)\n";
  return 0;
}

struct ConvergeOptions {
  CommonOptions common;
  std::string methods = "glm-rr,glm-cc,det-cc";
  int m_min = 2;
  int m_max = 9;
  int m_ref = 10;
  bool compare_u = false;
};

int run_converge(const ConvergeOptions& opt) {
  const CommonOptions& c = opt.common;
  if (opt.m_min < 1 || opt.m_max < opt.m_min)
    throw std::invalid_argument("converge: need 1 <= m-min <= m-max");
  if (opt.m_ref <= opt.m_max)
    throw std::invalid_argument("converge: m-ref must exceed m-max");
  const kp::ScatteringData data = kp::parse_solitons(c.solitons);
  const kp::Grid2D grid(c.Lx, c.Ly, c.Nx, c.Ny);

  std::vector<int> exponents;
  for (int m = opt.m_min; m <= opt.m_max; ++m) exponents.push_back(m);

  std::vector<kp::Method> methods;
  std::istringstream stream(opt.methods);
  std::string name;
  while (std::getline(stream, name, ',')) {
    if (name == "glm-rr")
      methods.push_back(kp::Method::GLM_RR);
    else if (name == "glm-cc")
      methods.push_back(kp::Method::GLM_CC);
    else if (name == "det-cc")
      methods.push_back(kp::Method::DET_CC);
    else
      throw std::invalid_argument("converge: unknown method '" + name + "'");
  }
  if (methods.empty())
    throw std::invalid_argument("converge: no methods selected");

  kp::StudyOptions study;
  study.compare_u = opt.compare_u;
  study.xshift = c.xshift;
  study.yshift = c.yshift;

  json summary;
  summary["command"] = "converge";
  summary["solitons"] = solitons_json(data);
  summary["t"] = c.t;
  summary["reference_M"] = 1 << opt.m_ref;
  summary["reports"] = json::array();

  for (kp::Method method : methods) {
    const kp::ConvergenceReport report = kp::convergence_study(
        data, method, grid, c.t, exponents, opt.m_ref, study);
    const std::string path = c.out + "_" + to_string(method) + ".csv";
    kp::write_report_csv(
        path, report,
        echo_lines("converge", c, {"method=" + to_string(method)}));
    json jr;
    jr["method"] = to_string(method);
    jr["quantity"] = to_string(report.quantity);
    jr["csv"] = path;
    jr["probe"] = {report.probe_x, report.probe_y};
    json recs = json::array();
    for (const auto& r : report.records)
      recs.push_back({{"M", r.M},
                      {"rms", r.rms},
                      {"max_full", r.max_full},
                      {"max_mod", r.max_mod},
                      {"max_mod2", r.max_mod2},
                      {"pointwise", r.pointwise},
                      {"cpu_seconds", r.cpu_seconds}});
    jr["records"] = recs;
    summary["reports"].push_back(jr);
    std::cout << "wrote " << path << "\n";
  }
  std::ofstream sum(c.out + "_summary.json");
  if (!sum) throw std::runtime_error("cannot write summary JSON");
  sum << summary.dump(2) << "\n";
  std::cout << "wrote " << c.out << "_summary.json\n";
  return 0;
}

struct EvolveOptions {
  CommonOptions common;
  double T = 0.25;
  long steps = 10000;
  double window_n = kp::kWindowDefaultExponent;
  double window_c = -1.0;
  long window_every = 1;
  bool no_window = false;
};

int run_evolve(const EvolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  const CommonOptions& c = opt.common;
  const kp::ScatteringData data = kp::parse_solitons(c.solitons);
  if (!kp::is_power_of_two(c.Nx) || !kp::is_power_of_two(c.Ny))
    throw std::invalid_argument("evolve: Nx and Ny must be powers of two");
  const kp::Grid2D grid(c.Lx, c.Ly, c.Nx, c.Ny,
                        kp::Grid2D::Spacing::Periodic);

  const kp::SolutionField g0 =
      kp::solve_glm_grid(data, kp::QuadratureRule::Kind::ClenshawCurtis, c.M,
                         grid, c.t, c.xshift, c.yshift);
  const kp::SolutionField u0 = kp::u_from_g(g0);
  const std::string initial_path = c.out + "_initial.csv";
  kp::write_field_csv(initial_path, u0,
                      echo_lines("evolve", c, {"stage=initial quantity=u"}));

  kp::IntegrateOptions integ;
  integ.use_window = !opt.no_window;
  integ.window_exponent = opt.window_n;
  integ.window_coefficient = opt.window_c;
  integ.window_every = opt.window_every;
  const kp::SolutionField uT = kp::integrate(u0, opt.T, opt.steps, integ);

  const std::string final_path = c.out + "_final.csv";
  kp::write_field_csv(
      final_path, uT,
      echo_lines("evolve", c,
                 {"stage=final quantity=u T=" + kp::format_double(opt.T) +
                  " steps=" + std::to_string(opt.steps)}));

  json meta;
  meta["command"] = "evolve";
  meta["solitons"] = solitons_json(data);
  meta["Lx"] = c.Lx;
  meta["Ly"] = c.Ly;
  meta["Nx"] = c.Nx;
  meta["Ny"] = c.Ny;
  meta["M"] = c.M;
  meta["t0"] = c.t;
  meta["T"] = opt.T;
  meta["steps"] = opt.steps;
  meta["window"] = opt.no_window
                       ? json(nullptr)
                       : json({{"exponent", opt.window_n},
                               {"coefficient", opt.window_c < 0
                                                   ? kp::window_default_coefficient()
                                                   : opt.window_c},
                               {"every", opt.window_every}});
  meta["initial"] = initial_path;
  meta["final"] = final_path;
  meta["flagged_cells"] = g0.flagged_cells;
  meta["elapsed_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_meta(c.out, meta);
  std::cout << "wrote " << initial_path << " and " << final_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "KP equation solver: GLM quadrature methods, Fredholm-determinant tau "
      "functions and split-step pseudo-spectral time stepping"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand(
      "solve", "compute a g, u or tau field at a fixed time");
  add_common(solve, solve_opt.common, "field.csv");
  opt(solve, "--method", solve_opt.method, "solution method")
      ->check(CLI::IsMember({"glm-rr", "glm-cc", "det-cc"}));
  opt(solve, "--quantity", solve_opt.quantity, "output quantity")
      ->check(CLI::IsMember({"g", "u", "tau"}));

  ConvergeOptions conv_opt;
  CLI::App* converge = app.add_subcommand(
      "converge", "quadrature-refinement error study");
  add_common(converge, conv_opt.common, "converge");
  opt(converge, "--methods", conv_opt.methods, "comma-separated method list");
  opt(converge, "--m-min", conv_opt.m_min, "smallest exponent of M");
  opt(converge, "--m-max", conv_opt.m_max, "largest exponent of M");
  opt(converge, "--m-ref", conv_opt.m_ref, "reference exponent");
  converge->add_flag("--compare-u", conv_opt.compare_u,
                     "compare derived u fields instead of native quantities");

  EvolveOptions evolve_opt;
  CLI::App* evolve = app.add_subcommand(
      "evolve", "GLM-CC initial data + split-step time integration");
  add_common(evolve, evolve_opt.common, "evolve");
  opt(evolve, "--T", evolve_opt.T, "integration horizon");
  opt(evolve, "--steps", evolve_opt.steps, "number of time steps");
  opt(evolve, "--window-n", evolve_opt.window_n, "window exponent");
  opt(evolve, "--window-c", evolve_opt.window_c,
      "window coefficient (default 36 ln 10)");
  opt(evolve, "--window-every", evolve_opt.window_every,
      "apply the window every k-th step");
  evolve->add_flag("--no-window", evolve_opt.no_window,
                   "disable the boundary window");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::vector<const char*> argv2;
  argv2.push_back(argv[0]);
  for (const auto& a : args) argv2.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv2.size()), argv2.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve)) return run_solve(solve_opt);
    if (app.got_subcommand(converge)) return run_converge(conv_opt);
    if (app.got_subcommand(evolve)) return run_evolve(evolve_opt);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
