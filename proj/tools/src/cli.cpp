#include "bnqn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>

#include "bnqn/basins.hpp"
#include "bnqn/error.hpp"
#include "bnqn/invariance.hpp"
#include "bnqn/solvers.hpp"

namespace bnqn {

namespace {

// Bad flag values found after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    double v = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc{} || ptr != last || !std::isfinite(v))
      throw UsageError(std::string(flag) + ": cannot parse '" + text + "' as a comma-separated list of numbers");
    out.push_back(v);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::vector<double> parse_fixed(const std::string& text, const char* flag, std::size_t n) {
  std::vector<double> v = parse_list(text, flag);
  if (v.size() != n)
    throw UsageError(std::string(flag) + ": expected " + std::to_string(n) + " values, got " + std::to_string(v.size()));
  return v;
}

struct SolverFlags {
  std::string deltas = "0,1,-1";
  bool random_deltas = false;
  double tau = 1.0;
  double theta = 0.0;
  double gamma0 = 1.0;
  double tol = 1e-10;
  int max_iter = 10000;
  std::uint64_t seed = 0;
  double rho = 0.7;
  double classify_tol = 1e-6;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--deltas", deltas, "Hessian shift candidates delta_0..delta_m, comma-separated");
    app->add_flag("--random-deltas", random_deltas, "Draw m+1 deltas uniformly from [-1,1] using --seed");
    app->add_option("--tau", tau, "Exponent tau > 0 on |grad F|");
    app->add_option("--theta", theta, "Step cap theta >= 0 (0: compact-sublevel variant, 1: general)");
    app->add_option("--gamma0", gamma0, "Initial Armijo step gamma_0 in (0,1]");
    app->add_option("--tol", tol, "Stop once |grad F| <= tol");
    app->add_option("--max-iter", max_iter, "Iteration cap");
    seed_opt = app->add_option("--seed", seed, "Seed for --random-deltas and rrn1d");
    app->add_option("--rho", rho, "Relaxation disk radius for rrn1d, 0.5 < rho < 1");
    app->add_option("--classify-tol", classify_tol, "Distance at which a limit is matched to a root or critical point");
  }

  SolverConfig config(std::size_t m) const {
    SolverConfig cfg;
    cfg.deltas = random_deltas ? SolverConfig::random_deltas(m, seed) : parse_list(deltas, "--deltas");
    cfg.tau = tau;
    cfg.theta = theta;
    cfg.gamma0 = gamma0;
    cfg.grad_tol = tol;
    cfg.max_iter = max_iter;
    if (seed_opt->count() > 0) cfg.seed = seed;
    cfg.rho = rho;
    cfg.classify_tol = classify_tol;
    cfg.validate(m);
    return cfg;
  }
};

Polynomial read_poly(const std::string& text, bool highest_first) {
  try {
    return Polynomial::parse(text, highest_first);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--poly: ") + e.what());
  }
}

void print_point(std::ostream& out, const char* key, std::span<const double> z) {
  out << key << '=';
  for (std::size_t i = 0; i < z.size(); ++i) out << (i ? "," : "") << z[i];
  out << '\n';
}

int do_solve(const Polynomial& g, const std::string& method_text, const std::string& z0_text,
             const SolverFlags& flags, const std::string& trace_path, std::ostream& out, std::ostream& err) {
  const Method method = parse_method(method_text);
  const auto z0 = parse_fixed(z0_text, "--z0", 2);
  const SolverConfig cfg = flags.config(2);
  if (g.degree() < 1) throw UsageError("--poly: need degree >= 1");

  const PolyModulusObjective f(g);
  const IterationTrace trace = run(f, z0, method, cfg);
  out << "method=" << method_name(method) << '\n' << "terminal=" << trace.terminal.to_string() << '\n';
  print_point(out, "point", trace.last());
  out << "iterations=" << trace.iterations() << '\n'
      << "converged=" << (trace.converged ? "true" : "false") << '\n'
      << "grad_norm=" << trace.final_grad_norm << '\n';
  if (!trace_path.empty()) {
    std::ofstream file(trace_path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open '" + trace_path + "' for writing");
    write_trace_csv(file, trace);
    if (!file.flush()) throw std::runtime_error("write to '" + trace_path + "' failed");
  }
  if (trace.failure) {
    err << "error: " << *trace.failure << '\n';
    return 2;
  }
  return 0;
}

int do_basin(const Polynomial& g, const std::string& method_text, const std::string& window_text,
             const std::string& res_text, const SolverFlags& flags, const std::string& ppm_path,
             const std::string& csv_path, std::ostream& out) {
  const Method method = parse_method(method_text);
  const auto w = parse_fixed(window_text, "--window", 4);
  const auto r = parse_fixed(res_text, "--res", 2);
  GridSpec grid{w[0], w[1], w[2], w[3], static_cast<int>(r[0]), static_cast<int>(r[1])};
  if (r[0] != grid.nx || r[1] != grid.ny) throw UsageError("--res: resolutions must be integers");
  grid.validate();
  const SolverConfig cfg = flags.config(2);
  if (g.degree() < 1) throw UsageError("--poly: need degree >= 1");

  const BasinMap map = render_basin(g, grid, method, cfg);
  std::map<std::string, int> counts;
  for (const LimitClass& c : map.classes) ++counts[c.to_string()];
  out << "grid=" << grid.nx << 'x' << grid.ny << '\n';
  for (const auto& [name, n] : counts) out << name << '=' << n << '\n';
  if (!ppm_path.empty()) {
    export_ppm(map, ppm_path);
    out << "ppm=" << ppm_path << '\n';
  }
  if (!csv_path.empty()) {
    export_csv(map, csv_path);
    out << "csv=" << csv_path << '\n';
  }
  return 0;
}

int do_invariance(const Polynomial& g, double c, double angle, bool reflect, const std::string& z0_text, int steps,
                  bool shear, bool newton, const SolverFlags& flags, std::ostream& out) {
  const auto z0 = parse_fixed(z0_text, "--z0", 2);
  if (shear) {
    write_report(out, shear_counterexample(z0));
    return 0;
  }
  if (steps < 1) throw UsageError("--steps must be positive");
  if (g.degree() < 1) throw UsageError("--poly: need degree >= 1");
  const ConjugationSpec spec = ConjugationSpec::planar(c, angle, reflect);
  const PolyModulusObjective f(g);
  if (newton) {
    out << "newton_deviation=" << newton_conjugacy_check(f, spec.matrix(), z0, steps) << '\n';
    return 0;
  }
  out << "max_deviation=" << check_invariance(f, spec, z0, flags.config(2), steps) << '\n';
  return 0;
}

int do_rrn(const Polynomial& p, double rho, int trials, int max_iter, std::uint64_t seed, std::ostream& out) {
  if (!(rho > 0.5 && rho < 1.0)) throw UsageError("--rho must satisfy 0.5 < rho < 1");
  if (trials < 1) throw UsageError("--trials must be positive");
  if (max_iter < 1) throw UsageError("--max-iter must be positive");
  const RrnReport rep = run_rrn_experiment(p, rho, trials, max_iter, seed);
  out << "trials=" << rep.trials << '\n' << "converged_fraction=" << rep.converged_fraction << '\n';
  for (std::size_t i = 0; i < rep.roots.size(); ++i)
    out << "root[" << i << "]=" << rep.roots[i].real() << ',' << rep.roots[i].imag()
        << " count=" << rep.per_root_counts[i] << '\n';
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root finding for complex polynomials with Backtracking New Q-Newton and baselines", "bnqn"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::string poly = "-1,0,1";
  bool highest_first = false;
  std::string method = "bnqn";
  std::string z0 = "0.3,-1.7";
  const std::string method_help = "One of newton, nqn, bnqn, btgd, newton1d, rrn1d";
  const std::string poly_help = "Coefficients as comma-separated re+imi tokens, lowest degree first";

  auto* solve = app.add_subcommand("solve", "Run one method from a single starting point");
  SolverFlags solve_flags;
  std::string trace_path;
  solve->add_option("--poly", poly, poly_help);
  solve->add_flag("--highest-first", highest_first, "Read --poly highest degree first");
  solve->add_option("--method", method, method_help);
  solve->add_option("--z0", z0, "Starting point x,y");
  solve->add_option("--trace", trace_path, "Write the iterates as CSV to this file");
  solve_flags.attach(solve);

  auto* basin = app.add_subcommand("basin", "Classify the limit of every point of a grid");
  SolverFlags basin_flags;
  std::string window = "-2,2,-2,2", res = "400,400", ppm_path = "basin.ppm", csv_path;
  basin->add_option("--poly", poly, poly_help);
  basin->add_flag("--highest-first", highest_first, "Read --poly highest degree first");
  basin->add_option("--method", method, method_help);
  basin->add_option("--window", window, "x_min,x_max,y_min,y_max");
  basin->add_option("--res", res, "nx,ny grid points (corners included)");
  basin->add_option("--out", ppm_path, "PPM image path (empty to skip)");
  basin->add_option("--csv", csv_path, "CSV path (empty to skip)");
  basin_flags.attach(basin);

  auto* inv = app.add_subcommand("invariance", "Compare BNQN on F and on F(A .) with A = c R");
  SolverFlags inv_flags;
  double c = 2.0, angle = 0.0;
  bool reflect = false, shear = false, newton = false;
  int steps = 100;
  std::string inv_z0 = "0.4,1.1";
  inv->add_option("--poly", poly, poly_help);
  inv->add_flag("--highest-first", highest_first, "Read --poly highest degree first");
  inv->add_option("--c", c, "Scale c > 0");
  inv->add_option("--rotation", angle, "Rotation angle of R in radians");
  inv->add_flag("--reflect", reflect, "Compose R with (x,y) -> (x,-y)");
  inv->add_option("--z0", inv_z0, "Starting point x,y (the evaluation point with --shear)");
  inv->add_option("--steps", steps, "Number of steps compared");
  inv->add_flag("--newton", newton, "Check Newton's method instead of BNQN");
  inv->add_flag("--shear", shear, "Report the shear counterexample for F = xy at --z0");
  inv_flags.attach(inv);

  auto* rrn = app.add_subcommand("rrn", "Random Relaxed Newton convergence statistics");
  std::string rrn_poly = "-1,0,0,1";
  double rho = 0.7;
  int trials = 500, rrn_iter = 2000;
  std::uint64_t rrn_seed = 7;
  rrn->add_option("--poly", rrn_poly, poly_help);
  rrn->add_flag("--highest-first", highest_first, "Read --poly highest degree first");
  rrn->add_option("--rho", rho, "Relaxation disk radius, 0.5 < rho < 1");
  rrn->add_option("--trials", trials, "Number of random starts in [-3,3]^2");
  rrn->add_option("--max-iter", rrn_iter, "Iteration cap per trial");
  rrn->add_option("--seed", rrn_seed, "Experiment seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  const auto old_precision = out.precision(17);
  struct Restore {
    std::ostream& s;
    std::streamsize p;
    ~Restore() { s.precision(p); }
  } restore{out, old_precision};

  try {
    if (*solve) return do_solve(read_poly(poly, highest_first), method, z0, solve_flags, trace_path, out, err);
    if (*basin)
      return do_basin(read_poly(poly, highest_first), method, window, res, basin_flags, ppm_path, csv_path, out);
    if (*inv)
      return do_invariance(read_poly(poly, highest_first), c, angle, reflect, inv_z0, steps, shear, newton, inv_flags,
                           out);
    return do_rrn(read_poly(rrn_poly, highest_first), rho, trials, rrn_iter, rrn_seed, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace bnqn
