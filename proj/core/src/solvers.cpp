#include "bnqn/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "bnqn/complexpoly.hpp"
#include "bnqn/error.hpp"
#include "bnqn/random.hpp"

namespace bnqn {

namespace {

constexpr double kMinStep = 1e-300;

Vector axpy_step(std::span<const double> z, double gamma, std::span<const double> w) {
  Vector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i] - gamma * w[i];
  return out;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::NewtonOpt:
      return "newton";
    case Method::NQN:
      return "nqn";
    case Method::BNQNNewVariant:
      return "bnqn";
    case Method::BacktrackingGD:
      return "btgd";
    case Method::Newton1D:
      return "newton1d";
    case Method::RandomRelaxedNewton1D:
      return "rrn1d";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method m : {Method::NewtonOpt, Method::NQN, Method::BNQNNewVariant, Method::BacktrackingGD, Method::Newton1D,
                   Method::RandomRelaxedNewton1D}) {
    if (method_name(m) == name) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

bool is_planar_map(Method m) { return m == Method::Newton1D || m == Method::RandomRelaxedNewton1D; }

double SolverConfig::kappa() const {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < deltas.size(); ++i)
    for (std::size_t j = i + 1; j < deltas.size(); ++j) gap = std::min(gap, std::abs(deltas[i] - deltas[j]));
  return 0.5 * gap;
}

void SolverConfig::validate(std::size_t m) const {
  if (deltas.size() != m + 1)
    throw InvalidArgument("need " + std::to_string(m + 1) + " deltas for dimension " + std::to_string(m));
  if (!all_finite(deltas)) throw InvalidArgument("deltas must be finite");
  if (!(kappa() > 0.0)) throw InvalidArgument("deltas must be pairwise distinct");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw InvalidArgument("theta must be non-negative");
  if (!(gamma0 > 0.0 && gamma0 <= 1.0)) throw InvalidArgument("gamma0 must lie in (0, 1]");
  if (!(grad_tol >= 0.0)) throw InvalidArgument("grad_tol must be non-negative");
  if (max_iter <= 0) throw InvalidArgument("max_iter must be positive");
  if (!(classify_tol > 0.0)) throw InvalidArgument("classify_tol must be positive");
  if (!(rho > 0.5 && rho < 1.0)) throw InvalidArgument("rho must satisfy 0.5 < rho < 1");
}

Vector SolverConfig::default_deltas(std::size_t m) {
  Vector d{0.0};
  for (std::size_t k = 1; d.size() < m + 1; ++k) {
    d.push_back(static_cast<double>(k));
    if (d.size() < m + 1) d.push_back(-static_cast<double>(k));
  }
  return d;
}

Vector SolverConfig::random_deltas(std::size_t m, std::uint64_t seed) {
  SeededRandomSource rng(seed);
  Vector d;
  while (d.size() < m + 1) {
    const double c = rng.uniform(-1.0, 1.0);
    if (std::all_of(d.begin(), d.end(), [c](double x) { return std::abs(x - c) >= 0.1; })) d.push_back(c);
  }
  return d;
}

DeltaChoice select_delta(const SymmetricMatrix& hess, double grad_norm, const SolverConfig& cfg) {
  const double scale = std::pow(grad_norm, cfg.tau);
  const double threshold = cfg.kappa() * scale;
  for (std::size_t j = 0; j < cfg.deltas.size(); ++j) {
    SymmetricMatrix a = hess.shifted(cfg.deltas[j] * scale);
    EigenDecomposition e = eigh(a);
    if (!(minsp(e) < threshold)) return {static_cast<int>(j), std::move(a), std::move(e)};
  }
  throw NoAdmissibleDelta("no delta satisfies the minsp test; deltas must be pairwise distinct");
}

LineSearchResult armijo_search(const Objective& f, std::span<const double> z, std::span<const double> w_hat,
                               std::span<const double> grad, double gamma0) {
  const double slope = dot(w_hat, grad);
  LineSearchResult r{gamma0, 0};
  while (true) {
    const Vector trial = axpy_step(z, r.gamma, w_hat);
    const double lhs = f.value_difference(trial, z);
    // NaN on either side counts as a rejection.
    if (lhs <= -r.gamma * slope / 3.0) return r;
    r.gamma /= 3.0;
    ++r.backtracks;
    if (r.gamma < kMinStep) throw LineSearchUnderflow("Armijo step size underflowed; direction is not a descent direction");
  }
}

double armijo_search(const Objective& f, std::span<const double> z, std::span<const double> w_hat, double gamma0) {
  const Vector g = f.gradient(z);
  return armijo_search(f, z, w_hat, g, gamma0).gamma;
}

StepRecord bnqn_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg) {
  const Vector grad = f.gradient(z);
  const double gnorm = norm2(grad);
  if (!(gnorm > 0.0)) throw InvalidArgument("bnqn_step requires a non-critical point");

  const DeltaChoice choice = select_delta(f.hessian(z), gnorm, cfg);
  Vector w = reflected_direction(choice.eigen, grad);
  const double cap = std::max(1.0, cfg.theta * norm2(w));
  for (double& x : w) x /= cap;

  const LineSearchResult ls = armijo_search(f, z, w, grad, cfg.gamma0);
  StepRecord rec;
  rec.next = axpy_step(z, ls.gamma, w);
  rec.direction = std::move(w);
  rec.gamma = ls.gamma;
  rec.delta_index = choice.index;
  rec.backtracks = ls.backtracks;
  rec.grad_norm = gnorm;
  return rec;
}

StepRecord nqn_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg) {
  const Vector grad = f.gradient(z);
  const double gnorm = norm2(grad);
  if (!(gnorm > 0.0)) throw InvalidArgument("nqn_step requires a non-critical point");

  const SymmetricMatrix hess = f.hessian(z);
  const double scale = std::pow(gnorm, cfg.tau);
  for (std::size_t j = 0; j < cfg.deltas.size(); ++j) {
    const EigenDecomposition e = eigh(hess.shifted(cfg.deltas[j] * scale));
    // det = product of eigenvalues; zero exactly when one eigenvalue is zero.
    if (std::any_of(e.eigenvalues.begin(), e.eigenvalues.end(), [](double l) { return l == 0.0; })) continue;
    StepRecord rec;
    rec.direction = reflected_direction(e, grad);
    rec.next = axpy_step(z, 1.0, rec.direction);
    rec.gamma = 1.0;
    rec.delta_index = static_cast<int>(j);
    rec.grad_norm = gnorm;
    return rec;
  }
  throw NoAdmissibleDelta("every shifted Hessian is singular");
}

Vector newton_opt_step(const Objective& f, std::span<const double> z) {
  const Vector v = solve(f.hessian(z), f.gradient(z));
  return axpy_step(z, 1.0, v);
}

StepRecord btgd_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg) {
  const Vector grad = f.gradient(z);
  const double gnorm = norm2(grad);
  if (!(gnorm > 0.0)) throw InvalidArgument("btgd_step requires a non-critical point");

  Vector w = grad;
  const double cap = std::max(1.0, cfg.theta * gnorm);
  for (double& x : w) x /= cap;
  const LineSearchResult ls = armijo_search(f, z, w, grad, cfg.gamma0);
  StepRecord rec;
  rec.next = axpy_step(z, ls.gamma, w);
  rec.direction = std::move(w);
  rec.gamma = ls.gamma;
  rec.backtracks = ls.backtracks;
  rec.grad_norm = gnorm;
  return rec;
}

IterationTrace run(const Objective& f, std::span<const double> z0, Method method, const SolverConfig& cfg) {
  IterationTrace trace;
  trace.points.emplace_back(z0.begin(), z0.end());

  const PolyModulusObjective* poly = nullptr;
  if (is_planar_map(method)) {
    poly = dynamic_cast<const PolyModulusObjective*>(&f);
    if (!poly) throw InvalidArgument("planar Newton maps need a polynomial-modulus objective");
  }
  std::optional<SeededRandomSource> rng;
  std::optional<RelaxationDisk> disk;
  if (method == Method::RandomRelaxedNewton1D) {
    rng.emplace(cfg.seed.value_or(0));
    disk.emplace(cfg.rho);
  }
  const double radius = f.divergence_radius();
  bool diverged = false;

  for (int k = 0;; ++k) {
    const Vector& z = trace.points.back();
    if (!all_finite(z) || norm2(z) > radius) {
      diverged = all_finite(z);
      if (!diverged && !trace.failure) trace.failure = "iterate became non-finite";
      break;
    }
    const Vector grad = f.gradient(z);
    const double gnorm = norm2(grad);
    trace.final_grad_norm = gnorm;
    if (gnorm <= cfg.grad_tol) {
      trace.converged = true;
      break;
    }
    if (k >= cfg.max_iter) break;

    try {
      StepRecord rec;
      switch (method) {
        case Method::BNQNNewVariant:
          rec = bnqn_step(f, z, cfg);
          break;
        case Method::NQN:
          rec = nqn_step(f, z, cfg);
          break;
        case Method::BacktrackingGD:
          rec = btgd_step(f, z, cfg);
          break;
        case Method::NewtonOpt:
          rec.next = newton_opt_step(f, z);
          rec.direction.resize(z.size());
          for (std::size_t i = 0; i < z.size(); ++i) rec.direction[i] = z[i] - rec.next[i];
          break;
        case Method::Newton1D:
        case Method::RandomRelaxedNewton1D: {
          const Complex w{z[0], z[1]};
          const Complex alpha = rng ? sample_relaxed_alpha(*disk, *rng) : Complex{1.0, 0.0};
          const Complex n = relaxed_newton_map(poly->polynomial(), w, alpha);
          rec.next = {n.real(), n.imag()};
          rec.direction = {w.real() - n.real(), w.imag() - n.imag()};
          break;
        }
      }
      rec.grad_norm = gnorm;
      trace.step_sizes.push_back(rec.gamma);
      trace.delta_indices.push_back(rec.delta_index);
      trace.grad_norms.push_back(gnorm);
      trace.backtracks.push_back(rec.backtracks);
      trace.directions.push_back(std::move(rec.direction));
      trace.points.push_back(std::move(rec.next));
    } catch (const Error& e) {
      trace.failure = e.what();
      break;
    }
  }

  if (trace.converged) {
    trace.terminal = f.classify(trace.last(), cfg.classify_tol);
  } else if (diverged) {
    trace.terminal = LimitClass::diverged();
  } else {
    trace.terminal = LimitClass::undecided();
  }
  return trace;
}

void write_trace_csv(std::ostream& out, const IterationTrace& trace) {
  const auto old_precision = out.precision(17);
  out << "k,x,y,gamma,delta_index,grad_norm\n";
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    const Vector& p = trace.points[k];
    out << k << ',' << p[0] << ',' << (p.size() > 1 ? p[1] : 0.0) << ',';
    if (k < trace.iterations()) {
      out << trace.step_sizes[k] << ',' << trace.delta_indices[k] << ',' << trace.grad_norms[k] << '\n';
    } else {
      out << ",," << trace.final_grad_norm << '\n';
    }
  }
  out << "# terminal=" << trace.terminal.to_string() << '\n';
  out.precision(old_precision);
}

}  // namespace bnqn
