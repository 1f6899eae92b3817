#ifndef BNQN_SOLVERS_HPP
#define BNQN_SOLVERS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bnqn/linalg.hpp"
#include "bnqn/objective.hpp"

namespace bnqn {

enum class Method { NewtonOpt, NQN, BNQNNewVariant, BacktrackingGD, Newton1D, RandomRelaxedNewton1D };

/// Short CLI name: newton, nqn, bnqn, btgd, newton1d, rrn1d.
std::string_view method_name(Method m);
/// Inverse of method_name. Throws InvalidArgument.
Method parse_method(std::string_view name);
/// Newton1D and RandomRelaxedNewton1D iterate in the complex plane.
bool is_planar_map(Method m);

/// Parameters shared by the iterative methods.
///
/// `deltas` are the Hessian shift candidates delta_0..delta_m and must be
/// pairwise distinct; kappa() = min_{i != j} |delta_i - delta_j| / 2.
/// The Armijo constant and the backtracking shrink factor are both fixed at 1/3.
struct SolverConfig {
  Vector deltas{0.0, 1.0, -1.0};
  double tau = 1.0;
  double theta = 0.0;
  double gamma0 = 1.0;
  double grad_tol = 1e-10;
  int max_iter = 10000;
  std::optional<std::uint64_t> seed;
  /// Radius of the relaxation disk for RandomRelaxedNewton1D.
  double rho = 0.7;
  /// Distance at which a terminal point is identified with a root or critical point.
  double classify_tol = 1e-6;

  double kappa() const;
  /// Throws InvalidArgument if the invariants do not hold for dimension m.
  void validate(std::size_t m) const;

  /// {0, 1, -1} for m = 2; in general 0, 1, -1, 2, -2, ... (m + 1 values).
  static Vector default_deltas(std::size_t m);
  /// m + 1 values uniform in [-1, 1] with pairwise gaps of at least 0.1.
  static Vector random_deltas(std::size_t m, std::uint64_t seed);
};

/// One recorded iteration z_k -> z_{k+1} = z_k - gamma * direction.
struct StepRecord {
  Vector next;
  /// The step direction actually used (w-hat for BNQN, the gradient cap for BTGD).
  Vector direction;
  double gamma = 1.0;
  int delta_index = -1;
  /// Number of rejected trial step sizes before `gamma` was accepted.
  int backtracks = 0;
  double grad_norm = 0.0;
};

struct DeltaChoice {
  int index = -1;
  SymmetricMatrix matrix;
  EigenDecomposition eigen;
};

/// Smallest j with minsp(hess + delta_j grad_norm^tau Id) >= kappa grad_norm^tau.
DeltaChoice select_delta(const SymmetricMatrix& hess, double grad_norm, const SolverConfig& cfg);

struct LineSearchResult {
  double gamma = 0.0;
  int backtracks = 0;
};

/// Largest gamma in {gamma0, gamma0/3, ...} with
/// f(z - gamma w) - f(z) <= -gamma <w, grad f(z)> / 3.
LineSearchResult armijo_search(const Objective& f, std::span<const double> z, std::span<const double> w_hat,
                               std::span<const double> grad, double gamma0);
double armijo_search(const Objective& f, std::span<const double> z, std::span<const double> w_hat, double gamma0);

/// Backtracking New Q-Newton, New Variant. theta = 0 is the compact-sublevel
/// version, theta = 1 the general one.
StepRecord bnqn_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg);
/// New Q-Newton: determinant test for delta, full step, no line search.
StepRecord nqn_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg);
/// z - (hess f)^{-1} grad f.
Vector newton_opt_step(const Objective& f, std::span<const double> z);
/// Armijo backtracking along grad f / max{1, theta |grad f|}.
StepRecord btgd_step(const Objective& f, std::span<const double> z, const SolverConfig& cfg);

struct IterationTrace {
  std::vector<Vector> points;
  std::vector<double> step_sizes;
  std::vector<int> delta_indices;
  std::vector<double> grad_norms;
  std::vector<Vector> directions;
  std::vector<int> backtracks;
  /// |grad f| at the last point.
  double final_grad_norm = 0.0;
  LimitClass terminal;
  bool converged = false;
  /// Diagnostic when a step raised; the trace is cut at the failing point.
  std::optional<std::string> failure;

  std::size_t iterations() const noexcept { return step_sizes.size(); }
  const Vector& last() const { return points.back(); }
};

/// Iterates until |grad f| <= grad_tol (converged), the iterate leaves the
/// divergence radius (Diverged), max_iter steps were taken (Undecided) or a
/// step fails (Undecided, with `failure` set). Never throws for step errors.
/// The planar-map methods require a PolyModulusObjective.
IterationTrace run(const Objective& f, std::span<const double> z0, Method method, const SolverConfig& cfg);

/// CSV with header `k,x,y,gamma,delta_index,grad_norm`, one row per
/// iterate, then `# terminal=<class>`. The last iterate has empty
/// gamma/delta_index fields.
void write_trace_csv(std::ostream& out, const IterationTrace& trace);

}  // namespace bnqn

#endif  // BNQN_SOLVERS_HPP
