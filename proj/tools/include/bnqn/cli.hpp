#ifndef BNQN_CLI_HPP
#define BNQN_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bnqn/complexpoly.hpp"

namespace bnqn {

struct RrnReport {
  std::vector<Complex> roots;
  /// per_root_counts[i] trials ended at roots[i].
  std::vector<int> per_root_counts;
  int trials = 0;
  double converged_fraction = 0.0;
};

/// Random Relaxed Newton statistics: `trials` starts uniform in [-3, 3]^2,
/// each iterating z -> z - alpha_n p(z)/p'(z) with a fresh alpha_n drawn from
/// |alpha - 1| <= rho per step. A trial converges once it is within
/// 1e-8 (1 + |r|) of a root r. Trials run in parallel; trial t draws from its
/// own stream seeded by mix_seed(seed ^ t), so the report does not depend on
/// the worker count. Throws InvalidArgument unless 0.5 < rho < 1.
RrnReport run_rrn_experiment(const Polynomial& p, double rho, int trials, int max_iter, std::uint64_t seed);

/// Entry point behind the `bnqn` executable. `args` excludes the program
/// name. Returns 0 on success, 1 on a usage error and 2 on a runtime failure;
/// diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bnqn

#endif  // BNQN_CLI_HPP
