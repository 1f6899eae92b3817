#include <algorithm>
#include <cmath>

#include "bnqn/cli.hpp"
#include "bnqn/error.hpp"
#include "bnqn/parallel.hpp"
#include "bnqn/random.hpp"

namespace bnqn {

namespace {

// Index of the root within 1e-8 (1 + |r|) of z, or -1.
int captured_by(const std::vector<Complex>& roots, Complex z) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (std::abs(z - roots[i]) <= 1e-8 * (1.0 + std::abs(roots[i]))) return static_cast<int>(i);
  return -1;
}

}  // namespace

RrnReport run_rrn_experiment(const Polynomial& p, double rho, int trials, int max_iter, std::uint64_t seed) {
  const RelaxationDisk disk(rho);
  if (p.degree() < 1) throw InvalidArgument("relaxed Newton needs deg p >= 1");
  if (trials < 1) throw InvalidArgument("trials must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");

  RrnReport report;
  report.roots = distinct_roots(p);
  report.trials = trials;
  std::vector<int> landed(static_cast<std::size_t>(trials), -1);

  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t t) {
    SeededRandomSource rng(mix_seed(seed ^ t));
    Complex z{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    for (int k = 0; k < max_iter; ++k) {
      try {
        z = relaxed_newton_map(p, z, sample_relaxed_alpha(disk, rng));
      } catch (const DerivativeVanishes&) {
        return;
      }
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return;
      if (const int r = captured_by(report.roots, z); r >= 0) {
        landed[t] = r;
        return;
      }
    }
  });

  report.per_root_counts.assign(report.roots.size(), 0);
  int converged = 0;
  for (int r : landed) {
    if (r < 0) continue;
    ++report.per_root_counts[static_cast<std::size_t>(r)];
    ++converged;
  }
  report.converged_fraction = static_cast<double>(converged) / trials;
  return report;
}

}  // namespace bnqn
