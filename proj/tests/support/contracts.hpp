#ifndef BNQN_TEST_CONTRACTS_HPP
#define BNQN_TEST_CONTRACTS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "bnqn/linalg.hpp"
#include "bnqn/objective.hpp"
#include "bnqn/solvers.hpp"

namespace bnqn::test {

// Step-by-step audit of a recorded trace. Each violated contract appends a
// message; an empty result means the trace is clean.
//
// Armijo: f(z_{k+1}) - f(z_k) <= -gamma <w, grad> / 3 on the computed
// difference, and 3 gamma fails it whenever gamma < gamma0. The difference is
// taken through Objective::value_difference, the same quantity the search
// compares.
// Delta selection: minsp(H + delta_j |grad|^tau Id) >= kappa |grad|^tau for the
// recorded j, and every earlier j fails it.
// Descent: f strictly decreases along the trace.
// theta cap: |w_hat| <= 1/theta when the cap is active.
inline std::vector<std::string> audit_trace(const Objective& f, const IterationTrace& tr, const SolverConfig& cfg,
                                            Method method) {
  std::vector<std::string> bad;
  const bool line_search = method == Method::BNQNNewVariant || method == Method::BacktrackingGD;
  for (std::size_t k = 0; k < tr.iterations(); ++k) {
    const Vector& z = tr.points[k];
    const Vector& next = tr.points[k + 1];
    const Vector& w = tr.directions[k];
    const Vector grad = f.gradient(z);
    const double gamma = tr.step_sizes[k];
    const std::string at = " at step " + std::to_string(k);

    if (line_search) {
      const double slope = dot(w, grad);
      if (!(f.value_difference(next, z) <= -gamma * slope / 3.0)) bad.push_back("Armijo inequality" + at);
      if (gamma < cfg.gamma0) {
        Vector wider(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) wider[i] = z[i] - (3.0 * gamma) * w[i];
        if (f.value_difference(wider, z) <= -(3.0 * gamma) * slope / 3.0) bad.push_back("3 gamma maximality" + at);
      }
      if (!(f.value_difference(next, z) < 0.0)) bad.push_back("monotone descent" + at);
      if (cfg.theta > 0.0 && norm2(w) > 1.0 / cfg.theta * (1.0 + 1e-12)) bad.push_back("theta cap" + at);
    }
    if (method == Method::BNQNNewVariant) {
      const double scale = std::pow(norm2(grad), cfg.tau);
      const SymmetricMatrix h = f.hessian(z);
      const int j = tr.delta_indices[k];
      if (j < 0 || minsp(h.shifted(cfg.deltas[static_cast<std::size_t>(j)] * scale)) < cfg.kappa() * scale)
        bad.push_back("delta selection" + at);
      for (int i = 0; i < j; ++i)
        if (!(minsp(h.shifted(cfg.deltas[static_cast<std::size_t>(i)] * scale)) < cfg.kappa() * scale))
          bad.push_back("delta minimality" + at);
    }
    if (method == Method::NQN) {
      const double scale = std::pow(norm2(grad), cfg.tau);
      const int j = tr.delta_indices[k];
      if (j < 0 || minsp(f.hessian(z).shifted(cfg.deltas[static_cast<std::size_t>(j)] * scale)) == 0.0)
        bad.push_back("NQN determinant test" + at);
    }
  }
  return bad;
}

}  // namespace bnqn::test

#endif  // BNQN_TEST_CONTRACTS_HPP
