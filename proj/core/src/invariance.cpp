#include "bnqn/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bnqn/error.hpp"

namespace bnqn {

namespace {

double deviation(std::span<const double> z, std::span<const double> z_prime, const Matrix& a_inv) {
  const Vector mapped = a_inv * z;
  double d = 0.0;
  for (std::size_t i = 0; i < mapped.size(); ++i) d += (z_prime[i] - mapped[i]) * (z_prime[i] - mapped[i]);
  return std::sqrt(d) / (1.0 + norm2(z));
}

const Vector& at_or_last(const std::vector<Vector>& pts, std::size_t k) { return pts[std::min(k, pts.size() - 1)]; }

}  // namespace

ConjugationSpec::ConjugationSpec(double c, Matrix r) : c_(c), r_(std::move(r)) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("conjugation scale must be positive");
  if (r_.rows() != r_.cols()) throw InvalidArgument("orthogonal factor must be square");
  const Matrix residual = r_ * r_.transpose();
  double err = 0.0;
  for (std::size_t i = 0; i < r_.rows(); ++i)
    for (std::size_t j = 0; j < r_.cols(); ++j) err = std::max(err, std::abs(residual(i, j) - (i == j ? 1.0 : 0.0)));
  if (err > 1e-12) throw InvalidArgument("R is not orthogonal: |R R^T - Id| exceeds 1e-12");
}

ConjugationSpec ConjugationSpec::planar(double c, double angle, bool reflect) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  Matrix r{{cs, -sn}, {sn, cs}};
  if (reflect) r = r * Matrix{{1.0, 0.0}, {0.0, -1.0}};
  return {c, std::move(r)};
}

ConjugationSpec ConjugationSpec::random(std::size_t m, double c, SeededRandomSource& rng) {
  while (true) {
    Matrix q(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) q(i, j) = rng.uniform(-1.0, 1.0);
    // Modified Gram-Schmidt on the columns.
    bool degenerate = false;
    for (std::size_t j = 0; j < m && !degenerate; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < m; ++i) proj += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < m; ++i) q(i, j) -= proj * q(i, k);
      }
      double n = 0.0;
      for (std::size_t i = 0; i < m; ++i) n += q(i, j) * q(i, j);
      n = std::sqrt(n);
      if (n < 1e-6) degenerate = true;
      for (std::size_t i = 0; i < m && !degenerate; ++i) q(i, j) /= n;
    }
    if (!degenerate) return {c, std::move(q)};
  }
}

ConjugatedObjective::ConjugatedObjective(const Objective& base, Matrix a)
    : base_(base), a_(std::move(a)), a_t_(a_.transpose()) {
  if (a_.rows() != base_.dimension() || a_.cols() != base_.dimension())
    throw InvalidArgument("conjugating map has the wrong dimension");
  inverse_norm_ = a_.inverse().frobenius_norm();
}

double ConjugatedObjective::value(std::span<const double> z) const { return base_.value(a_ * z); }

Vector ConjugatedObjective::gradient(std::span<const double> z) const { return a_t_ * base_.gradient(a_ * z); }

SymmetricMatrix ConjugatedObjective::hessian(std::span<const double> z) const {
  return Matrix::congruence(a_, base_.hessian(a_ * z));
}

double ConjugatedObjective::value_difference(std::span<const double> a, std::span<const double> b) const {
  return base_.value_difference(a_ * a, a_ * b);
}

double ConjugatedObjective::divergence_radius() const { return base_.divergence_radius() * inverse_norm_; }

LimitClass ConjugatedObjective::classify(std::span<const double> z, double tol) const {
  return base_.classify(a_ * z, tol);
}

SolverConfig transform_config(const SolverConfig& cfg, double c) {
  if (!(c > 0.0)) throw InvalidArgument("conjugation scale must be positive");
  SolverConfig out = cfg;
  const double factor = std::pow(c, 2.0 - cfg.tau);
  for (double& d : out.deltas) d *= factor;
  out.theta = cfg.theta * c;
  return out;
}

double check_invariance(const Objective& f, const ConjugationSpec& spec, std::span<const double> z0,
                        const SolverConfig& cfg, int n) {
  const Matrix a = spec.matrix();
  const Matrix a_inv = spec.inverse();
  const ConjugatedObjective g(f, a);

  SolverConfig base_cfg = cfg;
  base_cfg.max_iter = n;
  SolverConfig conj_cfg = transform_config(base_cfg, spec.c());

  const IterationTrace lhs = run(f, z0, Method::BNQNNewVariant, base_cfg);
  const Vector z0_prime = a_inv * z0;
  const IterationTrace rhs = run(g, z0_prime, Method::BNQNNewVariant, conj_cfg);
  if (lhs.failure) throw Error("invariance run on F failed: " + *lhs.failure);
  if (rhs.failure) throw Error("invariance run on G failed: " + *rhs.failure);

  double worst = 0.0;
  const std::size_t steps = std::min<std::size_t>(std::max(lhs.points.size(), rhs.points.size()), n + 1);
  for (std::size_t k = 0; k < steps; ++k)
    worst = std::max(worst, deviation(at_or_last(lhs.points, k), at_or_last(rhs.points, k), a_inv));
  return worst;
}

double newton_conjugacy_check(const Objective& f, const Matrix& a, std::span<const double> z0, int n) {
  const Matrix a_inv = a.inverse();
  const ConjugatedObjective g(f, a);
  Vector z(z0.begin(), z0.end());
  Vector z_prime = a_inv * z0;
  double worst = deviation(z, z_prime, a_inv);
  for (int k = 0; k < n; ++k) {
    z = newton_opt_step(f, z);
    z_prime = newton_opt_step(g, z_prime);
    worst = std::max(worst, deviation(z, z_prime, a_inv));
  }
  return worst;
}

ShearReport shear_counterexample(std::span<const double> point) {
  if (point.size() != 2) throw InvalidArgument("shear counterexample is planar");
  const BilinearTestObjective f(false);
  const BilinearTestObjective g(true);
  const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
  const Matrix a_inv{{1.0, -1.0}, {0.0, 1.0}};

  ShearReport r;
  r.w_prime = reflected_direction(g.hessian(point), g.gradient(point));
  const Vector image = a * point;
  const Vector w = reflected_direction(f.hessian(image), f.gradient(image));
  r.mapped_w = a_inv * w;
  const double cross = r.w_prime[0] * r.mapped_w[1] - r.w_prime[1] * r.mapped_w[0];
  r.parallelism_defect = std::abs(cross) / (norm2(r.w_prime) * norm2(r.mapped_w));
  return r;
}

void write_report(std::ostream& out, const ShearReport& r) {
  const auto old = out.precision(17);
  out << "w_prime=" << r.w_prime[0] << ',' << r.w_prime[1] << '\n'
      << "mapped_w=" << r.mapped_w[0] << ',' << r.mapped_w[1] << '\n'
      << "parallelism_defect=" << r.parallelism_defect << '\n';
  out.precision(old);
}

}  // namespace bnqn
