#ifndef BNQN_INVARIANCE_HPP
#define BNQN_INVARIANCE_HPP

#include <iosfwd>

#include "bnqn/linalg.hpp"
#include "bnqn/objective.hpp"
#include "bnqn/random.hpp"
#include "bnqn/solvers.hpp"

namespace bnqn {

/// A = c R with c > 0 and R real orthogonal (R R^T = Id to 1e-12).
class ConjugationSpec {
 public:
  ConjugationSpec(double c, Matrix r);

  /// c times the planar rotation by `angle` radians, optionally composed with
  /// the reflection (x, y) -> (x, -y).
  static ConjugationSpec planar(double c, double angle, bool reflect = false);
  /// Gram-Schmidt on a matrix with entries uniform in [-1, 1]. The determinant
  /// sign is left as drawn, so reflections occur.
  static ConjugationSpec random(std::size_t m, double c, SeededRandomSource& rng);

  double c() const noexcept { return c_; }
  const Matrix& rotation() const noexcept { return r_; }
  Matrix matrix() const { return r_ * c_; }
  Matrix inverse() const { return r_.transpose() * (1.0 / c_); }

 private:
  double c_;
  Matrix r_;
};

/// G(z) = F(A z): value F(Az), gradient A^T grad F(Az), Hessian A^T hess F(Az) A.
/// Classification maps the point forward through A.
class ConjugatedObjective final : public Objective {
 public:
  /// `base` must outlive this object.
  ConjugatedObjective(const Objective& base, Matrix a);

  std::size_t dimension() const override { return base_.dimension(); }
  double value(std::span<const double> z) const override;
  Vector gradient(std::span<const double> z) const override;
  SymmetricMatrix hessian(std::span<const double> z) const override;
  double value_difference(std::span<const double> a, std::span<const double> b) const override;
  double divergence_radius() const override;
  LimitClass classify(std::span<const double> z, double tol) const override;

 private:
  const Objective& base_;
  Matrix a_;
  Matrix a_t_;
  double inverse_norm_;
};

/// deltas scaled by c^{2 - tau}, theta by c; everything else unchanged.
SolverConfig transform_config(const SolverConfig& cfg, double c);

/// Runs BNQN New Variant on F from z0 and on F(A .) from A^{-1} z0 with the
/// transformed config, n steps at most. Returns max_k |z'_k - A^{-1} z_k| / (1 + |z_k|).
/// A run that stops early is padded with its last iterate.
double check_invariance(const Objective& f, const ConjugationSpec& spec, std::span<const double> z0,
                        const SolverConfig& cfg, int n);

/// Same metric for Newton's optimization method, valid for any invertible A.
/// Throws SingularMatrix if a Hessian along either run is singular.
double newton_conjugacy_check(const Objective& f, const Matrix& a, std::span<const double> z0, int n);

struct ShearReport {
  Vector w_prime;
  Vector mapped_w;
  /// |sin| of the angle between w_prime and mapped_w.
  double parallelism_defect = 0.0;
};

/// F = x y and A = [[1, 1], [0, 1]]: compares the reflected direction of
/// G = F(A .) at `point` (delta = 0) with A^{-1} times the reflected direction
/// of F at A point. The two are not parallel for generic points, so BNQN is not
/// invariant under the shear.
ShearReport shear_counterexample(std::span<const double> point);

/// key=value lines.
void write_report(std::ostream& out, const ShearReport& r);

}  // namespace bnqn

#endif  // BNQN_INVARIANCE_HPP
