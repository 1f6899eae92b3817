#ifndef BNQN_OBJECTIVE_HPP
#define BNQN_OBJECTIVE_HPP

#include <array>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bnqn/complexpoly.hpp"
#include "bnqn/linalg.hpp"

namespace bnqn {

/// Terminal classification of a run.
struct LimitClass {
  enum class Kind { Root, CriticalNonRoot, Diverged, Undecided };

  Kind kind = Kind::Undecided;
  /// Root: index into all_roots(g). CriticalNonRoot: index into the critical
  /// points of g. -1 otherwise.
  int index = -1;
  /// The root or critical point itself (zero for Diverged / Undecided).
  Complex point{};

  static LimitClass root(int i, Complex p) { return {Kind::Root, i, p}; }
  static LimitClass critical(int i, Complex p) { return {Kind::CriticalNonRoot, i, p}; }
  static LimitClass diverged() { return {Kind::Diverged, -1, {}}; }
  static LimitClass undecided() { return {Kind::Undecided, -1, {}}; }

  /// "Root", "CriticalNonRoot", "Diverged" or "Undecided".
  const char* kind_name() const noexcept;
  /// e.g. "Root(1)", "CriticalNonRoot(0)", "Diverged".
  std::string to_string() const;
};

/// Same kind and, for Root / CriticalNonRoot, limit points within `tol`.
bool same_limit(const LimitClass& a, const LimitClass& b, double tol = 1e-6);

/// Smooth real objective F: R^m -> R with analytic derivatives.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> z) const = 0;
  virtual Vector gradient(std::span<const double> z) const = 0;
  virtual SymmetricMatrix hessian(std::span<const double> z) const = 0;

  /// value(a) - value(b). Implementations may override with a formula that
  /// stays accurate when the difference is far below the rounding level of
  /// value(b); the Armijo test is evaluated through this function.
  virtual double value_difference(std::span<const double> a, std::span<const double> b) const {
    return value(a) - value(b);
  }

  /// Points with norm above this radius count as diverged.
  virtual double divergence_radius() const { return std::numeric_limits<double>::infinity(); }

  /// Classification of a terminal point. Generic objectives know nothing about
  /// their critical set and report Undecided.
  virtual LimitClass classify(std::span<const double> z, double tol) const;
};

/// F(x, y) = |g(x + iy)|^2 / 2 for a complex polynomial g.
class PolyModulusObjective final : public Objective {
 public:
  explicit PolyModulusObjective(Polynomial g);

  const Polynomial& polynomial() const noexcept { return g_; }
  const Polynomial& derivative() const noexcept { return dg_; }
  /// all_roots(g), with multiplicity.
  const std::vector<Complex>& roots() const noexcept { return roots_; }
  /// Roots of g' (with multiplicity); empty for linear g.
  const std::vector<Complex>& critical_points() const noexcept { return critical_; }

  std::size_t dimension() const override { return 2; }
  double value(std::span<const double> z) const override;
  Vector gradient(std::span<const double> z) const override;
  SymmetricMatrix hessian(std::span<const double> z) const override;
  double value_difference(std::span<const double> a, std::span<const double> b) const override;
  double divergence_radius() const override { return divergence_radius_; }
  /// A root of multiplicity m captures points within max(tol, tol^(1/m)):
  /// near such a root |grad F| ~ |z - r|^(2m-1), so a gradient-based stop
  /// lands proportionally further out.
  LimitClass classify(std::span<const double> z, double tol) const override;

  double value(double x, double y) const;

 private:
  Polynomial g_, dg_, d2g_;
  std::vector<Complex> roots_;
  std::vector<int> multiplicity_;
  std::vector<Complex> critical_;
  double divergence_radius_;
};

/// F(x, y) = |P(z) / P'(z)|^2 / 2 with z = x + iy. The zeros of P / P' are
/// the zeros of P, all simple. Infinite at zeros of P' that are not zeros of P.
class NewtonQuotientObjective final : public Objective {
 public:
  explicit NewtonQuotientObjective(Polynomial p);

  std::size_t dimension() const override { return 2; }
  double value(std::span<const double> z) const override;
  Vector gradient(std::span<const double> z) const override;
  SymmetricMatrix hessian(std::span<const double> z) const override;

 private:
  // g, g', g'' at z.
  std::array<Complex, 3> jet(Complex z) const;

  Polynomial p_, dp_, d2p_, d3p_;
};

/// F(x, y) = x y, or the sheared G(x, y) = F(x + y, y) = (x + y) y.
class BilinearTestObjective final : public Objective {
 public:
  explicit BilinearTestObjective(bool sheared = false) : sheared_(sheared) {}

  std::size_t dimension() const override { return 2; }
  double value(std::span<const double> z) const override;
  Vector gradient(std::span<const double> z) const override;
  SymmetricMatrix hessian(std::span<const double> z) const override;

 private:
  bool sheared_;
};

/// F(z) = <z - c, H (z - c)> / 2 with constant symmetric H. Test fixture for
/// one-step properties of the Newton-type methods.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(SymmetricMatrix h, Vector center);

  std::size_t dimension() const override { return h_.dimension(); }
  double value(std::span<const double> z) const override;
  Vector gradient(std::span<const double> z) const override;
  SymmetricMatrix hessian(std::span<const double>) const override { return h_; }

 private:
  SymmetricMatrix h_;
  Vector center_;
};

/// Shorthand for value/gradient/Hessian at a complex point.
inline std::array<double, 2> to_point(Complex z) { return {z.real(), z.imag()}; }

LimitClass classify_limit(const PolyModulusObjective& obj, std::span<const double> z, double tol);

}  // namespace bnqn

#endif  // BNQN_OBJECTIVE_HPP
