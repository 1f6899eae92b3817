#ifndef BNQN_COMPLEXPOLY_HPP
#define BNQN_COMPLEXPOLY_HPP

#include <complex>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "bnqn/random.hpp"

namespace bnqn {

using Complex = std::complex<double>;

/// Complex-coefficient polynomial, coefficients stored lowest degree first.
///
/// Trailing zero coefficients are trimmed on construction, so the last stored
/// coefficient is the leading one. The zero polynomial stores a single 0 and
/// reports degree 0.
class Polynomial {
 public:
  Polynomial() : coeffs_{Complex{0.0, 0.0}} {}
  explicit Polynomial(std::vector<Complex> coeffs);
  Polynomial(std::initializer_list<Complex> coeffs) : Polynomial(std::vector<Complex>(coeffs)) {}

  /// Parses "re+imi" tokens separated by commas, lowest degree first unless
  /// `highest_first` is set. Examples: "-1,0,1", "1+2i,-0.5i,3".
  static Polynomial parse(std::string_view text, bool highest_first = false);

  /// Monic product of (z - r) over `roots`, scaled by `lead`.
  static Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

  const std::vector<Complex>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }
  Complex leading() const noexcept { return coeffs_.back(); }

  /// 1 + max |a_i / a_n|. Every root has modulus below this bound.
  double cauchy_bound() const;
  double max_abs_coeff() const;

  /// Serializes lowest-first with 17 significant digits.
  std::string to_string() const;

  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(Complex c) const;
  /// Returns q(z) = p(a z).
  Polynomial composed_with_scaling(Complex a) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<Complex> coeffs_;
};

/// Horner evaluation.
Complex poly_eval(const Polynomial& p, Complex z);

Polynomial poly_derivative(const Polynomial& p);

/// Threshold below which |p'(z)| is treated as zero by the Newton maps.
double pole_tolerance(const Polynomial& p, Complex z);

/// z - p(z)/p'(z). Throws DerivativeVanishes at exceptional points.
Complex newton_map_1d(const Polynomial& p, Complex z);

/// z - alpha p(z)/p'(z).
Complex relaxed_newton_map(const Polynomial& p, Complex z, Complex alpha);

/// Disk {alpha : |alpha - 1| <= rho} with 0.5 < rho < 1.
class RelaxationDisk {
 public:
  explicit RelaxationDisk(double rho);
  double rho() const noexcept { return rho_; }

 private:
  double rho_;
};

/// Draws alpha uniformly (area measure) from the disk by rejection from its
/// bounding square.
Complex sample_relaxed_alpha(const RelaxationDisk& disk, SeededRandomSource& rng);

/// Newton map of z^2 - 1 restricted to the imaginary axis z = iy:
/// y -> (y^2 - 1) / (2y). Throws PoleHit at y = 0.
double bisector_newton_map(double y);

/// |phi(N(z)) - phi(z)^2| with phi(z) = (z-1)/(z+1) and N the Newton map of
/// z^2 - 1. Zero up to roundoff. Throws PoleHit at z = 0 and z = -1.
double schroder_conjugacy_defect(Complex z);

/// All roots with multiplicity by Durand-Kerner iteration. Roots closer than
/// the clustering radius are replaced by their centroid. Throws NoConvergence
/// if the residual bound is not met within the iteration cap.
std::vector<Complex> all_roots(const Polynomial& p, double tol = 1e-12, int max_iter = 5000);

/// Roots of `p` with multiplicity collapsed.
std::vector<Complex> distinct_roots(const Polynomial& p, double tol = 1e-12);

}  // namespace bnqn

#endif  // BNQN_COMPLEXPOLY_HPP
