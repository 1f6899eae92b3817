#include "bnqn/objective.hpp"

#include <algorithm>
#include <cmath>

#include "bnqn/error.hpp"

namespace bnqn {

namespace {

// For F = |g|^2 / 2 with g holomorphic, at a point where g, g', g'' take the
// given values:
//   dF/dx = Re(g' conj g),  dF/dy = -Im(g' conj g)
//   Fxx = Re(g'' conj g) + |g'|^2,  Fyy = -Re(g'' conj g) + |g'|^2,
//   Fxy = -Im(g'' conj g)
Vector modulus_gradient(Complex g, Complex dg) {
  const Complex t = dg * std::conj(g);
  return {t.real(), -t.imag()};
}

SymmetricMatrix modulus_hessian(Complex g, Complex dg, Complex d2g) {
  const Complex s = d2g * std::conj(g);
  const double dg2 = std::norm(dg);
  SymmetricMatrix h(2);
  h(0, 0) = s.real() + dg2;
  h(1, 1) = -s.real() + dg2;
  h(0, 1) = -s.imag();
  return h;
}

Complex as_complex(std::span<const double> z) {
  if (z.size() != 2) throw InvalidArgument("planar objective expects a 2-vector");
  return {z[0], z[1]};
}

}  // namespace

const char* LimitClass::kind_name() const noexcept {
  switch (kind) {
    case Kind::Root:
      return "Root";
    case Kind::CriticalNonRoot:
      return "CriticalNonRoot";
    case Kind::Diverged:
      return "Diverged";
    case Kind::Undecided:
      break;
  }
  return "Undecided";
}

std::string LimitClass::to_string() const {
  std::string out = kind_name();
  if (kind == Kind::Root || kind == Kind::CriticalNonRoot) out += "(" + std::to_string(index) + ")";
  return out;
}

bool same_limit(const LimitClass& a, const LimitClass& b, double tol) {
  if (a.kind != b.kind) return false;
  if (a.kind == LimitClass::Kind::Root || a.kind == LimitClass::Kind::CriticalNonRoot)
    return std::abs(a.point - b.point) <= tol;
  return true;
}

LimitClass Objective::classify(std::span<const double> z, double) const {
  if (norm2(z) > divergence_radius()) return LimitClass::diverged();
  return LimitClass::undecided();
}

PolyModulusObjective::PolyModulusObjective(Polynomial g)
    : g_(std::move(g)), dg_(poly_derivative(g_)), d2g_(poly_derivative(dg_)) {
  if (g_.degree() < 1) throw InvalidArgument("objective polynomial must have degree >= 1");
  roots_ = all_roots(g_);
  // all_roots replaces a cluster by its centroid, so repeated roots compare equal.
  for (Complex r : roots_) multiplicity_.push_back(static_cast<int>(std::count(roots_.begin(), roots_.end(), r)));
  if (dg_.degree() >= 1) critical_ = all_roots(dg_);
  divergence_radius_ = 1e8 * (1.0 + g_.cauchy_bound());
}

double PolyModulusObjective::value(double x, double y) const {
  return 0.5 * std::norm(poly_eval(g_, {x, y}));
}

double PolyModulusObjective::value(std::span<const double> z) const {
  const Complex w = as_complex(z);
  return value(w.real(), w.imag());
}

Vector PolyModulusObjective::gradient(std::span<const double> z) const {
  const Complex w = as_complex(z);
  return modulus_gradient(poly_eval(g_, w), poly_eval(dg_, w));
}

double PolyModulusObjective::value_difference(std::span<const double> a, std::span<const double> b) const {
  // |g(a)|^2 - |g(b)|^2 = Re((g(a) - g(b)) conj(g(a) + g(b))), with
  // g(a) - g(b) = (a - b) D(a, b) and D the divided difference, accumulated
  // alongside Horner's scheme: D_k = G_{k+1}(a) + D_{k+1} b.
  const Complex za = as_complex(a);
  const Complex zb = as_complex(b);
  const auto& c = g_.coeffs();
  Complex ga = c.back();
  Complex gb = c.back();
  Complex dd{};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dd = ga + dd * zb;
    ga = ga * za + c[k];
    gb = gb * zb + c[k];
  }
  const Complex diff = (za - zb) * dd;
  return 0.5 * (diff * std::conj(ga + gb)).real();
}

SymmetricMatrix PolyModulusObjective::hessian(std::span<const double> z) const {
  const Complex w = as_complex(z);
  return modulus_hessian(poly_eval(g_, w), poly_eval(dg_, w), poly_eval(d2g_, w));
}

LimitClass PolyModulusObjective::classify(std::span<const double> z, double tol) const {
  const Complex w = as_complex(z);
  auto nearest = [&](const std::vector<Complex>& pts) {
    int best = -1;
    double best_d = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = std::abs(w - pts[i]);
      if (best < 0 || d < best_d) {
        best = static_cast<int>(i);
        best_d = d;
      }
    }
    return std::pair{best, best_d};
  };

  // Roots take precedence: a multiple root is also a critical point of g.
  if (auto [i, d] = nearest(roots_); i >= 0) {
    const double reach = std::max(tol, std::pow(tol, 1.0 / multiplicity_[static_cast<std::size_t>(i)]));
    if (d <= reach) return LimitClass::root(i, roots_[i]);
  }
  for (std::size_t i = 0; i < critical_.size(); ++i) {
    if (std::abs(w - critical_[i]) > tol) continue;
    const bool is_root =
        std::any_of(roots_.begin(), roots_.end(), [&](Complex r) { return std::abs(r - critical_[i]) <= tol; });
    if (!is_root) return LimitClass::critical(static_cast<int>(i), critical_[i]);
  }
  if (std::abs(w) > divergence_radius_) return LimitClass::diverged();
  return LimitClass::undecided();
}

LimitClass classify_limit(const PolyModulusObjective& obj, std::span<const double> z, double tol) {
  return obj.classify(z, tol);
}

NewtonQuotientObjective::NewtonQuotientObjective(Polynomial p)
    : p_(std::move(p)), dp_(poly_derivative(p_)), d2p_(poly_derivative(dp_)), d3p_(poly_derivative(d2p_)) {
  if (p_.degree() < 1) throw InvalidArgument("P / P' needs deg P >= 1");
}

std::array<Complex, 3> NewtonQuotientObjective::jet(Complex z) const {
  // g = P / Q with Q = P'. N = P'Q - PQ' is the numerator of g'.
  const Complex p = poly_eval(p_, z);
  const Complex q = poly_eval(dp_, z);
  const Complex dq = poly_eval(d2p_, z);
  const Complex d2q = poly_eval(d3p_, z);
  const Complex n = q * q - p * dq;
  const Complex dn = dq * q - p * d2q;
  return {p / q, n / (q * q), (dn * q - 2.0 * n * dq) / (q * q * q)};
}

double NewtonQuotientObjective::value(std::span<const double> z) const {
  const Complex w = as_complex(z);
  return 0.5 * std::norm(poly_eval(p_, w) / poly_eval(dp_, w));
}

Vector NewtonQuotientObjective::gradient(std::span<const double> z) const {
  const auto [g, dg, d2g] = jet(as_complex(z));
  return modulus_gradient(g, dg);
}

SymmetricMatrix NewtonQuotientObjective::hessian(std::span<const double> z) const {
  const auto [g, dg, d2g] = jet(as_complex(z));
  return modulus_hessian(g, dg, d2g);
}

double BilinearTestObjective::value(std::span<const double> z) const {
  return sheared_ ? (z[0] + z[1]) * z[1] : z[0] * z[1];
}

Vector BilinearTestObjective::gradient(std::span<const double> z) const {
  if (sheared_) return {z[1], z[0] + 2.0 * z[1]};
  return {z[1], z[0]};
}

SymmetricMatrix BilinearTestObjective::hessian(std::span<const double>) const {
  if (sheared_) return SymmetricMatrix{{0.0, 1.0}, {1.0, 2.0}};
  return SymmetricMatrix{{0.0, 1.0}, {1.0, 0.0}};
}

QuadraticObjective::QuadraticObjective(SymmetricMatrix h, Vector center)
    : h_(std::move(h)), center_(std::move(center)) {
  if (center_.size() != h_.dimension()) throw InvalidArgument("quadratic center has the wrong dimension");
}

double QuadraticObjective::value(std::span<const double> z) const {
  Vector d(z.begin(), z.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= center_[i];
  return 0.5 * dot(d, h_ * d);
}

Vector QuadraticObjective::gradient(std::span<const double> z) const {
  Vector d(z.begin(), z.end());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= center_[i];
  return h_ * d;
}

}  // namespace bnqn
