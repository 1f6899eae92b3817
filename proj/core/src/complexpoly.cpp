#include "bnqn/complexpoly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "bnqn/error.hpp"

namespace bnqn {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view token) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw InvalidArgument("cannot parse coefficient '" + std::string(token) + "'");
  }
  return value;
}

// Imaginary part text without the trailing 'i'; "" / "+" / "-" mean unit magnitude.
double parse_imag(std::string_view s, std::string_view token) {
  s = trim(s);
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, token);
}

Complex parse_coefficient(std::string_view token) {
  std::string_view t = trim(token);
  if (t.empty()) throw InvalidArgument("empty coefficient in polynomial string");
  if (t.back() != 'i') return {parse_real(t, token), 0.0};
  t.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = t.size(); k-- > 1;) {
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(t, token)};
  return {parse_real(t.substr(0, split), token), parse_imag(t.substr(split), token)};
}

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const Complex& c : coeffs_) {
    if (!is_finite(c)) throw InvalidArgument("polynomial coefficients must be finite");
  }
  while (coeffs_.size() > 1 && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.push_back(Complex{});
}

Polynomial Polynomial::parse(std::string_view text, bool highest_first) {
  std::vector<Complex> coeffs;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    coeffs.push_back(parse_coefficient(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (highest_first) std::reverse(coeffs.begin(), coeffs.end());
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (const Complex& r : roots) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

double Polynomial::cauchy_bound() const {
  double m = 0.0;
  const double lead = std::abs(leading());
  if (lead == 0.0) return 1.0;
  for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) m = std::max(m, std::abs(coeffs_[k]) / lead);
  return 1.0 + m;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

std::string Polynomial::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) out += ',';
    const Complex c = coeffs_[k];
    out += format_real(c.real());
    if (c.imag() != 0.0) {
      if (c.imag() > 0.0) out += '+';
      out += format_real(c.imag());
      out += 'i';
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<Complex> c(coeffs_.size() + other.coeffs_.size() - 1, Complex{});
  for (std::size_t a = 0; a < coeffs_.size(); ++a)
    for (std::size_t b = 0; b < other.coeffs_.size(); ++b) c[a + b] += coeffs_[a] * other.coeffs_[b];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::scaled(Complex s) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::composed_with_scaling(Complex a) const {
  std::vector<Complex> c = coeffs_;
  Complex power = 1.0;
  for (Complex& v : c) {
    v *= power;
    power *= a;
  }
  return Polynomial(std::move(c));
}

Complex poly_eval(const Polynomial& p, Complex z) {
  const auto& c = p.coeffs();
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

Polynomial poly_derivative(const Polynomial& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return Polynomial{};
  std::vector<Complex> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

double pole_tolerance(const Polynomial& p, Complex z) {
  const int d = std::max(p.degree() - 1, 0);
  return 1e-14 * std::pow(1.0 + std::abs(z), d);
}

Complex newton_map_1d(const Polynomial& p, Complex z) { return relaxed_newton_map(p, z, 1.0); }

Complex relaxed_newton_map(const Polynomial& p, Complex z, Complex alpha) {
  const Complex dp = poly_eval(poly_derivative(p), z);
  if (std::abs(dp) < pole_tolerance(p, z)) {
    throw DerivativeVanishes("p'(z) vanishes at z = " + format_real(z.real()) + "+" +
                             format_real(z.imag()) + "i");
  }
  return z - alpha * (poly_eval(p, z) / dp);
}

RelaxationDisk::RelaxationDisk(double rho) : rho_(rho) {
  if (!(rho > 0.5 && rho < 1.0)) throw InvalidArgument("relaxation radius must satisfy 0.5 < rho < 1");
}

Complex sample_relaxed_alpha(const RelaxationDisk& disk, SeededRandomSource& rng) {
  const double rho = disk.rho();
  while (true) {
    const double u = rng.uniform(-rho, rho);
    const double v = rng.uniform(-rho, rho);
    if (u * u + v * v <= rho * rho) return {1.0 + u, v};
  }
}

double bisector_newton_map(double y) {
  if (y == 0.0) throw PoleHit("bisector Newton map has a pole at y = 0");
  return (y * y - 1.0) / (2.0 * y);
}

double schroder_conjugacy_defect(Complex z) {
  if (std::abs(z) == 0.0) throw PoleHit("Newton map of z^2-1 is undefined at 0");
  if (std::abs(z + 1.0) == 0.0) throw PoleHit("conjugating map has a pole at -1");
  static const Polynomial quadratic{-1.0, 0.0, 1.0};
  const Complex n = newton_map_1d(quadratic, z);
  if (std::abs(n + 1.0) == 0.0) throw PoleHit("Newton image lands on the pole -1");
  auto phi = [](Complex w) { return (w - 1.0) / (w + 1.0); };
  const Complex pz = phi(z);
  return std::abs(phi(n) - pz * pz);
}

std::vector<Complex> all_roots(const Polynomial& p, double tol, int max_iter) {
  const int n = p.degree();
  if (n < 1 || p.is_zero()) throw InvalidArgument("all_roots requires degree >= 1");
  const auto& c = p.coeffs();
  if (n == 1) return {-c[0] / c[1]};

  const double bound = p.cauchy_bound();
  const double scale = p.max_abs_coeff();
  auto residual_ok = [&](Complex r) {
    return std::abs(poly_eval(p, r)) <= tol * std::pow(1.0 + std::abs(r), n) * scale;
  };

  std::vector<Complex> z(n);
  const Complex seed{0.4, 0.9};
  Complex power = 1.0;
  for (int k = 0; k < n; ++k) {
    z[k] = bound * power;
    power *= seed;
  }

  const Complex lead = p.leading();
  auto sweep = [&]() {
    double max_step = 0.0;
    for (int i = 0; i < n; ++i) {
      Complex denom = lead;
      for (int j = 0; j < n; ++j) {
        if (j != i) denom *= (z[i] - z[j]);
      }
      if (denom == Complex{}) {
        // Coincident estimates; nudge apart and retry on the next sweep.
        z[i] += Complex{1e-8, 1e-8} * (1.0 + std::abs(z[i]));
        max_step = std::numeric_limits<double>::infinity();
        continue;
      }
      const Complex step = poly_eval(p, z[i]) / denom;
      z[i] -= step;
      max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    return max_step;
  };

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    const double step = sweep();
    if (step <= tol && std::all_of(z.begin(), z.end(), residual_ok)) {
      converged = true;
      break;
    }
    if (it > 50 && std::all_of(z.begin(), z.end(), residual_ok)) {
      // Multiple roots stall at a roundoff floor; a few extra sweeps tighten simple ones.
      for (int polish = 0; polish < 8; ++polish) sweep();
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("Durand-Kerner did not converge within the iteration cap");

  // Replace clusters (multiple roots) by their centroid.
  const double radius = std::max(tol, 1e-5) * bound;
  std::vector<int> group(n, -1);
  int groups = 0;
  for (int i = 0; i < n; ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      for (int b = 0; b < n; ++b) {
        if (group[b] < 0 && std::abs(z[a] - z[b]) <= radius) {
          group[b] = groups;
          stack.push_back(b);
        }
      }
    }
    ++groups;
  }
  std::vector<Complex> centroid(groups, Complex{});
  std::vector<int> count(groups, 0);
  for (int i = 0; i < n; ++i) {
    centroid[group[i]] += z[i];
    ++count[group[i]];
  }
  std::vector<Complex> out(n);
  for (int i = 0; i < n; ++i) out[i] = centroid[group[i]] / static_cast<double>(count[group[i]]);

  // Order by real part (quantized, so conjugate pairs with equal real part are
  // not reordered by roundoff), then by imaginary part.
  auto key = [radius](Complex a) { return std::round(a.real() / radius); };
  std::stable_sort(out.begin(), out.end(), [&](Complex a, Complex b) {
    if (key(a) != key(b)) return key(a) < key(b);
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<Complex> distinct_roots(const Polynomial& p, double tol) {
  std::vector<Complex> roots = all_roots(p, tol);
  std::vector<Complex> out;
  for (const Complex& r : roots) {
    if (out.empty() || out.back() != r) out.push_back(r);
  }
  return out;
}

}  // namespace bnqn
