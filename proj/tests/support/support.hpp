#ifndef BNQN_TEST_SUPPORT_HPP
#define BNQN_TEST_SUPPORT_HPP

#include <cmath>
#include <vector>

#include "bnqn/complexpoly.hpp"
#include "bnqn/linalg.hpp"
#include "bnqn/objective.hpp"
#include "bnqn/random.hpp"

namespace bnqn::test {

// Central differences of value (for the gradient) and of the gradient (for
// the Hessian). Step h scaled by 1 + |z_i|.
inline Vector fd_gradient(const Objective& f, std::span<const double> z, double h = 1e-6) {
  Vector g(z.size());
  Vector p(z.begin(), z.end());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double s = h * (1.0 + std::abs(z[i]));
    p[i] = z[i] + s;
    const double up = f.value(p);
    p[i] = z[i] - s;
    const double down = f.value(p);
    p[i] = z[i];
    g[i] = (up - down) / (2.0 * s);
  }
  return g;
}

inline Matrix fd_hessian(const Objective& f, std::span<const double> z, double h = 1e-5) {
  const std::size_t m = z.size();
  Matrix out(m, m);
  Vector p(z.begin(), z.end());
  for (std::size_t j = 0; j < m; ++j) {
    const double s = h * (1.0 + std::abs(z[j]));
    p[j] = z[j] + s;
    const Vector up = f.gradient(p);
    p[j] = z[j] - s;
    const Vector down = f.gradient(p);
    p[j] = z[j];
    for (std::size_t i = 0; i < m; ++i) out(i, j) = (up[i] - down[i]) / (2.0 * s);
  }
  return out;
}

inline double rel_error(std::span<const double> a, std::span<const double> b) {
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += (a[i] - b[i]) * (a[i] - b[i]);
    n += b[i] * b[i];
  }
  return std::sqrt(d) / std::max(1.0, std::sqrt(n));
}

inline double rel_error(const SymmetricMatrix& a, const Matrix& b) {
  double d = 0.0, n = 0.0;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      d += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
      n += b(i, j) * b(i, j);
    }
  return std::sqrt(d) / std::max(1.0, std::sqrt(n));
}

inline Complex random_complex(SeededRandomSource& rng, double r = 1.0) {
  return {rng.uniform(-r, r), rng.uniform(-r, r)};
}

// Coefficients in the unit disk, leading coefficient bounded away from zero.
inline Polynomial random_poly(SeededRandomSource& rng, int degree) {
  std::vector<Complex> c;
  for (int k = 0; k <= degree; ++k) {
    Complex z;
    do z = random_complex(rng); while (std::abs(z) > 1.0);
    c.push_back(z);
  }
  if (std::abs(c.back()) < 0.2) c.back() = 0.5;
  return Polynomial(c);
}

inline SymmetricMatrix random_symmetric(SeededRandomSource& rng, std::size_t m, double scale = 1.0) {
  SymmetricMatrix a(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) a(i, j) = rng.uniform(-scale, scale);
  return a;
}

}  // namespace bnqn::test

#endif  // BNQN_TEST_SUPPORT_HPP
