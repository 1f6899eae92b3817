#include "bnqn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bnqn/error.hpp"

namespace bnqn {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

SymmetricMatrix::SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymmetricMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != m_) throw InvalidArgument("SymmetricMatrix rows must be square");
    std::size_t j = 0;
    for (double v : row) {
      if (j >= i) (*this)(i, j) = v;
      ++j;
    }
    ++i;
  }
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t m) {
  SymmetricMatrix s(m);
  for (std::size_t i = 0; i < m; ++i) s(i, i) = 1.0;
  return s;
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d) {
  SymmetricMatrix s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s(i, i) = d[i];
  return s;
}

SymmetricMatrix SymmetricMatrix::shifted(double s) const {
  SymmetricMatrix out = *this;
  for (std::size_t i = 0; i < m_; ++i) out(i, i) += s;
  return out;
}

Vector SymmetricMatrix::operator*(std::span<const double> v) const {
  Vector out(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) s += (*this)(i, j) * (*this)(i, j);
  return std::sqrt(s);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("Matrix rows must have equal length");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t m) {
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::from_symmetric(const SymmetricMatrix& s) {
  const std::size_t m = s.dimension();
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = s(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      for (std::size_t j = 0; j < other.cols_; ++j) out(i, j) += (*this)(i, k) * other(k, j);
  return out;
}

Matrix Matrix::operator*(double s) const {
  Matrix out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

Vector Matrix::operator*(std::span<const double> v) const {
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

double Matrix::frobenius_norm() const {
  return std::sqrt(std::inner_product(data_.begin(), data_.end(), data_.begin(), 0.0));
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw InvalidArgument("inverse of a non-square matrix");
  const std::size_t m = rows_;
  Matrix a = *this;
  Matrix inv = identity(m);
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) throw SingularMatrix("matrix is singular");
    if (pivot != col) {
      for (std::size_t j = 0; j < m; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const double d = a(col, col);
    for (std::size_t j = 0; j < m; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

SymmetricMatrix Matrix::congruence(const Matrix& m, const SymmetricMatrix& s) {
  const Matrix full = m.transpose() * (Matrix::from_symmetric(s) * m);
  SymmetricMatrix out(m.cols());
  for (std::size_t i = 0; i < m.cols(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) out(i, j) = 0.5 * (full(i, j) + full(j, i));
  return out;
}

Vector EigenDecomposition::eigenvector(std::size_t i) const {
  Vector v(eigenvectors.rows());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = eigenvectors(r, i);
  return v;
}

Matrix EigenDecomposition::reconstruct() const {
  const std::size_t m = eigenvalues.size();
  Matrix out(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        out(i, j) += eigenvectors(i, k) * eigenvalues[k] * eigenvectors(j, k);
  return out;
}

namespace {

void normalize_sign(Matrix& q, std::size_t col) {
  for (std::size_t r = 0; r < q.rows(); ++r) {
    if (q(r, col) == 0.0) continue;
    if (q(r, col) < 0.0)
      for (std::size_t k = 0; k < q.rows(); ++k) q(k, col) = -q(k, col);
    return;
  }
}

EigenDecomposition eigh_2x2(const SymmetricMatrix& s) {
  const double a = s(0, 0), b = s(0, 1), c = s(1, 1);
  EigenDecomposition e{Vector(2), Matrix(2, 2)};
  if (b == 0.0) {
    // Already diagonal: axis-aligned eigenvectors.
    const bool ordered = a <= c;
    e.eigenvalues = ordered ? Vector{a, c} : Vector{c, a};
    e.eigenvectors(ordered ? 0 : 1, 0) = 1.0;
    e.eigenvectors(ordered ? 1 : 0, 1) = 1.0;
    return e;
  }
  const double mean = 0.5 * (a + c);
  const double half = 0.5 * (a - c);
  const double r = std::hypot(half, b);
  const double lo = mean - r;
  e.eigenvalues = {lo, mean + r};

  // (b, lo - a) and (lo - c, b) both span the eigenspace of lo; take the
  // better conditioned one.
  double x, y;
  if (std::abs(lo - a) >= std::abs(lo - c)) {
    x = b;
    y = lo - a;
  } else {
    x = lo - c;
    y = b;
  }
  const double n = std::hypot(x, y);
  x /= n;
  y /= n;
  e.eigenvectors(0, 0) = x;
  e.eigenvectors(1, 0) = y;
  e.eigenvectors(0, 1) = -y;
  e.eigenvectors(1, 1) = x;
  normalize_sign(e.eigenvectors, 0);
  normalize_sign(e.eigenvectors, 1);
  return e;
}

EigenDecomposition eigh_jacobi(const SymmetricMatrix& s) {
  const std::size_t m = s.dimension();
  Matrix a = Matrix::from_symmetric(s);
  Matrix v = Matrix::identity(m);
  const double scale = s.frobenius_norm();

  auto off_norm = [&]() {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) acc += a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  for (int sweep = 0; sweep < 100 && off_norm() > 1e-14 * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = cs * akp - sn * akq;
          a(k, q) = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = cs * apk - sn * aqk;
          a(q, k) = sn * apk + cs * aqk;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = cs * vkp - sn * vkq;
          v(k, q) = sn * vkp + cs * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition e{Vector(m), Matrix(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    e.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < m; ++r) e.eigenvectors(r, k) = v(r, order[k]);
    normalize_sign(e.eigenvectors, k);
  }
  return e;
}

}  // namespace

EigenDecomposition eigh(const SymmetricMatrix& a) {
  switch (a.dimension()) {
    case 0:
      return {};
    case 1: {
      EigenDecomposition e{Vector{a(0, 0)}, Matrix(1, 1)};
      e.eigenvectors(0, 0) = 1.0;
      return e;
    }
    case 2:
      return eigh_2x2(a);
    default:
      return eigh_jacobi(a);
  }
}

double sp(const SymmetricMatrix& a) {
  double out = 0.0;
  for (double l : eigh(a).eigenvalues) out = std::max(out, std::abs(l));
  return out;
}

double minsp(const EigenDecomposition& e) {
  if (e.eigenvalues.empty()) return 0.0;
  double out = std::abs(e.eigenvalues.front());
  for (double l : e.eigenvalues) out = std::min(out, std::abs(l));
  return out;
}

double minsp(const SymmetricMatrix& a) { return minsp(eigh(a)); }

Vector reflected_direction(const EigenDecomposition& e, std::span<const double> grad) {
  const std::size_t m = e.eigenvalues.size();
  Vector w(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = e.eigenvalues[k];
    if (lambda == 0.0) throw SingularMatrix("reflected direction needs an invertible matrix");
    double proj = 0.0;
    for (std::size_t r = 0; r < m; ++r) proj += e.eigenvectors(r, k) * grad[r];
    const double coeff = proj / std::abs(lambda);
    for (std::size_t r = 0; r < m; ++r) w[r] += coeff * e.eigenvectors(r, k);
  }
  return w;
}

Vector reflected_direction(const SymmetricMatrix& a, std::span<const double> grad) {
  return reflected_direction(eigh(a), grad);
}

Vector solve(const SymmetricMatrix& a, std::span<const double> rhs) {
  const EigenDecomposition e = eigh(a);
  const std::size_t m = e.eigenvalues.size();
  Vector x(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    const double lambda = e.eigenvalues[k];
    if (lambda == 0.0) throw SingularMatrix("solve with a singular matrix");
    double proj = 0.0;
    for (std::size_t r = 0; r < m; ++r) proj += e.eigenvectors(r, k) * rhs[r];
    const double coeff = proj / lambda;
    for (std::size_t r = 0; r < m; ++r) x[r] += coeff * e.eigenvectors(r, k);
  }
  return x;
}

}  // namespace bnqn
