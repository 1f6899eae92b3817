#ifndef BNQN_LINALG_HPP
#define BNQN_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bnqn {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// Real symmetric m x m matrix. Only the upper triangle is stored, so the
/// symmetry is structural.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t m) : m_(m), packed_(m * (m + 1) / 2, 0.0) {}
  /// Builds from a full row-major list of rows; the lower triangle is ignored.
  SymmetricMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymmetricMatrix identity(std::size_t m);
  static SymmetricMatrix diagonal(std::span<const double> d);

  std::size_t dimension() const noexcept { return m_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return packed_[index(i, j)]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return packed_[index(i, j)]; }

  /// Returns A + s * Id.
  SymmetricMatrix shifted(double s) const;
  Vector operator*(std::span<const double> v) const;
  double frobenius_norm() const;

 private:
  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    return i * m_ - i * (i + 1) / 2 + j;
  }

  std::size_t m_ = 0;
  std::vector<double> packed_;
};

/// General dense m x n matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t m);
  static Matrix from_symmetric(const SymmetricMatrix& s);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator*(double s) const;
  Vector operator*(std::span<const double> v) const;
  double frobenius_norm() const;
  /// Gauss-Jordan with partial pivoting. Throws SingularMatrix.
  Matrix inverse() const;

  /// Symmetric part M^T S M for symmetric S; used for conjugating Hessians.
  static SymmetricMatrix congruence(const Matrix& m, const SymmetricMatrix& s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Spectral factorization A = Q diag(eigenvalues) Q^T.
///
/// Eigenvalues ascend; column i of `eigenvectors` pairs with eigenvalue i and
/// has its first nonzero component positive.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  Vector eigenvector(std::size_t i) const;
  /// Q diag(lambda) Q^T.
  Matrix reconstruct() const;
};

/// Closed form for m <= 2, cyclic Jacobi sweeps otherwise.
EigenDecomposition eigh(const SymmetricMatrix& a);

/// Spectral radius: max |lambda|.
double sp(const SymmetricMatrix& a);
/// Min |lambda|; zero iff `a` is singular.
double minsp(const SymmetricMatrix& a);
double minsp(const EigenDecomposition& e);

/// w = pr_+(A^{-1} g) - pr_-(A^{-1} g) = Q |Lambda|^{-1} Q^T g.
/// Throws SingularMatrix when an eigenvalue is exactly zero.
Vector reflected_direction(const SymmetricMatrix& a, std::span<const double> grad);
Vector reflected_direction(const EigenDecomposition& e, std::span<const double> grad);

/// Plain solve A^{-1} g through the eigendecomposition.
Vector solve(const SymmetricMatrix& a, std::span<const double> rhs);

}  // namespace bnqn

#endif  // BNQN_LINALG_HPP
