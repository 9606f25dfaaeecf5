#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace xorgame {

using cplx = std::complex<double>;

/// Dense row-major matrix. Sizes in this library stay small (order well
/// under a few hundred), so no blocking or expression templates.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(T scale) {
    for (auto& v : data_) v *= scale;
    return *this;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<cplx>;
using RealVector = std::vector<double>;
using ComplexVector = std::vector<cplx>;

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) { return a += b; }
template <typename T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) { return a -= b; }
template <typename T>
Matrix<T> operator*(Matrix<T> a, T scale) { return a *= scale; }

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x);

ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const RealMatrix& a);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double symmetry_defect(const RealMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);

double dot(std::span<const double> a, std::span<const double> b);
cplx inner(std::span<const cplx> a, std::span<const cplx> b);  // <a|b>, conjugate-linear in a
double norm(std::span<const double> a);
double norm(std::span<const cplx> a);

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values);

/// Symmetric eigendecomposition. Eigenvalues ascend; column k of
/// `vectors` is the unit eigenvector for values[k].
struct SymmetricEigen {
  RealVector values;
  RealMatrix vectors;
  int sweeps = 0;
};

struct JacobiOptions {
  double off_diagonal_tol = 1e-11;
  int max_sweeps = 100;
};

/// Cyclic Jacobi rotations. Throws NotSymmetric (defect > 1e-10) or
/// DidNotConverge.
SymmetricEigen jacobi_eigen(const RealMatrix& a, JacobiOptions opts = {});

/// Rebuilds V diag(values) V^T.
RealMatrix recompose(const SymmetricEigen& eig);

/// Orthonormalizes the columns of `a` by modified Gram-Schmidt. Columns
/// come out with R's diagonal positive real, so the factorization is unique.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& a);

}  // namespace xorgame
