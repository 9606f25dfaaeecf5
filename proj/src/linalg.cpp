#include "xorgame/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xorgame/error.hpp"

namespace xorgame {

template <typename T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

template <typename T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

template class Matrix<double>;
template class Matrix<cplx>;

namespace {

template <typename T>
Matrix<T> matmul_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matmul");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      auto brow = b.row(k);
      auto crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

template <typename T>
double max_abs_diff_impl(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
  double worst = 0.0;
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < ad.size(); ++k) worst = std::max(worst, std::abs(ad[k] - bd[k]));
  return worst;
}

}  // namespace

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) { return matmul_impl(a, b); }
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul_impl(a, b); }

ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matvec");
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc{};
    auto r = a.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

double frobenius_norm(const RealMatrix& a) {
  double acc = 0.0;
  for (double v : a.data()) acc += v * v;
  return std::sqrt(acc);
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs_diff_impl(a, b); }
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_diff_impl(a, b); }

double symmetry_defect(const RealMatrix& a) {
  if (!a.square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - a(j, i)));
  return worst;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.square()) return INFINITY;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

cplx inner(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "inner");
  cplx acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm(std::span<const cplx> a) {
  double acc = 0.0;
  for (const cplx& v : a) acc += std::norm(v);
  return std::sqrt(acc);
}

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

SymmetricEigen jacobi_eigen(const RealMatrix& input, JacobiOptions opts) {
  if (!input.square()) throw Error(ErrorKind::NotSymmetric, "matrix is not square");
  if (symmetry_defect(input) > 1e-10) throw Error(ErrorKind::NotSymmetric, "symmetry defect above 1e-10");

  const std::size_t n = input.rows();
  RealMatrix a = input;
  // Symmetrize exactly so rotations see a consistent matrix.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));

  RealMatrix v = RealMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(a));

  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(acc);
  };

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (off_norm() <= opts.off_diagonal_tol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == opts.max_sweeps && off_norm() > opts.off_diagonal_tol * scale)
    throw Error(ErrorKind::DidNotConverge, "Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = RealMatrix(n, n);
  out.sweeps = sweep;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

RealMatrix recompose(const SymmetricEigen& eig) {
  const std::size_t n = eig.values.size();
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.values[k];
    if (lambda == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double vik = lambda * eig.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * eig.vectors(j, k);
    }
  }
  // Exact symmetry.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out(i, j) = out(j, i) = 0.5 * (out(i, j) + out(j, i));
  return out;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  ComplexMatrix q(n, a.cols());
  ComplexVector col(n);
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = a(i, j);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q(i, k);
      }
    }
    const double r = norm(std::span<const cplx>(col));
    if (r < 1e-14) throw Error(ErrorKind::DimensionMismatch, "columns are linearly dependent");
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / r;
  }
  return q;
}

}  // namespace xorgame
