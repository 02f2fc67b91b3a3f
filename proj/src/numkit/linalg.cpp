#include <cmath>
#include <vector>

#include "liecomm/matrix.hpp"

namespace liecomm {

namespace {

template <class T>
struct LU {
  Matrix<T> lu;
  std::vector<std::size_t> perm;
  int sign = 1;
};

template <class T>
LU<T> lu_factor(Matrix<T> a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "LU of non-square matrix");
  const std::size_t n = a.rows();
  LU<T> out;
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    if (best == 0.0) throw Error(ErrorCode::InvalidArgument, "singular matrix in LU factorization");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(out.perm[k], out.perm[piv]);
      out.sign = -out.sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      a(i, k) = f;
      if (f == T{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  out.lu = std::move(a);
  return out;
}

}  // namespace

template <class T>
Matrix<T> lu_solve(Matrix<T> a, Matrix<T> b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "lu_solve shape mismatch");
  const auto f = lu_factor(std::move(a));
  const std::size_t n = f.lu.rows();
  Matrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(f.perm[i], j);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      T s = x(i, j);
      for (std::size_t k = 0; k < i; ++k) s -= f.lu(i, k) * x(k, j);
      x(i, j) = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      T s = x(ii, j);
      for (std::size_t k = ii + 1; k < n; ++k) s -= f.lu(ii, k) * x(k, j);
      x(ii, j) = s / f.lu(ii, ii);
    }
  }
  return x;
}

template <class T>
T determinant(Matrix<T> a) {
  LU<T> f;
  try {
    f = lu_factor(std::move(a));
  } catch (const Error&) {
    return T{};
  }
  T d = T(f.sign);
  for (std::size_t i = 0; i < f.lu.rows(); ++i) d *= f.lu(i, i);
  return d;
}

template Matrix<double> lu_solve(Matrix<double>, Matrix<double>);
template Matrix<cplx> lu_solve(Matrix<cplx>, Matrix<cplx>);
template double determinant(Matrix<double>);
template cplx determinant(Matrix<cplx>);

RMatrix cholesky(const RMatrix& a) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "cholesky of non-square matrix");
  const std::size_t n = a.rows();
  RMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "matrix is not positive definite");
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

std::vector<double> spd_solve(const RMatrix& a, std::span<const double> b) {
  const RMatrix l = cholesky(a);
  const std::size_t n = l.rows();
  if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "spd_solve shape mismatch");
  std::vector<double> y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) y[i] -= l(i, k) * y[k];
    y[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) y[i] -= l(k, i) * y[k];
    y[i] /= l(i, i);
  }
  return y;
}

}  // namespace liecomm
