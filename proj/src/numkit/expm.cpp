#include <cmath>
#include <numbers>

#include "liecomm/numkit.hpp"

namespace liecomm {

namespace {

// Higham (2005) degree-13 Pade coefficients.
constexpr double kPade13[] = {64764752532480000.0,
                              32382376266240000.0,
                              7771770303897600.0,
                              1187353796428800.0,
                              129060195264000.0,
                              10559470521600.0,
                              670442572800.0,
                              33522128640.0,
                              1323241920.0,
                              40840800.0,
                              960960.0,
                              16380.0,
                              182.0,
                              1.0};
constexpr double kTheta13 = 5.371920351148152;

template <class T>
Matrix<T> pade13_expm(const Matrix<T>& x) {
  if (!x.square()) throw Error(ErrorCode::DimensionMismatch, "mexp needs a square matrix");
  const std::size_t n = x.rows();
  const auto ident = Matrix<T>::identity(n);
  if (n == 0) return x;

  const double norm = x.norm1();
  int s = 0;
  if (norm > kTheta13) s = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const Matrix<T> a = x * T(std::ldexp(1.0, -s));

  const auto& b = kPade13;
  const Matrix<T> a2 = a * a;
  const Matrix<T> a4 = a2 * a2;
  const Matrix<T> a6 = a4 * a2;

  Matrix<T> u_inner = a6 * T(b[13]) + a4 * T(b[11]) + a2 * T(b[9]);
  u_inner = a6 * u_inner + a6 * T(b[7]) + a4 * T(b[5]) + a2 * T(b[3]) + ident * T(b[1]);
  const Matrix<T> u = a * u_inner;

  Matrix<T> v = a6 * T(b[12]) + a4 * T(b[10]) + a2 * T(b[8]);
  v = a6 * v + a6 * T(b[6]) + a4 * T(b[4]) + a2 * T(b[2]) + ident * T(b[0]);

  Matrix<T> r = lu_solve(v - u, v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

}  // namespace

CMatrix mexp(const CMatrix& x) { return pade13_expm(x); }
RMatrix mexp(const RMatrix& x) { return pade13_expm(x); }

CMatrix mlog_principal(const CMatrix& z, double margin, double unitary_tol) {
  if (!z.square()) throw Error(ErrorCode::DimensionMismatch, "mlog_principal needs a square matrix");
  if (!z.all_finite()) throw Error(ErrorCode::InvalidArgument, "mlog_principal input has non-finite entries");
  if (!(margin > 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be positive");
  const std::size_t n = z.rows();
  if (unitarity_residual(z) > unitary_tol)
    throw Error(ErrorCode::NotUnitary, "mlog_principal input is not unitary within tolerance");

  // Cayley transform H = i (I - Z)(I + Z)^{-1} is Hermitian with eigenvalues
  // tan(phase / 2); it shares Z's eigenvectors, degeneracies included.
  const CMatrix ident = CMatrix::identity(n);
  CMatrix h;
  try {
    h = lu_solve(ident + z, ident - z) * cplx(0.0, 1.0);
  } catch (const Error&) {
    throw Error(ErrorCode::OutsideInjectivityDomain, "eigenvalue -1: outside the principal branch");
  }
  h = (h + h.adjoint()) * cplx(0.5);
  if (!h.all_finite())
    throw Error(ErrorCode::OutsideInjectivityDomain, "eigenvalue -1: outside the principal branch");

  const HermEig eig = herm_eig(h);
  const double limit = std::numbers::pi - margin;
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = 2.0 * std::atan(eig.values[k]);
    if (std::abs(phase) >= limit)
      throw Error(ErrorCode::OutsideInjectivityDomain,
                  "eigenvalue phase violates the principal-branch margin");
    phases[k] = cplx(0.0, phase);
  }
  const CMatrix& w = eig.vectors;
  CMatrix l = w * CMatrix::diagonal(phases) * w.adjoint();
  return (l - l.adjoint()) * cplx(0.5);
}

}  // namespace liecomm
