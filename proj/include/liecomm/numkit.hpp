#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "liecomm/matrix.hpp"

namespace liecomm {

/// Default tolerances of the dense linear-algebra layer. Callers may pass
/// their own values where an operation takes a tolerance argument.
struct NumTolerances {
  double hermitian = 1e-12;   // relative ||H - H^H|| accepted by herm_eig
  double unitary = 1e-10;     // ||Z^H Z - I|| accepted by mlog_principal
  int jacobi_sweeps = 60;
  double rcond = 1e-12;
};

inline constexpr NumTolerances kNumDefaults{};

struct HermEig {
  std::vector<double> values;  // descending
  CMatrix vectors;             // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Eigenvalues are returned
/// in descending order; equal eigenvalues keep the order in which the sweep
/// left them on the diagonal.
HermEig herm_eig(const CMatrix& h, double tol = kNumDefaults.hermitian,
                 int max_sweeps = kNumDefaults.jacobi_sweeps);

/// Matrix exponential: scaling and squaring with a degree-13 Pade kernel.
CMatrix mexp(const CMatrix& x);
RMatrix mexp(const RMatrix& x);

/// Principal logarithm of a unitary matrix. Every eigenvalue phase must lie in
/// (-pi + margin, pi - margin), otherwise OutsideInjectivityDomain is thrown.
CMatrix mlog_principal(const CMatrix& z, double margin = 1e-6,
                       double unitary_tol = kNumDefaults.unitary);

struct LstsqResult {
  std::vector<double> solution;
  double residual = 0.0;  // ||J s - r||
  std::size_t rank = 0;
};

/// Minimum-norm least-squares solution of J s = r via a one-sided Jacobi SVD.
/// Singular values below rcond * sigma_max are dropped.
LstsqResult lstsq_min_norm(const RMatrix& j, std::span<const double> r,
                           double rcond = kNumDefaults.rcond);

struct Svd {
  RMatrix u;                  // rows x k
  std::vector<double> sigma;  // k = min(rows, cols), descending
  RMatrix v;                  // cols x k
};

/// Thin SVD A = U diag(sigma) V^T.
Svd svd(const RMatrix& a);

}  // namespace liecomm
