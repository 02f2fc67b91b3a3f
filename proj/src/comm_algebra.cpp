#include "liecomm/comm_algebra.hpp"

#include <cmath>

#include "liecomm/numkit.hpp"

namespace liecomm {

AlgebraElement regular_element(const AlgebraPtr& su_n, double r) {
  if (!su_n || !su_n->su_degree()) throw Error(ErrorCode::AlgebraMismatch, "regular_element needs su(n)");
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidArgument, "scale must be finite and non-negative");
  const auto n = static_cast<std::size_t>(*su_n->su_degree());
  std::vector<double> d(n);
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    d[k] = static_cast<double>(k + 1) - 0.5 * static_cast<double>(n + 1);
    ss += d[k] * d[k];
  }
  const double c = r / std::sqrt(ss);
  CMatrix x(n, n);
  for (std::size_t k = 0; k < n; ++k) x(k, k) = cplx(0.0, c * d[k]);
  return AlgebraElement::from_matrix(su_n, x);
}

AlgebraElement invert_ad_on_complement(const AlgebraElement& x, const AlgebraElement& w, double tol) {
  const auto& alg = x.algebra();
  if (w.algebra() != alg) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
  if (!alg->has_realization()) throw Error(ErrorCode::NotApplicable, "ad inversion needs a matrix realization");
  const std::size_t n = alg->realization_size();
  const cplx I(0.0, 1.0);

  const HermEig e = herm_eig(x.matrix() * I);
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (e.values[j] - e.values[j + 1] < 1e-12)
      throw Error(ErrorCode::NotRegular, "x has a repeated eigenvalue");

  const CMatrix& u = e.vectors;
  const CMatrix wt = u.adjoint() * w.matrix() * u;
  double diag = 0.0;
  for (std::size_t j = 0; j < n; ++j) diag += std::norm(wt(j, j));
  if (std::sqrt(diag) > tol * w.norm())
    throw Error(ErrorCode::NotInComplement, "target has a component along the centralizer of x");

  // x = u diag(-i lambda) u^H, so [x, y]_jk = -i (lambda_j - lambda_k) y_jk there
  CMatrix yt(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k) yt(j, k) = wt(j, k) / (-I * (e.values[j] - e.values[k]));
  return AlgebraElement::from_matrix(alg, u * yt * u.adjoint());
}

AlgebraDecomposition decompose_algebra(const AlgebraPtr& su_n, const AlgebraElement& z,
                                       const AlgebraConfig& config) {
  if (!su_n || !su_n->su_degree()) throw Error(ErrorCode::AlgebraMismatch, "decompose_algebra needs su(n)");
  if (z.algebra() != su_n) throw Error(ErrorCode::AlgebraMismatch, "target is not in the given algebra");
  const auto n = static_cast<std::size_t>(*su_n->su_degree());
  const double nz = z.norm();
  if (!std::isfinite(nz)) throw Error(ErrorCode::InvalidArgument, "target is not finite");
  if (nz > config.z_max) throw Error(ErrorCode::TargetTooLarge, "||z|| exceeds z_max");

  TorusBasis torus = fourier_orthogonal_torus(su_n, UnitaryFrame::standard(n));
  const AlgebraElement zero = AlgebraElement::zero(su_n);
  if (nz == 0.0) {
    const AlgebraElement x0 = regular_element(su_n, config.zero_target_scale);
    return AlgebraDecomposition{z,    x0,   zero,   GroupElement::identity(n), x0,
                                zero, zero, torus,  config.zero_target_scale,   0.0,
                                x0.norm(), 0.0};
  }

  const double r = std::sqrt(nz);
  const AlgebraElement x0 = regular_element(su_n, r);
  Conjugation conj = conjugate_into_torus(su_n, z, torus);
  const AlgebraElement y0 = invert_ad_on_complement(x0, conj.z_prime, config.tol);

  const GroupElement& g = conj.g;
  AlgebraElement x = AlgebraElement::from_matrix(su_n, g.conjugate(x0.matrix()));
  AlgebraElement y = AlgebraElement::from_matrix(su_n, g.conjugate(y0.matrix()));
  const double residual = (bracket(x, y) - z).norm();
  if (!(residual <= config.tol)) throw Error(ErrorCode::NoConvergence, "commutator residual exceeds tolerance");
  const double nx = x.norm(), ny = y.norm();
  return AlgebraDecomposition{z,      std::move(x),         std::move(y), g,  x0, conj.z_prime, y0,
                              torus,  r, residual, nx, ny};
}

}  // namespace liecomm
