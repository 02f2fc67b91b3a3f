#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "liecomm/numkit.hpp"

namespace liecomm {

HermEig herm_eig(const CMatrix& h, double tol, int max_sweeps) {
  if (!h.square()) throw Error(ErrorCode::DimensionMismatch, "herm_eig needs a square matrix");
  if (!h.all_finite()) throw Error(ErrorCode::InvalidArgument, "herm_eig input has non-finite entries");
  const std::size_t n = h.rows();
  const double norm = h.frobenius_norm();
  if (distance(h, h.adjoint()) > tol * norm)
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");

  CMatrix a = (h + h.adjoint()) * cplx(0.5);
  CMatrix v = CMatrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();

  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= eps * norm || off == 0.0) {
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        const double ag = std::abs(g);
        if (ag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * ag);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx ph = g / ag;

        // Rotation J acting on columns p, q: J = diag(ph, 1) * [[c, s], [-s, c]].
        const cplx jpp = ph * c, jpq = ph * s, jqp = -s, jqq = c;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  HermEig out;
  out.values.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

}  // namespace liecomm
