#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "liecomm/numkit.hpp"

namespace liecomm {

namespace {

// One-sided (Hestenes) Jacobi on the columns of a tall matrix.
Svd hestenes(const RMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  RMatrix w = a;
  RMatrix v = RMatrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (gamma == 0.0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += w(i, k) * w(i, k);
    sigma[k] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd out{RMatrix(m, n), std::vector<double>(n), RMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.sigma[k] = sigma[src];
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = sigma[src] > 0.0 ? w(i, src) / sigma[src] : 0.0;
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, src);
  }
  return out;
}

}  // namespace

Svd svd(const RMatrix& a) {
  if (a.rows() >= a.cols()) return hestenes(a);
  Svd t = hestenes(a.transpose());
  return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
}

LstsqResult lstsq_min_norm(const RMatrix& j, std::span<const double> r, double rcond) {
  if (r.size() != j.rows())
    throw Error(ErrorCode::DimensionMismatch, "lstsq_min_norm: rhs length differs from row count");
  if (!(rcond > 0.0)) throw Error(ErrorCode::InvalidArgument, "rcond must be positive");

  const Svd d = svd(j);
  LstsqResult out;
  out.solution.assign(j.cols(), 0.0);
  const double smax = d.sigma.empty() ? 0.0 : d.sigma.front();
  for (std::size_t k = 0; k < d.sigma.size(); ++k) {
    if (!(d.sigma[k] > rcond * smax) || d.sigma[k] == 0.0) continue;
    ++out.rank;
    double proj = 0.0;
    for (std::size_t i = 0; i < j.rows(); ++i) proj += d.u(i, k) * r[i];
    proj /= d.sigma[k];
    for (std::size_t i = 0; i < j.cols(); ++i) out.solution[i] += proj * d.v(i, k);
  }
  const auto js = j * std::span<const double>(out.solution);
  double res = 0.0;
  for (std::size_t i = 0; i < js.size(); ++i) res += (js[i] - r[i]) * (js[i] - r[i]);
  out.residual = std::sqrt(res);
  return out;
}

}  // namespace liecomm
