// Shared generators and reference computations for the test binaries. The
// references avoid the library code they are compared against.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "liecomm/matrix.hpp"

namespace testsupport {

using liecomm::CMatrix;
using liecomm::cplx;
using liecomm::RMatrix;

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 17); }

inline double gauss(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  return g(rng);
}

inline CMatrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m(i, k) = cplx(gauss(rng), gauss(rng));
  return m;
}

inline CMatrix hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMatrix g = gaussian_matrix(n, rng);
  return (g + g.adjoint()) * cplx(0.5);
}

/// Skew-Hermitian and traceless, scaled to Frobenius norm `norm`.
inline CMatrix su_matrix(std::size_t n, double norm, std::mt19937_64& rng) {
  CMatrix h = hermitian(n, rng);
  const cplx tr = h.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) -= tr;
  CMatrix x = h * cplx(0.0, 1.0);
  return x * cplx(norm / x.frobenius_norm());
}

/// Unitary by classical Gram-Schmidt on a Gaussian matrix.
inline CMatrix unitary(std::size_t n, std::mt19937_64& rng) {
  CMatrix q = gaussian_matrix(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= d * q(i, k);
      }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(q(i, j));
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= std::sqrt(s);
  }
  return q;
}

/// exp by Taylor series in long double after scaling to norm <= 1/2, then squaring.
inline CMatrix taylor_expm(const CMatrix& x) {
  using lc = std::complex<long double>;
  const std::size_t n = x.rows();
  int squarings = 0;
  long double nrm = x.frobenius_norm();
  while (nrm > 0.5L) {
    nrm /= 2;
    ++squarings;
  }
  const long double scale = std::ldexp(1.0L, -squarings);
  std::vector<lc> a(n * n), term(n * n), sum(n * n), tmp(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = lc(x.data()[i].real(), x.data()[i].imag()) * scale;
  for (std::size_t i = 0; i < n; ++i) term[i * n + i] = sum[i * n + i] = 1.0L;
  auto mul = [n](const std::vector<lc>& p, const std::vector<lc>& q, std::vector<lc>& r) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        lc s = 0;
        for (std::size_t j = 0; j < n; ++j) s += p[i * n + j] * q[j * n + k];
        r[i * n + k] = s;
      }
  };
  for (int k = 1; k <= 40; ++k) {
    mul(term, a, tmp);
    for (std::size_t i = 0; i < n * n; ++i) term[i] = tmp[i] / static_cast<long double>(k);
    for (std::size_t i = 0; i < n * n; ++i) sum[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) {
    mul(sum, sum, tmp);
    sum = tmp;
  }
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n * n; ++i)
    out.data()[i] = cplx(static_cast<double>(sum[i].real()), static_cast<double>(sum[i].imag()));
  return out;
}

/// i (c_a c_a^H - c_b c_b^H) for columns a, b of `f`.
inline CMatrix rank_two(const CMatrix& f, std::size_t a, std::size_t b) {
  const std::size_t n = f.rows();
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = cplx(0.0, 1.0) * (f(r, a) * std::conj(f(c, a)) - f(r, b) * std::conj(f(c, b)));
  return m;
}

/// Explicit Fourier frame of the standard basis: column j-1 holds
/// n^{-1/2} (zeta^{0}, zeta^{j}, ..., zeta^{(n-1)j}).
inline CMatrix explicit_fourier(std::size_t n) {
  CMatrix f(n, n);
  const double pi = std::acos(-1.0);
  for (std::size_t j = 1; j <= n; ++j)
    for (std::size_t m = 0; m < n; ++m)
      f(m, j - 1) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                               2.0 * pi * static_cast<double>(m * j) / static_cast<double>(n));
  return f;
}

inline CMatrix diag_i(std::vector<double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = cplx(0.0, d[k]);
  return m;
}

}  // namespace testsupport
