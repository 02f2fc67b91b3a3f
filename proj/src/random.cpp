#include "liecomm/random.hpp"

#include <cmath>

#include "liecomm/numkit.hpp"

namespace liecomm {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix q(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> col(n);
    for (auto& c : col) c = cplx(g(rng), g(rng));
    // modified Gram-Schmidt, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        cplx d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d += std::conj(q(i, k)) * col[i];
        for (std::size_t i = 0; i < n; ++i) col[i] -= d * q(i, k);
      }
    double nrm = 0.0;
    for (const auto& c : col) nrm += std::norm(c);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
  }
  return q;
}

CMatrix random_special_unitary(std::size_t n, Rng& rng) {
  CMatrix u = random_unitary(n, rng);
  const cplx d = determinant(u);
  const cplx fix = std::polar(1.0, -std::arg(d) / static_cast<double>(n));
  return u * fix;
}

CMatrix random_hermitian(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(g(rng), g(rng)) / std::sqrt(2.0);
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

AlgebraElement random_element(const AlgebraPtr& algebra, double norm, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t d = algebra->dim();
  // Gaussian in an orthonormal frame: coords = L^{-T} xi for gram = L L^T.
  std::vector<double> xi(d);
  for (auto& v : xi) v = g(rng);
  std::vector<double> c;
  if (algebra->gram() == RMatrix::identity(d)) {
    c = xi;
  } else {
    const RMatrix l = cholesky(algebra->gram());
    c = xi;
    for (std::size_t i = d; i-- > 0;) {
      for (std::size_t k = i + 1; k < d; ++k) c[i] -= l(k, i) * c[k];
      c[i] /= l(i, i);
    }
  }
  AlgebraElement e(algebra, std::move(c));
  const double n0 = e.norm();
  if (n0 == 0.0) return AlgebraElement::basis(algebra, 0) * (norm / std::sqrt(algebra->gram()(0, 0)));
  return e * (norm / n0);
}

}  // namespace liecomm
