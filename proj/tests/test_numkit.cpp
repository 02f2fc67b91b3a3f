#include <cmath>
#include <numbers>

#include "doctest.h"
#include "liecomm/numkit.hpp"
#include "support.hpp"

using namespace liecomm;
namespace ts = testsupport;

namespace {

double reconstruction(const CMatrix& h, const HermEig& e) {
  CMatrix d(h.rows(), h.rows());
  for (std::size_t k = 0; k < h.rows(); ++k) d(k, k) = e.values[k];
  return distance(e.vectors * d * e.vectors.adjoint(), h);
}

}  // namespace

TEST_CASE("herm_eig leaves a diagonal matrix alone") {
  const std::vector<cplx> d{3.0, 1.0};
  const auto e = herm_eig(CMatrix::diagonal(d));
  CHECK(e.values == std::vector<double>{3.0, 1.0});
  CHECK(distance(e.vectors, CMatrix::identity(2)) == 0.0);
}

TEST_CASE("herm_eig on the swap matrix") {
  CMatrix h(2, 2);
  h(0, 1) = h(1, 0) = 1.0;
  const auto e = herm_eig(h);
  CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.values[1] == doctest::Approx(-1.0).epsilon(1e-15));
  // columns (1,1)/sqrt2 and (1,-1)/sqrt2 up to phase
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(e.vectors(0, 0)) - r) < 1e-15);
  CHECK(std::abs(e.vectors(0, 0) - e.vectors(1, 0)) < 1e-15);
  CHECK(std::abs(e.vectors(0, 1) + e.vectors(1, 1)) < 1e-15);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  auto rng = ts::rng_for(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 12);
    const CMatrix h = ts::hermitian(n, rng);
    const auto e = herm_eig(h);
    const double scale = std::max(1.0, h.frobenius_norm());
    REQUIRE(reconstruction(h, e) <= 1e-12 * scale);
    REQUIRE(unitarity_residual(e.vectors) <= 1e-12);
    for (std::size_t k = 1; k < n; ++k) REQUIRE(e.values[k - 1] >= e.values[k]);
  }
}

TEST_CASE("herm_eig keeps the input order of a repeated eigenvalue") {
  const std::vector<cplx> d{1.0, 2.0, 1.0};
  const auto e = herm_eig(CMatrix::diagonal(d));
  CHECK(e.values == std::vector<double>{2.0, 1.0, 1.0});
  CHECK(std::abs(e.vectors(1, 0)) == 1.0);
  CHECK(std::abs(e.vectors(0, 1)) == 1.0);
  CHECK(std::abs(e.vectors(2, 2)) == 1.0);
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  CMatrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(m), Error);
  try {
    herm_eig(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("mexp examples") {
  CHECK(distance(mexp(CMatrix(3, 3)), CMatrix::identity(3)) == 0.0);
  const auto x = ts::diag_i({std::numbers::pi, -std::numbers::pi});
  CHECK(distance(mexp(x), CMatrix::identity(2) * cplx(-1.0)) <= 1e-13);
}

TEST_CASE("mexp agrees with a long-double Taylor reference") {
  auto rng = ts::rng_for(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
    CMatrix x = ts::gaussian_matrix(n, rng);
    x *= cplx(std::ldexp(1.0, trial % 7 - 3) / x.frobenius_norm());
    const CMatrix ref = ts::taylor_expm(x);
    const double rel = distance(mexp(x), ref) / ref.frobenius_norm();
    REQUIRE(rel <= 1e-13 * std::exp(x.frobenius_norm()));
  }
}

TEST_CASE("mexp of skew-Hermitian matrices is unitary; mexp(X) mexp(-X) = I") {
  auto rng = ts::rng_for(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    const CMatrix s = ts::su_matrix(n, 0.1 + 0.01 * trial, rng);
    REQUIRE(unitarity_residual(mexp(s)) <= 1e-13 * std::max(1.0, s.frobenius_norm()));
    CMatrix g = ts::gaussian_matrix(n, rng);
    g *= cplx(2.0 * (trial % 10 + 1) / 10.0 / g.frobenius_norm());
    REQUIRE(distance(mexp(g) * mexp(-g), CMatrix::identity(n)) <= 1e-12);
  }
}

TEST_CASE("real mexp of a rotation generator") {
  RMatrix a(2, 2);
  a(0, 1) = -0.7;
  a(1, 0) = 0.7;
  const RMatrix r = mexp(a);
  CHECK(r(0, 0) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
  CHECK(r(1, 0) == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
}

TEST_CASE("mlog_principal examples") {
  CHECK(mlog_principal(CMatrix::identity(3)).frobenius_norm() == 0.0);
  const std::vector<cplx> d{std::polar(1.0, 0.3), std::polar(1.0, -0.3)};
  CHECK(distance(mlog_principal(CMatrix::diagonal(d)), ts::diag_i({0.3, -0.3})) <= 1e-15);
  const std::vector<cplx> m{-1.0, -1.0};
  try {
    mlog_principal(CMatrix::diagonal(m));
    FAIL("expected OutsideInjectivityDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideInjectivityDomain);
  }
  CMatrix not_unitary = CMatrix::identity(2) * cplx(1.1);
  try {
    mlog_principal(not_unitary);
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnitary);
  }
}

TEST_CASE("mlog_principal inverts mexp on the unit ball") {
  auto rng = ts::rng_for(4);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
    CMatrix x = ts::su_matrix(n, 1.0, rng);
    x += CMatrix::identity(n) * cplx(0.0, 0.05 * (trial % 5));  // not necessarily traceless
    x *= cplx(std::min(1.0, 1.0 / x.frobenius_norm()) * (0.05 + 0.95 * ((trial % 20) / 19.0)));
    const CMatrix l = mlog_principal(mexp(x));
    REQUIRE(distance(l, x) <= 1e-10);
    REQUIRE(skew_hermitian_residual(l) <= 1e-11);
    REQUIRE(distance(mexp(l), mexp(x)) <= 1e-11 * static_cast<double>(n));
  }
}

TEST_CASE("lstsq_min_norm examples") {
  RMatrix eye = RMatrix::identity(2);
  const std::vector<double> r{2.0, 3.0};
  auto s = lstsq_min_norm(eye, r);
  CHECK(s.solution[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.solution[1] == doctest::Approx(3.0).epsilon(1e-15));

  RMatrix row(1, 2, {1.0, 1.0});
  const std::vector<double> two{2.0};
  s = lstsq_min_norm(row, two);
  CHECK(s.solution[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.solution[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.rank == 1);

  RMatrix zero(1, 2);
  const std::vector<double> one{1.0};
  s = lstsq_min_norm(zero, one);
  CHECK(s.solution == std::vector<double>{0.0, 0.0});
  CHECK(s.residual == doctest::Approx(1.0));
  CHECK(s.rank == 0);

  CHECK_THROWS_AS(lstsq_min_norm(eye, one), Error);
}

TEST_CASE("lstsq_min_norm matches J^T (J J^T)^-1 r on full-row-rank systems") {
  auto rng = ts::rng_for(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 8);
    const std::size_t n = m + static_cast<std::size_t>(trial % 5);
    RMatrix j(m, n);
    for (auto& v : j.data()) v = ts::gauss(rng);
    std::vector<double> r(m);
    for (auto& v : r) v = ts::gauss(rng);
    const RMatrix jt = j.transpose();
    const auto w = spd_solve(j * jt, r);
    const auto ref = jt * std::span<const double>(w);
    const auto s = lstsq_min_norm(j, r);
    for (std::size_t k = 0; k < n; ++k) REQUIRE(std::abs(s.solution[k] - ref[k]) <= 1e-10 * (1.0 + std::abs(ref[k])));
    REQUIRE(s.residual <= 1e-10);
  }
}

TEST_CASE("lstsq_min_norm drops directions below rcond") {
  RMatrix j(2, 3, {1.0, 0.0, 0.0, 0.0, 1e-14, 0.0});
  const std::vector<double> r{1.0, 1.0};
  const auto s = lstsq_min_norm(j, r, 1e-12);
  CHECK(s.rank == 1);
  CHECK(s.solution[1] == 0.0);
  CHECK(s.residual == doctest::Approx(1.0));
}

TEST_CASE("svd reconstructs rectangular matrices") {
  auto rng = ts::rng_for(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 6), n = 1 + static_cast<std::size_t>((trial / 6) % 6);
    RMatrix a(m, n);
    for (auto& v : a.data()) v = ts::gauss(rng);
    const Svd s = svd(a);
    RMatrix rec(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < s.sigma.size(); ++l) rec(i, k) += s.u(i, l) * s.sigma[l] * s.v(k, l);
    REQUIRE(distance(rec, a) <= 1e-13 * std::max(1.0, a.frobenius_norm()));
    for (std::size_t l = 1; l < s.sigma.size(); ++l) REQUIRE(s.sigma[l - 1] >= s.sigma[l]);
  }
}

TEST_CASE("determinant and inverse") {
  CMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = cplx(0.0, 2.0);
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  CHECK(std::abs(determinant(a) - cplx(4.0, -6.0)) < 1e-15);
  CHECK(distance(a * inverse(a), CMatrix::identity(2)) < 1e-15);
  CHECK(determinant(CMatrix(2, 2)) == cplx(0.0));
}

TEST_CASE("matrix shape errors") {
  CHECK_THROWS_AS(CMatrix(2, 3) * CMatrix(2, 3), Error);
  CHECK_THROWS_AS(CMatrix(2, 2) + CMatrix(3, 3), Error);
  CHECK(CMatrix(2, 2, {1.0, 2.0, 3.0, 4.0}).frobenius_norm() == doctest::Approx(std::sqrt(30.0)));
}
