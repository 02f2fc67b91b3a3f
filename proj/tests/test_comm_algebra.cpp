#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "liecomm/comm_algebra.hpp"
#include "liecomm/error.hpp"
#include "liecomm/numkit.hpp"
#include "liecomm/openness.hpp"
#include "liecomm/random.hpp"
#include "support.hpp"

using namespace liecomm;
namespace ts = testsupport;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

AlgebraElement random_target(const AlgebraPtr& g, double norm, std::uint64_t seed) {
  Rng rng(seed);
  return random_element(g, norm, rng);
}

// Component of w in the complement of the diagonal torus.
CMatrix strip_diagonal(CMatrix w) {
  for (std::size_t k = 0; k < w.rows(); ++k) w(k, k) = 0.0;
  return w;
}

}  // namespace

TEST_CASE("regular element examples") {
  const double r = 0.37;
  const auto x2 = regular_element(su(2), r);
  CHECK(distance(x2.matrix(), ts::diag_i({-r / std::sqrt(2.0), r / std::sqrt(2.0)})) <= 1e-15);
  CHECK(x2.norm() == doctest::Approx(r).epsilon(1e-15));

  // su(3): d = (-1, 0, 1), c = r / sqrt2
  const auto x3 = regular_element(su(3), r);
  const double c = r / std::sqrt(2.0);
  CHECK(distance(x3.matrix(), ts::diag_i({-c, 0.0, c})) <= 1e-15);
  for (int n = 2; n <= 7; ++n) {
    const auto x = regular_element(su(n), 1.0);
    const CMatrix m = x.matrix();
    double sq = 0.0;
    for (int k = 1; k <= n; ++k) sq += std::pow(k - (n + 1) / 2.0, 2);
    const double cn = 1.0 / std::sqrt(sq);
    // singular values of ad_x: n - 1 zeros on the torus, the rest at least c
    auto sigma = svd(ad_matrix(x)).sigma;
    std::sort(sigma.begin(), sigma.end());
    for (int k = 0; k < n - 1; ++k) CHECK(sigma[k] <= 1e-12);
    CHECK(sigma[n - 1] >= cn - 1e-12);
    CHECK(sigma[n - 1] == doctest::Approx(cn).epsilon(1e-12));
    CHECK(std::abs(m.trace()) <= 1e-15);
  }
}

TEST_CASE("invert_ad_on_complement examples") {
  const auto g = su(2);
  const auto x = AlgebraElement::from_matrix(g, ts::diag_i({1.0, -1.0}));
  CMatrix w(2, 2);
  w(0, 1) = 1.0;
  w(1, 0) = -1.0;
  const auto y = invert_ad_on_complement(x, AlgebraElement::from_matrix(g, w));
  CMatrix expected(2, 2);
  expected(0, 1) = expected(1, 0) = cplx(0.0, -0.5);
  CHECK(distance(y.matrix(), expected) <= 1e-15);
  CHECK(distance(commutator(x.matrix(), y.matrix()), w) <= 1e-15);

  CHECK(invert_ad_on_complement(x, AlgebraElement::zero(g)).norm() == 0.0);

  CHECK(code_of([&] { invert_ad_on_complement(x, x); }) == ErrorCode::NotInComplement);
  const auto singular = AlgebraElement::from_matrix(su(3), ts::diag_i({1.0, 1.0, -2.0}));
  const auto w3 = AlgebraElement::basis(su(3), 2);
  CHECK(code_of([&] { invert_ad_on_complement(singular, w3); }) == ErrorCode::NotRegular);
}

TEST_CASE("invert_ad_on_complement on random su(4) targets") {
  const auto g = su(4);
  auto rng = ts::rng_for(30);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = 0.01 + 0.05 * (trial % 10);
    const auto x = regular_element(g, r);
    const CMatrix wm = strip_diagonal(ts::su_matrix(4, 0.1 + trial * 0.01, rng));
    const auto w = AlgebraElement::from_matrix(g, wm);
    const auto y = invert_ad_on_complement(x, w);
    const double c = r / std::sqrt(5.0);  // d = (-3/2, -1/2, 1/2, 3/2)
    REQUIRE(distance(commutator(x.matrix(), y.matrix()), wm) <= 1e-11);
    REQUIRE(y.norm() <= w.norm() / c * (1 + 1e-12));
    // y has no torus component
    for (std::size_t k = 0; k < 4; ++k) REQUIRE(std::abs(y.matrix()(k, k)) <= 1e-14);
  }
}

TEST_CASE("decompose_algebra on the su(2) rotation generator") {
  const auto g = su(2);
  for (double eps : {1e-1, 1e-3, 1e-6}) {
    CMatrix zm(2, 2);
    zm(0, 1) = eps;
    zm(1, 0) = -eps;
    const auto z = AlgebraElement::from_matrix(g, zm);
    const auto d = decompose_algebra(g, z);
    CHECK(d.residual <= 1e-11 * std::max(eps, 1e-2));
    CHECK(distance(commutator(d.x.matrix(), d.y.matrix()), zm) <= 1e-11);
    CHECK(d.norm_x == doctest::Approx(std::sqrt(z.norm())).epsilon(1e-13));
    // su(2): the eigenvalue gap of x is sqrt2 ||x||, so ||y|| = ||z|| / (sqrt2 ||x||) = ||x|| / sqrt2
    CHECK(d.norm_y == doctest::Approx(d.norm_x / std::sqrt(2.0)).epsilon(1e-12));
  }
}

TEST_CASE("decompose_algebra of zero") {
  const auto g = su(3);
  const auto d = decompose_algebra(g, AlgebraElement::zero(g));
  CHECK(d.x.norm() == 0.0);
  CHECK(d.y.norm() == 0.0);
  CHECK(d.residual == 0.0);
  AlgebraConfig cfg;
  cfg.zero_target_scale = 0.25;
  const auto e = decompose_algebra(g, AlgebraElement::zero(g), cfg);
  CHECK(e.x.norm() == doctest::Approx(0.25));
  CHECK(e.y.norm() == 0.0);
  CHECK(e.residual == 0.0);
}

TEST_CASE("decompose_algebra sweep on su(3)") {
  const auto g = su(3);
  for (int s = 0; s < 100; ++s) {
    const auto z = random_target(g, 1e-4, derive_seed(31, s));
    const auto d = decompose_algebra(g, z);
    REQUIRE(d.residual <= 1e-9);
    REQUIRE(distance(commutator(d.x.matrix(), d.y.matrix()), z.matrix()) <= 1e-9);
    REQUIRE(std::max(d.norm_x, d.norm_y) <= 1.25 * 1e-2);
    // witnesses stay in su(3)
    REQUIRE(skew_hermitian_residual(d.x.matrix()) <= 1e-15);
    REQUIRE(std::abs(d.y.matrix().trace()) <= 1e-15);
  }
}

TEST_CASE("decompose_algebra errors") {
  const auto g = su(3);
  CHECK(code_of([&] { decompose_algebra(g, random_target(g, 0.6, 1)); }) == ErrorCode::TargetTooLarge);
  CHECK(code_of([&] { decompose_algebra(su(2), random_target(g, 0.1, 1)); }) == ErrorCode::AlgebraMismatch);
  const auto form = compact_form_from_roots(make_presentation('B', 2));
  CHECK_THROWS_AS(decompose_algebra(form.algebra, AlgebraElement::basis(form.algebra, 0)), Error);
}

TEST_CASE("bilinear scaling of the decomposition") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = su(n);
    for (int s = 0; s < 20; ++s) {
      const auto z = random_target(g, 0.2, derive_seed(32, n, s));
      const auto d = decompose_algebra(g, z);
      for (double t : {0.5, 0.1, 0.01}) {
        const auto dt = decompose_algebra(g, (t * t) * z);
        REQUIRE(dt.scale == doctest::Approx(t * d.scale).epsilon(1e-13));
        REQUIRE(distance(dt.x.matrix(), d.x.matrix() * cplx(t)) <= 1e-10);
        REQUIRE(distance(dt.y.matrix(), d.y.matrix() * cplx(t)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("witness norms are invariant under conjugation of the target") {
  auto rng = ts::rng_for(33);
  for (int n = 2; n <= 5; ++n) {
    const auto g = su(n);
    for (int s = 0; s < 20; ++s) {
      const auto z = random_target(g, 0.05, derive_seed(33, n, s));
      const CMatrix u = ts::unitary(static_cast<std::size_t>(n), rng);
      const auto uz = AlgebraElement::from_matrix(g, u * z.matrix() * u.adjoint());
      const auto a = decompose_algebra(g, z), b = decompose_algebra(g, uz);
      REQUIRE(std::abs(a.norm_x - b.norm_x) <= 1e-9);
      REQUIRE(std::abs(a.norm_y - b.norm_y) <= 1e-9);
    }
  }
}

TEST_CASE("provenance fields are consistent") {
  const auto g = su(4);
  const auto z = random_target(g, 0.01, 34);
  const auto d = decompose_algebra(g, z);
  const CMatrix gm = d.g.matrix();
  CHECK(distance(gm * d.x0.matrix() * gm.adjoint(), d.x.matrix()) <= 1e-14);
  CHECK(distance(gm * d.y0.matrix() * gm.adjoint(), d.y.matrix()) <= 1e-14);
  CHECK(distance(gm.adjoint() * z.matrix() * gm, d.w.matrix()) <= 1e-14);
  CHECK(torus_orthogonality(d.torus, frame_torus(g, UnitaryFrame::standard(4))) <= 1e-14);
  CHECK(d.scale == doctest::Approx(std::sqrt(z.norm())));
}

TEST_CASE("openness measurement on the algebra level") {
  OpennessConfig cfg;
  cfg.eps = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  cfg.samples = 8;
  cfg.seed = 35;
  for (int n = 2; n <= 5; ++n) {
    const auto r = measure_openness(n, cfg);
    CHECK(r.failures.empty());
    CHECK(r.beta >= 0.4);
    CHECK(r.beta <= 0.6);
    CHECK(r.fitted_rows == 5);
    for (const auto& row : r.rows) {
      CHECK(row.successes == 8);
      CHECK(row.max_residual <= 1e-9);
    }
  }
}

TEST_CASE("openness reports are deterministic and independent of the worker count") {
  OpennessConfig cfg;
  cfg.eps = {1e-2, 1e-4};
  cfg.samples = 13;
  cfg.seed = 36;
  const auto a = measure_openness(3, cfg);
  const auto b = measure_openness(3, cfg);
  cfg.jobs = 5;
  const auto c = measure_openness(3, cfg);
  for (const auto* other : {&b, &c}) {
    REQUIRE(other->rows.size() == a.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
      CHECK(other->rows[k].max_norm == a.rows[k].max_norm);
      CHECK(other->rows[k].max_residual == a.rows[k].max_residual);
    }
    CHECK(other->beta == a.beta);
  }

  OpennessConfig single;
  single.eps = {1e-3};
  single.samples = 1;
  single.seed = 7;
  CHECK(measure_openness(2, single).rows[0].max_norm == measure_openness(2, single).rows[0].max_norm);
  CHECK(sample_seed(7, 0, 0) == sample_seed(7, 0, 0));
  CHECK(sample_seed(7, 0, 1) != sample_seed(7, 1, 0));
}

TEST_CASE("targets above z_max surface as report failures") {
  OpennessConfig cfg;
  cfg.eps = {1.0, 1e-3};
  cfg.samples = 3;
  const auto r = measure_openness(2, cfg);
  REQUIRE(r.failures.size() == 3);
  for (const auto& f : r.failures) {
    CHECK(f.error == "TargetTooLarge");
    CHECK(f.eps_index == 0);
    CHECK(f.seed == sample_seed(0, 0, f.sample));
  }
  CHECK(r.rows[0].failures == 3);
  CHECK(r.rows[1].successes == 3);

  OpennessConfig bad;
  bad.eps = {1e-3, 1e-2};
  CHECK(code_of([&] { measure_openness(2, bad); }) == ErrorCode::InvalidArgument);
  bad.eps = {1e-3};
  bad.samples = 0;
  CHECK(code_of([&] { measure_openness(2, bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fit_exponent recovers a power law") {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3};
  std::vector<double> v;
  for (double e : eps) v.push_back(3.0 * std::pow(e, 0.5));
  std::size_t used = 0;
  CHECK(fit_exponent(eps, v, &used) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(used == 3);
  v[1] = 0.0;
  CHECK(fit_exponent(eps, v, &used) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(used == 2);
}
