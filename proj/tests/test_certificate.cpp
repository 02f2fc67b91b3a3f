#include <algorithm>
#include <cmath>
#include <limits>

#include "cert_walk.hpp"
#include "doctest.h"
#include "liecomm/certificate.hpp"
#include "liecomm/error.hpp"
#include "liecomm/numkit.hpp"
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

AlgebraElement rnd(const AlgebraPtr& g, double norm, std::uint64_t seed) {
  Rng rng(seed);
  return random_element(g, norm, rng);
}

json algebra_cert(int n, double eps, std::uint64_t seed) {
  const auto g = su(n);
  CertificateConfig cfg;
  cfg.tol = 1e-9;
  cfg.source = "random";
  cfg.eps = eps;
  cfg.seed = seed;
  return seal(algebra_certificate(decompose_algebra(g, rnd(g, eps, seed)), cfg));
}

json group_cert(int n, double eps, std::uint64_t seed) {
  const auto g = su(n);
  CertificateConfig cfg;
  cfg.tol = 1e-8;
  cfg.eps = eps;
  return seal(group_certificate(decompose_group(g, GroupElement(mexp(rnd(g, eps, seed).matrix()))), cfg));
}

json su_torus_cert(std::size_t n) {
  const auto g = su(static_cast<int>(n));
  const auto u = UnitaryFrame::standard(n);
  return seal(su_torus_certificate(fourier_orthogonal_torus(g, u), frame_torus(g, u)));
}

json root_torus_cert(char type, int rank) {
  const auto p = make_presentation(type, rank);
  const auto form = compact_form_from_roots(p);
  return seal(root_torus_certificate(p, orthogonal_torus_inductive(p, form), form.torus));
}

json openness_cert() {
  OpennessConfig cfg;
  cfg.eps = {1e-2, 1e-3, 1e-4};
  cfg.samples = 4;
  cfg.seed = 9;
  return seal(openness_certificate(measure_openness(3, cfg)));
}

void require_every_perturbation_fails(const json& cert) {
  const auto entries = ts::real_entries(cert);
  REQUIRE(!entries.empty());
  for (const auto& p : entries) {
    CAPTURE(p.to_string());
    const auto r = verify_certificate(ts::perturbed(cert, p, 1e-3));
    REQUIRE(!ts::substantive_failures(r).empty());
  }
}

}  // namespace

TEST_CASE("real numbers survive formatting") {
  auto rng = ts::rng_for(50);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = ts::gauss(rng) * std::pow(10.0, expo(rng));
    REQUIRE(parse_real(format_real(v)) == v);
  }
  CHECK(format_real(0.5) == "0.5");
  CHECK(parse_real(json(0.25)) == 0.25);
  CHECK(parse_real(json(3)) == 3.0);
  CHECK(code_of([] { parse_real(json("1.5x")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_real(json("")); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_real(json(true)); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_real(json(nullptr)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("matrices survive JSON") {
  auto rng = ts::rng_for(51);
  const CMatrix m = ts::gaussian_matrix(4, rng);
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  RMatrix r(2, 3, {1.0, -2.5, 1e-300, 0.0, 7.0, -0.0});
  CHECK(real_matrix_from_json(real_matrix_to_json(r)) == r);
  json ragged = matrix_to_json(m);
  ragged[1].erase(0);
  CHECK(code_of([&] { matrix_from_json(ragged); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { matrix_from_json(json::parse(R"([[[1]]])")); }) == ErrorCode::InvalidArgument);
  CHECK(matrix_from_json(json::parse(R"([[[1, 2]]])"))(0, 0) == cplx(1.0, 2.0));
}

TEST_CASE("certificates of every kind verify") {
  for (const auto& cert : {algebra_cert(2, 1e-2, 1), algebra_cert(5, 1e-5, 2), group_cert(2, 1e-3, 3),
                           group_cert(3, 1e-2, 4), su_torus_cert(2), su_torus_cert(5), root_torus_cert('A', 1),
                           root_torus_cert('B', 3), root_torus_cert('C', 2), root_torus_cert('D', 4), openness_cert()}) {
    CAPTURE(cert["kind"]);
    const auto r = verify_certificate(cert);
    CHECK(r.ok());
    CHECK(r.failed().empty());
    CHECK(r.kind == cert["kind"]);
    CHECK(cert["schema_version"] == kCertSchema);
  }
}

TEST_CASE("stored residuals agree with recomputation") {
  const auto cert = algebra_cert(4, 1e-3, 5);
  const CMatrix x = matrix_from_json(cert["witnesses"]["x"]), y = matrix_from_json(cert["witnesses"]["y"]);
  const CMatrix z = matrix_from_json(cert["target"]);
  CHECK(std::abs(distance(commutator(x, y), z) - parse_real(cert["residuals"]["commutator"])) <= 1e-12);

  const auto gc = group_cert(3, 1e-3, 6);
  const CMatrix A = matrix_from_json(gc["witnesses"]["A"]), B = matrix_from_json(gc["witnesses"]["B"]);
  const CMatrix Z = matrix_from_json(gc["target"]);
  CHECK(std::abs(distance(A * B * A.adjoint() * B.adjoint(), Z) - parse_real(gc["residuals"]["commutator"])) <= 1e-12);
}

TEST_CASE("canonical form and digest") {
  const auto cert = algebra_cert(3, 1e-3, 7);
  const std::string text = canonical_dump(cert);
  CHECK(text.back() == '\n');
  CHECK(canonical_dump(parse_certificate(text)) == text);
  CHECK(cert["digest"] == certificate_digest(cert));
  CHECK(cert["digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  json tampered = cert;
  tampered["config"]["source"] = "elsewhere";
  const auto r = verify_certificate(tampered);
  CHECK(r.failed() == std::vector<std::string>{"digest"});

  json unsealed = cert;
  unsealed.erase("digest");
  CHECK(verify_certificate(unsealed).ok());
  CHECK(certificate_digest(unsealed) == cert["digest"]);
}

TEST_CASE("every real entry perturbed by 1e-3 is caught") {
  require_every_perturbation_fails(algebra_cert(3, 1e-2, 8));
  require_every_perturbation_fails(group_cert(2, 1e-2, 9));
  require_every_perturbation_fails(su_torus_cert(3));
  require_every_perturbation_fails(root_torus_cert('B', 2));
  require_every_perturbation_fails(openness_cert());
}

TEST_CASE("tolerance policy") {
  json cert = algebra_cert(2, 1e-3, 10);
  cert["config"]["tol"] = format_real(0.1);
  cert = seal(std::move(cert));
  auto r = verify_certificate(cert);
  CHECK(r.failed() == std::vector<std::string>{"tolerance_policy:tol"});
  VerifyOptions lax;
  lax.max_tolerance = 1.0;
  CHECK(verify_certificate(cert, lax).ok());

  json neg = algebra_cert(2, 1e-3, 10);
  neg["config"]["tol"] = format_real(-1.0);
  r = verify_certificate(seal(std::move(neg)));
  CHECK_FALSE(r.ok());
}

TEST_CASE("malformed certificates") {
  const auto cert = group_cert(2, 1e-3, 11);
  for (const char* key : {"witnesses", "target", "intermediates", "config", "n"}) {
    json c = cert;
    c.erase(key);
    CAPTURE(key);
    CHECK(code_of([&] { verify_certificate(c); }) == ErrorCode::InvalidArgument);
  }
  json wrong_size = cert;
  wrong_size["n"] = 3;
  CHECK(code_of([&] { verify_certificate(wrong_size); }) == ErrorCode::InvalidArgument);
  json kind = cert;
  kind["kind"] = "mystery";
  CHECK(code_of([&] { verify_certificate(kind); }) == ErrorCode::InvalidArgument);
  json schema = cert;
  schema["schema_version"] = "other/9";
  CHECK(code_of([&] { verify_certificate(schema); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_certificate("{\"kind\": "); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { parse_certificate("[1, 2]"); }) == ErrorCode::InvalidArgument);
  json bad_entry = cert;
  bad_entry["witnesses"]["A"][0][0][0] = "one";
  CHECK(code_of([&] { verify_certificate(bad_entry); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("witnesses that do not decompose the target fail") {
  json cert = algebra_cert(3, 1e-2, 12);
  // swap x and y: [y, x] = -z
  std::swap(cert["witnesses"]["x"], cert["witnesses"]["y"]);
  const auto names = ts::substantive_failures(verify_certificate(seal(cert)));
  CHECK(std::find(names.begin(), names.end(), "commutator_residual") != names.end());
}
