// Certificate checks. Only the dense linear algebra layer and the
// compact-algebra module are used here, never the solvers that produced the
// certificate.
#include <cmath>
#include <limits>

#include "liecomm/certificate.hpp"
#include "liecomm/compact_algebra.hpp"
#include "liecomm/numkit.hpp"

namespace liecomm {

bool VerifyResult::ok() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

std::vector<std::string> VerifyResult::failed() const {
  std::vector<std::string> names;
  for (const auto& c : checks)
    if (!c.passed) names.push_back(c.name);
  return names;
}

namespace {

constexpr double kGroupTol = 1e-10;   // unitarity and determinant of stored group elements
constexpr double kMemberTol = 1e-12;  // skew-Hermitian and traceless stored algebra elements
constexpr double kInf = std::numeric_limits<double>::infinity();

class Checker {
 public:
  explicit Checker(VerifyResult& out) : out_(out) {}
  void le(std::string name, double value, double threshold) {
    out_.checks.push_back({std::move(name), value, threshold, value <= threshold});
  }
  void flag(std::string name, bool ok) { out_.checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok}); }

 private:
  VerifyResult& out_;
};

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw Error(ErrorCode::InvalidArgument, std::string("certificate field '") + key + "' is missing");
  return j.at(key);
}

CMatrix square(const json& j, const char* key, std::size_t n) {
  CMatrix m = matrix_from_json(field(j, key));
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorCode::InvalidArgument, std::string("matrix '") + key + "' has the wrong size");
  return m;
}

std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned()) throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a count");
  return v.get<std::size_t>();
}

double su_membership(const CMatrix& m) {
  return std::max(skew_hermitian_residual(m), std::abs(m.trace()));
}

double off_diagonal(const CMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (i != k) s += std::norm(m(i, k));
  return std::sqrt(s);
}

double tolerance(Checker& c, const json& j, const char* key, const VerifyOptions& opt) {
  const double tol = parse_real(field(j, key));
  c.le(std::string("tolerance_policy:") + key, tol >= 0.0 ? tol : kInf, opt.max_tolerance);
  return tol;
}

void check_digest(Checker& c, const json& cert) {
  if (!cert.contains("digest")) return;
  c.flag("digest", cert["digest"].is_string() && cert["digest"] == certificate_digest(cert));
}

void check_eps(Checker& c, const json& config, double norm, const VerifyOptions& opt) {
  if (!config.contains("eps")) return;
  const double eps = parse_real(config["eps"]);
  c.le("config:eps", std::abs(norm - eps), opt.agreement * std::max(eps, 0.0));
}

void verify_algebra(const json& cert, const VerifyOptions& opt, Checker& c) {
  const std::size_t n = count_field(cert, "n");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  const json& config = field(cert, "config");
  const double tol = tolerance(c, config, "tol", opt);

  const CMatrix z = square(cert, "target", n);
  const json& wit = field(cert, "witnesses");
  const CMatrix x = square(wit, "x", n), y = square(wit, "y", n);
  const json& prov = field(cert, "provenance");
  const CMatrix g = square(prov, "conjugator", n);
  const CMatrix x0 = square(prov, "regular_element", n);
  const CMatrix f = square(prov, "torus_frame", n);
  const CMatrix w = square(prov, "conjugated_target", n);
  const CMatrix y0 = square(prov, "y0", n);
  const double scale = parse_real(field(prov, "scale"));

  for (const auto& [name, m] : {std::pair{"target", &z}, {"x", &x}, {"y", &y}, {"regular_element", &x0},
                                {"conjugated_target", &w}, {"y0", &y0}})
    c.le(std::string("su_membership:") + name, su_membership(*m), kMemberTol);
  c.le("unitary:conjugator", unitarity_residual(g), kGroupTol);
  c.le("determinant:conjugator", std::abs(determinant(g) - cplx(1.0)), kGroupTol);
  c.le("unitary:torus_frame", unitarity_residual(f), kMemberTol);

  const double residual = (commutator(x, y) - z).frobenius_norm();
  c.le("commutator_residual", residual, tol);
  const json& res = field(cert, "residuals");
  c.le("stored:residual", std::abs(parse_real(field(res, "commutator")) - residual), opt.agreement);
  const json& norms = field(cert, "norms");
  c.le("stored:norm_target", std::abs(parse_real(field(norms, "target")) - z.frobenius_norm()), opt.agreement);
  c.le("stored:norm_x", std::abs(parse_real(field(norms, "x")) - x.frobenius_norm()), opt.agreement);
  c.le("stored:norm_y", std::abs(parse_real(field(norms, "y")) - y.frobenius_norm()), opt.agreement);
  check_eps(c, config, z.frobenius_norm(), opt);

  const CMatrix ga = g.adjoint();
  c.le("provenance:x", distance(g * x0 * ga, x), opt.agreement);
  c.le("provenance:y", distance(g * y0 * ga, y), opt.agreement);
  c.le("provenance:conjugated_target", distance(ga * z * g, w), opt.agreement);
  c.le("provenance:inner_commutator", distance(commutator(x0, y0), w), tol);
  c.le("provenance:regular_element_diagonal", off_diagonal(x0), opt.agreement);
  c.le("provenance:scale", std::abs(x0.frobenius_norm() - scale), opt.agreement);
  double bias = 0.0;
  const double common = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) bias = std::max(bias, std::abs(std::abs(f(i, k)) - common));
  c.le("provenance:frame_unbiased", bias, opt.agreement);
  c.le("provenance:conjugated_target_in_torus", off_diagonal(f.adjoint() * w * f), opt.agreement);
}

void verify_group(const json& cert, const VerifyOptions& opt, Checker& c) {
  const std::size_t n = count_field(cert, "n");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
  const json& config = field(cert, "config");
  const double tol = tolerance(c, config, "tol", opt);

  const CMatrix Z = square(cert, "target", n);
  const json& wit = field(cert, "witnesses");
  const CMatrix A = square(wit, "A", n), B = square(wit, "B", n);
  const json& im = field(cert, "intermediates");
  const CMatrix z = square(im, "log_target", n), cc = square(im, "c", n);
  const CMatrix x = square(im, "x", n), y = square(im, "y", n);
  const CMatrix P = square(im, "P", n), Q = square(im, "Q", n);

  for (const auto& [name, m] : {std::pair{"target", &Z}, {"A", &A}, {"B", &B}, {"P", &P}, {"Q", &Q}}) {
    c.le(std::string("unitary:") + name, unitarity_residual(*m), kGroupTol);
    c.le(std::string("determinant:") + name, std::abs(determinant(*m) - cplx(1.0)), kGroupTol);
  }
  for (const auto& [name, m] : {std::pair{"log_target", &z}, {"c", &cc}, {"x", &x}, {"y", &y}})
    c.le(std::string("su_membership:") + name, su_membership(*m), kMemberTol);

  const double residual = distance(A * B * inverse(A) * inverse(B), Z);
  c.le("commutator_residual", residual, tol);
  const json& res = field(cert, "residuals");
  c.le("stored:residual", std::abs(parse_real(field(res, "commutator")) - residual), opt.agreement);
  const CMatrix I = CMatrix::identity(n);
  const json& norms = field(cert, "norms");
  c.le("stored:dist_A", std::abs(parse_real(field(norms, "dist_A")) - distance(A, I)), opt.agreement);
  c.le("stored:dist_B", std::abs(parse_real(field(norms, "dist_B")) - distance(B, I)), opt.agreement);
  c.le("stored:norm_log_target", std::abs(parse_real(field(norms, "log_target")) - z.frobenius_norm()),
       opt.agreement);
  check_eps(c, config, z.frobenius_norm(), opt);

  const CMatrix ex = mexp(x), ey = mexp(y);
  const CMatrix Pinv = inverse(P);
  c.le("provenance:A", distance(P * ex * Pinv, A), opt.agreement);
  c.le("provenance:B", distance(Q * ey * Pinv, B), opt.agreement);
  c.le("provenance:log_target", distance(mexp(z), Z), opt.agreement);
  c.le("provenance:algebra_commutator", distance(commutator(cc, y), z), tol);
  c.le("provenance:c_map", distance(x - ey * x * inverse(ey), z), tol);
}

void verify_torus(const json& cert, const VerifyOptions& opt, Checker& c) {
  const json& alg = field(cert, "algebra");
  const std::size_t dim = count_field(alg, "dim"), rank = count_field(alg, "rank");
  const RMatrix gram = real_matrix_from_json(field(alg, "gram"));
  if (gram.rows() != dim || gram.cols() != dim) throw Error(ErrorCode::InvalidArgument, "gram has the wrong size");
  std::vector<double> constants(dim * dim * dim, 0.0);
  const json& sc = field(alg, "structure_constants");
  if (!sc.is_array()) throw Error(ErrorCode::InvalidArgument, "structure constants must be an array");
  for (const auto& e : sc) {
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() ||
        !e[2].is_number_unsigned())
      throw Error(ErrorCode::InvalidArgument, "structure constant entries are [i, j, k, value]");
    const auto i = e[0].get<std::size_t>(), j = e[1].get<std::size_t>(), k = e[2].get<std::size_t>();
    if (i >= dim || j >= dim || k >= dim) throw Error(ErrorCode::InvalidArgument, "structure constant index out of range");
    constants[(i * dim + j) * dim + k] = parse_real(e[3]);
  }
  double asym = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) asym = std::max(asym, std::abs(gram(i, j) - gram(j, i)));
  c.le("gram_symmetric", asym, opt.agreement);

  const auto algebra = std::make_shared<CompactAlgebra>(field(alg, "label").get<std::string>(), rank, constants, gram);
  const auto inv = algebra->check_invariants();
  c.le("algebra:antisymmetry", inv.antisymmetry, 1e-12);
  c.le("algebra:jacobi", inv.jacobi, 1e-10);
  c.le("algebra:invariance", inv.invariance, 1e-10);
  c.flag("algebra:positive_definite", inv.positive_definite);

  auto read_basis = [&](const char* key) {
    std::vector<AlgebraElement> out;
    const json& b = field(cert, key);
    if (!b.is_array()) throw Error(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an array");
    for (const auto& row : b) {
      if (!row.is_array() || row.size() != dim) throw Error(ErrorCode::InvalidArgument, "basis vector has the wrong length");
      std::vector<double> v;
      for (const auto& e : row) v.push_back(parse_real(e));
      out.emplace_back(algebra, std::move(v));
    }
    return out;
  };
  const auto basis = read_basis("basis");
  const auto ref = read_basis("reference");

  const json& tj = field(cert, "tolerances");
  const double t_toral = tolerance(c, tj, "toral", opt);
  const double t_on = tolerance(c, tj, "orthonormal", opt);
  const double t_orth = tolerance(c, tj, "orthogonality", opt);

  auto residuals = [](const std::vector<AlgebraElement>& v) {
    double toral = 0.0, on = 0.0;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a; b < v.size(); ++b) {
        if (a != b) toral = std::max(toral, bracket(v[a], v[b]).norm());
        on = std::max(on, std::abs(inner(v[a], v[b]) - (a == b ? 1.0 : 0.0)));
      }
    return std::pair{toral, on};
  };
  const auto [toral, on] = residuals(basis);
  const auto [rtoral, ron] = residuals(ref);
  double orth = 0.0;
  for (const auto& a : basis)
    for (const auto& b : ref) orth = std::max(orth, std::abs(inner(a, b)));

  c.le("maximal", std::abs(static_cast<double>(basis.size()) - static_cast<double>(rank)), 0.0);
  c.le("toral", toral, t_toral);
  c.le("orthonormal", on, t_on);
  c.le("orthogonality", orth, t_orth);
  c.le("reference:maximal", std::abs(static_cast<double>(ref.size()) - static_cast<double>(rank)), 0.0);
  c.le("reference:toral", rtoral, t_toral);
  c.le("reference:orthonormal", ron, t_on);
  const json& res = field(cert, "residuals");
  c.le("stored:toral", std::abs(parse_real(field(res, "toral")) - toral), opt.agreement);
  c.le("stored:orthonormal", std::abs(parse_real(field(res, "orthonormal")) - on), opt.agreement);
  c.le("stored:orthogonality", std::abs(parse_real(field(res, "orthogonality")) - orth), opt.agreement);

  if (cert.contains("group")) {
    const std::size_t n = count_field(cert, "n");
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be at least 2");
    const AlgebraPtr s = su(static_cast<int>(n));
    if (s->dim() != dim) throw Error(ErrorCode::InvalidArgument, "dimension does not match su(n)");
    double diff = 0.0;
    for (std::size_t k = 0; k < constants.size(); ++k) diff = std::max(diff, std::abs(constants[k] - s->constants()[k]));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) diff = std::max(diff, std::abs(gram(i, j) - s->gram()(i, j)));
    c.le("algebra:matches_su", diff, opt.agreement);
    const json& frames = field(cert, "frames");
    const CMatrix ft = square(frames, "torus", n), fr = square(frames, "reference", n);
    c.le("unitary:frame_torus", unitarity_residual(ft), kMemberTol);
    c.le("unitary:frame_reference", unitarity_residual(fr), kMemberTol);
    double dt = 0.0, dr = 0.0;
    for (const auto& v : basis) dt = std::max(dt, off_diagonal(ft.adjoint() * s->realize(v.coords()) * ft));
    for (const auto& v : ref) dr = std::max(dr, off_diagonal(fr.adjoint() * s->realize(v.coords()) * fr));
    c.le("frame_diagonal:torus", dt, t_toral);
    c.le("frame_diagonal:reference", dr, t_toral);
  }
}

double refit(const std::vector<double>& eps, const std::vector<double>& vals) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, m = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(vals[i] > 0.0) || !(eps[i] > 0.0)) continue;
    const double lx = std::log(eps[i]), ly = std::log(vals[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly, m += 1.0;
  }
  if (m < 2.0) return 0.0;
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

void verify_openness(const json& cert, const VerifyOptions& opt, Checker& c) {
  const json& config = field(cert, "config");
  const double tol = tolerance(c, config, "tol", opt);
  const std::size_t samples = count_field(config, "samples");
  const json& eps_j = field(config, "eps");
  const json& rows = field(cert, "rows");
  if (!eps_j.is_array() || !rows.is_array()) throw Error(ErrorCode::InvalidArgument, "eps and rows must be arrays");
  c.le("rows:count", std::abs(static_cast<double>(rows.size()) - static_cast<double>(eps_j.size())), 0.0);

  std::vector<double> eps, vals;
  std::size_t fail_total = 0, fitted = 0;
  double constant = 0.0;
  for (std::size_t i = 0; i < std::min(rows.size(), eps_j.size()); ++i) {
    const json& row = rows[i];
    const double e = parse_real(eps_j[i]);
    const double re = parse_real(field(row, "eps"));
    const double mn = parse_real(field(row, "max_norm"));
    const double mr = parse_real(field(row, "max_residual"));
    const std::size_t ok = count_field(row, "successes"), bad = count_field(row, "failures");
    const std::string tag = "row" + std::to_string(i);
    c.le(tag + ":eps", std::abs(re - e), opt.agreement * std::abs(e));
    c.le(tag + ":samples", std::abs(static_cast<double>(ok + bad) - static_cast<double>(samples)), 0.0);
    c.le(tag + ":residual", mr, tol);
    c.flag(tag + ":max_norm_finite", std::isfinite(mn) && mn >= 0.0);
    fail_total += bad;
    if (ok > 0) {
      eps.push_back(re);
      vals.push_back(mn);
      if (mn > 0.0 && re > 0.0) ++fitted;
      constant = std::max(constant, mn / std::sqrt(re));
    }
  }
  const json& failures = field(cert, "failures");
  c.le("failures:count", std::abs(static_cast<double>(failures.size()) - static_cast<double>(fail_total)), 0.0);
  c.le("stored:beta", std::abs(parse_real(field(cert, "beta")) - refit(eps, vals)), opt.agreement);
  c.le("stored:constant", std::abs(parse_real(field(cert, "constant")) - constant), opt.agreement);
  c.le("stored:fitted_rows",
       std::abs(static_cast<double>(count_field(cert, "fitted_rows")) - static_cast<double>(fitted)), 0.0);
}

}  // namespace

VerifyResult verify_certificate(const json& cert, const VerifyOptions& options) {
  VerifyResult out;
  out.kind = field(cert, "kind").is_string() ? cert["kind"].get<std::string>() : "";
  if (field(cert, "schema_version") != kCertSchema) throw Error(ErrorCode::InvalidArgument, "unknown certificate schema");
  Checker c(out);
  try {
    if (out.kind == "algebra")
      verify_algebra(cert, options, c);
    else if (out.kind == "group")
      verify_group(cert, options, c);
    else if (out.kind == "torus")
      verify_torus(cert, options, c);
    else if (out.kind == "openness-report")
      verify_openness(cert, options, c);
    else
      throw Error(ErrorCode::InvalidArgument, "unknown certificate kind '" + out.kind + "'");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed certificate: ") + e.what());
  }
  check_digest(c, cert);
  return out;
}

}  // namespace liecomm
