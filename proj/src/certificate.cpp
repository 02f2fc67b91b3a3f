#include "liecomm/certificate.hpp"

#include <cerrno>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>

namespace liecomm {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) throw Error(ErrorCode::InvalidArgument, "expected a decimal string or number");
  const std::string& s = j.get_ref<const std::string&>();
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty decimal string");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE)
    throw Error(ErrorCode::InvalidArgument, "malformed decimal string '" + s + "'");
  return v;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(json::array({format_real(m(i, k).real()), format_real(m(i, k).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json real_matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(format_real(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::InvalidArgument, "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorCode::InvalidArgument, "matrix rows must be non-empty arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) {
      const json& e = j[i][k];
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidArgument, "matrix entries must be [re, im] pairs");
      m(i, k) = cplx(parse_real(e[0]), parse_real(e[1]));
    }
  }
  if (!m.all_finite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  return m;
}

RMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw Error(ErrorCode::InvalidArgument, "matrix must be a non-empty array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  RMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(ErrorCode::InvalidArgument, "ragged matrix");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = parse_real(j[i][k]);
  }
  return m;
}

namespace {

json header(const char* kind) {
  json j;
  j["schema_version"] = kCertSchema;
  j["kind"] = kind;
  return j;
}

json config_echo(const CertificateConfig& cfg) {
  json c;
  c["tol"] = format_real(cfg.tol);
  c["source"] = cfg.source;
  if (cfg.eps) c["eps"] = format_real(*cfg.eps);
  if (cfg.seed) c["seed"] = *cfg.seed;
  return c;
}

void describe_su(json& j, const CompactAlgebra& a) {
  j["group"] = "su";
  j["n"] = a.realization_size();
  j["dim"] = a.dim();
  j["rank"] = a.rank();
}

json coords_to_json(std::span<const double> c) {
  json row = json::array();
  for (double v : c) row.push_back(format_real(v));
  return row;
}

json algebra_block(const CompactAlgebra& a) {
  json b;
  b["label"] = a.label();
  b["dim"] = a.dim();
  b["rank"] = a.rank();
  b["gram"] = real_matrix_to_json(a.gram());
  json sc = json::array();
  const std::size_t d = a.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        if (a.constant(i, k, l) != 0.0) sc.push_back(json::array({i, k, l, format_real(a.constant(i, k, l))}));
  b["structure_constants"] = sc;
  return b;
}

json torus_body(const TorusBasis& torus, const TorusBasis& reference, const TorusTolerances& tol) {
  json j = header("torus");
  j["algebra"] = algebra_block(*torus.algebra);
  json basis = json::array(), ref = json::array();
  for (const auto& v : torus.vectors) basis.push_back(coords_to_json(v.coords()));
  for (const auto& v : reference.vectors) ref.push_back(coords_to_json(v.coords()));
  j["basis"] = basis;
  j["reference"] = ref;
  const auto r = torus_residuals(torus);
  j["residuals"] = {{"toral", format_real(r.toral)},
                    {"orthonormal", format_real(r.orthonormal)},
                    {"orthogonality", format_real(torus_orthogonality(torus, reference))}};
  j["tolerances"] = {{"toral", format_real(tol.toral)},
                     {"orthonormal", format_real(tol.orthonormal)},
                     {"orthogonality", format_real(tol.orthogonality)}};
  return j;
}

}  // namespace

json algebra_certificate(const AlgebraDecomposition& d, const CertificateConfig& cfg) {
  json j = header("algebra");
  describe_su(j, *d.target.algebra());
  j["config"] = config_echo(cfg);
  j["target"] = matrix_to_json(d.target.matrix());
  j["witnesses"] = {{"x", matrix_to_json(d.x.matrix())}, {"y", matrix_to_json(d.y.matrix())}};
  j["provenance"] = {{"conjugator", matrix_to_json(d.g.matrix())},
                     {"regular_element", matrix_to_json(d.x0.matrix())},
                     {"scale", format_real(d.scale)},
                     {"torus_frame", matrix_to_json(d.torus.frame->matrix())},
                     {"conjugated_target", matrix_to_json(d.w.matrix())},
                     {"y0", matrix_to_json(d.y0.matrix())}};
  j["residuals"] = {{"commutator", format_real(d.residual)}};
  j["norms"] = {{"target", format_real(d.target.norm())},
                {"x", format_real(d.norm_x)},
                {"y", format_real(d.norm_y)}};
  return j;
}

json group_certificate(const GroupDecomposition& d, const CertificateConfig& cfg) {
  json j = header("group");
  describe_su(j, *d.z.algebra());
  j["config"] = config_echo(cfg);
  j["target"] = matrix_to_json(d.Z.matrix());
  j["witnesses"] = {{"A", matrix_to_json(d.A.matrix())}, {"B", matrix_to_json(d.B.matrix())}};
  j["intermediates"] = {{"log_target", matrix_to_json(d.z.matrix())},
                        {"c", matrix_to_json(d.c.matrix())},
                        {"x", matrix_to_json(d.x.matrix())},
                        {"y", matrix_to_json(d.y.matrix())},
                        {"P", matrix_to_json(d.P.matrix())},
                        {"Q", matrix_to_json(d.Q.matrix())},
                        {"pq_iterations", d.pq_iterations}};
  j["residuals"] = {{"commutator", format_real(d.residual)}};
  j["norms"] = {{"dist_A", format_real(d.dist_A)},
                {"dist_B", format_real(d.dist_B)},
                {"log_target", format_real(d.z.norm())}};
  return j;
}

json su_torus_certificate(const TorusBasis& torus, const TorusBasis& reference, const TorusTolerances& tol) {
  if (!torus.frame || !reference.frame) throw Error(ErrorCode::NotApplicable, "su torus certificates need frames");
  json j = torus_body(torus, reference, tol);
  j["group"] = "su";
  j["n"] = torus.frame->n();
  j["source"] = "fourier";
  j["frames"] = {{"torus", matrix_to_json(torus.frame->matrix())},
                 {"reference", matrix_to_json(reference.frame->matrix())}};
  return j;
}

json root_torus_certificate(const RootSystemPresentation& p, const TorusBasis& torus, const TorusBasis& reference,
                            const TorusTolerances& tol) {
  json j = torus_body(torus, reference, tol);
  j["type"] = std::string(1, p.type());
  j["rank"] = p.rank();
  j["source"] = "inductive";
  j["presentation"] = presentation_to_json(p);
  return j;
}

json openness_certificate(const OpennessReport& r) {
  json j = header("openness-report");
  j["level"] = level_name(r.config.level);
  j["group"] = "su";
  j["n"] = r.n;
  json eps = json::array();
  for (double e : r.config.eps) eps.push_back(format_real(e));
  j["config"] = {{"eps", eps}, {"samples", r.config.samples}, {"seed", r.config.seed}, {"tol", format_real(r.tolerance)}};
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"eps", format_real(row.eps)},
                    {"max_norm", format_real(row.max_norm)},
                    {"max_residual", format_real(row.max_residual)},
                    {"successes", row.successes},
                    {"failures", row.failures}});
  j["rows"] = rows;
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"eps", format_real(f.eps)},
                        {"eps_index", f.eps_index},
                        {"sample", f.sample},
                        {"seed", f.seed},
                        {"error", f.error},
                        {"stage", f.stage},
                        {"message", f.message}});
  j["failures"] = failures;
  j["beta"] = format_real(r.beta);
  j["constant"] = format_real(r.constant);
  j["fitted_rows"] = r.fitted_rows;
  return j;
}

std::string canonical_dump(const json& cert) { return cert.dump(2) + "\n"; }

std::string certificate_digest(const json& cert) {
  json body = cert;
  if (body.is_object()) body.erase("digest");
  const std::string text = canonical_dump(body);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016" PRIx64, h);
  return buf;
}

json seal(json cert) {
  cert["digest"] = certificate_digest(cert);
  return cert;
}

json parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema_version") || j["schema_version"] != kCertSchema)
    throw Error(ErrorCode::InvalidArgument, "unknown certificate schema");
  if (!j.contains("kind") || !j["kind"].is_string()) throw Error(ErrorCode::InvalidArgument, "certificate has no kind");
  return j;
}

}  // namespace liecomm
