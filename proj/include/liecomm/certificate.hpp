#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "liecomm/comm_group.hpp"
#include "liecomm/openness.hpp"
#include "liecomm/rootsys.hpp"

namespace liecomm {

using json = nlohmann::json;

inline constexpr const char* kCertSchema = "liecomm-cert/1";

/// Decimal string with 17 significant digits; parses back to the same double.
std::string format_real(double v);
/// Accepts a decimal string or a JSON number.
double parse_real(const json& j);

/// Rows of [re, im] pairs, both as decimal strings.
json matrix_to_json(const CMatrix& m);
json real_matrix_to_json(const RMatrix& m);
/// Accepts strings or numbers for each part. Throws InvalidArgument on a
/// ragged or malformed array.
CMatrix matrix_from_json(const json& j);
RMatrix real_matrix_from_json(const json& j);

/// Echoed into certificates. `eps` and `seed` are present for random targets.
struct CertificateConfig {
  double tol = 0.0;
  std::string source = "api";
  std::optional<double> eps;
  std::optional<std::uint64_t> seed;
};

json algebra_certificate(const AlgebraDecomposition& d, const CertificateConfig& cfg);
json group_certificate(const GroupDecomposition& d, const CertificateConfig& cfg);

struct TorusTolerances {
  double toral = 1e-9;
  double orthonormal = 1e-10;
  double orthogonality = 1e-9;
};

/// `torus` is checked against `reference` (the frame torus t_u, or the span of
/// the k_a for a root-system presentation).
json su_torus_certificate(const TorusBasis& torus, const TorusBasis& reference, const TorusTolerances& tol = {});
json root_torus_certificate(const RootSystemPresentation& p, const TorusBasis& torus, const TorusBasis& reference,
                            const TorusTolerances& tol = {});

json openness_certificate(const OpennessReport& report);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const json& cert);
/// FNV-1a of the canonical form without the digest field.
std::string certificate_digest(const json& cert);
/// Adds the digest field.
json seal(json cert);
/// Parses text; throws InvalidArgument on malformed JSON or an unknown schema.
json parse_certificate(const std::string& text);

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyOptions {
  /// Certificates declaring a looser tolerance than this are rejected.
  double max_tolerance = 1e-6;
  /// Stored numbers must match recomputed ones to this accuracy.
  double agreement = 1e-12;
};

struct VerifyResult {
  std::string kind;
  std::vector<Check> checks;
  bool ok() const;
  std::vector<std::string> failed() const;
};

/// Recomputes every residual from the stored witnesses using only the dense
/// linear algebra and compact-algebra layers. Throws InvalidArgument when a
/// required field is missing or has the wrong shape.
VerifyResult verify_certificate(const json& cert, const VerifyOptions& options = {});

}  // namespace liecomm
