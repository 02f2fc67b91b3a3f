#include "liecomm/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "liecomm/certificate.hpp"
#include "liecomm/numkit.hpp"
#include "liecomm/random.hpp"

namespace liecomm::cli {

namespace {

struct Malformed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Errors raised while reading user input are malformed input, not solver failures.
template <class F>
auto input(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Malformed(e.what());
  } catch (const json::exception& e) {
    throw Malformed(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Malformed("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o || !(o << text)) throw Malformed("cannot write '" + path + "'");
}

CMatrix read_matrix_file(const std::string& path) {
  const std::string text = read_file(path);
  return input([&] { return matrix_from_json(json::parse(text).at("matrix")); });
}

double strict_real(const std::string& s, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v) || v <= 0.0)
    throw Malformed(std::string(what) + " must be a positive number, got '" + s + "'");
  return v;
}

/// --tol, else LIECOMM_TOL, else the level default.
double resolve_tol(double flag, double fallback) {
  if (!std::isnan(flag)) {
    if (!(flag > 0.0) || !std::isfinite(flag)) throw Malformed("--tol must be positive");
    return flag;
  }
  if (const char* env = std::getenv("LIECOMM_TOL"); env && *env) return strict_real(env, "LIECOMM_TOL");
  return fallback;
}

void emit(const json& cert, const std::string& path, std::ostream& out) {
  const std::string text = canonical_dump(cert);
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
    out << "wrote " << cert.at("kind").get<std::string>() << " certificate to " << path << "\n";
  }
}

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct DecomposeOpts {
  std::string level = "algebra";
  std::string group = "su";
  int n = 0;
  std::string target;
  bool random = false;
  double eps = kUnset;
  std::uint64_t seed = 0;
  std::string out;
  double tol = kUnset;
};

struct VerifyOpts {
  std::string path;
  double max_tol = VerifyOptions{}.max_tolerance;
};

struct TorusOpts {
  std::string type;
  int rank = 0;
  std::string group;
  int n = 0;
  std::string frame;
  std::string out;
};

struct MeasureOpts {
  std::string level = "algebra";
  std::string group = "su";
  int n = 0;
  std::vector<double> eps;
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::string csv;
  double tol = kUnset;
};

int cmd_decompose(const DecomposeOpts& o, std::ostream& out) {
  if (o.random == !o.target.empty()) throw Malformed("give exactly one of --target or --random");
  if (o.random && std::isnan(o.eps)) throw Malformed("--random needs --eps");
  if (o.random && !(o.eps > 0.0 && std::isfinite(o.eps))) throw Malformed("--eps must be positive");
  const bool algebra_level = o.level == "algebra";
  const double tol = resolve_tol(o.tol, algebra_level ? AlgebraConfig{}.tol : GroupConfig{}.tol);
  const AlgebraPtr alg = su(o.n);
  const auto n = static_cast<std::size_t>(o.n);

  CertificateConfig echo;
  echo.tol = tol;
  std::optional<AlgebraElement> z;
  std::optional<CMatrix> file_matrix;
  if (o.random) {
    echo.source = "random";
    echo.eps = o.eps;
    echo.seed = o.seed;
    Rng rng(o.seed);
    z = random_element(alg, o.eps, rng);
  } else {
    echo.source = "file";
    file_matrix = read_matrix_file(o.target);
    if (file_matrix->rows() != n || file_matrix->cols() != n) throw Malformed("target size does not match --n");
  }

  if (algebra_level) {
    AlgebraConfig cfg;
    cfg.tol = tol;
    if (file_matrix) {
      const double bad = std::max(skew_hermitian_residual(*file_matrix), std::abs(file_matrix->trace()));
      if (bad > 1e-12 * std::max(1.0, file_matrix->frobenius_norm())) throw Malformed("target is not in su(n)");
      z = AlgebraElement::from_matrix(alg, *file_matrix);
    }
    if (o.random && o.eps > cfg.z_max) throw Error(ErrorCode::TargetTooLarge, "--eps exceeds z_max", "input");
    emit(seal(algebra_certificate(decompose_algebra(alg, *z, cfg), echo)), o.out, out);
    return kOk;
  }

  GroupConfig cfg;
  cfg.tol = tol;
  if (o.random && o.eps > cfg.z_max) throw Error(ErrorCode::TargetTooLarge, "--eps exceeds z_max", "input");
  const GroupElement Z = file_matrix ? input([&] { return GroupElement(*file_matrix); }) : GroupElement(mexp(z->matrix()));
  emit(seal(group_certificate(decompose_group(alg, Z, cfg), echo)), o.out, out);
  return kOk;
}

int cmd_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(o.path);
  const json cert = input([&] { return parse_certificate(text); });
  VerifyOptions opt;
  opt.max_tolerance = o.max_tol;
  const VerifyResult r = input([&] { return verify_certificate(cert, opt); });
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %-24s %-24s %s\n", "check", "value", "threshold", "result");
  out << "kind: " << r.kind << "\n" << line;
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-44s %-24.17g %-24.17g %s\n", c.name.c_str(), c.value, c.threshold,
                  c.passed ? "PASS" : "FAIL");
    out << line;
  }
  if (r.ok()) return kOk;
  err << "verification failed:";
  for (const auto& name : r.failed()) err << " " << name;
  err << "\n";
  return kVerificationFailed;
}

int cmd_orth_torus(const TorusOpts& o, std::ostream& out, std::ostream& err) {
  json cert;
  if (!o.type.empty()) {
    if (!o.group.empty() || o.n != 0 || !o.frame.empty()) throw Malformed("--type excludes --group, --n and --frame");
    if (o.type.size() != 1) throw Malformed("--type is a single letter");
    std::optional<RootSystemPresentation> p;
    try {
      p = make_presentation(o.type[0], o.rank);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnsupportedType) throw;
      throw Malformed(e.what());
    }
    const CompactForm form = compact_form_from_roots(*p);
    cert = root_torus_certificate(*p, orthogonal_torus_inductive(*p, form), form.torus);
  } else {
    if (o.group != "su" || o.n < 2) throw Malformed("give --type and --rank, or --group su and --n");
    const auto n = static_cast<std::size_t>(o.n);
    const AlgebraPtr alg = su(o.n);
    const UnitaryFrame u = o.frame.empty() ? UnitaryFrame::standard(n) : input([&] {
      return UnitaryFrame(read_matrix_file(o.frame));
    });
    if (u.n() != n) throw Malformed("frame size does not match --n");
    cert = su_torus_certificate(fourier_orthogonal_torus(alg, u), frame_torus(alg, u));
  }
  cert = seal(std::move(cert));
  const VerifyResult r = verify_certificate(cert);
  if (!r.ok()) {
    err << "torus failed its own checks:";
    for (const auto& name : r.failed()) err << " " << name;
    err << "\n";
    return kVerificationFailed;
  }
  emit(cert, o.out, out);
  return kOk;
}

int cmd_measure(const MeasureOpts& o, std::ostream& out, std::ostream& err) {
  if (o.eps.empty()) throw Malformed("--eps needs at least one value");
  for (std::size_t i = 0; i < o.eps.size(); ++i) {
    if (!(o.eps[i] > 0.0) || !std::isfinite(o.eps[i])) throw Malformed("--eps values must be positive");
    if (i > 0 && !(o.eps[i] < o.eps[i - 1])) throw Malformed("--eps values must be strictly descending");
  }
  if (o.samples == 0) throw Malformed("--samples must be positive");
  OpennessConfig cfg;
  cfg.level = o.level == "algebra" ? Level::Algebra : Level::Group;
  cfg.eps = o.eps;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs;
  const double tol = resolve_tol(o.tol, cfg.level == Level::Algebra ? cfg.algebra.tol : cfg.group.tol);
  cfg.algebra.tol = tol;
  cfg.group.tol = tol;

  const OpennessReport report = measure_openness(o.n, cfg);
  emit(seal(openness_certificate(report)), o.out, out);

  std::string csv_path = o.csv;
  if (csv_path.empty() && !o.out.empty()) csv_path = std::filesystem::path(o.out).replace_extension(".csv").string();
  if (!csv_path.empty()) {
    std::string csv = "eps,max_norm\n";
    for (const auto& row : report.rows) csv += format_real(row.eps) + "," + format_real(row.max_norm) + "\n";
    write_file(csv_path, csv);
  }
  if (report.failures.empty()) return kOk;
  for (const auto& f : report.failures)
    err << "sample failed: eps=" << format_real(f.eps) << " sample=" << f.sample << " seed=" << f.seed << " "
        << f.error << (f.stage.empty() ? "" : " (stage " + f.stage + ")") << "\n";
  return kSolverError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small commutator decompositions in compact Lie algebras and groups", "liecomm"};
  app.require_subcommand(1);

  DecomposeOpts d;
  auto* dec = app.add_subcommand("decompose", "Write x, y with [x, y] = z (or A, B with ABA^-1B^-1 = Z)");
  dec->add_option("--level", d.level, "algebra or group")->check(CLI::IsMember({"algebra", "group"}));
  dec->add_option("--group", d.group, "compact group family")->check(CLI::IsMember({"su"}));
  dec->add_option("--n", d.n, "matrix size")->required()->check(CLI::Range(2, 64));
  auto* target = dec->add_option("--target", d.target, "JSON file with {\"matrix\": [[[re, im], ...], ...]}");
  auto* random = dec->add_flag("--random", d.random, "draw a random target of norm --eps");
  target->excludes(random);
  dec->add_option("--eps", d.eps, "target norm for --random");
  dec->add_option("--seed", d.seed, "random seed");
  dec->add_option("--out", d.out, "certificate path (default: standard output)");
  dec->add_option("--tol", d.tol, "residual tolerance (default: LIECOMM_TOL or the level default)");

  VerifyOpts v;
  auto* ver = app.add_subcommand("verify", "Recompute every residual of a certificate");
  ver->add_option("certificate", v.path, "certificate file")->required();
  ver->add_option("--max-tol", v.max_tol, "reject certificates declaring a looser tolerance");

  TorusOpts t;
  auto* tor = app.add_subcommand("orth-torus", "Maximal torus orthogonal to a reference torus");
  tor->add_option("--type", t.type, "root system type A, B, C or D");
  tor->add_option("--rank", t.rank, "root system rank");
  tor->add_option("--group", t.group, "compact group family")->check(CLI::IsMember({"su"}));
  tor->add_option("--n", t.n, "matrix size");
  tor->add_option("--frame", t.frame, "JSON file with the reference frame as a unitary matrix");
  tor->add_option("--out", t.out, "certificate path (default: standard output)");

  MeasureOpts m;
  auto* mea = app.add_subcommand("measure", "Witness size against target size over random samples");
  mea->add_option("--level", m.level, "algebra or group")->check(CLI::IsMember({"algebra", "group"}));
  mea->add_option("--group", m.group, "compact group family")->check(CLI::IsMember({"su"}));
  mea->add_option("--n", m.n, "matrix size")->required()->check(CLI::Range(2, 64));
  mea->add_option("--eps", m.eps, "comma-separated descending target norms")->required()->delimiter(',');
  mea->add_option("--samples", m.samples, "samples per eps");
  mea->add_option("--seed", m.seed, "random seed");
  mea->add_option("--jobs", m.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  mea->add_option("--out", m.out, "report path (default: standard output)");
  mea->add_option("--csv", m.csv, "CSV path (default: report path with .csv)");
  mea->add_option("--tol", m.tol, "residual tolerance (default: LIECOMM_TOL or the level default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kMalformedInput;
  }

  try {
    if (dec->parsed()) return cmd_decompose(d, out);
    if (ver->parsed()) return cmd_verify(v, out, err);
    if (tor->parsed()) return cmd_orth_torus(t, out, err);
    return cmd_measure(m, out, err);
  } catch (const Malformed& e) {
    err << "error: " << e.what() << "\n";
    return kMalformedInput;
  } catch (const Error& e) {
    err << e.name();
    if (!e.stage().empty()) err << " (stage " << e.stage() << ")";
    err << ": " << e.what() << "\n";
    return kSolverError;
  }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace liecomm::cli
