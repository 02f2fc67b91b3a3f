#include "liecomm/openness.hpp"

#include <atomic>
#include <cmath>
#include <optional>
#include <thread>

#include "liecomm/numkit.hpp"
#include "liecomm/random.hpp"

namespace liecomm {

const char* level_name(Level level) noexcept { return level == Level::Algebra ? "algebra" : "group"; }

std::uint64_t sample_seed(std::uint64_t seed, std::size_t eps_index, std::size_t sample) {
  return derive_seed(seed, eps_index, sample);
}

double fit_exponent(const std::vector<double>& eps, const std::vector<double>& values, std::size_t* used) {
  if (eps.size() != values.size()) throw Error(ErrorCode::DimensionMismatch, "fit needs one value per eps");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(values[i] > 0.0) || !(eps[i] > 0.0)) continue;
    const double lx = std::log(eps[i]), ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (used) *used = m;
  if (m < 2) return 0.0;
  const double mm = static_cast<double>(m);
  const double den = mm * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (mm * sxy - sx * sy) / den;
}

namespace {

struct SampleResult {
  double norm = 0.0;
  double residual = 0.0;
  std::optional<SampleFailure> failure;
};

SampleResult run_sample(const AlgebraPtr& su_n, const OpennessConfig& cfg, std::size_t ei, std::size_t s) {
  const double eps = cfg.eps[ei];
  const std::uint64_t seed = sample_seed(cfg.seed, ei, s);
  Rng rng(seed);
  try {
    const AlgebraElement z = random_element(su_n, eps, rng);
    if (cfg.level == Level::Algebra) {
      const auto d = decompose_algebra(su_n, z, cfg.algebra);
      return {std::max(d.norm_x, d.norm_y), d.residual, std::nullopt};
    }
    const GroupElement Z(mexp(z.matrix()));
    const auto d = decompose_group(su_n, Z, cfg.group);
    return {std::max(d.dist_A, d.dist_B), d.residual, std::nullopt};
  } catch (const Error& e) {
    return {0.0, 0.0, SampleFailure{eps, ei, s, seed, e.name(), e.stage(), e.what()}};
  }
}

}  // namespace

OpennessReport measure_openness(int n, const OpennessConfig& config) {
  if (config.eps.empty()) throw Error(ErrorCode::InvalidArgument, "eps list is empty");
  for (std::size_t i = 0; i < config.eps.size(); ++i) {
    if (!(config.eps[i] > 0.0) || !std::isfinite(config.eps[i]))
      throw Error(ErrorCode::InvalidArgument, "eps values must be positive and finite");
    if (i > 0 && !(config.eps[i] < config.eps[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "eps values must be strictly descending");
  }
  if (config.samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
  const AlgebraPtr su_n = su(n);

  const std::size_t total = config.eps.size() * config.samples;
  std::vector<SampleResult> results(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++)
      results[i] = run_sample(su_n, config, i / config.samples, i % config.samples);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(total)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  OpennessReport report;
  report.n = n;
  report.config = config;
  report.tolerance = config.level == Level::Algebra ? config.algebra.tol : config.group.tol;
  std::vector<double> eps_fit, norm_fit;
  for (std::size_t ei = 0; ei < config.eps.size(); ++ei) {
    OpennessRow row;
    row.eps = config.eps[ei];
    for (std::size_t s = 0; s < config.samples; ++s) {
      const auto& r = results[ei * config.samples + s];
      if (r.failure) {
        ++row.failures;
        report.failures.push_back(*r.failure);
        continue;
      }
      ++row.successes;
      row.max_norm = std::max(row.max_norm, r.norm);
      row.max_residual = std::max(row.max_residual, r.residual);
    }
    if (row.successes > 0) {
      eps_fit.push_back(row.eps);
      norm_fit.push_back(row.max_norm);
      report.constant = std::max(report.constant, row.max_norm / std::sqrt(row.eps));
    }
    report.rows.push_back(row);
  }
  report.beta = fit_exponent(eps_fit, norm_fit, &report.fitted_rows);
  return report;
}

}  // namespace liecomm
