#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "liecomm/comm_group.hpp"

namespace liecomm {

enum class Level { Algebra, Group };

const char* level_name(Level level) noexcept;

struct OpennessConfig {
  Level level = Level::Algebra;
  std::vector<double> eps;  // positive, descending
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  AlgebraConfig algebra;
  GroupConfig group;
};

struct OpennessRow {
  double eps = 0.0;
  double max_norm = 0.0;      // algebra: max(||x||, ||y||); group: max(||A - I||, ||B - I||)
  double max_residual = 0.0;
  std::size_t successes = 0;
  std::size_t failures = 0;
};

struct SampleFailure {
  double eps = 0.0;
  std::size_t eps_index = 0;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  std::string error;
  std::string stage;
  std::string message;
};

struct OpennessReport {
  int n = 0;
  OpennessConfig config;
  std::vector<OpennessRow> rows;
  std::vector<SampleFailure> failures;
  double tolerance = 0.0;      // residual tolerance applied to every sample
  double beta = 0.0;           // slope of log max_norm against log eps
  double constant = 0.0;       // max over rows of max_norm / sqrt(eps)
  std::size_t fitted_rows = 0;
};

/// Target drawn for (eps_index, sample): the same for any worker split.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t eps_index, std::size_t sample);

/// Least-squares slope of log(values) against log(eps); rows with a
/// non-positive value are skipped.
double fit_exponent(const std::vector<double>& eps, const std::vector<double>& values, std::size_t* used = nullptr);

/// Decomposes `samples` random targets of each norm in `config.eps` in su(n).
/// Solver failures are collected in the report rather than thrown.
OpennessReport measure_openness(int n, const OpennessConfig& config);

}  // namespace liecomm
