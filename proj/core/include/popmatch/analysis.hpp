#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace popmatch {

/// The complete-list transition point: root of x^2 * exp(-1/x) = 1 in [1, 2],
/// residual <= 1e-12.
double alpha_star();

/// Expected |A2|/n for list length k at ratio alpha: 1 - (1 - e^{-1/alpha})^{k-1}.
double beta_expected(double alpha, std::uint32_t k);

/// The k-list transition point: root in [1, inf) of
/// x * exp(-1/2x) = 1 - (1 - e^{-1/x})^{k-1}. No root exists for k <= 3
/// (std::nullopt); for k >= 4 the root is found by bisection on [1, 2] after
/// verifying the bracket signs. Residual <= 1e-12.
std::optional<double> alpha_k(std::uint32_t k);

struct TransitionPoint {
  std::uint32_t k = 0;
  std::optional<double> alpha;  // nullopt: no root for this k
};

struct TransitionCurve {
  std::vector<TransitionPoint> points;  // k = 1 .. k_max
};

/// Transition points for k = 1..k_max (k_max >= 4). Checks that the numeric
/// part is strictly increasing and stays below alpha_star().
TransitionCurve transition_curve(std::uint32_t k_max);

struct SweepRow {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint32_t k = 0;
  double alpha_requested = 0;
  double alpha_realized = 0;  // m/n after rounding m
  std::uint64_t trials = 0;
  double exists_freq = 0;
  double exists_se = 0;  // sqrt(p(1-p)/trials)
  double a2_mean = 0;
  double a2_sd = 0;  // sample standard deviation
  double elapsed_ms = 0;

  bool operator==(const SweepRow&) const = default;
};

struct SweepReport {
  std::vector<SweepRow> rows;

  bool operator==(const SweepReport&) const = default;
};

struct SweepConfig {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::vector<double> alphas;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Off by default so reports are bit-identical across reruns; when on, each
  /// row carries the wall-clock milliseconds spent on its trials.
  bool record_timing = false;
};

/// Monte Carlo existence sweep: per alpha, m = round(alpha * n) profiles are
/// generated with per-trial derived seeds and tested with the fast
/// complex-component criterion; the A2 ratio is measured on the same trials.
/// Aggregation order is fixed, so any thread count yields the same report.
SweepReport sweep_existence(const SweepConfig& config);
SweepReport sweep_existence(std::uint64_t n, std::uint32_t k, const std::vector<double>& alphas,
                            std::uint64_t trials, std::uint64_t seed);

/// Same trial loop with the A2 ratio as the quantity of interest.
SweepReport sweep_a2(const SweepConfig& config);
SweepReport sweep_a2(std::uint64_t n, std::uint32_t k, const std::vector<double>& alphas,
                     std::uint64_t trials, std::uint64_t seed);

}  // namespace popmatch
