#include "popmatch/analysis.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "popmatch/parallel.hpp"
#include "popmatch/profile.hpp"
#include "popmatch/rng.hpp"
#include "popmatch/topchoice.hpp"

namespace popmatch {
namespace {

// Bisection on a bracket with f(lo) < 0 < f(hi); the interval is shrunk to
// machine width, which leaves the residual far below the 1e-12 contract.
template <typename F>
double bisect(F f, double lo, double hi) {
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double transition_gap(double x, std::uint32_t k) {
  return x * std::exp(-0.5 / x) - beta_expected(x, k);
}

}  // namespace

double alpha_star() {
  const auto f = [](double x) { return x * x * std::exp(-1.0 / x) - 1.0; };
  return bisect(f, 1.0, 2.0);
}

double beta_expected(double alpha, std::uint32_t k) {
  if (alpha < 1.0) throw std::invalid_argument("beta_expected: alpha must be >= 1");
  if (k == 0) throw std::invalid_argument("beta_expected: k must be >= 1");
  return 1.0 - std::pow(1.0 - std::exp(-1.0 / alpha), static_cast<double>(k - 1));
}

std::optional<double> alpha_k(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("alpha_k: k must be >= 1");
  const double at_one = transition_gap(1.0, k);
  if (k <= 3) {
    // The gap is increasing and already positive at x = 1: no root in [1, inf).
    if (!(at_one > 0.0)) throw std::logic_error("alpha_k: expected no root for k <= 3");
    return std::nullopt;
  }
  const double at_two = transition_gap(2.0, k);
  if (!(at_one < 0.0) || !(at_two > 0.0))
    throw std::logic_error("alpha_k: bracket [1, 2] lost its sign change");
  return bisect([k](double x) { return transition_gap(x, k); }, 1.0, 2.0);
}

TransitionCurve transition_curve(std::uint32_t k_max) {
  if (k_max < 4) throw std::invalid_argument("transition_curve: k_max must be >= 4");
  TransitionCurve curve;
  curve.points.reserve(k_max);
  const double star = alpha_star();
  double previous = 0.0;
  for (std::uint32_t k = 1; k <= k_max; ++k) {
    const auto alpha = alpha_k(k);
    if (alpha) {
      // Strictly increasing toward alpha_star; ties are tolerated only on the
      // convergence plateau where consecutive roots collapse to the same
      // double (the analytic gap shrinks past 1 ulp around k ~ 50).
      const bool plateau = star - previous <= 1e-9;
      const bool increasing = plateau ? *alpha >= previous : *alpha > previous;
      if (!increasing || !(*alpha <= star + 1e-9))
        throw std::logic_error("transition_curve: monotonicity violated at k = " +
                               std::to_string(k));
      previous = *alpha;
    }
    curve.points.push_back({k, alpha});
  }
  return curve;
}

namespace {

SweepReport run_sweep(const SweepConfig& config) {
  if (config.n == 0) throw std::invalid_argument("sweep: n must be >= 1");
  if (config.trials == 0) throw std::invalid_argument("sweep: trials must be >= 1");
  const auto n32 = static_cast<std::uint32_t>(config.n);

  SweepReport report;
  report.rows.reserve(config.alphas.size());
  std::vector<std::uint8_t> exists(config.trials);
  std::vector<double> ratio(config.trials);

  for (std::size_t row_index = 0; row_index < config.alphas.size(); ++row_index) {
    const double alpha = config.alphas[row_index];
    const auto m = static_cast<std::uint64_t>(std::llround(alpha * static_cast<double>(config.n)));
    if (m < config.n)
      throw std::invalid_argument("sweep: alpha " + std::to_string(alpha) +
                                  " rounds to m < n (alpha must be >= 1)");

    const auto start = std::chrono::steady_clock::now();
    parallel_for(config.trials, config.threads, [&](std::uint64_t t) {
      const auto profile = generate_incomplete(
          n32, static_cast<std::uint32_t>(m), config.k, derive_seed(config.seed, row_index, t));
      const FsDecomposition fs = decompose(profile);
      exists[t] = has_complex_component(build_top_choice_graph(profile, fs)) ? 0 : 1;
      ratio[t] = static_cast<double>(fs.a2.size()) / static_cast<double>(config.n);
    });
    const auto stop = std::chrono::steady_clock::now();

    // Serial reduction in trial order: bit-identical for any thread count.
    std::uint64_t hits = 0;
    double sum = 0.0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      hits += exists[t];
      sum += ratio[t];
    }
    const double trials_d = static_cast<double>(config.trials);
    const double freq = static_cast<double>(hits) / trials_d;
    const double mean = sum / trials_d;
    double sq = 0.0;
    for (std::uint64_t t = 0; t < config.trials; ++t) sq += (ratio[t] - mean) * (ratio[t] - mean);
    const double sd = config.trials > 1 ? std::sqrt(sq / (trials_d - 1.0)) : 0.0;

    SweepRow row;
    row.n = config.n;
    row.m = m;
    row.k = config.k;
    row.alpha_requested = alpha;
    row.alpha_realized = static_cast<double>(m) / static_cast<double>(config.n);
    row.trials = config.trials;
    row.exists_freq = freq;
    row.exists_se = std::sqrt(freq * (1.0 - freq) / trials_d);
    row.a2_mean = mean;
    row.a2_sd = sd;
    row.elapsed_ms =
        config.record_timing
            ? std::chrono::duration<double, std::milli>(stop - start).count()
            : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

SweepReport sweep_existence(const SweepConfig& config) { return run_sweep(config); }

SweepReport sweep_existence(std::uint64_t n, std::uint32_t k, const std::vector<double>& alphas,
                            std::uint64_t trials, std::uint64_t seed) {
  SweepConfig config;
  config.n = n;
  config.k = k;
  config.alphas = alphas;
  config.trials = trials;
  config.seed = seed;
  return run_sweep(config);
}

SweepReport sweep_a2(const SweepConfig& config) { return run_sweep(config); }

SweepReport sweep_a2(std::uint64_t n, std::uint32_t k, const std::vector<double>& alphas,
                     std::uint64_t trials, std::uint64_t seed) {
  SweepConfig config;
  config.n = n;
  config.k = k;
  config.alphas = alphas;
  config.trials = trials;
  config.seed = seed;
  return run_sweep(config);
}

}  // namespace popmatch
