#include "popmatch/random_graphs.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "popmatch/parallel.hpp"
#include "popmatch/rng.hpp"

namespace popmatch {
namespace {

void check_parts(std::uint32_t x, std::uint32_t y, std::uint64_t edges) {
  if (edges > 0 && (x == 0 || y == 0))
    throw std::invalid_argument("sample: parts must be non-empty when edges are requested");
}

}  // namespace

BipartiteMultigraph sample_G(std::uint32_t x, std::uint32_t y, std::uint64_t z,
                             std::uint64_t seed) {
  check_parts(x, y, z);
  BipartiteMultigraph graph;
  graph.left_size = x;
  graph.right_size = y;
  graph.edges.reserve(z);
  Rng rng(derive_seed(seed, 0));
  for (std::uint64_t e = 0; e < z; ++e) {
    const auto v = static_cast<std::uint32_t>(rng.below(x));
    const auto u = static_cast<std::uint32_t>(x + rng.below(y));
    graph.edges.emplace_back(v, u);
  }
  return graph;
}

BipartiteMultigraph sample_Gprime(std::uint32_t x, std::uint32_t y, std::uint64_t z1,
                                  std::uint64_t z2, std::uint64_t seed) {
  check_parts(x, y, z1);
  if (z2 > 0 && x == 0)
    throw std::invalid_argument("sample: parts must be non-empty when edges are requested");
  BipartiteMultigraph graph;
  graph.left_size = x;
  graph.right_size = y;
  graph.aux_size = static_cast<std::uint32_t>(z1 + z2);
  graph.edges.reserve(z1 + z2);
  Rng rng(derive_seed(seed, 0));
  for (std::uint64_t e = 0; e < z1; ++e) {
    const auto v = static_cast<std::uint32_t>(rng.below(x));
    const auto u = static_cast<std::uint32_t>(x + rng.below(y));
    graph.edges.emplace_back(v, u);
  }
  // Partial Fisher-Yates over the U' ids: the prefix swapped so far is
  // exactly a uniform without-replacement draw.
  const std::uint64_t total = z1 + z2;
  std::vector<std::uint32_t> ids(total);
  for (std::uint64_t i = 0; i < total; ++i) ids[i] = static_cast<std::uint32_t>(i);
  for (std::uint64_t i = 0; i < z2; ++i) {
    const auto v = static_cast<std::uint32_t>(rng.below(x));
    const std::uint64_t j = i + rng.below(total - i);
    std::swap(ids[i], ids[j]);
    graph.edges.emplace_back(v, static_cast<std::uint32_t>(x + y + ids[i]));
  }
  return graph;
}

ComponentCensus census(const BipartiteMultigraph& graph) {
  return census_components(graph.num_vertices(), graph.edges);
}

bool has_complex_component(const BipartiteMultigraph& graph) {
  return has_complex_component(graph.num_vertices(), graph.edges);
}

double giant_component_fraction(const BipartiteMultigraph& graph) {
  const std::uint64_t total = graph.num_vertices();
  if (total == 0) return 0.0;
  return static_cast<double>(census(graph).largest_component_vertices) /
         static_cast<double>(total);
}

std::map<std::uint64_t, std::uint64_t> BranchingOutcome::progeny_histogram() const {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& trial : per_trial)
    if (!trial.survived) ++hist[trial.progeny];
  return hist;
}

BranchingOutcome branching_simulate(const BranchingConfig& config) {
  if (config.cap == 0) throw std::invalid_argument("branching: cap must be at least 1");
  if (config.c1 < 0 || config.c2 < 0)
    throw std::invalid_argument("branching: offspring means must be non-negative");
  if (config.model == OffspringModel::binomial &&
      (config.population_v == 0 || config.population_u == 0))
    throw std::invalid_argument("branching: binomial model needs both population sizes");

  BranchingOutcome outcome;
  outcome.trials = config.trials;
  outcome.per_trial.resize(config.trials);

  auto offspring = [&](Rng& rng, bool v_side) -> std::uint64_t {
    const double mean = v_side ? config.c1 : config.c2;
    if (config.model == OffspringModel::poisson) return rng.poisson(mean);
    const std::uint64_t pop = v_side ? config.population_v : config.population_u;
    return rng.binomial(pop, mean / static_cast<double>(pop));
  };

  parallel_for(config.trials, config.threads, [&](std::uint64_t t) {
    Rng rng(derive_seed(config.seed, t));
    // Generation counts suffice: spawn order inside a generation is
    // irrelevant to the total progeny.
    std::uint64_t pending = 1;  // root, V side
    bool v_side = true;
    std::uint64_t total = 1;
    bool survived = false;
    while (pending > 0) {
      std::uint64_t next = 0;
      for (std::uint64_t i = 0; i < pending; ++i) next += offspring(rng, v_side);
      total += next;
      if (total > config.cap) {
        survived = true;
        total = config.cap;
        break;
      }
      pending = next;
      v_side = !v_side;
    }
    outcome.per_trial[t] = BranchingTrial{survived, total};
  });

  for (const auto& trial : outcome.per_trial) outcome.survivals += trial.survived ? 1 : 0;
  const double p = config.trials == 0
                       ? 0.0
                       : static_cast<double>(outcome.survivals) / static_cast<double>(config.trials);
  outcome.survival_frequency = p;
  outcome.standard_error =
      config.trials == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(config.trials));
  return outcome;
}

BranchingOutcome branching_simulate(double c1, double c2, std::uint64_t trials,
                                    std::uint64_t cap, std::uint64_t seed) {
  BranchingConfig config;
  config.c1 = c1;
  config.c2 = c2;
  config.trials = trials;
  config.cap = cap;
  config.seed = seed;
  return branching_simulate(config);
}

double solve_survival_fixed_point(double c1, double c2) {
  if (c1 < 0 || c2 < 0)
    throw std::invalid_argument("fixed point: offspring means must be non-negative");
  if (c1 * c2 <= 1.0) return 0.0;
  // g(y) = 1 - y - exp(c1*(exp(-c2*y) - 1)), written through expm1 so the
  // near-zero tail does not cancel.
  const auto g = [&](double y) { return -y - std::expm1(c1 * std::expm1(-c2 * y)); };
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  if (g(lo) <= 0.0) return 0.0;  // root below the bracket: barely supercritical
  assert(g(hi) < 0.0);
  for (int iter = 0; iter < 200 && hi - lo > 1e-16; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Criticality offspring_criticality(double c1, double c2) {
  const double product = c1 * c2;
  if (product > 1.0) return Criticality::supercritical;
  if (product < 1.0) return Criticality::subcritical;
  return Criticality::critical;
}

}  // namespace popmatch
