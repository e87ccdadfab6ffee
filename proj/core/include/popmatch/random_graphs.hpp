#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "popmatch/components.hpp"

namespace popmatch {

/// Random bipartite multigraph on parts V (left, size x), U (right, size y)
/// and an optional part U' of degree-<=1 vertices (size aux). Vertex ids are
/// unified: V = [0, x), U = [x, x+y), U' = [x+y, x+y+aux).
struct BipartiteMultigraph {
  std::uint32_t left_size = 0;   // x = |V|
  std::uint32_t right_size = 0;  // y = |U|
  std::uint32_t aux_size = 0;    // |U'|
  std::vector<Edge> edges;

  std::uint64_t num_vertices() const {
    return static_cast<std::uint64_t>(left_size) + right_size + aux_size;
  }
};

/// z edges drawn independently and uniformly (with replacement) from V x U.
/// Deterministic per seed. Throws std::invalid_argument when z > 0 and a part
/// is empty.
BipartiteMultigraph sample_G(std::uint32_t x, std::uint32_t y, std::uint64_t z,
                             std::uint64_t seed);

/// z1 uniform V x U edges followed by z2 edges with a uniform left endpoint
/// and a right endpoint drawn without replacement from the z1+z2 vertices of
/// U'. Every U' vertex ends with degree at most one.
BipartiteMultigraph sample_Gprime(std::uint32_t x, std::uint32_t y, std::uint64_t z1,
                                  std::uint64_t z2, std::uint64_t seed);

ComponentCensus census(const BipartiteMultigraph& graph);
bool has_complex_component(const BipartiteMultigraph& graph);

/// Size of the largest connected component over the total vertex count.
double giant_component_fraction(const BipartiteMultigraph& graph);

/// Two-type alternating Galton-Watson process: a V-side root spawns
/// Poisson(c1) U-side children, U-side nodes spawn Poisson(c2) V-side
/// children, and so on. A trial whose total progeny exceeds the cap is
/// classified as surviving.
enum class OffspringModel {
  poisson,
  /// Binomial(pop, mean/pop) offspring for finite-size studies.
  binomial,
};

struct BranchingConfig {
  double c1 = 0;  // mean offspring of V-side nodes
  double c2 = 0;  // mean offspring of U-side nodes
  std::uint64_t trials = 1;
  std::uint64_t cap = 10'000;  // progeny bound separating "survived" trials
  std::uint64_t seed = 0;
  OffspringModel model = OffspringModel::poisson;
  std::uint64_t population_v = 0;  // binomial model only
  std::uint64_t population_u = 0;
  unsigned threads = 1;
};

struct BranchingTrial {
  bool survived = false;
  std::uint64_t progeny = 0;  // total nodes spawned, capped
};

struct BranchingOutcome {
  std::vector<BranchingTrial> per_trial;
  std::uint64_t trials = 0;
  std::uint64_t survivals = 0;
  double survival_frequency = 0;
  double standard_error = 0;  // binomial: sqrt(p(1-p)/trials)

  /// Total-progeny counts over the extinct trials.
  std::map<std::uint64_t, std::uint64_t> progeny_histogram() const;
};

BranchingOutcome branching_simulate(const BranchingConfig& config);
BranchingOutcome branching_simulate(double c1, double c2, std::uint64_t trials,
                                    std::uint64_t cap, std::uint64_t seed);

/// Survival probability of the process above: 0 when c1*c2 <= 1, otherwise
/// the unique root in (0,1) of 1 - y = exp(c1*(exp(-c2*y) - 1)), found by
/// bisection after verifying the bracket signs; residual <= 1e-12.
double solve_survival_fixed_point(double c1, double c2);

enum class Criticality { subcritical, critical, supercritical };

/// Classification by the offspring-matrix spectral radius sqrt(c1*c2)
/// against 1, compared exactly as c1*c2 vs 1.
Criticality offspring_criticality(double c1, double c2);

}  // namespace popmatch
