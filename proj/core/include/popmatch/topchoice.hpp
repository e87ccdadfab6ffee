#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "popmatch/components.hpp"
#include "popmatch/matching.hpp"
#include "popmatch/profile.hpp"

namespace popmatch {

/// First/second-choice decomposition of an instance. f(a) is the top of a's
/// list; F collects every first choice; s(a) is a's highest listed item
/// outside F, or a's last resort when the whole list sits inside F. A1 holds
/// the people with s(a) = last resort, A2 everyone else. S = B - F is kept
/// implicit: test item_in_f.
struct FsDecomposition {
  std::vector<ItemId> first_choice;   // f(a), size n
  std::vector<ItemId> second_choice;  // s(a): item in S, or m + a for a in A1
  std::vector<std::uint8_t> item_in_f;  // size m
  std::uint32_t f_size = 0;
  std::vector<PersonId> a1;
  std::vector<PersonId> a2;
};

/// O(total list length + m).
FsDecomposition decompose(const PreferenceProfile& profile);

/// Bipartite multigraph with one edge per person: (f(a), s(a)). Edges ending
/// in S are normal edges, edges ending in a last resort (id m + a) are last
/// resort edges. Parallel edges are preserved; edge order is person order.
struct TopChoiceGraph {
  std::uint32_t num_items = 0;   // left part B
  std::uint32_t num_people = 0;  // also the edge count
  std::vector<Edge> edges;
  std::uint32_t normal_edge_count = 0;       // |A2|
  std::uint32_t last_resort_edge_count = 0;  // |A1|

  /// Items plus one potential last-resort vertex per person.
  std::uint64_t num_vertices() const {
    return static_cast<std::uint64_t>(num_items) + num_people;
  }
};

TopChoiceGraph build_top_choice_graph(const PreferenceProfile& profile);
TopChoiceGraph build_top_choice_graph(const PreferenceProfile& profile,
                                      const FsDecomposition& fs);

ComponentCensus census(const TopChoiceGraph& graph);
bool has_complex_component(const TopChoiceGraph& graph);

/// Searches for a matching that gives every person f(a) or s(a) by
/// augmenting paths over the degree-<=2 candidate graph, trying people in
/// index order and f(a) before s(a) so the witness is deterministic.
/// Returns the witness, or std::nullopt when no such matching exists.
std::optional<Matching> exists_a_perfect_matching(const PreferenceProfile& profile);
std::optional<Matching> exists_a_perfect_matching(const PreferenceProfile& profile,
                                                  const FsDecomposition& fs);

/// Popular-matching existence by the complex-component criterion: true iff
/// the top-choice graph has no component with more than one cycle. Debug
/// builds cross-check against the augmenting-path route on every call.
bool exists_popular_fast(const PreferenceProfile& profile);

/// |A2| / n.
double a2_ratio(const PreferenceProfile& profile);

}  // namespace popmatch
