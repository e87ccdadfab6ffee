#include "popmatch/topchoice.hpp"

#include <cassert>

namespace popmatch {

FsDecomposition decompose(const PreferenceProfile& profile) {
  FsDecomposition fs;
  fs.first_choice.resize(profile.n);
  fs.second_choice.resize(profile.n);
  fs.item_in_f.assign(profile.m, 0);

  for (PersonId a = 0; a < profile.n; ++a) {
    const ItemId f = profile.list(a).front();
    fs.first_choice[a] = f;
    if (!fs.item_in_f[f]) {
      fs.item_in_f[f] = 1;
      ++fs.f_size;
    }
  }
  for (PersonId a = 0; a < profile.n; ++a) {
    ItemId s = LastResort::id(profile, a);
    for (const ItemId b : profile.list(a)) {
      if (!fs.item_in_f[b]) {
        s = b;
        break;
      }
    }
    fs.second_choice[a] = s;
    if (LastResort::is(profile, s))
      fs.a1.push_back(a);
    else
      fs.a2.push_back(a);
  }
  return fs;
}

TopChoiceGraph build_top_choice_graph(const PreferenceProfile& profile) {
  return build_top_choice_graph(profile, decompose(profile));
}

TopChoiceGraph build_top_choice_graph(const PreferenceProfile& profile,
                                      const FsDecomposition& fs) {
  TopChoiceGraph graph;
  graph.num_items = profile.m;
  graph.num_people = profile.n;
  graph.edges.reserve(profile.n);
  for (PersonId a = 0; a < profile.n; ++a) {
    const ItemId s = fs.second_choice[a];
    graph.edges.emplace_back(fs.first_choice[a], s);
    if (LastResort::is(profile, s))
      ++graph.last_resort_edge_count;
    else
      ++graph.normal_edge_count;
  }
  return graph;
}

ComponentCensus census(const TopChoiceGraph& graph) {
  return census_components(graph.num_vertices(), graph.edges);
}

bool has_complex_component(const TopChoiceGraph& graph) {
  return has_complex_component(graph.num_vertices(), graph.edges);
}

std::optional<Matching> exists_a_perfect_matching(const PreferenceProfile& profile) {
  return exists_a_perfect_matching(profile, decompose(profile));
}

std::optional<Matching> exists_a_perfect_matching(const PreferenceProfile& profile,
                                                  const FsDecomposition& fs) {
  const std::uint32_t n = profile.n;
  const ItemId none = profile.m + n;  // one past the largest vertex id
  // owner[b]: person currently holding item b (real items and last resorts).
  std::vector<PersonId> owner(profile.m + n, none);
  std::vector<std::uint32_t> visited(n, 0);  // phase stamps
  std::vector<PersonId> stack;
  std::vector<std::uint8_t> branch;  // which candidate the frame is exploring

  auto candidate = [&](PersonId a, std::uint8_t which) {
    return which == 0 ? fs.first_choice[a] : fs.second_choice[a];
  };

  for (PersonId start = 0; start < n; ++start) {
    const std::uint32_t stamp = start + 1;
    stack.assign(1, start);
    branch.assign(1, 0);
    visited[start] = stamp;
    bool augmented = false;
    // Iterative Kuhn: each frame tries f(a) then s(a); displaced owners are
    // pushed and must re-place themselves on their other candidate.
    while (!stack.empty()) {
      const PersonId a = stack.back();
      if (branch.back() >= 2) {
        stack.pop_back();
        branch.pop_back();
        if (!stack.empty()) ++branch.back();
        continue;
      }
      const ItemId b = candidate(a, branch.back());
      const PersonId holder = owner[b];
      if (holder == none) {
        // Free item: unwind, assigning every frame its current candidate.
        for (std::size_t i = stack.size(); i-- > 0;) {
          owner[candidate(stack[i], branch[i])] = stack[i];
        }
        augmented = true;
        break;
      }
      if (visited[holder] != stamp) {
        visited[holder] = stamp;
        // Displaced holder starts on the candidate it does not occupy.
        stack.push_back(holder);
        branch.push_back(candidate(holder, 0) == b ? 1 : 0);
      } else {
        ++branch.back();
      }
    }
    if (!augmented) return std::nullopt;
  }

  Matching matching;
  matching.assignment.resize(n);
  for (ItemId b = 0; b < profile.m + n; ++b)
    if (owner[b] != none) matching.assignment[owner[b]] = b;
  return matching;
}

bool exists_popular_fast(const PreferenceProfile& profile) {
  const FsDecomposition fs = decompose(profile);
  const bool no_complex = !has_complex_component(build_top_choice_graph(profile, fs));
#ifndef NDEBUG
  assert(no_complex == exists_a_perfect_matching(profile, fs).has_value());
#endif
  return no_complex;
}

double a2_ratio(const PreferenceProfile& profile) {
  const FsDecomposition fs = decompose(profile);
  return static_cast<double>(fs.a2.size()) / profile.n;
}

}  // namespace popmatch
