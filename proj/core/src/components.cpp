#include "popmatch/components.hpp"

#include <algorithm>
#include <vector>

namespace popmatch {
namespace {

struct DisjointSets {
  explicit DisjointSets(std::uint64_t n) : parent(n), vertices(n, 1), edges(n, 0) {
    for (std::uint64_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x) {
    std::uint32_t root = x;
    while (parent[root] != root) root = parent[root];
    while (parent[x] != root) x = std::exchange(parent[x], root);
    return root;
  }

  // Keeps the smaller vertex id as root so component ids are stable.
  void add_edge(std::uint32_t a, std::uint32_t b) {
    std::uint32_t ra = find(a);
    std::uint32_t rb = find(b);
    if (ra == rb) {
      edges[ra] += 1;
      return;
    }
    if (rb < ra) std::swap(ra, rb);
    parent[rb] = ra;
    vertices[ra] += vertices[rb];
    edges[ra] += edges[rb] + 1;
  }

  std::vector<std::uint32_t> parent;
  std::vector<std::uint64_t> vertices;
  std::vector<std::uint64_t> edges;
};

}  // namespace

ComponentCensus census_components(std::uint64_t num_vertices, std::span<const Edge> edges) {
  DisjointSets sets(num_vertices);
  for (const auto& [a, b] : edges) sets.add_edge(a, b);

  ComponentCensus census;
  for (std::uint64_t v = 0; v < num_vertices; ++v) {
    if (sets.find(static_cast<std::uint32_t>(v)) != v) continue;
    census.components += 1;
    ComponentStats stats{static_cast<std::uint32_t>(v), sets.vertices[v], sets.edges[v]};
    census.largest_component_vertices = std::max(census.largest_component_vertices, stats.vertices);
    switch (stats.classification()) {
      case ComponentClass::tree:
        census.trees += 1;
        if (stats.vertices == 1) census.isolated_vertices += 1;
        break;
      case ComponentClass::unicyclic:
        census.unicyclic += 1;
        break;
      case ComponentClass::complex_component:
        census.complex_components += 1;
        if (!census.first_complex) census.first_complex = stats;
        break;
    }
  }
  return census;
}

bool has_complex_component(std::uint64_t num_vertices, std::span<const Edge> edges) {
  DisjointSets sets(num_vertices);
  for (const auto& [a, b] : edges) {
    sets.add_edge(a, b);
    const std::uint32_t root = sets.find(a);
    if (sets.edges[root] >= sets.vertices[root] + 1) return true;
  }
  return false;
}

}  // namespace popmatch
