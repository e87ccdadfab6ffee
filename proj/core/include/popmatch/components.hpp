#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

namespace popmatch {

/// tree: edges = vertices - 1; unicyclic: edges = vertices;
/// complex: edges >= vertices + 1 (a component with more than one cycle).
enum class ComponentClass { tree, unicyclic, complex_component };

struct ComponentStats {
  std::uint32_t root = 0;  // smallest vertex id in the component
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;  // with multiplicity
  ComponentClass classification() const {
    if (edges + 1 == vertices) return ComponentClass::tree;
    if (edges == vertices) return ComponentClass::unicyclic;
    return ComponentClass::complex_component;
  }
};

struct ComponentCensus {
  std::uint64_t components = 0;
  std::uint64_t trees = 0;  // includes isolated vertices (singleton trees)
  std::uint64_t unicyclic = 0;
  std::uint64_t complex_components = 0;
  std::uint64_t isolated_vertices = 0;
  std::uint64_t largest_component_vertices = 0;
  /// The complex component with the smallest vertex id, when one exists.
  std::optional<ComponentStats> first_complex;

  bool has_complex() const { return complex_components > 0; }
};

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Union-find pass over an edge multiset on vertex ids [0, num_vertices).
/// Per-root vertex and edge counters classify every connected component.
/// O(alpha(n)) amortized per edge.
ComponentCensus census_components(std::uint64_t num_vertices, std::span<const Edge> edges);

/// True iff some connected component carries more edges (with multiplicity)
/// than vertices, i.e. contains more than one cycle.
bool has_complex_component(std::uint64_t num_vertices, std::span<const Edge> edges);

}  // namespace popmatch
