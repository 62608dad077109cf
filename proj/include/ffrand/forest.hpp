#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ffrand {

using Vertex = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Permutation;

/// Undirected simple acyclic graph on the dense vertex set [0, n).
///
/// Adjacency is stored in compressed rows with every row sorted ascending, so
/// iteration order is deterministic. Instances are immutable once built and
/// can be shared freely between threads.
class Forest {
 public:
  Forest() = default;

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }
  std::size_t component_count() const { return size() - edge_count(); }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const { return max_degree_; }

  std::optional<Vertex> root() const { return root_; }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  friend Forest build_forest(std::size_t, std::span<const Edge>, std::optional<Vertex>);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::size_t max_degree_ = 0;
  std::optional<Vertex> root_;
};

// Validates and builds. Throws InvalidInput on self-loops, duplicate edges,
// out-of-range endpoints, or a cycle (naming the edge that closes it).
Forest build_forest(std::size_t n, std::span<const Edge> edges,
                    std::optional<Vertex> root = std::nullopt);

// 0 for the empty forest, 1 when edgeless, 2 otherwise.
int chromatic_number(const Forest& forest);

struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

/// A forest with each edge directed from its earlier to its later endpoint
/// under some presentation order.
class OrientedForest {
 public:
  OrientedForest(Forest base, std::vector<Arc> arcs);

  const Forest& base() const { return base_; }
  /// One arc per edge, in the same order as base().edges().
  std::span<const Arc> arcs() const { return arcs_; }

  /// Undirected edges recovered from the arcs.
  std::vector<Edge> undirected_edges() const;

  /// Kahn's algorithm, smallest ready vertex first. Empty when the arcs
  /// contain a directed cycle.
  std::optional<std::vector<Vertex>> topological_order() const;

  /// True when every arc goes forward in the given sequence.
  bool respects(std::span<const Vertex> sequence) const;

 private:
  Forest base_;
  std::vector<Arc> arcs_;
};

OrientedForest orient(const Forest& forest, const Permutation& order);

/// Families of test forests with canonical labelings.
struct FamilySpec {
  enum class Kind { path, star, prufer, forest_union, explicit_edges };

  Kind kind = Kind::path;
  std::size_t n = 0;
  std::vector<Edge> edges;        // explicit_edges only
  std::vector<FamilySpec> parts;  // forest_union only

  static FamilySpec path(std::size_t n) { return {Kind::path, n, {}, {}}; }
  static FamilySpec star(std::size_t n) { return {Kind::star, n, {}, {}}; }
  static FamilySpec prufer(std::size_t n) { return {Kind::prufer, n, {}, {}}; }
  static FamilySpec explicit_edges(std::size_t n, std::vector<Edge> e) {
    return {Kind::explicit_edges, n, std::move(e), {}};
  }
  static FamilySpec forest_union(std::vector<FamilySpec> parts) {
    return {Kind::forest_union, 0, {}, std::move(parts)};
  }
};

// Deterministic for a fixed (spec, seed). The prufer family draws a uniform
// labeled tree; union parts get disjoint consecutive label ranges and
// independent seeds derived from the part index.
Forest generate(const FamilySpec& spec, std::uint64_t seed);

// Decodes a Prüfer sequence of length n - 2 (n >= 2) into a labeled tree.
Forest prufer_decode(std::size_t n, std::span<const Vertex> sequence);

}  // namespace ffrand
