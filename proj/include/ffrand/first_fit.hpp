#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffrand/forest.hpp"
#include "ffrand/ordering.hpp"

namespace ffrand {

// Colors are 1-based; 0 marks a vertex that has not been colored yet.
using Color = std::uint32_t;

struct Coloring {
  std::vector<Color> colors;
  Color max_color = 0;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Reusable buffers for repeated colorings of forests up to a given size.
/// One per worker thread.
class ColoringScratch {
 public:
  void prepare(const Forest& forest);

 private:
  friend Coloring& first_fit_color(const Forest&, const Permutation&, ColoringScratch&, Coloring&);
  friend Coloring& first_fit_color(const Forest&, const PositionAssignment&, ColoringScratch&,
                                   Coloring&);

  // mark_[c] == stamp_ means color c is taken by an earlier neighbor.
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;
  std::vector<Vertex> stack_;
  std::vector<std::uint32_t> cursor_;
};

// Processes vertices strictly in `order`, giving each the least positive color
// absent from its already-colored neighbors. Throws InvalidInput on a size
// mismatch.
Coloring first_fit_color(const Forest& forest, const Permutation& order);
Coloring& first_fit_color(const Forest& forest, const Permutation& order, ColoringScratch& scratch,
                          Coloring& out);

// Same coloring as first_fit_color(forest, order_from_positions(positions)),
// computed without sorting: a vertex's color depends only on the colors of its
// earlier neighbors, so a memoized traversal of the arrival DAG suffices.
Coloring first_fit_color(const Forest& forest, const PositionAssignment& positions);
Coloring& first_fit_color(const Forest& forest, const PositionAssignment& positions,
                          ColoringScratch& scratch, Coloring& out);

struct DirectedPathWitness {
  std::vector<Vertex> path;

  friend bool operator==(const DirectedPathWitness&, const DirectedPathWitness&) = default;
};

// Simple path whose arrival times rise from path.front() up to path[peak] and
// from path.back() down to path[peak]. A peak at either end is a plain
// directed path.
struct BidirectedPathWitness {
  std::vector<Vertex> path;
  std::size_t peak = 0;

  friend bool operator==(const BidirectedPathWitness&, const BidirectedPathWitness&) = default;
};

// A directed path with exactly c(v) vertices ending at v, found by stepping
// back to the smallest-index earlier neighbor whose color is one less. Throws
// VerificationFailure if the chain breaks.
DirectedPathWitness directed_path_witness(const Forest& forest, const ArrivalOrder& order,
                                          const Coloring& coloring, Vertex v);
DirectedPathWitness directed_path_witness(const Forest& forest, const Permutation& order,
                                          const Coloring& coloring, Vertex v);

// For max color i >= 2, a bidirected path with exactly 2i - 2 vertices. Built
// at the smallest-index vertex v of color i: the chain of the earlier neighbor
// colored i - 2, then v, then the reversed chain of the earlier neighbor
// colored i - 1. For i = 2 it is the two-vertex chain ending at v.
// Throws InvalidInput when max_color < 2 and VerificationFailure if the two
// chains are not vertex-disjoint.
BidirectedPathWitness bidirected_path_witness(const Forest& forest, const ArrivalOrder& order,
                                              const Coloring& coloring);
BidirectedPathWitness bidirected_path_witness(const Forest& forest, const Permutation& order,
                                              const Coloring& coloring);

struct ColoringViolation {
  enum class Kind { size_mismatch, uncolored, improper, not_greedy, wrong_max };

  Kind kind = Kind::size_mismatch;
  Vertex vertex = 0;
  Vertex other = 0;  // the conflicting neighbor for `improper`
  Color expected = 0;
  Color found = 0;

  std::string describe() const;
};

// Re-derives properness and the greedy rule from scratch. Returns the first
// violation in vertex order, or nullopt.
std::optional<ColoringViolation> verify_coloring(const Forest& forest, const ArrivalOrder& order,
                                                 const Coloring& coloring);
std::optional<ColoringViolation> verify_coloring(const Forest& forest, const Permutation& order,
                                                 const Coloring& coloring);

// Independent checks of the witness invariants. Return a description of the
// first problem, or nullopt.
std::optional<std::string> check_directed_witness(const Forest& forest, const ArrivalOrder& order,
                                                  const Coloring& coloring, Vertex v,
                                                  const DirectedPathWitness& witness);
std::optional<std::string> check_bidirected_witness(const Forest& forest,
                                                    const ArrivalOrder& order,
                                                    const BidirectedPathWitness& witness,
                                                    std::size_t expected_vertices);

// True when consecutive path vertices are adjacent, all vertices are distinct,
// and arrival times rise strictly towards `peak` from both ends.
bool is_bidirected(const Forest& forest, const ArrivalOrder& order,
                   std::span<const Vertex> path, std::size_t peak);

// Smallest-index vertex carrying the maximum color. Coloring must be non-empty.
Vertex first_max_color_vertex(const Coloring& coloring);

}  // namespace ffrand
