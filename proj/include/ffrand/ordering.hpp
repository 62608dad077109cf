#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ffrand/forest.hpp"

namespace ffrand {

/// The project's only source of randomness: std::mt19937_64 (bit-exact across
/// standard libraries) with portable mappings to bounded integers and unit
/// reals. std:: distributions are avoided because their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound), bound >= 1. Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SeedSpec {
  std::uint64_t base = 0;
  std::uint64_t index = 0;
};

// splitmix64 finalizer applied to base + (index + 1) * golden-gamma. For a
// fixed base the map index -> seed is a bijection, so trial seeds never
// collide.
std::uint64_t derive_trial_seed(SeedSpec spec);

class PositionAssignment;

/// A presentation order: position t holds the vertex revealed in round t.
class Permutation {
 public:
  Permutation() = default;

  // Throws InvalidInput unless `order` is a permutation of [0, order.size()).
  explicit Permutation(std::vector<Vertex> order);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return order_.size(); }
  Vertex operator[](std::size_t t) const { return order_[t]; }
  std::span<const Vertex> vertices() const { return order_; }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

  /// rank[v] = round in which v is revealed.
  std::vector<std::uint32_t> ranks() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<Vertex> order, Unchecked) : order_(std::move(order)) {}

  friend Permutation uniform_permutation(std::size_t, std::uint64_t);
  friend Permutation order_from_positions(const PositionAssignment&);

  std::vector<Vertex> order_;
};

/// Per-vertex arrival positions in [0, 1).
class PositionAssignment {
 public:
  PositionAssignment() = default;

  // Throws InvalidInput if any value is outside [0, 1) or NaN.
  explicit PositionAssignment(std::vector<double> positions);

  std::size_t size() const { return positions_.size(); }
  double operator[](Vertex v) const { return positions_[v]; }
  std::span<const double> values() const { return positions_; }

  friend bool operator==(const PositionAssignment&, const PositionAssignment&) = default;

 private:
  struct Unchecked {};
  PositionAssignment(std::vector<double> p, Unchecked) : positions_(std::move(p)) {}

  friend PositionAssignment sample_positions(std::size_t, std::uint64_t);
  friend void resample_positions(PositionAssignment&, std::size_t, std::uint64_t);

  std::vector<double> positions_;
};

// Fisher-Yates over Rng(seed).
Permutation uniform_permutation(std::size_t n, std::uint64_t seed);

// n independent Rng(seed).unit() draws, vertex 0 first.
PositionAssignment sample_positions(std::size_t n, std::uint64_t seed);

// Same draws as sample_positions, reusing the assignment's storage.
void resample_positions(PositionAssignment& out, std::size_t n, std::uint64_t seed);

// Sort by position; equal positions are broken by ascending vertex index.
Permutation order_from_positions(const PositionAssignment& positions);

/// Answers "does u arrive before v" for either representation of an order.
/// Position-backed instances compare (position, index) pairs, which agrees
/// with order_from_positions. A position-backed instance refers to the
/// assignment and must not outlive it.
class ArrivalOrder {
 public:
  explicit ArrivalOrder(const Permutation& order) : rank_(order.ranks()) {}
  explicit ArrivalOrder(const PositionAssignment& positions)
      : positions_(positions.values()) {}

  std::size_t size() const { return rank_.empty() ? positions_.size() : rank_.size(); }

  bool before(Vertex u, Vertex v) const {
    if (!rank_.empty()) return rank_[u] < rank_[v];
    return positions_[u] < positions_[v] || (positions_[u] == positions_[v] && u < v);
  }

 private:
  std::vector<std::uint32_t> rank_;
  std::span<const double> positions_;
};

}  // namespace ffrand
