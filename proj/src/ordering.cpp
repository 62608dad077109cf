#include "ffrand/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ffrand/error.hpp"

namespace ffrand {

std::uint64_t Rng::below(std::uint64_t bound) {
  using u128 = unsigned __int128;
  u128 product = static_cast<u128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<u128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t derive_trial_seed(SeedSpec spec) {
  std::uint64_t z = spec.base + (spec.index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Permutation::Permutation(std::vector<Vertex> order) : order_(std::move(order)) {
  std::vector<bool> seen(order_.size(), false);
  for (Vertex v : order_) {
    if (v >= order_.size() || seen[v]) {
      throw InvalidInput("not a permutation of [0, " + std::to_string(order_.size()) +
                         "): vertex " + std::to_string(v));
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  return Permutation(std::move(order), Unchecked{});
}

std::vector<std::uint32_t> Permutation::ranks() const {
  std::vector<std::uint32_t> rank(order_.size());
  for (std::size_t t = 0; t < order_.size(); ++t) rank[order_[t]] = static_cast<std::uint32_t>(t);
  return rank;
}

PositionAssignment::PositionAssignment(std::vector<double> positions)
    : positions_(std::move(positions)) {
  for (std::size_t v = 0; v < positions_.size(); ++v) {
    const double x = positions_[v];
    if (!(x >= 0.0 && x < 1.0)) {
      throw InvalidInput("position of vertex " + std::to_string(v) + " is outside [0, 1)");
    }
  }
}

Permutation uniform_permutation(std::size_t n, std::uint64_t seed) {
  Permutation p = Permutation::identity(n);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(p.order_[i - 1], p.order_[j]);
  }
  return p;
}

PositionAssignment sample_positions(std::size_t n, std::uint64_t seed) {
  PositionAssignment out;
  resample_positions(out, n, seed);
  return out;
}

void resample_positions(PositionAssignment& out, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  out.positions_.resize(n);
  for (double& x : out.positions_) x = rng.unit();
}

Permutation order_from_positions(const PositionAssignment& positions) {
  std::vector<Vertex> order(positions.size());
  std::iota(order.begin(), order.end(), Vertex{0});
  const auto values = positions.values();
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  });
  return Permutation(std::move(order), Permutation::Unchecked{});
}

}  // namespace ffrand
