#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffrand/forest.hpp"

namespace ffrand {

inline constexpr std::uint64_t kDefaultVertexCap = 200'000'000;

/// Parameters of the recursive lower-bound family: target color count k,
/// failure budget gamma, c = 10 / gamma^2, branching r = ceil(c k ln k) and
/// per-level budgets epsilon_i = i gamma / k.
struct LowerBoundParams {
  unsigned k = 1;
  double gamma = 0.5;
  double c = 40.0;
  std::uint64_t r = 1;
  bool r_overridden = false;
  std::vector<double> epsilons;  // epsilons[i - 1] = epsilon_i

  double epsilon(unsigned level) const { return epsilons.at(level - 1); }
};

// Throws InvalidInput for k < 1, gamma outside (0, 1), or an override of 0.
// Without an override r is clamped to at least 1 (ln 1 = 0 makes the formula
// vanish at k = 1).
LowerBoundParams derive_params(unsigned k, double gamma,
                               std::optional<std::uint64_t> r_override = std::nullopt);

// gamma = 1 / ln k, so c = 10 ln^2 k and r = ceil(10 k ln^3 k). Needs k >= 3
// for gamma < 1.
LowerBoundParams calibrated_params(unsigned k);

/// T^r_k: a single vertex for k = 1; otherwise a root joined to the roots of
/// r copies of each of T^r_1 .. T^r_{k-1}.
///
/// Labels are assigned in preorder: the root is 0, followed by the copies in
/// (level, copy) lexicographic order, each laid out recursively. Every vertex
/// is therefore smaller than all vertices of its subtree.
struct RootedLBTree {
  Forest forest;
  Vertex root = 0;
  unsigned level = 1;
  std::uint64_t r = 1;
  // levels[v] = j when v is the root of a copy of T^r_j.
  std::vector<std::uint8_t> levels;
};

// (r + 1)^(k - 1). Throws CapExceeded on 64-bit overflow and InvalidInput on
// k < 1 or r < 1.
std::uint64_t lb_tree_size(unsigned k, std::uint64_t r);

// Throws CapExceeded when the tree would exceed `vertex_cap` vertices.
RootedLBTree build_lb_tree(unsigned k, std::uint64_t r,
                           std::uint64_t vertex_cap = kDefaultVertexCap);

// Number of vertices on the longest simple path that ends at the root,
// measured on the built tree.
std::size_t longest_root_path(const RootedLBTree& tree);

}  // namespace ffrand
