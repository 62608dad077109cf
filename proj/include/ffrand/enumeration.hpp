#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffrand/bounds.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/forest.hpp"
#include "ffrand/ordering.hpp"

namespace ffrand {

// Exhaustive oracles over all n! presentation orders. The search walks order
// prefixes depth-first and colors incrementally, so shared prefixes are
// colored once.

inline constexpr std::size_t kDefaultEnumerationCap = 10;
inline constexpr std::size_t kHardEnumerationLimit = 19;  // n! * n must fit in 64 bits
inline constexpr std::size_t kSmallRffCap = 6;

// counts[c] = number of orders under which First-Fit uses exactly c colors.
// Throws CapExceeded when n > cap. The parallel version splits on the first
// vertex of the order.
std::vector<std::uint64_t> max_color_counts(const Forest& forest,
                                            std::size_t cap = kDefaultEnumerationCap,
                                            int threads = 0);
std::vector<std::uint64_t> max_color_counts_serial(const Forest& forest,
                                                   std::size_t cap = kDefaultEnumerationCap);

// Exact mean of chi_FF over all n! orders.
Rational exact_expected_colors(const Forest& forest, std::size_t cap = kDefaultEnumerationCap,
                               int threads = 0);

struct WorstCaseOptions {
  std::size_t cap = kDefaultEnumerationCap;
  // Search-node budget for forests above the cap; 0 means no budgeted search.
  std::uint64_t budget = 0;
};

struct WorstCaseResult {
  Color max_colors = 0;
  Permutation order;  // achieves max_colors
  bool lower_bound_only = false;  // budget ran out before optimality was proven
  std::uint64_t nodes = 0;
};

// Largest chi_FF over all orders. Search stops early once the best order
// reaches a proven ceiling (max degree + 1, and floor(log2 n) + 1 since a
// vertex of color i in a forest needs 2^(i-1) vertices below it). Throws
// CapExceeded when n > cap and no budget was given.
WorstCaseResult worst_case_colors(const Forest& forest, const WorstCaseOptions& options = {});

// One representative per isomorphism class of forests on n labeled vertices.
// Candidates are bucketed by sorted degree sequence and then compared by a
// canonical form minimized over all n! relabelings.
std::vector<Forest> forests_up_to_isomorphism(std::size_t n);

struct SmallRffResult {
  Rational value;
  Forest maximizer;
  std::size_t classes = 0;
};

// max over forests F on n vertices of E[chi_FF(F)] / chi(F). 1 <= n <= 6.
SmallRffResult small_rff(std::size_t n);

// Orders of the path 0-1-...-(m-1) under which it is bidirected.
std::uint64_t count_bidirected_orders(std::size_t m);

}  // namespace ffrand
