#pragma once

// Deliberately naive reference implementations. They share no code with the
// library beyond the Forest container, so agreement is evidence of
// correctness rather than of shared bugs.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "ffrand/forest.hpp"

namespace oracle {

inline ffrand::Forest path(std::size_t n) {
  std::vector<ffrand::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.push_back({static_cast<ffrand::Vertex>(i - 1), static_cast<ffrand::Vertex>(i)});
  }
  return ffrand::build_forest(n, edges);
}

inline ffrand::Forest star(std::size_t n) {
  std::vector<ffrand::Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, static_cast<ffrand::Vertex>(i)});
  return ffrand::build_forest(n, edges);
}

inline std::vector<std::vector<ffrand::Vertex>> adjacency(const ffrand::Forest& f) {
  std::vector<std::vector<ffrand::Vertex>> adj(f.size());
  for (auto e : f.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

// First-Fit with a std::set of used colors per step.
inline std::vector<unsigned> first_fit(const ffrand::Forest& f,
                                       const std::vector<ffrand::Vertex>& order) {
  const auto adj = adjacency(f);
  std::vector<unsigned> color(f.size(), 0);
  for (auto v : order) {
    std::set<unsigned> used;
    for (auto u : adj[v]) used.insert(color[u]);
    unsigned c = 1;
    while (used.count(c)) ++c;
    color[v] = c;
  }
  return color;
}

inline unsigned max_of(const std::vector<unsigned>& colors) {
  return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
}

// counts[c] over all n! orders via std::next_permutation.
inline std::vector<std::uint64_t> color_counts(const ffrand::Forest& f) {
  std::vector<ffrand::Vertex> order(f.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::uint64_t> counts(f.size() + 2, 0);
  do {
    ++counts[max_of(first_fit(f, order))];
  } while (std::next_permutation(order.begin(), order.end()));
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
  return counts;
}

// Vertices on the longest directed path of the orientation induced by rank.
inline std::size_t longest_directed_path(const ffrand::Forest& f,
                                         const std::vector<ffrand::Vertex>& order) {
  const auto adj = adjacency(f);
  std::vector<std::size_t> rank(f.size());
  for (std::size_t t = 0; t < order.size(); ++t) rank[order[t]] = t;
  std::vector<std::size_t> best(f.size(), 1);
  std::size_t out = 0;
  for (auto v : order) {
    for (auto u : adj[v]) {
      if (rank[u] < rank[v]) best[v] = std::max(best[v], best[u] + 1);
    }
    out = std::max(out, best[v]);
  }
  return out;
}

// True when ranks along path rise strictly to some peak and then fall.
inline bool unimodal(const std::vector<std::size_t>& ranks) {
  std::size_t i = 0;
  while (i + 1 < ranks.size() && ranks[i] < ranks[i + 1]) ++i;
  while (i + 1 < ranks.size() && ranks[i] > ranks[i + 1]) ++i;
  return i + 1 >= ranks.size();
}

inline std::uint64_t factorial(std::uint64_t m) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 2; i <= m; ++i) out *= i;
  return out;
}

inline std::size_t permutation_index(const std::vector<ffrand::Vertex>& p) {
  // Lehmer code.
  std::size_t index = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < p.size(); ++j) smaller += p[j] < p[i];
    index = index * (p.size() - i) + smaller;
  }
  return index;
}

}  // namespace oracle
