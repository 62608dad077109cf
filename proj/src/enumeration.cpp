#include "ffrand/enumeration.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "ffrand/error.hpp"

namespace ffrand {
namespace {

void require_within(const Forest& forest, std::size_t cap) {
  const std::size_t limit = std::min(cap, kHardEnumerationLimit);
  if (forest.size() > limit) {
    throw CapExceeded("exhaustive enumeration over " + std::to_string(forest.size()) +
                      "! orders exceeds the cap of n=" + std::to_string(limit));
  }
}

// Walks order prefixes depth-first, coloring each newly placed vertex from its
// already-placed neighbors and undoing on the way back.
class PrefixSearch {
 public:
  explicit PrefixSearch(const Forest& forest)
      : forest_(forest), colors_(forest.size(), 0), prefix_() {
    prefix_.reserve(forest.size());
  }

  Color place(Vertex v) {
    std::uint64_t used = 1;  // bit 0 stands in for "colors start at 1"
    for (Vertex u : forest_.neighbors(v)) used |= std::uint64_t{1} << colors_[u];
    const auto c = static_cast<Color>(std::countr_one(used));
    colors_[v] = c;
    prefix_.push_back(v);
    return c;
  }

  void undo(Vertex v) {
    colors_[v] = 0;
    prefix_.pop_back();
  }

  bool placed(Vertex v) const { return colors_[v] != 0; }
  std::size_t depth() const { return prefix_.size(); }
  const std::vector<Vertex>& prefix() const { return prefix_; }

  void count_completions(Color current_max, std::vector<std::uint64_t>& counts) {
    const std::size_t n = forest_.size();
    if (depth() == n) {
      ++counts[current_max];
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (placed(v)) continue;
      const Color c = place(v);
      count_completions(std::max(current_max, c), counts);
      undo(v);
    }
  }

 private:
  const Forest& forest_;
  std::vector<Color> colors_;
  std::vector<Vertex> prefix_;
};

std::vector<std::uint64_t> counts_from_first(const Forest& forest, Vertex first) {
  std::vector<std::uint64_t> counts(forest.size() + 1, 0);
  PrefixSearch search(forest);
  const Color c = search.place(first);
  search.count_completions(c, counts);
  return counts;
}

void trim(std::vector<std::uint64_t>& counts) {
  while (counts.size() > 1 && counts.back() == 0) counts.pop_back();
}

class WorstCaseSearch {
 public:
  WorstCaseSearch(const Forest& forest, Color ceiling, std::uint64_t budget)
      : forest_(forest), search_(forest), ceiling_(ceiling), budget_(budget) {
    // Leaves first: high colors need their low-color neighbors placed earlier.
    candidates_.resize(forest.size());
    std::iota(candidates_.begin(), candidates_.end(), Vertex{0});
    std::stable_sort(candidates_.begin(), candidates_.end(), [&](Vertex a, Vertex b) {
      return forest.degree(a) < forest.degree(b);
    });
  }

  void run() { descend(0); }

  Color best() const { return best_; }
  const std::vector<Vertex>& best_order() const { return best_order_; }
  std::uint64_t nodes() const { return nodes_; }
  bool out_of_budget() const { return out_of_budget_; }

 private:
  bool done() const { return best_ >= ceiling_ || out_of_budget_; }

  void descend(Color current_max) {
    const std::size_t n = forest_.size();
    if (budget_ != 0 && nodes_ >= budget_) {
      out_of_budget_ = true;
      return;
    }
    ++nodes_;
    if (search_.depth() == n) {
      if (current_max > best_ || best_order_.empty()) {
        best_ = current_max;
        best_order_ = search_.prefix();
      }
      return;
    }
    // No unplaced vertex can exceed degree + 1.
    Color optimistic = current_max;
    for (Vertex v = 0; v < n; ++v) {
      if (!search_.placed(v)) {
        optimistic = std::max(optimistic, static_cast<Color>(forest_.degree(v) + 1));
      }
    }
    if (!best_order_.empty() && std::min(optimistic, ceiling_) <= best_) return;

    for (std::size_t i = 0; i < n && !done(); ++i) {
      const Vertex v = candidates_[i];
      if (search_.placed(v)) continue;
      const Color c = search_.place(v);
      descend(std::max(current_max, c));
      search_.undo(v);
    }
  }

  const Forest& forest_;
  PrefixSearch search_;
  std::vector<Vertex> candidates_;
  Color ceiling_;
  std::uint64_t budget_;
  Color best_ = 0;
  std::vector<Vertex> best_order_;
  std::uint64_t nodes_ = 0;
  bool out_of_budget_ = false;
};

// Max color First-Fit can reach on a forest with this many vertices and this
// max degree. A vertex of color i in a forest needs 2^(i-1) vertices below it.
Color color_ceiling(const Forest& forest) {
  if (forest.size() == 0) return 0;
  const auto log_bound = static_cast<Color>(std::bit_width(forest.size()));  // floor(log2 n) + 1
  return std::min(static_cast<Color>(forest.max_degree() + 1), log_bound);
}

// Edge-index bitmask over the pairs of an n-vertex labeled graph.
struct PairIndex {
  explicit PairIndex(std::size_t n) : n(n), index(n * n, 0) {
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        index[u * n + v] = index[v * n + u] = static_cast<std::uint32_t>(pairs.size());
        pairs.push_back({u, v});
      }
    }
  }

  std::size_t n;
  std::vector<Edge> pairs;
  std::vector<std::uint32_t> index;
};

bool mask_is_acyclic(const PairIndex& idx, std::uint32_t mask) {
  std::vector<Vertex> parent(idx.n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < idx.pairs.size(); ++e) {
    if (!(mask >> e & 1u)) continue;
    const Vertex a = find(idx.pairs[e].u);
    const Vertex b = find(idx.pairs[e].v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::vector<std::uint32_t> degree_key(const PairIndex& idx, std::uint32_t mask) {
  std::vector<std::uint32_t> degree(idx.n, 0);
  for (std::size_t e = 0; e < idx.pairs.size(); ++e) {
    if (mask >> e & 1u) {
      ++degree[idx.pairs[e].u];
      ++degree[idx.pairs[e].v];
    }
  }
  std::sort(degree.begin(), degree.end());
  return degree;
}

}  // namespace

std::vector<std::uint64_t> max_color_counts_serial(const Forest& forest, std::size_t cap) {
  require_within(forest, cap);
  std::vector<std::uint64_t> counts(forest.size() + 1, 0);
  if (forest.size() == 0) {
    counts[0] = 1;
    return counts;
  }
  for (Vertex first = 0; first < forest.size(); ++first) {
    const auto part = counts_from_first(forest, first);
    for (std::size_t c = 0; c < part.size(); ++c) counts[c] += part[c];
  }
  trim(counts);
  return counts;
}

std::vector<std::uint64_t> max_color_counts(const Forest& forest, std::size_t cap, int threads) {
  require_within(forest, cap);
  const std::size_t n = forest.size();
  std::vector<std::uint64_t> counts(n + 1, 0);
  if (n == 0) {
    counts[0] = 1;
    return counts;
  }
  std::vector<std::vector<std::uint64_t>> parts(n);
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(team) schedule(dynamic, 1)
  for (std::int64_t first = 0; first < static_cast<std::int64_t>(n); ++first) {
    parts[first] = counts_from_first(forest, static_cast<Vertex>(first));
  }
  for (const auto& part : parts) {
    for (std::size_t c = 0; c < part.size(); ++c) counts[c] += part[c];
  }
  trim(counts);
  return counts;
}

Rational exact_expected_colors(const Forest& forest, std::size_t cap, int threads) {
  const auto counts = max_color_counts(forest, cap, threads);
  BigInt total = 0;
  BigInt orders = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    total += BigInt(counts[c]) * c;
    orders += counts[c];
  }
  return Rational(total, orders);
}

WorstCaseResult worst_case_colors(const Forest& forest, const WorstCaseOptions& options) {
  const std::size_t n = forest.size();
  const bool exhaustive = n <= std::min(options.cap, kHardEnumerationLimit);
  if (!exhaustive && options.budget == 0) {
    throw CapExceeded("worst-case search over " + std::to_string(n) +
                      " vertices needs a search budget (cap is " + std::to_string(options.cap) +
                      ")");
  }
  WorstCaseSearch search(forest, color_ceiling(forest), exhaustive ? 0 : options.budget);
  search.run();

  WorstCaseResult result;
  result.max_colors = search.best();
  result.nodes = search.nodes();
  result.lower_bound_only = search.out_of_budget() && search.best() < color_ceiling(forest);
  std::vector<Vertex> order = search.best_order();
  if (order.size() != n) {
    // Budget ran out before any complete order: fall back to the identity.
    order.resize(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    result.max_colors = first_fit_color(forest, Permutation(order)).max_color;
    result.lower_bound_only = true;
  }
  result.order = Permutation(std::move(order));
  return result;
}

std::vector<Forest> forests_up_to_isomorphism(std::size_t n) {
  if (n > kSmallRffCap) {
    throw CapExceeded("forest class enumeration is limited to n <= " +
                      std::to_string(kSmallRffCap));
  }
  const PairIndex idx(n);
  const std::size_t pair_count = idx.pairs.size();

  // Edge-index image of every pair under every relabeling.
  std::vector<std::vector<std::uint32_t>> images;
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  do {
    std::vector<std::uint32_t> image(pair_count);
    for (std::size_t e = 0; e < pair_count; ++e) {
      image[e] = idx.index[perm[idx.pairs[e].u] * n + perm[idx.pairs[e].v]];
    }
    images.push_back(std::move(image));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto canonical = [&](std::uint32_t mask) {
    std::uint32_t best = mask;
    for (const auto& image : images) {
      std::uint32_t relabeled = 0;
      for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
        relabeled |= std::uint32_t{1} << image[std::countr_zero(rest)];
      }
      best = std::min(best, relabeled);
    }
    return best;
  };

  std::map<std::vector<std::uint32_t>, std::set<std::uint32_t>> buckets;
  std::vector<std::uint32_t> representatives;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pair_count); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) >= std::max<std::size_t>(n, 1)) continue;
    if (!mask_is_acyclic(idx, mask)) continue;
    auto& seen = buckets[degree_key(idx, mask)];
    if (seen.insert(canonical(mask)).second) representatives.push_back(mask);
  }

  std::vector<Forest> out;
  for (std::uint32_t mask : representatives) {
    std::vector<Edge> edges;
    for (std::size_t e = 0; e < pair_count; ++e) {
      if (mask >> e & 1u) edges.push_back(idx.pairs[e]);
    }
    out.push_back(build_forest(n, edges));
  }
  return out;
}

SmallRffResult small_rff(std::size_t n) {
  if (n == 0) throw InvalidInput("small_rff needs at least one vertex");
  if (n > kSmallRffCap) {
    throw CapExceeded("small_rff is defined here for 1 <= n <= " + std::to_string(kSmallRffCap));
  }
  SmallRffResult result;
  const auto classes = forests_up_to_isomorphism(n);
  result.classes = classes.size();
  bool first = true;
  for (const Forest& forest : classes) {
    const Rational ratio = exact_expected_colors(forest, n, 1) / chromatic_number(forest);
    if (first || ratio > result.value) {
      result.value = ratio;
      result.maximizer = forest;
      first = false;
    }
  }
  return result;
}

std::uint64_t count_bidirected_orders(std::size_t m) {
  if (m < 1) throw InvalidInput("path needs at least one vertex");
  if (m > 12) throw CapExceeded("path enumeration is limited to m <= 12");
  std::vector<Edge> edges;
  for (Vertex i = 1; i < m; ++i) edges.push_back({i - 1, i});
  const Forest path = build_forest(m, edges);
  std::vector<Vertex> vertices(m);
  std::iota(vertices.begin(), vertices.end(), Vertex{0});

  std::vector<Vertex> order(m);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::uint64_t hits = 0;
  do {
    const ArrivalOrder arrival{Permutation(order)};
    // The only possible peak is the last-arriving path vertex.
    const auto peak = static_cast<std::size_t>(order.back());
    if (is_bidirected(path, arrival, vertices, peak)) ++hits;
  } while (std::next_permutation(order.begin(), order.end()));
  return hits;
}

}  // namespace ffrand
