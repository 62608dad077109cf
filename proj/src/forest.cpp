#include "ffrand/forest.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "ffrand/error.hpp"
#include "ffrand/ordering.hpp"

namespace ffrand {
namespace {

std::string edge_text(Edge e) {
  return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // False if already joined.
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<Vertex> parent_;
};

}  // namespace

std::vector<Edge> Forest::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Forest build_forest(std::size_t n, std::span<const Edge> edges, std::optional<Vertex> root) {
  if (n > std::numeric_limits<Vertex>::max()) {
    throw CapExceeded("forest has more vertices than the 32-bit index space");
  }
  if (root && *root >= n) {
    throw InvalidInput("root " + std::to_string(*root) + " out of range for n=" +
                       std::to_string(n));
  }

  DisjointSets components(n);
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidInput("edge " + edge_text(e) + " out of range for n=" + std::to_string(n));
    }
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    normalized.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
  }

  std::vector<Edge> sorted = normalized;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw InvalidInput("duplicate edge " + edge_text(*dup));
  }
  for (Edge e : edges) {
    if (!components.unite(e.u, e.v)) {
      throw InvalidInput("edge " + edge_text(e) + " closes a cycle");
    }
  }

  Forest f;
  f.root_ = root;
  f.offsets_.assign(n + 1, 0);
  for (Edge e : sorted) {
    ++f.offsets_[e.u + 1];
    ++f.offsets_[e.v + 1];
  }
  std::partial_sum(f.offsets_.begin(), f.offsets_.end(), f.offsets_.begin());
  f.neighbors_.resize(2 * sorted.size());
  std::vector<std::size_t> fill(f.offsets_.begin(), f.offsets_.end() - (n > 0 ? 1 : 0));
  for (Edge e : sorted) {
    f.neighbors_[fill[e.u]++] = e.v;
    f.neighbors_[fill[e.v]++] = e.u;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto row = f.neighbors_.begin();
    std::sort(row + static_cast<std::ptrdiff_t>(f.offsets_[v]),
              row + static_cast<std::ptrdiff_t>(f.offsets_[v + 1]));
    f.max_degree_ = std::max(f.max_degree_, f.degree(v));
  }
  if (n == 0) f.offsets_.clear();
  return f;
}

int chromatic_number(const Forest& forest) {
  if (forest.size() == 0) return 0;
  return forest.edge_count() == 0 ? 1 : 2;
}

OrientedForest::OrientedForest(Forest base, std::vector<Arc> arcs)
    : base_(std::move(base)), arcs_(std::move(arcs)) {
  if (arcs_.size() != base_.edge_count()) {
    throw InvalidInput("arc count does not match edge count");
  }
}

std::vector<Edge> OrientedForest::undirected_edges() const {
  std::vector<Edge> out;
  out.reserve(arcs_.size());
  for (Arc a : arcs_) out.push_back({std::min(a.from, a.to), std::max(a.from, a.to)});
  return out;
}

std::optional<std::vector<Vertex>> OrientedForest::topological_order() const {
  const std::size_t n = base_.size();
  std::vector<std::vector<Vertex>> out_arcs(n);
  std::vector<std::size_t> indegree(n, 0);
  for (Arc a : arcs_) {
    out_arcs[a.from].push_back(a.to);
    ++indegree[a.to];
  }
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  for (Vertex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Vertex> order;
  order.reserve(n);
  while (!ready.empty()) {
    Vertex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Vertex w : out_arcs[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

bool OrientedForest::respects(std::span<const Vertex> sequence) const {
  if (sequence.size() != base_.size()) return false;
  std::vector<std::size_t> rank(sequence.size(), sequence.size());
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    if (sequence[t] >= sequence.size() || rank[sequence[t]] != sequence.size()) return false;
    rank[sequence[t]] = t;
  }
  return std::all_of(arcs_.begin(), arcs_.end(),
                     [&](Arc a) { return rank[a.from] < rank[a.to]; });
}

OrientedForest orient(const Forest& forest, const Permutation& order) {
  if (order.size() != forest.size()) {
    throw InvalidInput("order has " + std::to_string(order.size()) + " vertices, forest has " +
                       std::to_string(forest.size()));
  }
  const auto rank = order.ranks();
  std::vector<Arc> arcs;
  arcs.reserve(forest.edge_count());
  for (Edge e : forest.edges()) {
    arcs.push_back(rank[e.u] < rank[e.v] ? Arc{e.u, e.v} : Arc{e.v, e.u});
  }
  return OrientedForest(forest, std::move(arcs));
}

Forest prufer_decode(std::size_t n, std::span<const Vertex> sequence) {
  if (n < 2) throw InvalidInput("Prüfer decoding needs n >= 2");
  if (sequence.size() != n - 2) {
    throw InvalidInput("Prüfer sequence for n=" + std::to_string(n) + " must have length " +
                       std::to_string(n - 2));
  }
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : sequence) {
    if (x >= n) throw InvalidInput("Prüfer symbol " + std::to_string(x) + " out of range");
    ++degree[x];
  }

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  for (Vertex x : sequence) {
    edges.push_back({static_cast<Vertex>(leaf), x});
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      do {
        ++ptr;
      } while (degree[ptr] != 1);
      leaf = ptr;
    }
  }
  edges.push_back({static_cast<Vertex>(leaf), static_cast<Vertex>(n - 1)});
  return build_forest(n, edges);
}

Forest generate(const FamilySpec& spec, std::uint64_t seed) {
  using Kind = FamilySpec::Kind;
  std::vector<Edge> edges;
  switch (spec.kind) {
    case Kind::path:
      for (std::size_t i = 1; i < spec.n; ++i) {
        edges.push_back({static_cast<Vertex>(i - 1), static_cast<Vertex>(i)});
      }
      return build_forest(spec.n, edges);
    case Kind::star:
      for (std::size_t i = 1; i < spec.n; ++i) edges.push_back({0, static_cast<Vertex>(i)});
      return build_forest(spec.n, edges);
    case Kind::prufer: {
      if (spec.n < 2) return build_forest(spec.n, edges);
      Rng rng(seed);
      std::vector<Vertex> sequence(spec.n - 2);
      for (auto& x : sequence) x = static_cast<Vertex>(rng.below(spec.n));
      return prufer_decode(spec.n, sequence);
    }
    case Kind::explicit_edges:
      return build_forest(spec.n, spec.edges);
    case Kind::forest_union: {
      std::size_t offset = 0;
      for (std::size_t i = 0; i < spec.parts.size(); ++i) {
        Forest part = generate(spec.parts[i], derive_trial_seed({seed, i}));
        for (Edge e : part.edges()) {
          edges.push_back({static_cast<Vertex>(e.u + offset), static_cast<Vertex>(e.v + offset)});
        }
        offset += part.size();
      }
      return build_forest(offset, edges);
    }
  }
  throw InvalidInput("unknown forest family");
}

}  // namespace ffrand
