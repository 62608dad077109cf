#include "ffrand/first_fit.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "ffrand/error.hpp"

namespace ffrand {
namespace {

void require_same_size(const Forest& forest, std::size_t order_size) {
  if (order_size != forest.size()) {
    throw InvalidInput("order has " + std::to_string(order_size) + " vertices, forest has " +
                       std::to_string(forest.size()));
  }
}

bool adjacent(const Forest& forest, Vertex u, Vertex v) {
  const auto row = forest.neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

// Smallest-index neighbor of v that arrives before v and carries `color`.
std::optional<Vertex> earlier_neighbor_with_color(const Forest& forest, const ArrivalOrder& order,
                                                  const Coloring& coloring, Vertex v,
                                                  Color color) {
  for (Vertex u : forest.neighbors(v)) {
    if (coloring.colors[u] == color && order.before(u, v)) return u;
  }
  return std::nullopt;
}

void require_coloring_of(const Forest& forest, const ArrivalOrder& order,
                         const Coloring& coloring) {
  require_same_size(forest, order.size());
  if (coloring.colors.size() != forest.size()) {
    throw InvalidInput("coloring has " + std::to_string(coloring.colors.size()) +
                       " entries, forest has " + std::to_string(forest.size()));
  }
}

}  // namespace

void ColoringScratch::prepare(const Forest& forest) {
  // A vertex of degree d never gets a color above d + 1.
  if (mark_.size() < forest.max_degree() + 2) mark_.assign(forest.max_degree() + 2, 0);
  if (cursor_.size() < forest.size()) cursor_.resize(forest.size());
}

Coloring first_fit_color(const Forest& forest, const Permutation& order) {
  ColoringScratch scratch;
  Coloring out;
  first_fit_color(forest, order, scratch, out);
  return out;
}

Coloring& first_fit_color(const Forest& forest, const Permutation& order, ColoringScratch& scratch,
                          Coloring& out) {
  require_same_size(forest, order.size());
  scratch.prepare(forest);
  out.colors.assign(forest.size(), 0);
  out.max_color = 0;

  auto& mark = scratch.mark_;
  for (Vertex v : order) {
    const std::uint64_t stamp = ++scratch.stamp_;
    for (Vertex u : forest.neighbors(v)) {
      if (Color c = out.colors[u]; c != 0) mark[c] = stamp;
    }
    Color c = 1;
    while (mark[c] == stamp) ++c;
    out.colors[v] = c;
    out.max_color = std::max(out.max_color, c);
  }
  return out;
}

Coloring first_fit_color(const Forest& forest, const PositionAssignment& positions) {
  ColoringScratch scratch;
  Coloring out;
  first_fit_color(forest, positions, scratch, out);
  return out;
}

Coloring& first_fit_color(const Forest& forest, const PositionAssignment& positions,
                          ColoringScratch& scratch, Coloring& out) {
  require_same_size(forest, positions.size());
  scratch.prepare(forest);
  const std::size_t n = forest.size();
  out.colors.assign(n, 0);
  out.max_color = 0;

  const double* x = positions.values().data();
  auto before = [x](Vertex u, Vertex v) { return x[u] < x[v] || (x[u] == x[v] && u < v); };

  auto& colors = out.colors;
  auto& mark = scratch.mark_;
  auto& cursor = scratch.cursor_;
  auto& stack = scratch.stack_;
  stack.clear();

  // Depth-first over arcs reversed: a vertex is finished once every earlier
  // neighbor is colored. The stack is a chain of strictly decreasing arrival
  // times, so no vertex is ever pushed twice.
  for (Vertex start = 0; start < n; ++start) {
    if (colors[start] != 0) continue;
    stack.push_back(start);
    cursor[start] = 0;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      const auto row = forest.neighbors(v);
      bool descended = false;
      for (std::uint32_t i = cursor[v]; i < row.size(); ++i) {
        const Vertex u = row[i];
        if (colors[u] == 0 && before(u, v)) {
          cursor[v] = i + 1;
          cursor[u] = 0;
          stack.push_back(u);
          descended = true;
          break;
        }
      }
      if (descended) continue;

      const std::uint64_t stamp = ++scratch.stamp_;
      for (Vertex u : row) {
        if (before(u, v)) mark[colors[u]] = stamp;
      }
      Color c = 1;
      while (mark[c] == stamp) ++c;
      colors[v] = c;
      out.max_color = std::max(out.max_color, c);
      stack.pop_back();
    }
  }
  return out;
}

DirectedPathWitness directed_path_witness(const Forest& forest, const ArrivalOrder& order,
                                          const Coloring& coloring, Vertex v) {
  require_coloring_of(forest, order, coloring);
  if (v >= forest.size()) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
  if (coloring.colors[v] == 0) throw InvalidInput("vertex " + std::to_string(v) + " is uncolored");

  DirectedPathWitness witness;
  witness.path.reserve(coloring.colors[v]);
  Vertex current = v;
  witness.path.push_back(current);
  while (coloring.colors[current] > 1) {
    const Color need = coloring.colors[current] - 1;
    auto next = earlier_neighbor_with_color(forest, order, coloring, current, need);
    if (!next) {
      throw VerificationFailure("vertex " + std::to_string(current) + " has color " +
                                std::to_string(need + 1) + " but no earlier neighbor colored " +
                                std::to_string(need));
    }
    current = *next;
    witness.path.push_back(current);
  }
  std::reverse(witness.path.begin(), witness.path.end());
  return witness;
}

DirectedPathWitness directed_path_witness(const Forest& forest, const Permutation& order,
                                          const Coloring& coloring, Vertex v) {
  return directed_path_witness(forest, ArrivalOrder(order), coloring, v);
}

Vertex first_max_color_vertex(const Coloring& coloring) {
  auto it = std::max_element(coloring.colors.begin(), coloring.colors.end());
  if (it == coloring.colors.end()) throw InvalidInput("empty coloring has no max-color vertex");
  return static_cast<Vertex>(it - coloring.colors.begin());
}

BidirectedPathWitness bidirected_path_witness(const Forest& forest, const ArrivalOrder& order,
                                              const Coloring& coloring) {
  require_coloring_of(forest, order, coloring);
  if (coloring.max_color < 2) {
    throw InvalidInput("bidirected witness needs max color >= 2, got " +
                       std::to_string(coloring.max_color));
  }
  const Vertex v = first_max_color_vertex(coloring);
  const Color top = coloring.colors[v];
  if (top != coloring.max_color) {
    throw VerificationFailure("max_color field disagrees with the colors");
  }
  if (top == 2) {
    return {directed_path_witness(forest, order, coloring, v).path, 1};
  }

  auto u = earlier_neighbor_with_color(forest, order, coloring, v, top - 1);
  auto w = earlier_neighbor_with_color(forest, order, coloring, v, top - 2);
  if (!u || !w) {
    throw VerificationFailure("vertex " + std::to_string(v) + " with color " +
                              std::to_string(top) + " lacks earlier neighbors colored " +
                              std::to_string(top - 1) + " and " + std::to_string(top - 2));
  }
  auto high = directed_path_witness(forest, order, coloring, *u).path;
  auto low = directed_path_witness(forest, order, coloring, *w).path;

  std::unordered_set<Vertex> seen(high.begin(), high.end());
  seen.insert(v);
  for (Vertex x : low) {
    if (!seen.insert(x).second) {
      throw VerificationFailure("witness arms share vertex " + std::to_string(x) +
                                "; input is not a forest");
    }
  }

  BidirectedPathWitness witness;
  witness.peak = low.size();
  witness.path = std::move(low);
  witness.path.push_back(v);
  witness.path.insert(witness.path.end(), high.rbegin(), high.rend());
  return witness;
}

BidirectedPathWitness bidirected_path_witness(const Forest& forest, const Permutation& order,
                                              const Coloring& coloring) {
  return bidirected_path_witness(forest, ArrivalOrder(order), coloring);
}

std::string ColoringViolation::describe() const {
  switch (kind) {
    case Kind::size_mismatch:
      return "coloring, order and forest sizes differ";
    case Kind::uncolored:
      return "vertex " + std::to_string(vertex) + " is uncolored";
    case Kind::improper:
      return "edge (" + std::to_string(vertex) + "," + std::to_string(other) +
             ") has both ends colored " + std::to_string(found);
    case Kind::not_greedy:
      return "vertex " + std::to_string(vertex) + " has color " + std::to_string(found) +
             ", first fit gives " + std::to_string(expected);
    case Kind::wrong_max:
      return "max_color is " + std::to_string(found) + ", colors reach " +
             std::to_string(expected);
  }
  return "unknown violation";
}

std::optional<ColoringViolation> verify_coloring(const Forest& forest, const ArrivalOrder& order,
                                                 const Coloring& coloring) {
  using Kind = ColoringViolation::Kind;
  const std::size_t n = forest.size();
  if (order.size() != n || coloring.colors.size() != n) {
    return ColoringViolation{Kind::size_mismatch};
  }
  for (Vertex v = 0; v < n; ++v) {
    if (coloring.colors[v] == 0) return ColoringViolation{Kind::uncolored, v};
  }
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex u : forest.neighbors(v)) {
      if (v < u && coloring.colors[u] == coloring.colors[v]) {
        return ColoringViolation{Kind::improper, v, u, 0, coloring.colors[v]};
      }
    }
  }
  std::vector<Color> seen;
  Color highest = 0;
  for (Vertex v = 0; v < n; ++v) {
    seen.clear();
    for (Vertex u : forest.neighbors(v)) {
      if (order.before(u, v)) seen.push_back(coloring.colors[u]);
    }
    std::sort(seen.begin(), seen.end());
    Color expected = 1;
    for (Color c : seen) {
      if (c == expected) ++expected;
    }
    if (expected != coloring.colors[v]) {
      return ColoringViolation{Kind::not_greedy, v, 0, expected, coloring.colors[v]};
    }
    highest = std::max(highest, coloring.colors[v]);
  }
  if (highest != coloring.max_color) {
    return ColoringViolation{Kind::wrong_max, 0, 0, highest, coloring.max_color};
  }
  return std::nullopt;
}

std::optional<ColoringViolation> verify_coloring(const Forest& forest, const Permutation& order,
                                                 const Coloring& coloring) {
  if (order.size() != forest.size()) {
    return ColoringViolation{ColoringViolation::Kind::size_mismatch};
  }
  return verify_coloring(forest, ArrivalOrder(order), coloring);
}

bool is_bidirected(const Forest& forest, const ArrivalOrder& order, std::span<const Vertex> path,
                   std::size_t peak) {
  if (path.empty() || peak >= path.size()) return false;
  std::unordered_set<Vertex> distinct;
  for (Vertex x : path) {
    if (x >= forest.size() || !distinct.insert(x).second) return false;
  }
  for (std::size_t j = 0; j + 1 < path.size(); ++j) {
    if (!adjacent(forest, path[j], path[j + 1])) return false;
    const bool rising = j < peak;
    if (rising ? !order.before(path[j], path[j + 1]) : !order.before(path[j + 1], path[j])) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> check_directed_witness(const Forest& forest, const ArrivalOrder& order,
                                                  const Coloring& coloring, Vertex v,
                                                  const DirectedPathWitness& witness) {
  if (v >= coloring.colors.size()) return "vertex out of range";
  if (witness.path.size() != coloring.colors[v]) {
    return "directed witness for vertex " + std::to_string(v) + " has " +
           std::to_string(witness.path.size()) + " vertices, color is " +
           std::to_string(coloring.colors[v]);
  }
  if (witness.path.back() != v) return "directed witness does not end at its vertex";
  if (!is_bidirected(forest, order, witness.path, witness.path.size() - 1)) {
    return "directed witness is not a directed path";
  }
  return std::nullopt;
}

std::optional<std::string> check_bidirected_witness(const Forest& forest,
                                                    const ArrivalOrder& order,
                                                    const BidirectedPathWitness& witness,
                                                    std::size_t expected_vertices) {
  if (witness.path.size() != expected_vertices) {
    return "bidirected witness has " + std::to_string(witness.path.size()) +
           " vertices, expected " + std::to_string(expected_vertices);
  }
  if (!is_bidirected(forest, order, witness.path, witness.peak)) {
    return "witness path is not bidirected around its peak";
  }
  return std::nullopt;
}

}  // namespace ffrand
