#include "ffrand/lb_tree.hpp"

#include <cmath>
#include <string>

#include "ffrand/error.hpp"

namespace ffrand {
namespace {

std::vector<double> level_budgets(unsigned k, double gamma) {
  std::vector<double> eps(k);
  for (unsigned i = 1; i <= k; ++i) eps[i - 1] = gamma * i / k;
  eps[k - 1] = gamma;
  return eps;
}

class PreorderBuilder {
 public:
  PreorderBuilder(std::uint64_t r, std::size_t size) : r_(r), levels_(size) {
    edges_.reserve(size > 0 ? size - 1 : 0);
  }

  Vertex lay(unsigned level) {
    const Vertex v = next_++;
    levels_[v] = static_cast<std::uint8_t>(level);
    for (unsigned j = 1; j < level; ++j) {
      for (std::uint64_t q = 0; q < r_; ++q) edges_.push_back({v, lay(j)});
    }
    return v;
  }

  std::vector<Edge>& edges() { return edges_; }
  std::vector<std::uint8_t>& levels() { return levels_; }

 private:
  std::uint64_t r_;
  Vertex next_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> levels_;
};

}  // namespace

LowerBoundParams derive_params(unsigned k, double gamma, std::optional<std::uint64_t> r_override) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidInput("gamma must lie in (0, 1)");
  if (r_override && *r_override < 1) throw InvalidInput("r must be at least 1");

  LowerBoundParams p;
  p.k = k;
  p.gamma = gamma;
  p.c = 10.0 / (gamma * gamma);
  if (r_override) {
    p.r = *r_override;
    p.r_overridden = true;
  } else {
    const double raw = std::ceil(p.c * k * std::log(static_cast<double>(k)));
    p.r = raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
  }
  p.epsilons = level_budgets(k, gamma);
  return p;
}

LowerBoundParams calibrated_params(unsigned k) {
  if (k < 3) throw InvalidInput("gamma = 1/ln k lies in (0, 1) only for k >= 3");
  const double ln_k = std::log(static_cast<double>(k));
  LowerBoundParams p;
  p.k = k;
  p.gamma = 1.0 / ln_k;
  p.c = 10.0 * ln_k * ln_k;
  p.r = static_cast<std::uint64_t>(std::ceil(10.0 * k * ln_k * ln_k * ln_k));
  p.epsilons = level_budgets(k, p.gamma);
  return p;
}

std::uint64_t lb_tree_size(unsigned k, std::uint64_t r) {
  if (k < 1) throw InvalidInput("k must be at least 1");
  if (r < 1) throw InvalidInput("r must be at least 1");
  std::uint64_t base = 0;
  if (__builtin_add_overflow(r, 1, &base)) throw CapExceeded("r + 1 overflows 64 bits");
  std::uint64_t size = 1;
  for (unsigned i = 1; i < k; ++i) {
    if (__builtin_mul_overflow(size, base, &size)) {
      throw CapExceeded("(r+1)^(k-1) overflows 64 bits for k=" + std::to_string(k) +
                        ", r=" + std::to_string(r));
    }
  }
  return size;
}

RootedLBTree build_lb_tree(unsigned k, std::uint64_t r, std::uint64_t vertex_cap) {
  if (k > 255) throw CapExceeded("level annotations are 8-bit; k must be at most 255");
  const std::uint64_t size = lb_tree_size(k, r);
  if (size > vertex_cap) {
    throw CapExceeded("T^r_k with k=" + std::to_string(k) + ", r=" + std::to_string(r) + " has " +
                      std::to_string(size) + " vertices, above the cap of " +
                      std::to_string(vertex_cap));
  }
  PreorderBuilder builder(r, size);
  const Vertex root = builder.lay(k);
  RootedLBTree tree;
  tree.forest = build_forest(size, builder.edges(), root);
  tree.root = root;
  tree.level = k;
  tree.r = r;
  tree.levels = std::move(builder.levels());
  return tree;
}

std::size_t longest_root_path(const RootedLBTree& tree) {
  const Forest& f = tree.forest;
  if (f.size() == 0) return 0;
  std::vector<std::uint32_t> depth(f.size(), 0);
  std::vector<bool> visited(f.size(), false);
  std::vector<Vertex> stack{tree.root};
  visited[tree.root] = true;
  std::size_t deepest = 0;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    deepest = std::max<std::size_t>(deepest, depth[v]);
    for (Vertex u : f.neighbors(v)) {
      if (!visited[u]) {
        visited[u] = true;
        depth[u] = depth[v] + 1;
        stack.push_back(u);
      }
    }
  }
  return deepest + 1;
}

}  // namespace ffrand
