#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ffrand/error.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/lb_tree.hpp"

using namespace ffrand;

namespace {

// Structural recount: (r + 1)^(k - 1) by the recurrence |T_1| = 1,
// |T_{i+1}| = 1 + r * sum_{j <= i} |T_j|, counted independently of the library.
std::uint64_t recount(unsigned k, std::uint64_t r) {
  std::vector<std::uint64_t> size{0, 1};
  for (unsigned i = 1; i < k; ++i) {
    size.push_back(1 + r * std::accumulate(size.begin() + 1, size.end(), std::uint64_t{0}));
  }
  return size[k];
}

}  // namespace

TEST(DeriveParams, KThreeGammaHalf) {
  const auto p = derive_params(3, 0.5);
  EXPECT_DOUBLE_EQ(p.c, 40.0);
  EXPECT_EQ(p.r, 132u);
  ASSERT_EQ(p.epsilons.size(), 3u);
  EXPECT_DOUBLE_EQ(p.epsilon(1), 1.0 / 6);
  EXPECT_DOUBLE_EQ(p.epsilon(2), 1.0 / 3);
  EXPECT_EQ(p.epsilon(3), 0.5);
  EXPECT_FALSE(p.r_overridden);
}

TEST(DeriveParams, KFourGammaHalf) { EXPECT_EQ(derive_params(4, 0.5).r, 222u); }

TEST(DeriveParams, CalibratedGamma) {
  const auto p = calibrated_params(3);
  EXPECT_EQ(p.r, 40u);
  EXPECT_DOUBLE_EQ(p.gamma, 1.0 / std::log(3.0));
  EXPECT_THROW(calibrated_params(2), InvalidInput);
}

TEST(DeriveParams, KOneIsASingleVertex) {
  const auto p = derive_params(1, 0.9);
  ASSERT_EQ(p.epsilons.size(), 1u);
  EXPECT_EQ(p.epsilon(1), 0.9);
  EXPECT_GE(p.r, 1u);
  EXPECT_EQ(build_lb_tree(1, p.r).forest.size(), 1u);
  EXPECT_EQ(build_lb_tree(1, 1000).forest.size(), 1u);
}

TEST(DeriveParams, EpsilonsIncreaseToGamma) {
  for (unsigned k = 1; k <= 12; ++k) {
    const auto p = derive_params(k, 0.3);
    EXPECT_EQ(p.epsilons.back(), 0.3);
    for (unsigned i = 1; i < k; ++i) EXPECT_LT(p.epsilon(i), p.epsilon(i + 1));
  }
}

TEST(DeriveParams, OverrideAndErrors) {
  const auto p = derive_params(3, 0.5, 7);
  EXPECT_EQ(p.r, 7u);
  EXPECT_TRUE(p.r_overridden);
  EXPECT_THROW(derive_params(0, 0.5), InvalidInput);
  EXPECT_THROW(derive_params(3, 0.0), InvalidInput);
  EXPECT_THROW(derive_params(3, 1.0), InvalidInput);
  EXPECT_THROW(derive_params(3, 0.5, 0), InvalidInput);
}

TEST(LbTreeSize, Examples) {
  EXPECT_EQ(lb_tree_size(1, 7), 1u);
  EXPECT_EQ(lb_tree_size(4, 3), 64u);
  EXPECT_EQ(lb_tree_size(3, 132), 17689u);
  EXPECT_EQ(lb_tree_size(4, 222), 11089567u);
  EXPECT_THROW(lb_tree_size(40, 1000), CapExceeded);
  EXPECT_THROW(lb_tree_size(0, 1), InvalidInput);
  EXPECT_THROW(lb_tree_size(2, 0), InvalidInput);
}

TEST(BuildLbTree, KThreeRTwo) {
  const auto t = build_lb_tree(3, 2);
  EXPECT_EQ(t.forest.size(), 9u);
  EXPECT_EQ(t.root, 0u);
  EXPECT_EQ(t.forest.degree(t.root), 4u);
  EXPECT_EQ(t.forest.root(), std::optional<Vertex>(0));
  // Preorder: two level-1 copies, then each level-2 copy followed by its leaves.
  EXPECT_EQ(t.levels, (std::vector<std::uint8_t>{3, 1, 1, 2, 1, 1, 2, 1, 1}));
  EXPECT_EQ(t.forest.neighbors(3).size(), 3u);
}

TEST(BuildLbTree, SizeMatchesRecount) {
  for (unsigned k = 1; k <= 6; ++k) {
    for (std::uint64_t r = 1; r <= 10; ++r) {
      EXPECT_EQ(lb_tree_size(k, r), recount(k, r));
      EXPECT_EQ(build_lb_tree(k, r).forest.size(), recount(k, r)) << k << " " << r;
    }
  }
  EXPECT_EQ(build_lb_tree(3, 132).forest.size(), recount(3, 132));
}

TEST(BuildLbTree, RootOfEachCopyHasRChildrenPerLowerLevel) {
  const std::uint64_t r = 3;
  const auto t = build_lb_tree(4, r);
  for (Vertex v = 0; v < t.forest.size(); ++v) {
    const unsigned level = t.levels[v];
    std::vector<std::uint64_t> children(level, 0);
    for (Vertex u : t.forest.neighbors(v)) {
      if (u > v) ++children[t.levels[u]];
    }
    for (unsigned j = 1; j < level; ++j) EXPECT_EQ(children[j], r);
    EXPECT_EQ(t.forest.degree(v), r * (level - 1) + (v == t.root ? 0 : 1));
  }
}

TEST(BuildLbTree, CapAndDeterminism) {
  EXPECT_THROW(build_lb_tree(3, 132, 1000), CapExceeded);
  EXPECT_EQ(build_lb_tree(3, 5).forest, build_lb_tree(3, 5).forest);
}

TEST(BuildLbTree, LongestRootPathAtMostLevel) {
  for (unsigned k = 1; k <= 5; ++k) {
    for (std::uint64_t r : {1u, 2u, 4u}) {
      const auto t = build_lb_tree(k, r);
      EXPECT_LE(longest_root_path(t), k);
      EXPECT_EQ(longest_root_path(t), k);  // the chain root, level k-1 child, ... is attained
    }
  }
}

TEST(BuildLbTree, RootColorNeverExceedsLevelOverAllOrdersOfSmallTrees) {
  for (unsigned k = 1; k <= 3; ++k) {
    for (std::uint64_t r = 1; r <= 2; ++r) {
      const auto t = build_lb_tree(k, r);
      std::vector<Vertex> order(t.forest.size());
      std::iota(order.begin(), order.end(), 0);
      ColoringScratch scratch;
      Coloring c;
      do {
        first_fit_color(t.forest, Permutation(order), scratch, c);
        ASSERT_LE(c.colors[t.root], k);
      } while (std::next_permutation(order.begin(), order.end()));
    }
  }
}
