#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ffrand/bounds.hpp"
#include "ffrand/error.hpp"

using namespace ffrand;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

// 50-digit evaluations straight from the closed forms.
Big big_alpha(std::uint64_t n) {
  const Big l1 = log(Big(n));
  const Big l2 = log(l1);
  const Big l3 = log(l2);
  return (l3 + 1) / (l2 - l3 - 1);
}

Big big_upper(std::uint64_t n) {
  const Big l1 = log(Big(n));
  return (1 + big_alpha(n)) * l1 / (2 * log(l1)) + Big(3) / 2;
}

Big big_g(std::uint64_t n) {
  const Big l1 = log(Big(n));
  const Big l2 = log(l1);
  const Big l3 = log(l2);
  return l1 / (l2 + 4 * l3) * (1 - 1 / (l2 - 2 * l3));
}

Big big_tail(std::uint64_t n, std::uint64_t k) {
  Big fact = 1;
  for (std::uint64_t i = 2; i <= 2 * k; ++i) fact *= i;
  return Big(n) * Big(n) * pow(Big(4), k) / fact;
}

Big big_union(std::uint64_t n, std::uint64_t i) {
  Big fact = 1;
  for (std::uint64_t j = 2; j <= 2 * i - 2; ++j) fact *= j;
  return Big(n) * Big(n) / 2 * pow(Big(2), 2 * i - 3) / fact;
}

void expect_rel(double value, const Big& reference, double tol = 1e-10) {
  const double ref = static_cast<double>(reference);
  EXPECT_LE(std::abs(value - ref), tol * std::abs(ref)) << value << " vs " << ref;
}

const std::vector<std::uint64_t> kDecades = {100ull,          1000ull,          10000ull,
                                             100000ull,       1000000ull,       10000000ull,
                                             100000000ull,    1000000000ull,    10000000000ull,
                                             100000000000ull, 1000000000000ull};

}  // namespace

TEST(Alpha, FrozenValues) {
  EXPECT_NEAR(alpha(1000000), 2.9760063759741949, 1e-12);
  EXPECT_NEAR(alpha(1000000000), 2.2867006095284795, 1e-12);
  EXPECT_NEAR(alpha(100), 13.718814326741019, 1e-11);
  EXPECT_NEAR(alpha(5), 1.1783217094811559, 1e-12);
}

TEST(Alpha, NearTheSingularityStaysFinite) {
  // e^e ~ 15.15 makes the denominator tiny but positive at n = 15.
  const double a = alpha(15);
  EXPECT_TRUE(std::isfinite(a));
  EXPECT_NEAR(a / 139750.93847185212, 1.0, 1e-6);
  EXPECT_GT(alpha(16), 0.0);
}

TEST(Alpha, DomainErrorBelowFive) {
  for (std::uint64_t n : {0ull, 1ull, 2ull, 3ull, 4ull}) EXPECT_THROW(alpha(n), DomainError);
}

TEST(UpperBoundRff, Examples) {
  EXPECT_NEAR(upper_bound_rff(1000000), 11.96, 0.05);
  EXPECT_EQ(upper_bound_rff(3), 1.0);
  EXPECT_EQ(upper_bound_rff(4), 9.0 / 8);
  EXPECT_EQ(upper_bound_rff(1), 1.0);
  EXPECT_THROW(upper_bound_rff(0), DomainError);
}

TEST(UpperBoundRff, DipsThenGrowsOnDecadeGrid) {
  // The bound falls until a minimum near n = 3e5 and grows from there on.
  EXPECT_LT(upper_bound_rff(100000), upper_bound_rff(10000));
  double prev = upper_bound_rff(1000000);
  for (std::uint64_t n : kDecades) {
    if (n <= 1000000) continue;
    const double u = upper_bound_rff(n);
    EXPECT_GT(u, prev) << n;
    prev = u;
  }
  EXPECT_LT(upper_bound_rff(316228), upper_bound_rff(100000));
  EXPECT_LT(upper_bound_rff(316228), upper_bound_rff(1000000));
}

TEST(ColorCountBoundK, Examples) {
  EXPECT_EQ(color_count_bound_k(1000000), 21u);
  EXPECT_EQ(color_count_bound_k(100), 45u);
  EXPECT_EQ(color_count_bound_k(1000000000000ull), 25u);
  for (std::uint64_t n = 5; n < 2000; ++n) {
    if (n == 15) continue;
    EXPECT_GE(color_count_bound_k(n), 2u) << n;
  }
}

TEST(ColorCountBoundK, FactorialRatioDominatesOnGrid) {
  for (std::uint64_t n : kDecades) {
    const auto k = color_count_bound_k(n);
    EXPECT_TRUE(factorial_ratio_dominates(n, k)) << n;
    EXPECT_LE(tail_term(n, k), 1.0) << n;
  }
}

TEST(FactorialRatio, ExactBoundary) {
  // (2k)!/4^k: k=1 -> 1/2, k=2 -> 1.5, k=3 -> 11.25, k=4 -> 157.5.
  EXPECT_FALSE(factorial_ratio_dominates(1, 1));
  EXPECT_TRUE(factorial_ratio_dominates(1, 2));
  EXPECT_TRUE(factorial_ratio_dominates(3, 3));
  EXPECT_FALSE(factorial_ratio_dominates(4, 3));
  EXPECT_TRUE(factorial_ratio_dominates(12, 4));
  EXPECT_FALSE(factorial_ratio_dominates(13, 4));
}

TEST(TailTerm, Examples) {
  EXPECT_NEAR(tail_term(10, 2), 66.666666666666667, 1e-10);
  EXPECT_LE(tail_term(1000000, 21), 1.0);
  expect_rel(tail_term(1000000, 21), Big("3.1302685842664439e-27"));
  for (std::uint64_t k = 1; k < 40; ++k) EXPECT_GT(tail_term(1000, k), tail_term(1000, k + 1));
  EXPECT_THROW(tail_term(10, 0), DomainError);
}

TEST(BidirectedProb, SmallExact) {
  EXPECT_EQ(bidirected_prob(1), Rational(1));
  EXPECT_EQ(bidirected_prob(2), Rational(1));
  EXPECT_EQ(bidirected_prob(3), Rational(2, 3));
  EXPECT_EQ(bidirected_prob(4), Rational(1, 3));
  EXPECT_EQ(bidirected_prob(20), Rational(BigInt(1) << 19, factorial(20)));
  EXPECT_NEAR(std::exp(log_bidirected_prob(10)), static_cast<double>(bidirected_prob(10)), 1e-15);
  EXPECT_THROW(bidirected_prob(0), DomainError);
}

TEST(UnionBoundTail, Examples) {
  EXPECT_NEAR(union_bound_tail(2, 2), 2.0, 1e-12);
  for (std::uint64_t i = 3; i < 30; ++i) {
    EXPECT_LT(union_bound_tail(1000, i), union_bound_tail(1000, i - 1));
  }
  EXPECT_THROW(union_bound_tail(10, 1), DomainError);
}

TEST(LowerBoundG, RawValueAtOneBillion) {
  EXPECT_NEAR(lower_bound_g(1000000000), -0.63707344519915114, 1e-12);
  EXPECT_LT(lower_bound_g_correction(1000000000), 0.0);
}

TEST(LowerBoundG, DomainGuard) {
  // ln ln n - 2 ln ln ln n <= 0 or ln ln n + 4 ln ln ln n <= 0 for tiny n.
  for (std::uint64_t n : {1ull, 2ull, 3ull, 5ull, 7ull}) EXPECT_THROW(lower_bound_g(n), DomainError);
  EXPECT_NO_THROW(lower_bound_g(100));
}

TEST(LowerBoundG, IncreasingWhereCorrectionIsPositive) {
  std::vector<std::uint64_t> grid;
  for (double x = 1e12; x < 1.8e19; x *= 2) grid.push_back(static_cast<std::uint64_t>(x));
  double prev = -1e300;
  std::size_t checked = 0;
  for (std::uint64_t n : grid) {
    if (lower_bound_g_correction(n) <= 0) continue;
    const double g = lower_bound_g(n);
    EXPECT_GT(g, prev) << n;
    prev = g;
    ++checked;
  }
  EXPECT_GT(checked, 5u);
}

TEST(BoundReport, UpperDominatesLowerOnGrid) {
  for (std::uint64_t n : kDecades) {
    const auto r = bound_report(n);
    ASSERT_TRUE(r.upper_rff && r.lower_g && r.alpha && r.k_star && r.tail);
    EXPECT_GE(*r.upper_rff, *r.lower_g);
  }
  const auto small = bound_report(3);
  EXPECT_FALSE(small.alpha.has_value());
  EXPECT_EQ(small.upper_rff, 1.0);
  EXPECT_FALSE(small.lower_g.has_value());
}

TEST(HighPrecision, EvaluatorsAgreeWithFiftyDigitOracle) {
  for (std::uint64_t n : kDecades) {
    expect_rel(alpha(n), big_alpha(n));
    expect_rel(upper_bound_rff(n), big_upper(n));
    expect_rel(lower_bound_g(n), big_g(n));
    const auto k = color_count_bound_k(n);
    expect_rel(tail_term(n, k), big_tail(n, k));
    for (std::uint64_t i : {2u, 5u, 10u, 30u}) expect_rel(union_bound_tail(n, i), big_union(n, i));
  }
  for (std::uint64_t n = 5; n < 200; ++n) {
    if (n == 15) continue;  // the tiny denominator amplifies rounding there
    expect_rel(alpha(n), big_alpha(n));
    expect_rel(upper_bound_rff(n), big_upper(n));
  }
}

TEST(Factorial, Values) {
  EXPECT_EQ(factorial(0), BigInt(1));
  EXPECT_EQ(factorial(20), BigInt(2432902008176640000ull));
  EXPECT_EQ(factorial(25), BigInt("15511210043330985984000000"));
}
