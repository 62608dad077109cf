#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffrand {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Closed-form evaluators for the random-order First-Fit bounds on forests.
// All real-valued functions work in double precision with logarithms; domain
// violations throw DomainError rather than returning NaN.

// (ln ln ln n + 1) / (ln ln n - ln ln ln n - 1), for n >= 5. The denominator
// vanishes only at the non-integer point e^e, so it is positive on every
// admissible n, although tiny around n = 15.
double alpha(std::uint64_t n);

// (1 + alpha) ln n / (2 ln ln n) + 3/2 for n >= 5. For 1 <= n <= 4 returns
// the exact class maximum of the expected ratio (1, 1, 1, 9/8).
double upper_bound_rff(std::uint64_t n);

// ceil((1 + alpha) ln n / ln ln n), n >= 5. Always >= 2.
std::uint64_t color_count_bound_k(std::uint64_t n);

// n^2 4^k / (2k)!, evaluated in the log domain. k >= 1.
double tail_term(std::uint64_t n, std::uint64_t k);
double log_tail_term(std::uint64_t n, std::uint64_t k);

// Exact (2k)! / 4^k >= n^2.
bool factorial_ratio_dominates(std::uint64_t n, std::uint64_t k);

// Probability that a fixed m-vertex path is bidirected under a uniformly
// random order: 2^(m-1) / m!, exact for every m >= 1.
Rational bidirected_prob(std::uint64_t m);
double log_bidirected_prob(std::uint64_t m);

// (n^2 / 2) * 2^(2i-3) / (2i-2)!, the union bound on the probability that
// some path with 2i - 2 vertices is bidirected. i >= 2. May exceed 1.
double union_bound_tail(std::uint64_t n, std::uint64_t i);

// ln n / (ln ln n + 4 ln ln ln n) * (1 - 1 / (ln ln n - 2 ln ln ln n)).
// Reported raw: the correction factor is negative until n is about 3.6e14.
// Throws DomainError when either denominator is not positive.
double lower_bound_g(std::uint64_t n);

// The correction factor of lower_bound_g alone.
double lower_bound_g_correction(std::uint64_t n);

struct BoundReport {
  std::uint64_t n = 0;
  std::optional<double> alpha;
  std::optional<std::uint64_t> k_star;
  std::optional<double> upper_rff;
  std::optional<double> tail;
  std::optional<double> lower_g;
};

// Every evaluator at n; undefined entries are left empty.
BoundReport bound_report(std::uint64_t n);

BigInt factorial(std::uint64_t m);

}  // namespace ffrand
