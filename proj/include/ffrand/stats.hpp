#pragma once

#include <cstdint>
#include <span>

namespace ffrand {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval for `successes` out of `trials` at normal quantile z.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

// sqrt(p (1 - p) / trials) at the empirical p.
double binomial_std_error(std::uint64_t successes, std::uint64_t trials);

struct HistogramMoments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
};

// Moments of a histogram indexed by value.
HistogramMoments histogram_moments(std::span<const std::uint64_t> histogram);

// Upper-tail p-value of Pearson's chi-square statistic against equal
// expected counts in every bin.
double chi_square_uniform_p_value(std::span<const std::uint64_t> counts);

}  // namespace ffrand
