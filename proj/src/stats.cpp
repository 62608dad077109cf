#include "ffrand/stats.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

namespace ffrand {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  // The closed form leaves rounding residue at the boundaries.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

double binomial_std_error(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

HistogramMoments histogram_moments(std::span<const std::uint64_t> histogram) {
  HistogramMoments m;
  long double sum = 0;
  for (std::size_t value = 0; value < histogram.size(); ++value) {
    m.count += histogram[value];
    sum += static_cast<long double>(value) * histogram[value];
  }
  if (m.count == 0) return m;
  const long double mean = sum / m.count;
  long double squares = 0;
  for (std::size_t value = 0; value < histogram.size(); ++value) {
    const long double d = static_cast<long double>(value) - mean;
    squares += d * d * histogram[value];
  }
  m.mean = static_cast<double>(mean);
  if (m.count > 1) {
    const long double variance = squares / (m.count - 1);
    m.std_error = static_cast<double>(std::sqrt(variance / m.count));
  }
  return m;
}

double chi_square_uniform_p_value(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) return 1.0;
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double statistic = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    statistic += d * d / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace ffrand
