#include "ffrand/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ffrand/error.hpp"

namespace ffrand {
namespace {

struct IteratedLogs {
  double l1;  // ln n
  double l2;  // ln ln n
  double l3;  // ln ln ln n
};

// Requires ln ln n > 0, i.e. n >= 3.
IteratedLogs iterated_logs(std::uint64_t n, const char* what) {
  if (n < 3) throw DomainError(std::string(what) + ": needs n >= 3, got " + std::to_string(n));
  const double l1 = std::log(static_cast<double>(n));
  const double l2 = std::log(l1);
  return {l1, l2, std::log(l2)};
}

double log_factorial(std::uint64_t m) { return std::lgamma(static_cast<double>(m) + 1.0); }

}  // namespace

BigInt factorial(std::uint64_t m) {
  BigInt out = 1;
  for (std::uint64_t i = 2; i <= m; ++i) out *= i;
  return out;
}

double alpha(std::uint64_t n) {
  if (n < 5) throw DomainError("alpha: needs n >= 5, got " + std::to_string(n));
  const auto [l1, l2, l3] = iterated_logs(n, "alpha");
  const double denominator = l2 - l3 - 1.0;
  if (!(denominator > 0.0)) {
    throw DomainError("alpha: ln ln n - ln ln ln n - 1 is not positive at n=" + std::to_string(n));
  }
  return (l3 + 1.0) / denominator;
}

double upper_bound_rff(std::uint64_t n) {
  // Exact class maxima, confirmed by the small-forest enumeration.
  switch (n) {
    case 0:
      throw DomainError("upper_bound_rff: needs n >= 1");
    case 1:
    case 2:
    case 3:
      return 1.0;
    case 4:
      return 9.0 / 8.0;
    default:
      break;
  }
  const auto [l1, l2, l3] = iterated_logs(n, "upper_bound_rff");
  return (1.0 + alpha(n)) * l1 / (2.0 * l2) + 1.5;
}

std::uint64_t color_count_bound_k(std::uint64_t n) {
  const double a = alpha(n);
  const auto [l1, l2, l3] = iterated_logs(n, "color_count_bound_k");
  return static_cast<std::uint64_t>(std::ceil((1.0 + a) * l1 / l2));
}

double log_tail_term(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || k == 0) throw DomainError("tail_term: needs n >= 1 and k >= 1");
  return 2.0 * std::log(static_cast<double>(n)) + static_cast<double>(k) * std::log(4.0) -
         log_factorial(2 * k);
}

double tail_term(std::uint64_t n, std::uint64_t k) { return std::exp(log_tail_term(n, k)); }

bool factorial_ratio_dominates(std::uint64_t n, std::uint64_t k) {
  const BigInt lhs = factorial(2 * k);
  BigInt rhs = BigInt(n) * n;
  rhs <<= 2 * k;
  return lhs >= rhs;
}

Rational bidirected_prob(std::uint64_t m) {
  if (m == 0) throw DomainError("bidirected_prob: needs m >= 1");
  BigInt numerator = 1;
  numerator <<= (m - 1);
  return Rational(numerator, factorial(m));
}

double log_bidirected_prob(std::uint64_t m) {
  if (m == 0) throw DomainError("bidirected_prob: needs m >= 1");
  return static_cast<double>(m - 1) * std::numbers::ln2 - log_factorial(m);
}

double union_bound_tail(std::uint64_t n, std::uint64_t i) {
  if (i < 2) throw DomainError("union_bound_tail: needs i >= 2");
  if (n == 0) return 0.0;
  return std::exp(2.0 * std::log(static_cast<double>(n)) - std::numbers::ln2 +
                  log_bidirected_prob(2 * i - 2));
}

double lower_bound_g_correction(std::uint64_t n) {
  const auto [l1, l2, l3] = iterated_logs(n, "lower_bound_g");
  const double denominator = l2 - 2.0 * l3;
  if (!(denominator > 0.0)) {
    throw DomainError("lower_bound_g: ln ln n - 2 ln ln ln n is not positive");
  }
  return 1.0 - 1.0 / denominator;
}

double lower_bound_g(std::uint64_t n) {
  const auto [l1, l2, l3] = iterated_logs(n, "lower_bound_g");
  const double leading = l2 + 4.0 * l3;
  if (!(leading > 0.0)) {
    throw DomainError("lower_bound_g: ln ln n + 4 ln ln ln n is not positive at n=" +
                      std::to_string(n));
  }
  return l1 / leading * lower_bound_g_correction(n);
}

BoundReport bound_report(std::uint64_t n) {
  BoundReport report;
  report.n = n;
  auto attempt = [](auto&& fn) -> decltype(std::optional(fn())) {
    try {
      return fn();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  report.alpha = attempt([&] { return alpha(n); });
  report.k_star = attempt([&] { return color_count_bound_k(n); });
  report.upper_rff = attempt([&] { return upper_bound_rff(n); });
  if (report.k_star) report.tail = tail_term(n, *report.k_star);
  report.lower_g = attempt([&] { return lower_bound_g(n); });
  return report;
}

}  // namespace ffrand
