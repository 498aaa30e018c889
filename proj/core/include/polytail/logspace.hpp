#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace polytail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)), safe for -inf inputs.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline double log_sum(std::span<const double> xs) {
  double acc = kNegInf;
  for (double x : xs) acc = log_add(acc, x);
  return acc;
}

inline double log_factorial(double n) { return std::lgamma(n + 1.0); }

inline double log_binom(double n, double k) {
  if (k < 0 || k > n) return kNegInf;
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// Exact for the ranges used by the enumerators (fits in double below n ~ 170).
inline double binom(double n, double k) { return std::exp(log_binom(n, k)); }

inline std::uint64_t binom_u64(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// log pmf of Binomial(n, p) at j.
inline double log_binom_pmf(double n, double j, double p) {
  if (p <= 0.0) return j == 0 ? 0.0 : kNegInf;
  if (p >= 1.0) return j == n ? 0.0 : kNegInf;
  return log_binom(n, j) + j * std::log(p) + (n - j) * std::log1p(-p);
}

// log of the upper tail Pr[Binomial(n,p) >= j0], summed stably from the top.
inline double log_binom_upper_tail(std::uint64_t n, double p, std::uint64_t j0) {
  if (j0 == 0) return 0.0;
  if (j0 > n) return kNegInf;
  double acc = kNegInf;
  for (std::uint64_t j = n + 1; j-- > j0;) {
    acc = log_add(acc, log_binom_pmf(double(n), double(j), p));
  }
  return acc;
}

}  // namespace polytail
