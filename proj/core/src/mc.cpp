#include "polytail/mc.hpp"

#include <bit>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "polytail/parallel.hpp"

namespace polytail::mc {

std::pair<double, double> clopper_pearson(std::uint64_t x, std::uint64_t n,
                                          double level) {
  if (n == 0) throw ParameterError("clopper_pearson: need n >= 1");
  if (x > n) throw ParameterError("clopper_pearson: x > n");
  if (!(level > 0.0 && level < 1.0))
    throw ParameterError("clopper_pearson: level in (0,1)");
  const double alpha = 1.0 - level;
  const double lo =
      x == 0 ? 0.0
             : boost::math::ibeta_inv(double(x), double(n - x + 1), alpha / 2.0);
  const double hi =
      x == n ? 1.0
             : boost::math::ibeta_inv(double(x + 1), double(n - x),
                                      1.0 - alpha / 2.0);
  return {lo, hi};
}

TailEstimate estimate_tail(const poly::PoweredPolynomial& p,
                           std::span<const rv::DistributionSpec> dists,
                           double lambda, std::uint64_t n_samples,
                           std::uint64_t seed, TailDirection direction,
                           double ci_level) {
  if (dists.size() != p.n())
    throw DimensionMismatch("estimate_tail: dists length != n");
  if (n_samples < 1) throw ParameterError("estimate_tail: need n_samples >= 1");
  const double mean = poly::expectation(p, dists);
  const std::uint64_t n = p.n();

  std::function<std::uint64_t(std::size_t, std::size_t)> block_fn =
      [&](std::size_t lo, std::size_t hi) -> std::uint64_t {
    std::vector<double> assignment(n);
    std::uint64_t count = 0;
    for (std::size_t s = lo; s < hi; ++s) {
      for (std::uint64_t v = 0; v < n; ++v) {
        RandomStream stream(seed, std::uint64_t(s) * n + v);
        assignment[v] = rv::sample(dists[v], stream);
      }
      const double dev = poly::evaluate(p, assignment) - mean;
      const bool hit = direction == TailDirection::two_sided
                           ? std::abs(dev) >= lambda
                           : dev >= lambda;
      if (hit) ++count;
    }
    return count;
  };
  const std::uint64_t exceed = block_reduce<std::uint64_t>(
      n_samples, 8192, 0, block_fn,
      [](std::uint64_t a, std::uint64_t b) { return a + b; });

  TailEstimate est;
  est.n_samples = n_samples;
  est.exceedances = exceed;
  est.p_hat = double(exceed) / double(n_samples);
  est.seed = seed;
  est.lambda = lambda;
  est.direction = direction;
  std::tie(est.ci_low, est.ci_high) =
      clopper_pearson(exceed, n_samples, ci_level);
  return est;
}

double ryser_permanent(std::span<const double> matrix, std::uint32_t n) {
  if (n < 1 || n > 24) throw SizeLimit("ryser_permanent: need 1 <= n <= 24");
  if (matrix.size() != std::size_t(n) * n)
    throw DimensionMismatch("ryser_permanent: matrix size != n*n");

  std::vector<double> rowsum(n, 0.0);
  double acc = 0.0;
  std::uint32_t prev_gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < limit; ++g) {
    const std::uint32_t gray = std::uint32_t(g ^ (g >> 1));
    const std::uint32_t changed = gray ^ prev_gray;
    const std::uint32_t j = std::uint32_t(std::countr_zero(changed));
    const double dir = (gray & changed) ? 1.0 : -1.0;
    for (std::uint32_t i = 0; i < n; ++i)
      rowsum[i] += dir * matrix[std::size_t(i) * n + j];
    prev_gray = gray;

    double prod = 1.0;
    for (std::uint32_t i = 0; i < n; ++i) prod *= rowsum[i];
    const std::uint32_t popcnt = std::uint32_t(std::popcount(gray));
    acc += ((n - popcnt) % 2 == 0) ? prod : -prod;
  }
  return acc;
}

std::vector<double> permanent_sample(std::uint32_t n,
                                     const rv::DistributionSpec& entry_dist,
                                     bool symmetric, std::uint64_t seed,
                                     std::uint64_t n_samples) {
  if (n < 1 || n > 24) throw SizeLimit("permanent_sample: need 1 <= n <= 24");
  const std::uint64_t n_vars =
      symmetric ? std::uint64_t(n) + std::uint64_t(n) * (n - 1) / 2
                : std::uint64_t(n) * n;

  std::function<std::vector<double>(std::size_t, std::size_t)> block_fn =
      [&](std::size_t lo, std::size_t hi) -> std::vector<double> {
    std::vector<double> values;
    values.reserve(hi - lo);
    std::vector<double> matrix(std::size_t(n) * n);
    for (std::size_t s = lo; s < hi; ++s) {
      if (symmetric) {
        for (std::uint32_t i = 0; i < n; ++i) {
          for (std::uint32_t j = i; j < n; ++j) {
            RandomStream stream(seed,
                                std::uint64_t(s) * n_vars +
                                    poly::symmetric_pair_index(n, i, j));
            const double v = rv::sample(entry_dist, stream);
            matrix[std::size_t(i) * n + j] = v;
            matrix[std::size_t(j) * n + i] = v;
          }
        }
      } else {
        for (std::uint32_t i = 0; i < n; ++i) {
          for (std::uint32_t j = 0; j < n; ++j) {
            RandomStream stream(
                seed, std::uint64_t(s) * n_vars + std::uint64_t(i) * n + j);
            matrix[std::size_t(i) * n + j] = rv::sample(entry_dist, stream);
          }
        }
      }
      values.push_back(ryser_permanent(matrix, n));
    }
    return values;
  };

  return block_reduce<std::vector<double>>(
      n_samples, 4096, {}, block_fn,
      [](std::vector<double> a, std::vector<double> b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      });
}

void permanent_sample_visit(
    std::uint32_t n, const rv::DistributionSpec& entry_dist, bool symmetric,
    std::uint64_t seed, std::uint64_t n_samples,
    const std::function<void(std::uint64_t, double)>& visit) {
  const std::vector<double> values =
      permanent_sample(n, entry_dist, symmetric, seed, n_samples);
  for (std::uint64_t s = 0; s < n_samples; ++s) visit(s, values[s]);
}

}  // namespace polytail::mc
