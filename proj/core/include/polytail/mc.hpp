#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/poly.hpp"
#include "polytail/rv.hpp"

namespace polytail::mc {

enum class TailDirection { two_sided, upper };

struct TailEstimate {
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  std::uint64_t n_samples = 0;
  std::uint64_t exceedances = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  TailDirection direction = TailDirection::two_sided;
};

// Exact Clopper-Pearson interval for x successes out of n at `level` coverage.
std::pair<double, double> clopper_pearson(std::uint64_t x, std::uint64_t n,
                                          double level = 0.99);

// Pr[|f - Ef| >= lambda] (or one-sided) estimated from n_samples draws.
// Sample s assigns vertex v the stream index s * n + v, so results are
// bit-identical for any thread partitioning.
TailEstimate estimate_tail(const poly::PoweredPolynomial& poly,
                           std::span<const rv::DistributionSpec> dists,
                           double lambda, std::uint64_t n_samples,
                           std::uint64_t seed,
                           TailDirection direction = TailDirection::two_sided,
                           double ci_level = 0.99);

// Permanent by Ryser's inclusion-exclusion with Gray-code row-sum updates.
// `matrix` is row-major n x n; cost O(2^n n), n <= 24.
double ryser_permanent(std::span<const double> matrix, std::uint32_t n);

// Draws matrices with iid (or mirrored symmetric) entries and returns one
// permanent value per sample, in sample order.
std::vector<double> permanent_sample(std::uint32_t n,
                                     const rv::DistributionSpec& entry_dist,
                                     bool symmetric, std::uint64_t seed,
                                     std::uint64_t n_samples);

// Streaming variant: calls visit(sample_index, permanent) in sample order.
void permanent_sample_visit(
    std::uint32_t n, const rv::DistributionSpec& entry_dist, bool symmetric,
    std::uint64_t seed, std::uint64_t n_samples,
    const std::function<void(std::uint64_t, double)>& visit);

}  // namespace polytail::mc
