#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/rng.hpp"

namespace polytail::rv {

enum class Family {
  bernoulli,
  scaled_bernoulli,
  rademacher,
  uniform,
  exponential,
  normal,
  poisson,
  geometric,
  binomial,
  finite_support,
};

// One independent random-variable family. Immutable after construction; the
// constructor validates parameters. Moments are analytic for every built-in
// family and exact finite sums for finite_support.
class DistributionSpec {
 public:
  static DistributionSpec bernoulli(double p);
  static DistributionSpec scaled_bernoulli(double p, double value);
  static DistributionSpec rademacher();
  static DistributionSpec uniform(double a, double b);
  static DistributionSpec exponential(double rate);
  static DistributionSpec normal(double mean, double sd);
  static DistributionSpec poisson(double mean);
  static DistributionSpec geometric(double p);  // support {1,2,...}, P(i)=(1-p)^{i-1} p
  static DistributionSpec binomial(int n, double p);
  static DistributionSpec finite_support(std::vector<std::pair<double, double>> atoms);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }

  bool has_finite_support() const;
  // Value/probability atoms for finitely supported families (bernoulli,
  // scaled_bernoulli, rademacher, finite_support, binomial).
  std::vector<std::pair<double, double>> support_atoms() const;

 private:
  DistributionSpec(Family f, std::vector<double> params,
                   std::vector<std::pair<double, double>> atoms = {});

  Family family_;
  std::vector<double> params_;
  std::vector<std::pair<double, double>> atoms_;
};

// E|Y|^d, analytic. d = 0 returns exactly 1.
double abs_moment(const DistributionSpec& dist, int d,
                  int d_max = kDefaultMaxMomentOrder);

// Signed E[Y^d], analytic.
double raw_moment(const DistributionSpec& dist, int d,
                  int d_max = kDefaultMaxMomentOrder);

// The family-specific moment-boundedness parameter L: bounded families use
// sup|Z|; nonnegative log-concave continuous use E[X]; two-sided log-concave
// continuous use E|X|/ln 2; nonnegative integer log-concave use 1+E[X].
double moment_bound_parameter(const DistributionSpec& dist);

struct MomentBoundReport {
  double L = 0.0;
  int i_max = 0;
  bool holds = false;
  int worst_index = 0;
  double worst_ratio = 0.0;  // E|Z|^i / (i L E|Z|^{i-1}) at worst_index
};

// Verifies E|Z|^i <= i*L*E|Z|^{i-1} for 1 <= i <= i_max (1e-12 relative slack).
MomentBoundReport check_moment_bounded(const DistributionSpec& dist, double L,
                                       int i_max);

// One draw. Deterministic function of (stream.seed, stream.stream, draw index).
double sample(const DistributionSpec& dist, RandomStream& stream);

const char* family_name(Family f);

}  // namespace polytail::rv
