#include "polytail/rv.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "polytail/logspace.hpp"

namespace polytail::rv {
namespace {

constexpr int kTableMax = kDefaultMaxMomentOrder;

bool finite(double x) { return std::isfinite(x); }

void require(bool cond, const char* msg) {
  if (!cond) throw ParameterError(msg);
}

// Pascal triangle up to kTableMax, as doubles.
const std::vector<std::vector<double>>& pascal() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kTableMax + 1);
    for (int n = 0; n <= kTableMax; ++n) {
      t[n].assign(n + 1, 1.0);
      for (int k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
  }();
  return table;
}

// Stirling numbers of the second kind S(d, j).
const std::vector<std::vector<double>>& stirling2() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> t(kTableMax + 1);
    t[0] = {1.0};
    for (int d = 1; d <= kTableMax; ++d) {
      t[d].assign(d + 1, 0.0);
      for (int j = 1; j <= d; ++j) {
        const double same = j < d ? t[d - 1][j] : 0.0;
        t[d][j] = j * same + t[d - 1][j - 1];
      }
    }
    return t;
  }();
  return table;
}

double phi_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// G_d = E[X^d 1{X>=0}] for X ~ N(mean, sd): G_d = mean G_{d-1} + sd^2 (d-1) G_{d-2}.
double normal_halfline_moment(double mean, double sd, int d) {
  const double z = mean / sd;
  double g0 = phi_cdf(z);
  double g1 = mean * phi_cdf(z) + sd * phi_pdf(z);
  if (d == 0) return g0;
  if (d == 1) return g1;
  for (int i = 2; i <= d; ++i) {
    const double gi = mean * g1 + sd * sd * (i - 1) * g0;
    g0 = g1;
    g1 = gi;
  }
  return g1;
}

double poisson_raw_moment(double mean, int d) {
  // Touchard polynomial: E[X^d] = sum_j S(d,j) mean^j.
  const auto& s2 = stirling2();
  double acc = 0.0, mj = 1.0;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) mj *= mean;
    if (j < int(s2[d].size())) acc += s2[d][j] * mj;
  }
  return acc;
}

double binomial_raw_moment(double n, double p, int d) {
  // E[X^d] = sum_j S(d,j) (n)_j p^j with falling factorial (n)_j.
  const auto& s2 = stirling2();
  double acc = 0.0, fall = 1.0, pj = 1.0;
  for (int j = 0; j <= d; ++j) {
    if (j > 0) {
      fall *= (n - (j - 1));
      pj *= p;
      if (fall <= 0.0) break;
    }
    if (j < int(s2[d].size())) acc += s2[d][j] * fall * pj;
  }
  return acc;
}

double geometric_raw_moment(double p, int d) {
  // Memorylessness recurrence: M_d = (1 + (1-p) sum_{j=1}^{d-1} C(d,j) M_j)/p.
  const auto& c = pascal();
  std::vector<double> m(d + 1);
  m[0] = 1.0;
  for (int i = 1; i <= d; ++i) {
    double s = 1.0;  // j = 0 term
    for (int j = 1; j < i; ++j) s += (1.0 - p) * c[i][j] * m[j];
    m[i] = s / p;
  }
  return m[d];
}

double uniform_abs_moment(double a, double b, int d) {
  // integral of |y|^d over (a,b) divided by (b-a)
  const double dp1 = d + 1;
  double integral;
  if (a >= 0.0) {
    integral = (std::pow(b, dp1) - std::pow(a, dp1)) / dp1;
  } else if (b <= 0.0) {
    integral = (std::pow(-a, dp1) - std::pow(-b, dp1)) / dp1;
  } else {
    integral = (std::pow(-a, dp1) + std::pow(b, dp1)) / dp1;
  }
  return integral / (b - a);
}

double checked(double v) {
  if (!std::isfinite(v))
    throw UnsupportedMoment("moment exceeds double range");
  return v;
}

}  // namespace

DistributionSpec::DistributionSpec(Family f, std::vector<double> params,
                                   std::vector<std::pair<double, double>> atoms)
    : family_(f), params_(std::move(params)), atoms_(std::move(atoms)) {}

DistributionSpec DistributionSpec::bernoulli(double p) {
  require(p >= 0.0 && p <= 1.0, "bernoulli: p must be in [0,1]");
  return DistributionSpec(Family::bernoulli, {p});
}

DistributionSpec DistributionSpec::scaled_bernoulli(double p, double value) {
  require(p >= 0.0 && p <= 1.0, "scaled_bernoulli: p must be in [0,1]");
  require(finite(value), "scaled_bernoulli: value must be finite");
  return DistributionSpec(Family::scaled_bernoulli, {p, value});
}

DistributionSpec DistributionSpec::rademacher() {
  return DistributionSpec(Family::rademacher, {});
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
  require(finite(a) && finite(b) && a < b, "uniform: need a < b");
  return DistributionSpec(Family::uniform, {a, b});
}

DistributionSpec DistributionSpec::exponential(double rate) {
  require(finite(rate) && rate > 0.0, "exponential: rate must be > 0");
  return DistributionSpec(Family::exponential, {rate});
}

DistributionSpec DistributionSpec::normal(double mean, double sd) {
  require(finite(mean) && finite(sd) && sd > 0.0, "normal: sd must be > 0");
  return DistributionSpec(Family::normal, {mean, sd});
}

DistributionSpec DistributionSpec::poisson(double mean) {
  require(finite(mean) && mean >= 0.0, "poisson: mean must be >= 0");
  return DistributionSpec(Family::poisson, {mean});
}

DistributionSpec DistributionSpec::geometric(double p) {
  require(p > 0.0 && p <= 1.0, "geometric: p must be in (0,1]");
  return DistributionSpec(Family::geometric, {p});
}

DistributionSpec DistributionSpec::binomial(int n, double p) {
  require(n >= 0, "binomial: n must be >= 0");
  require(p >= 0.0 && p <= 1.0, "binomial: p must be in [0,1]");
  return DistributionSpec(Family::binomial, {double(n), p});
}

DistributionSpec DistributionSpec::finite_support(
    std::vector<std::pair<double, double>> atoms) {
  require(!atoms.empty(), "finite_support: needs at least one atom");
  double total = 0.0;
  for (const auto& [v, p] : atoms) {
    require(finite(v), "finite_support: atom value must be finite");
    require(p >= 0.0, "finite_support: atom probability must be >= 0");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12,
          "finite_support: probabilities must sum to 1");
  return DistributionSpec(Family::finite_support, {}, std::move(atoms));
}

bool DistributionSpec::has_finite_support() const {
  switch (family_) {
    case Family::bernoulli:
    case Family::scaled_bernoulli:
    case Family::rademacher:
    case Family::binomial:
    case Family::finite_support:
      return true;
    default:
      return false;
  }
}

std::vector<std::pair<double, double>> DistributionSpec::support_atoms() const {
  switch (family_) {
    case Family::bernoulli:
      return {{0.0, 1.0 - params_[0]}, {1.0, params_[0]}};
    case Family::scaled_bernoulli:
      return {{0.0, 1.0 - params_[0]}, {params_[1], params_[0]}};
    case Family::rademacher:
      return {{-1.0, 0.5}, {1.0, 0.5}};
    case Family::binomial: {
      const int n = int(params_[0]);
      const double p = params_[1];
      std::vector<std::pair<double, double>> atoms;
      atoms.reserve(n + 1);
      for (int j = 0; j <= n; ++j)
        atoms.emplace_back(double(j),
                           std::exp(log_binom_pmf(double(n), double(j), p)));
      return atoms;
    }
    case Family::finite_support:
      return atoms_;
    default:
      throw NonFiniteSupport("distribution does not have finite support");
  }
}

double abs_moment(const DistributionSpec& dist, int d, int d_max) {
  require(d >= 0, "moment order must be >= 0");
  if (d > d_max) throw ParameterError("moment order exceeds d_max");
  if (d == 0) return 1.0;
  const auto& p = dist.params();
  switch (dist.family()) {
    case Family::bernoulli:
      return p[0];
    case Family::scaled_bernoulli:
      return checked(p[0] * std::pow(std::abs(p[1]), d));
    case Family::rademacher:
      return 1.0;
    case Family::uniform:
      return checked(uniform_abs_moment(p[0], p[1], d));
    case Family::exponential:
      return checked(std::exp(log_factorial(d) - d * std::log(p[0])));
    case Family::normal:
      return checked(normal_halfline_moment(p[0], p[1], d) +
                     normal_halfline_moment(-p[0], p[1], d));
    case Family::poisson:
      return checked(poisson_raw_moment(p[0], d));
    case Family::geometric:
      return checked(geometric_raw_moment(p[0], d));
    case Family::binomial:
      return checked(binomial_raw_moment(p[0], p[1], d));
    case Family::finite_support: {
      double acc = 0.0;
      for (const auto& [v, prob] : dist.atoms())
        acc += prob * std::pow(std::abs(v), d);
      return checked(acc);
    }
  }
  throw ParameterError("unknown family");
}

double raw_moment(const DistributionSpec& dist, int d, int d_max) {
  require(d >= 0, "moment order must be >= 0");
  if (d > d_max) throw ParameterError("moment order exceeds d_max");
  if (d == 0) return 1.0;
  const auto& p = dist.params();
  switch (dist.family()) {
    case Family::bernoulli:
      return p[0];
    case Family::scaled_bernoulli:
      return checked(p[0] * std::pow(p[1], d));
    case Family::rademacher:
      return d % 2 == 0 ? 1.0 : 0.0;
    case Family::uniform: {
      const double a = p[0], b = p[1];
      return checked((std::pow(b, d + 1) - std::pow(a, d + 1)) /
                     ((d + 1) * (b - a)));
    }
    case Family::exponential:
      return abs_moment(dist, d, d_max);
    case Family::normal: {
      // M_d = mean M_{d-1} + sd^2 (d-1) M_{d-2}
      double m0 = 1.0, m1 = p[0];
      if (d == 1) return m1;
      for (int i = 2; i <= d; ++i) {
        const double mi = p[0] * m1 + p[1] * p[1] * (i - 1) * m0;
        m0 = m1;
        m1 = mi;
      }
      return checked(m1);
    }
    case Family::poisson:
    case Family::geometric:
    case Family::binomial:
      return abs_moment(dist, d, d_max);  // nonnegative support
    case Family::finite_support: {
      double acc = 0.0;
      for (const auto& [v, prob] : dist.atoms()) acc += prob * std::pow(v, d);
      return checked(acc);
    }
  }
  throw ParameterError("unknown family");
}

double moment_bound_parameter(const DistributionSpec& dist) {
  const auto& p = dist.params();
  switch (dist.family()) {
    case Family::bernoulli:
    case Family::rademacher:
      return 1.0;
    case Family::scaled_bernoulli:
      return p[1] != 0.0 ? std::abs(p[1]) : 1.0;
    case Family::uniform:
      return std::max(std::abs(p[0]), std::abs(p[1]));
    case Family::exponential:
      return 1.0 / p[0];  // nonnegative log-concave continuous: L = E[X]
    case Family::normal:
      // two-sided log-concave continuous: L = E|X| / ln 2
      return abs_moment(dist, 1) / std::numbers::ln2;
    case Family::poisson:
      return 1.0 + p[0];  // nonnegative integer log-concave: L = 1 + E[X]
    case Family::geometric:
      return 1.0 + 1.0 / p[0];
    case Family::binomial:
      return 1.0 + p[0] * p[1];
    case Family::finite_support: {
      double m = 0.0;
      for (const auto& [v, prob] : dist.atoms())
        if (prob > 0.0) m = std::max(m, std::abs(v));
      return m > 0.0 ? m : 1.0;
    }
  }
  throw ParameterError("unknown family");
}

MomentBoundReport check_moment_bounded(const DistributionSpec& dist, double L,
                                       int i_max) {
  require(L > 0.0, "check_moment_bounded: L must be > 0");
  require(i_max >= 1 && i_max <= kDefaultMaxMomentOrder,
          "check_moment_bounded: i_max out of range");
  MomentBoundReport report;
  report.L = L;
  report.i_max = i_max;
  double prev = 1.0;  // E|Z|^0
  double worst = 0.0;
  int worst_i = 1;
  for (int i = 1; i <= i_max; ++i) {
    const double cur = abs_moment(dist, i);
    const double denom = i * L * prev;
    const double ratio = denom > 0.0 ? cur / denom : (cur > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (ratio > worst) {
      worst = ratio;
      worst_i = i;
    }
    prev = cur;
  }
  report.worst_index = worst_i;
  report.worst_ratio = worst;
  report.holds = worst <= 1.0 + 1e-12;
  return report;
}

namespace {

double sample_poisson(double mean, RandomStream& stream) {
  // Additivity keeps the sequential inversion numerically safe: split large
  // means into chunks with e^{-chunk} well above underflow.
  double remaining = mean;
  double total = 0.0;
  while (remaining > 0.0) {
    const double chunk = std::min(remaining, 32.0);
    remaining -= chunk;
    const double u = stream.next_unit();
    double pmf = std::exp(-chunk);
    double cdf = pmf;
    double k = 0.0;
    while (u > cdf && k < 1e9) {
      k += 1.0;
      pmf *= chunk / k;
      cdf += pmf;
    }
    total += k;
  }
  return total;
}

}  // namespace

double sample(const DistributionSpec& dist, RandomStream& stream) {
  const auto& p = dist.params();
  switch (dist.family()) {
    case Family::bernoulli:
      return stream.next_unit() < p[0] ? 1.0 : 0.0;
    case Family::scaled_bernoulli:
      return stream.next_unit() < p[0] ? p[1] : 0.0;
    case Family::rademacher:
      return stream.next_unit() < 0.5 ? -1.0 : 1.0;
    case Family::uniform:
      return p[0] + (p[1] - p[0]) * stream.next_unit();
    case Family::exponential:
      return -std::log(stream.next_unit()) / p[0];
    case Family::normal: {
      const double u1 = stream.next_unit();
      const double u2 = stream.next_unit();
      const double z =
          std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
      return p[0] + p[1] * z;
    }
    case Family::poisson:
      return sample_poisson(p[0], stream);
    case Family::geometric: {
      if (p[0] >= 1.0) return 1.0;
      const double u = stream.next_unit();
      return std::max(1.0, std::ceil(std::log(u) / std::log1p(-p[0])));
    }
    case Family::binomial: {
      const int n = int(p[0]);
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        if (stream.next_unit() < p[1]) acc += 1.0;
      return acc;
    }
    case Family::finite_support: {
      const double u = stream.next_unit();
      double cum = 0.0;
      for (const auto& [v, prob] : dist.atoms()) {
        cum += prob;
        if (u < cum) return v;
      }
      return dist.atoms().back().first;
    }
  }
  throw ParameterError("unknown family");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::bernoulli: return "bernoulli";
    case Family::scaled_bernoulli: return "scaled_bernoulli";
    case Family::rademacher: return "rademacher";
    case Family::uniform: return "uniform";
    case Family::exponential: return "exponential";
    case Family::normal: return "normal";
    case Family::poisson: return "poisson";
    case Family::geometric: return "geometric";
    case Family::binomial: return "binomial";
    case Family::finite_support: return "finite_support";
  }
  return "unknown";
}

}  // namespace polytail::rv
