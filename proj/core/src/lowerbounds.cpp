#include "polytail/lowerbounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "polytail/logspace.hpp"
#include "polytail/smoothness.hpp"

namespace polytail::lowerbounds {
namespace {

using poly::PoweredHyperedge;
using poly::PoweredPolynomial;
using poly::Term;

std::vector<double> complete_multilinear_profile(std::uint64_t m, std::uint32_t q,
                                                 double scale, double p) {
  // mu_i = scale * C(m-i, q-i) p^{q-i}
  std::vector<double> mu(q + 1);
  for (std::uint32_t i = 0; i <= q; ++i)
    mu[i] = scale * binom(double(m - i), double(q - i)) *
            std::pow(p, double(q - i));
  return mu;
}

}  // namespace

const char* case_name(CaseId id) {
  switch (id) {
    case CaseId::lb_one_small: return "lb_one_small";
    case CaseId::lb_one_large: return "lb_one_large";
    case CaseId::lb_two: return "lb_two";
    case CaseId::lifted: return "lifted";
  }
  return "unknown";
}

double TransformedBinomial::mean() const {
  return scale * binom(double(n), double(choose)) * std::pow(p, double(choose));
}

double LowerBoundInstance::exact_tail_log(std::size_t cap) const {
  // Support of the lift product, value -> log prob, as parallel vectors.
  std::vector<double> lift_values{1.0};
  std::vector<double> lift_logp{0.0};
  for (const auto& factor : lifts) {
    std::vector<double> values, logp;
    values.reserve(lift_values.size() * (factor.m + 1));
    logp.reserve(lift_values.size() * (factor.m + 1));
    for (std::size_t i = 0; i < lift_values.size(); ++i) {
      for (std::uint64_t b = 0; b <= factor.m; ++b) {
        values.push_back(lift_values[i] * (2.0 * double(b) / double(factor.m)));
        logp.push_back(lift_logp[i] +
                       log_binom_pmf(double(factor.m), double(b), 0.5));
      }
    }
    if (values.size() > cap)
      throw BudgetExceeded("exact_tail_log: lift support exceeds cap");
    lift_values = std::move(values);
    lift_logp = std::move(logp);
  }

  const double ef = base.mean();  // lift factors have mean exactly 1
  if ((base.n + 1) * lift_values.size() > cap)
    throw BudgetExceeded("exact_tail_log: product support exceeds cap");

  double acc = kNegInf;
  for (std::uint64_t s = 0; s <= base.n; ++s) {
    const double value =
        base.scale * binom(double(s), double(base.choose));
    const double log_ps = log_binom_pmf(double(base.n), double(s), base.p);
    if (log_ps == kNegInf) continue;
    for (std::size_t i = 0; i < lift_values.size(); ++i) {
      if (value * lift_values[i] - ef >= threshold)
        acc = log_add(acc, log_ps + lift_logp[i]);
    }
  }
  return acc;
}

std::pair<PoweredPolynomial, std::vector<rv::DistributionSpec>>
LowerBoundInstance::materialize(std::size_t term_cap) const {
  double terms = double(base_poly.terms().size());
  for (const auto& factor : lifts) terms *= double(factor.m);
  if (terms > double(term_cap))
    throw SizeLimit("materialize: product polynomial exceeds term cap");

  PoweredPolynomial result = base_poly;
  std::vector<rv::DistributionSpec> dists = base_dists;
  for (const auto& factor : lifts) {
    std::vector<Term> linear;
    for (std::uint64_t i = 0; i < factor.m; ++i)
      linear.push_back(Term{PoweredHyperedge({std::uint32_t(i)}, {1}),
                            2.0 / double(factor.m)});
    PoweredPolynomial g(std::uint32_t(factor.m), std::move(linear));
    result = poly::product(result, g);
    for (std::uint64_t i = 0; i < factor.m; ++i)
      dists.push_back(rv::DistributionSpec::bernoulli(0.5));
  }
  return {std::move(result), std::move(dists)};
}

LowerBoundInstance lb_one(std::uint32_t q, double epsilon, double lambda,
                          double mu_q_star) {
  if (q < 1) throw ParameterError("lb_one: need q >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ParameterError("lb_one: need 0 < epsilon <= 1");
  if (!(mu_q_star > 0.0) || !(lambda > 0.0))
    throw ParameterError("lb_one: need lambda, mu_q_star > 0");

  const double x = std::pow(lambda / mu_q_star, 1.0 / double(q));
  // The lemma sizes m for its large-deviation branch (lambda > mu_q_star);
  // the point-mass branch only needs m >= q+1, so floor at 4q.
  const std::uint64_t m =
      std::max<std::uint64_t>(4 * q, std::uint64_t(std::ceil(4.0 * q * x)));
  const double p = epsilon / double(m);

  LowerBoundInstance inst;
  inst.case_id = lambda > mu_q_star ? CaseId::lb_one_large : CaseId::lb_one_small;
  inst.q = q;
  inst.base_power = q;
  inst.epsilon = epsilon;
  inst.lambda = lambda;
  inst.base_poly =
      poly::complete_multilinear(std::uint32_t(m), q, mu_q_star);
  inst.base_dists.assign(m, rv::DistributionSpec::bernoulli(p));
  inst.base = TransformedBinomial{m, p, mu_q_star, q};
  inst.mu_exact = complete_multilinear_profile(m, q, mu_q_star, p);
  inst.mu_star.resize(q + 1);
  for (std::uint32_t j = 0; j <= q; ++j)
    inst.mu_star[j] = std::pow(epsilon, double(q - j)) * mu_q_star;

  if (lambda > mu_q_star) {
    // Pr[f - Ef >= lambda] >= e^{-2 eps} (eps / (4qx))^{4qx}
    inst.threshold = lambda;
    inst.log_certified_tail =
        -2.0 * epsilon + 4.0 * q * x * std::log(epsilon / (4.0 * q * x));
  } else {
    // Pr[f - Ef >= mu_q_star] >= e^{-2 eps} (eps/(q+1))^{q+1}
    inst.threshold = mu_q_star;
    inst.log_certified_tail =
        -2.0 * epsilon + (q + 1.0) * std::log(epsilon / (q + 1.0));
  }
  return inst;
}

LowerBoundInstance lb_two(std::uint32_t q, double mu_0_star, double mu_q_star,
                          double lambda, double epsilon) {
  if (q < 1) throw ParameterError("lb_two: need q >= 1");
  if (!(mu_q_star > 0.0)) throw ParameterError("lb_two: need mu_q_star > 0");
  if (mu_0_star < 27.0 * mu_q_star)
    throw ParameterError("lb_two: need mu_0_star >= 27 mu_q_star");
  if (!(lambda > 0.0 && lambda <= mu_0_star))
    throw ParameterError("lb_two: need 0 < lambda <= mu_0_star");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ParameterError("lb_two: need 0 < epsilon <= 1");

  const double ratio = mu_0_star / mu_q_star;
  const double p_cap = std::min(epsilon, 0.5);
  std::uint64_t n = 1;
  while (std::pow(ratio / double(n), 1.0 / double(q)) > p_cap) {
    n *= 2;
    if (n > (std::uint64_t{1} << 40))
      throw ParameterError("lb_two: block count overflow");
  }
  const double p = std::pow(ratio / double(n), 1.0 / double(q));

  LowerBoundInstance inst;
  inst.case_id = CaseId::lb_two;
  inst.q = q;
  inst.base_power = q;
  inst.epsilon = epsilon;
  inst.lambda = lambda;
  inst.threshold = lambda;

  std::vector<Term> terms;
  terms.reserve(n);
  for (std::uint64_t b = 0; b < n; ++b) {
    std::vector<std::uint32_t> verts(q);
    std::iota(verts.begin(), verts.end(), std::uint32_t(b * q));
    terms.push_back(Term{
        PoweredHyperedge(std::move(verts), std::vector<std::uint32_t>(q, 1)),
        mu_q_star});
  }
  inst.base_poly = PoweredPolynomial(std::uint32_t(n * q), std::move(terms));
  inst.base_dists.assign(n * q, rv::DistributionSpec::bernoulli(p));
  inst.base = TransformedBinomial{n, std::pow(p, double(q)), mu_q_star, 1};

  inst.mu_exact.resize(q + 1);
  for (std::uint32_t j = 0; j <= q; ++j)
    inst.mu_exact[j] = j == 0 ? mu_0_star
                              : mu_q_star * std::pow(p, double(q - j));
  inst.mu_star = inst.mu_exact;

  // Pr[f - Ef >= lambda] >= e^{-100} e^{-lambda^2/(mu_0* mu_q*)}
  inst.log_certified_tail = -100.0 - lambda * lambda / (mu_0_star * mu_q_star);
  return inst;
}

LowerBoundInstance lift_degree(const LowerBoundInstance& instance,
                               std::uint32_t q_prime, double epsilon) {
  if (q_prime <= instance.q)
    throw ParameterError("lift_degree: need q_prime > q");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ParameterError("lift_degree: need 0 < epsilon <= 1");

  double max_ratio = 0.0;
  for (double a : instance.mu_exact)
    for (double b : instance.mu_exact)
      if (b > 0.0) max_ratio = std::max(max_ratio, a / b);
  const std::uint64_t m = std::uint64_t(
      std::ceil(std::max(2.0 / epsilon, 2.0 * max_ratio)));

  LowerBoundInstance inst = instance;
  inst.case_id = CaseId::lifted;
  inst.q = q_prime;
  const std::uint32_t added = q_prime - instance.q;
  for (std::uint32_t j = 0; j < added; ++j) inst.lifts.push_back(LiftFactor{m});

  // Each factor has profile (1, 2/m); compose with the product rule.
  std::vector<double> factor_profile{1.0, 2.0 / double(m)};
  inst.mu_exact = instance.mu_exact;
  for (std::uint32_t j = 0; j < added; ++j)
    inst.mu_exact =
        smoothness::combine_product_profiles(inst.mu_exact, factor_profile);

  inst.mu_star.resize(q_prime + 1);
  for (std::uint32_t i = 0; i <= q_prime; ++i) {
    inst.mu_star[i] = i <= instance.q
                          ? instance.mu_star[i]
                          : epsilon * instance.mu_exact[instance.q];
  }
  inst.log_certified_tail =
      instance.log_certified_tail - double(added) * std::log(2.0);
  return inst;
}

std::pair<double, double> binom_tail_lb(double mu, double lambda,
                                        std::uint64_t n) {
  if (!(mu >= 27.0)) throw ParameterError("binom_tail_lb: need mu >= 27");
  if (!(lambda > 0.0 && lambda <= mu))
    throw ParameterError("binom_tail_lb: need 0 < lambda <= mu");
  if (double(n) < mu) throw ParameterError("binom_tail_lb: need n >= mu");
  const double p = mu / double(n);
  const std::uint64_t j0 = std::uint64_t(std::ceil(mu + lambda));
  const double lhs = log_binom_upper_tail(n, p, j0);
  const double rhs = -100.0 - lambda * lambda / mu;
  return {lhs, rhs};
}

LowerBoundInstance construct_thm_LB(std::uint32_t q,
                                    const std::vector<double>& mu_star,
                                    double lambda) {
  if (q < 1) throw ParameterError("construct_thm_LB: need q >= 1");
  if (mu_star.size() != q + 1)
    throw ParameterError("construct_thm_LB: mu_star must have q+1 entries");
  for (double v : mu_star)
    if (!(v > 0.0)) throw ParameterError("construct_thm_LB: mu_star > 0 required");
  if (!(lambda > 0.0)) throw ParameterError("construct_thm_LB: lambda > 0 required");

  double lo = mu_star[0], hi = mu_star[0];
  for (double v : mu_star) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double epsilon = lo / hi;

  // dominant index: minimizes min(lambda^2/(mu0* mui*), (lambda/mui*)^{1/i})
  std::uint32_t best_i = 1;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t i = 1; i <= q; ++i) {
    const double a = lambda * lambda / (mu_star[0] * mu_star[i]);
    const double b = std::pow(lambda / mu_star[i], 1.0 / double(i));
    const double v = std::min(a, b);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  const std::uint32_t i = best_i;
  const double quad = lambda * lambda / (mu_star[0] * mu_star[i]);
  const double root = std::pow(lambda / mu_star[i], 1.0 / double(i));

  LowerBoundInstance inst;
  if (lambda <= mu_star[i]) {
    // case one: C1 = 2^q e^2 ((q+1)/eps)^{q+1}
    inst = lb_one(i, epsilon, lambda, mu_star[i]);
    if (q > i) inst = lift_degree(inst, q, epsilon);
    inst.threshold = lambda;  // tail at lambda dominates the tail at mu_i*
    const double log_C1 = q * std::log(2.0) + 2.0 +
                          (q + 1.0) * std::log((q + 1.0) / epsilon);
    inst.log_certified_tail = -log_C1;
  } else if (27.0 * quad >= root) {
    // case two: 1/C2 * C4^{-min(root, quad)}
    inst = lb_one(i, epsilon, lambda, mu_star[i]);
    if (q > i) inst = lift_degree(inst, q, epsilon);
    const double log_C2 = 2.0 + q * std::log(2.0);
    const double log_C3 = 4.0 * std::log(lambda / mu_star[i]) +
                          4.0 * i * std::log(4.0 * i / epsilon);
    const double log_C4 = 27.0 * log_C3;
    inst.log_certified_tail = -log_C2 - std::min(root, quad) * log_C4;
  } else {
    // case three: 1/C5 * e^{-quad}, C5 = e^100 2^q
    inst = lb_two(i, mu_star[0], mu_star[i], lambda, epsilon);
    if (q > i) inst = lift_degree(inst, q, epsilon);
    const double log_C5 = 100.0 + q * std::log(2.0);
    inst.log_certified_tail = -log_C5 - quad;
  }

  // Clamp the advertised caps to the requested vector (the constructions'
  // own caps are at least as tight; see the mu-cap checks in the tests).
  inst.mu_star.resize(q + 1);
  for (std::uint32_t j = 0; j <= q; ++j) inst.mu_star[j] = mu_star[j];
  return inst;
}

}  // namespace polytail::lowerbounds
