#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/poly.hpp"
#include "polytail/rv.hpp"

namespace polytail::lowerbounds {

enum class CaseId {
  lb_one_small,  // lambda <= mu_i*: point-mass branch
  lb_one_large,  // lambda > mu_i*, quadratic regime dominated by the 1/i branch
  lb_two,        // binomial-in-disguise branch
  lifted,        // any of the above after degree lifting
};

const char* case_name(CaseId id);

// Value law of the base construction: f0 = scale * C(S, choose) with
// S ~ Binomial(n, p). choose = 1 encodes a plain scaled binomial.
struct TransformedBinomial {
  std::uint64_t n = 0;
  double p = 0.0;
  double scale = 1.0;
  std::uint32_t choose = 1;

  double mean() const;  // scale * C(n, choose) p^choose
};

// One degree-lifting factor (2/m) * Binomial(m, 1/2); mean exactly 1.
struct LiftFactor {
  std::uint64_t m = 0;
};

struct LowerBoundInstance {
  poly::PoweredPolynomial base_poly;
  std::vector<rv::DistributionSpec> base_dists;
  CaseId case_id = CaseId::lb_one_small;
  std::uint32_t q = 0;           // final total power
  std::uint32_t base_power = 0;  // power of the base construction
  double epsilon = 1.0;
  double lambda = 0.0;
  double threshold = 0.0;            // deviation at which the tail is certified
  std::vector<double> mu_star;       // advertised caps, indices 0..q
  std::vector<double> mu_exact;      // exact composed profile, indices 0..q
  TransformedBinomial base;
  std::vector<LiftFactor> lifts;
  double log_certified_tail = 0.0;   // log of the certified lower bound

  // Exact log Pr[f - Ef >= threshold] over the product law (base x lifts).
  double exact_tail_log(std::size_t cap = budget::kConvolutionSupport) const;

  // Full product polynomial plus per-vertex distributions (for cross-checks);
  // throws SizeLimit beyond term_cap.
  std::pair<poly::PoweredPolynomial, std::vector<rv::DistributionSpec>>
  materialize(std::size_t term_cap = budget::kPolyTerms) const;
};

// Lemma-style complete multilinear instance: f = mu_q_star * sum_{|I|=q} prod x_i
// over m = max(4q, ceil(4q (lambda/mu_q_star)^{1/q})) variables with
// P[X_i = 1] = epsilon/m. Certifies the large-deviation branch when
// lambda > mu_q_star, the point-mass branch otherwise.
LowerBoundInstance lb_one(std::uint32_t q, double epsilon, double lambda,
                          double mu_q_star);

// n independent blocks of q variables; f/mu_q_star ~ Binomial(n, p^q) with
// mean mu_0_star/mu_q_star. Requires mu_0_star >= 27 mu_q_star and
// 0 < lambda <= mu_0_star. n is the smallest power of two making
// p = (mu_0_star/(n mu_q_star))^{1/q} <= min(epsilon, 0.5).
LowerBoundInstance lb_two(std::uint32_t q, double mu_0_star, double mu_q_star,
                          double lambda, double epsilon);

// Multiplies by (q_prime - q) well-concentrated linear factors, preserving the
// mu caps and costing a factor 2^{-(q_prime-q)} in the certified tail.
LowerBoundInstance lift_degree(const LowerBoundInstance& instance,
                               std::uint32_t q_prime, double epsilon);

// Exact log tail of Binomial(n, mu/n) at >= mu + lambda, and the Lemma-style
// floor log(e^{-100 - lambda^2/mu}). Requires mu >= 27, 0 < lambda <= mu, n >= mu.
std::pair<double, double> binom_tail_lb(double mu, double lambda,
                                        std::uint64_t n);

// Case dispatch of the tightness theorem: picks the dominant index, builds the
// matching construction, lifts to power q, and attaches the case-specific
// certified expression.
LowerBoundInstance construct_thm_LB(std::uint32_t q,
                                    const std::vector<double>& mu_star,
                                    double lambda);

}  // namespace polytail::lowerbounds
