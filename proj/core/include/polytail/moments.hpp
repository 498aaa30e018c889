#pragma once

#include <span>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/poly.hpp"
#include "polytail/rv.hpp"
#include "polytail/smoothness.hpp"

namespace polytail::moments {

// One sign/cardinality/power-homogeneous polynomial over the centered
// variables X_{v,tau} = Y_v^tau - E[Y_v^tau]. A hyperedge (v, tau) denotes a
// single factor X_{v,tau}; it is not re-expanded as a power of Y_v.
struct CenteredComponent {
  poly::PoweredPolynomial poly;
  std::uint32_t cardinality = 0;  // eta, uniform across terms
  std::uint32_t total_power = 0;  // q_i, uniform across terms
  int sign = +1;                  // weight sign, uniform across terms
};

struct CenteredDecomposition {
  double constant = 0.0;  // E[f(Y)]
  std::vector<CenteredComponent> components;
};

// f(Y) = E[f] + sum_i g_i(X) with the monomials of f regrouped over centered
// variables by (cardinality, power, sign). At most 2q^2 components.
CenteredDecomposition center(const poly::PoweredPolynomial& poly,
                             std::span<const rv::DistributionSpec> dists,
                             std::size_t cap = budget::kCenterSubedges);

// Evaluates one centered component at a concrete assignment y of the original
// variables, substituting y_v^tau - E[Y_v^tau] per factor.
double evaluate_centered(const CenteredComponent& component,
                         std::span<const double> y,
                         std::span<const rv::DistributionSpec> dists);

enum class ExpansionPath {
  profile_collapse,  // associative accumulation of per-vertex power profiles
  naive,             // direct recursion over k-tuples of terms
};

// Exact E[f(Y)^k] by expanding f^k and factoring through independence.
double exact_moment_expansion(const poly::PoweredPolynomial& poly,
                              std::span<const rv::DistributionSpec> dists,
                              int k,
                              ExpansionPath path = ExpansionPath::profile_collapse,
                              std::size_t cap = budget::kExpansionProfiles);

// Exact E|f - Ef|^k for even k via the binomial expansion of (f - Ef)^k with
// exact raw moments E[f^j].
double exact_central_moment(const poly::PoweredPolynomial& poly,
                            std::span<const rv::DistributionSpec> dists, int k,
                            ExpansionPath path = ExpansionPath::profile_collapse,
                            std::size_t cap = budget::kExpansionProfiles);

struct OracleResult {
  double moment = 0.0;          // E[f^k]
  double central_moment = 0.0;  // E|f - Ef|^k
  double tail_two_sided = 0.0;  // Pr[|f - Ef| >= lambda]
  double mean = 0.0;            // E[f]
};

// Ground truth by full support enumeration; requires every distribution to
// have finite support and prod |support| <= cap.
OracleResult enumerate_oracle(const poly::PoweredPolynomial& poly,
                              std::span<const rv::DistributionSpec> dists,
                              int k, double lambda,
                              std::size_t cap = budget::kOracleOutcomes);

enum class MomentLemmaVariant {
  general,        // R3^q in every term
  gamma_variant,  // R3^t per term, with R3 = C^{Gamma+1}
};

// Even-moment bound, log-space:
//   max{ max_t (sqrt(k R Gamma^t L^t mu_t mu_0))^k, max_t (k^t R Gamma^t L^t mu_t)^k }
// with R = R3^q (general) or R = R3(C)^t per term (gamma_variant,
// R3 = C^{Gamma+1}). `constant` is R3 for general, C for gamma_variant.
double moment_lemma_bound_log(std::uint32_t q, std::uint32_t gamma, double L,
                              const smoothness::MuProfile& mu, int k,
                              MomentLemmaVariant variant, double constant);

struct MarkovResult {
  int k_star = 0;
  double log_bound = 0.0;  // log Pr bound, capped at 0
  double K = 0.0;
};

// Markov step: K = min{ min_t lambda^2/(e^2 R Gamma^t L^t mu_t mu_0),
//                       min_t (lambda/(e R Gamma^t L^t mu_t))^{1/t} },
// k* = the even integer in (K-2, K] (k* = 2 with the bound capped at 1 when
// K <= 2), log_bound = min(0, moment bound at k* minus k* log lambda).
MarkovResult markov_optimize(std::uint32_t q, std::uint32_t gamma, double L,
                             const smoothness::MuProfile& mu, double lambda,
                             MomentLemmaVariant variant, double constant);

}  // namespace polytail::moments
