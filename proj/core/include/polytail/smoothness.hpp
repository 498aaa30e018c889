#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/poly.hpp"
#include "polytail/rv.hpp"

namespace polytail::smoothness {

// mu_r for r = 0..q with the argmax partial hyperedge per r (lexicographically
// smallest canonical witness among ties; absent when no sub-hyperedge of total
// power r exists in any term).
struct MuProfile {
  std::vector<double> values;
  std::vector<std::optional<poly::PoweredHyperedge>> witnesses;
  std::uint32_t q = 0;

  double at(std::uint32_t r) const { return values.at(r); }
};

struct MuResult {
  double value = 0.0;
  std::optional<poly::PoweredHyperedge> witness;
};

// mu_r = max over partial hyperedges h0 with q(h0)=r of
//   sum_{h extends h0} |w_h| prod_{v in h \ h0} E|Y_v^{tau_hv}|,
// where "extends" requires vertex containment and exact power equality on h0.
// Only sub-hyperedges of existing terms are enumerated; any other h0 has an
// empty extension set under exact power matching.
MuResult mu(const poly::PoweredPolynomial& poly,
            std::span<const rv::DistributionSpec> dists, std::uint32_t r,
            std::size_t cap = budget::kMuSubedges);

MuProfile mu_profile(const poly::PoweredPolynomial& poly,
                     std::span<const rv::DistributionSpec> dists,
                     std::size_t cap = budget::kMuSubedges);

// Lemma-style composition for product polynomials:
// mu_i(f*g) = max over i1+i2=i of mu_{i1}(f) * mu_{i2}(g).
std::vector<double> combine_product_profiles(std::span<const double> mu_f,
                                             std::span<const double> mu_g);

}  // namespace polytail::smoothness
