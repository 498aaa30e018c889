#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/rv.hpp"

namespace polytail::poly {

// One monomial prod_v x_v^{power}: sorted distinct vertex ids with aligned
// strictly positive powers.
struct PoweredHyperedge {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> powers;

  PoweredHyperedge() = default;
  PoweredHyperedge(std::vector<std::uint32_t> verts,
                   std::vector<std::uint32_t> pows);

  std::uint32_t cardinality() const { return std::uint32_t(vertices.size()); }
  std::uint32_t total_power() const;           // q(h)
  std::uint32_t max_power() const;             // max_v tau_hv

  friend bool operator==(const PoweredHyperedge&, const PoweredHyperedge&) = default;
  friend auto operator<=>(const PoweredHyperedge&, const PoweredHyperedge&) = default;
};

struct Term {
  PoweredHyperedge edge;
  double weight = 0.0;
};

// f(x) = sum_h w_h prod_v x_v^{tau_hv}. Duplicate monomials merge at
// construction; immutable afterwards.
class PoweredPolynomial {
 public:
  PoweredPolynomial() = default;
  PoweredPolynomial(std::uint32_t n, std::vector<Term> terms);

  std::uint32_t n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::uint32_t total_power() const { return q_; }   // q = max_h q(h); 0 if empty
  std::uint32_t max_power() const { return gamma_; } // Gamma; 0 if empty
  bool multilinear() const { return gamma_ <= 1; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Term> terms_;
  std::uint32_t q_ = 0;
  std::uint32_t gamma_ = 0;
};

double evaluate(const PoweredPolynomial& poly, std::span<const double> assignment);

// E[f(Y)] for independent per-vertex distributions.
double expectation(const PoweredPolynomial& poly,
                   std::span<const rv::DistributionSpec> dists);

// Product over disjoint vertex sets: g's vertices are shifted by f.n().
PoweredPolynomial product(const PoweredPolynomial& f, const PoweredPolynomial& g);

// All C(n,q) multilinear monomials of cardinality q, each with weight `scale`.
PoweredPolynomial complete_multilinear(std::uint32_t n, std::uint32_t q,
                                       double scale);

// Permanent of an n x n matrix as a polynomial. General case: n^2 variables
// indexed i*n+j, one multilinear term per permutation. Symmetric case:
// variables indexed by unordered pairs (diagonal first, then upper triangle
// row-major), powers up to 2, permutations merged through the identification.
PoweredPolynomial permanent_poly(std::uint32_t n, bool symmetric);

// Variable index of matrix entry (i,j) in the symmetric permanent polynomial.
std::uint32_t symmetric_pair_index(std::uint32_t n, std::uint32_t i,
                                   std::uint32_t j);

// One variable per edge of K_n (index of {i<j} is i*n - i*(i+1)/2 + (j-i-1));
// one weight-1 multilinear term per simple q-cycle through vertex 0.
PoweredPolynomial cycles_poly(std::uint32_t n, std::uint32_t q,
                              std::size_t term_cap = budget::kPolyTerms);

std::uint32_t edge_index(std::uint32_t n, std::uint32_t i, std::uint32_t j);

// (q-1)! C(n-1, q-1) / 2: the number of simple q-cycles through a fixed vertex.
std::uint64_t cycles_through_vertex_count(std::uint32_t n, std::uint32_t q);

}  // namespace polytail::poly
