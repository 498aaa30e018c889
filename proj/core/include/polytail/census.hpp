#pragma once

#include <cstdint>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/poly.hpp"

namespace polytail::census {

// A labeled hypergraph: vertex set [l], an ordered sequence of k powered
// hyperedges, every vertex covered.
struct LabeledHypergraph {
  std::uint32_t l = 0;
  std::vector<poly::PoweredHyperedge> edges;
};

struct OrderingResult {
  std::vector<std::uint32_t> order;       // deletion order (edge indices)
  std::vector<std::uint32_t> last_power;  // delta_v per vertex
  std::vector<std::vector<std::uint32_t>> removed_per_step;  // V_s
  std::vector<std::uint32_t> nu;          // nu_t, t = 0..q
};

struct CensusRecord {
  std::uint32_t k = 0, l = 0, c = 0;
  std::vector<std::uint32_t> degree;       // d_v
  std::vector<std::uint32_t> total_power;  // D_v
  std::vector<std::uint32_t> last_power;   // delta_v under the computed ordering
  std::vector<std::uint32_t> nu;           // representative nu vector
  std::uint32_t delta_sum = 0;             // sum_t (q-t) nu_t = sum_v delta_v
  std::uint64_t count = 0;
};

struct CensusResult {
  std::uint32_t k = 0, l = 0, q = 0, eta = 0, gamma = 0;
  std::vector<LabeledHypergraph> graphs;
  std::vector<CensusRecord> records;  // grouped by (c, degree, D, delta)
};

// All ordered k-sequences of powered hyperedges over [l] (cardinality eta,
// total power q, max power <= gamma) covering every vertex with degree >= 2.
CensusResult enumerate_S2(std::uint32_t k, std::uint32_t l, std::uint32_t q,
                          std::uint32_t eta, std::uint32_t gamma,
                          std::size_t raw_cap = budget::kCensusRaw,
                          bool keep_graphs = true);

std::uint32_t component_count(const LabeledHypergraph& g);

// Component-preserving deletion ordering over the line graph (isolated vertex
// preferred, otherwise a DFS-tree leaf); guarantees nu_0 equals the number of
// connected components.
OrderingResult ordering_nu0(const LabeledHypergraph& g);

// (q-1) k_i - sum_{v in C_i} delta_v >= q - 2 for every connected component.
bool verify_ziq1(const LabeledHypergraph& g, const OrderingResult& ordering);

// |union over (c, D, delta) classes| <= C(q-1, eta-1)^k prod_v C(k, d_v),
// verified per degree vector on exact integers.
struct S0Check {
  std::vector<std::uint32_t> degree;
  std::uint64_t enumerated = 0;
  std::uint64_t bound = 0;
  bool holds = false;
};
std::vector<S0Check> check_S0_bound(const CensusResult& census);

// Smallest R0 satisfying count * prod_v D_v!/delta_v! <=
// R0^{qk} Gamma^{qk - l - sum delta} k^{qk - c(q-1) - sum(delta-1)} per record;
// returns the max over records (0 for an empty census).
double implied_maincount_constant(const CensusResult& census);
double implied_maincount_constant(const CensusRecord& record, std::uint32_t q,
                                  std::uint32_t gamma);

}  // namespace polytail::census
