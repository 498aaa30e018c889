#include "polytail/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "polytail/logspace.hpp"

namespace polytail::poly {

PoweredHyperedge::PoweredHyperedge(std::vector<std::uint32_t> verts,
                                   std::vector<std::uint32_t> pows)
    : vertices(std::move(verts)), powers(std::move(pows)) {
  if (vertices.size() != powers.size())
    throw ParameterError("hyperedge: vertices/powers length mismatch");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (powers[i] == 0) throw ParameterError("hyperedge: powers must be >= 1");
    if (i > 0 && vertices[i] <= vertices[i - 1])
      throw ParameterError("hyperedge: vertices must be strictly increasing");
  }
}

std::uint32_t PoweredHyperedge::total_power() const {
  return std::accumulate(powers.begin(), powers.end(), std::uint32_t{0});
}

std::uint32_t PoweredHyperedge::max_power() const {
  std::uint32_t m = 0;
  for (auto p : powers) m = std::max(m, p);
  return m;
}

PoweredPolynomial::PoweredPolynomial(std::uint32_t n, std::vector<Term> terms)
    : n_(n) {
  std::map<PoweredHyperedge, double> merged;
  for (auto& t : terms) {
    if (!t.edge.vertices.empty() && t.edge.vertices.back() >= n)
      throw ParameterError("polynomial: vertex id out of range");
    merged[t.edge] += t.weight;
  }
  terms_.reserve(merged.size());
  for (auto& [edge, w] : merged) {
    if (w == 0.0) continue;
    q_ = std::max(q_, edge.total_power());
    gamma_ = std::max(gamma_, edge.max_power());
    terms_.push_back(Term{edge, w});
  }
}

double evaluate(const PoweredPolynomial& poly, std::span<const double> assignment) {
  if (assignment.size() != poly.n())
    throw DimensionMismatch("evaluate: assignment length != n");
  double acc = 0.0;
  for (const auto& t : poly.terms()) {
    double prod = t.weight;
    for (std::size_t i = 0; i < t.edge.vertices.size(); ++i) {
      const double x = assignment[t.edge.vertices[i]];
      for (std::uint32_t k = 0; k < t.edge.powers[i]; ++k) prod *= x;
    }
    acc += prod;
  }
  return acc;
}

double expectation(const PoweredPolynomial& poly,
                   std::span<const rv::DistributionSpec> dists) {
  if (dists.size() != poly.n())
    throw DimensionMismatch("expectation: dists length != n");
  double acc = 0.0;
  for (const auto& t : poly.terms()) {
    double prod = t.weight;
    for (std::size_t i = 0; i < t.edge.vertices.size(); ++i)
      prod *= rv::raw_moment(dists[t.edge.vertices[i]], int(t.edge.powers[i]));
    acc += prod;
  }
  return acc;
}

PoweredPolynomial product(const PoweredPolynomial& f, const PoweredPolynomial& g) {
  std::vector<Term> terms;
  terms.reserve(f.terms().size() * g.terms().size());
  for (const auto& tf : f.terms()) {
    for (const auto& tg : g.terms()) {
      PoweredHyperedge edge = tf.edge;
      for (std::size_t i = 0; i < tg.edge.vertices.size(); ++i) {
        edge.vertices.push_back(tg.edge.vertices[i] + f.n());
        edge.powers.push_back(tg.edge.powers[i]);
      }
      terms.push_back(Term{std::move(edge), tf.weight * tg.weight});
    }
  }
  return PoweredPolynomial(f.n() + g.n(), std::move(terms));
}

PoweredPolynomial complete_multilinear(std::uint32_t n, std::uint32_t q,
                                       double scale) {
  if (q < 1 || q > n) throw ParameterError("complete_multilinear: need 1 <= q <= n");
  std::vector<Term> terms;
  std::vector<std::uint32_t> subset(q);
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    terms.push_back(
        Term{PoweredHyperedge(subset, std::vector<std::uint32_t>(q, 1)), scale});
    // next q-subset of [n] in lexicographic order
    int i = int(q) - 1;
    while (i >= 0 && subset[i] == n - q + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (std::size_t j = i + 1; j < q; ++j) subset[j] = subset[j - 1] + 1;
  }
  return PoweredPolynomial(n, std::move(terms));
}

std::uint32_t symmetric_pair_index(std::uint32_t n, std::uint32_t i,
                                   std::uint32_t j) {
  if (i > j) std::swap(i, j);
  if (i == j) return i;  // diagonal variables occupy [0, n)
  // upper-triangle (i<j) stored row-major after the diagonal block
  return n + i * n - i * (i + 1) / 2 + (j - i - 1);
}

PoweredPolynomial permanent_poly(std::uint32_t n, bool symmetric) {
  if (n == 0 || n > 8) throw SizeLimit("permanent_poly: need 1 <= n <= 8");
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    if (symmetric) {
      std::map<std::uint32_t, std::uint32_t> powers;  // variable -> power
      for (std::uint32_t i = 0; i < n; ++i)
        powers[symmetric_pair_index(n, i, perm[i])] += 1;
      std::vector<std::uint32_t> verts, pows;
      for (auto [v, p] : powers) {
        verts.push_back(v);
        pows.push_back(p);
      }
      terms.push_back(Term{PoweredHyperedge(std::move(verts), std::move(pows)), 1.0});
    } else {
      std::vector<std::uint32_t> verts(n);
      for (std::uint32_t i = 0; i < n; ++i) verts[i] = i * n + perm[i];
      std::sort(verts.begin(), verts.end());
      terms.push_back(Term{
          PoweredHyperedge(std::move(verts), std::vector<std::uint32_t>(n, 1)), 1.0});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  const std::uint32_t n_vars = symmetric ? n + n * (n - 1) / 2 : n * n;
  return PoweredPolynomial(n_vars, std::move(terms));
}

std::uint32_t edge_index(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::uint64_t cycles_through_vertex_count(std::uint32_t n, std::uint32_t q) {
  // choose the q-1 companions, order them, halve for direction
  std::uint64_t count = binom_u64(n - 1, q - 1);
  for (std::uint32_t i = 2; i < q; ++i) count *= i;  // (q-1)!
  return count / 2;
}

PoweredPolynomial cycles_poly(std::uint32_t n, std::uint32_t q,
                              std::size_t term_cap) {
  if (q < 3 || q > n) throw ParameterError("cycles_poly: need 3 <= q <= n");
  if (cycles_through_vertex_count(n, q) > term_cap)
    throw SizeLimit("cycles_poly: term count exceeds cap");

  std::vector<Term> terms;
  // Enumerate vertex sequences 0, v_1, ..., v_{q-1}, 0 with distinct v_i >= 1;
  // requiring v_1 < v_{q-1} picks one of the two traversal directions.
  std::vector<std::uint32_t> path;
  path.reserve(q - 1);
  std::vector<bool> used(n, false);
  auto emit = [&] {
    if (path.front() > path.back()) return;
    std::vector<std::uint32_t> verts;
    verts.reserve(q);
    verts.push_back(edge_index(n, 0, path.front()));
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      verts.push_back(edge_index(n, path[i], path[i + 1]));
    verts.push_back(edge_index(n, path.back(), 0));
    std::sort(verts.begin(), verts.end());
    terms.push_back(Term{
        PoweredHyperedge(std::move(verts), std::vector<std::uint32_t>(q, 1)), 1.0});
  };
  auto rec = [&](auto&& self) -> void {
    if (path.size() == q - 1) {
      emit();
      return;
    }
    for (std::uint32_t v = 1; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      self(self);
      path.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return PoweredPolynomial(n * (n - 1) / 2, std::move(terms));
}

}  // namespace polytail::poly
