#include "polytail/census.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "polytail/logspace.hpp"

namespace polytail::census {
namespace {

using poly::PoweredHyperedge;

// Compositions of q into exactly eta parts, each in [1, gamma], lexicographic.
std::vector<std::vector<std::uint32_t>> power_vectors(std::uint32_t q,
                                                      std::uint32_t eta,
                                                      std::uint32_t gamma) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur(eta);
  auto rec = [&](auto&& self, std::uint32_t pos, std::uint32_t left) -> void {
    if (pos == eta) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const std::uint32_t remaining_slots = eta - pos - 1;
    for (std::uint32_t p = 1; p <= std::min(gamma, left); ++p) {
      if (left - p < remaining_slots || left - p > remaining_slots * gamma)
        continue;
      cur[pos] = p;
      self(self, pos + 1, left - p);
    }
  };
  if (eta >= 1 && q >= eta && q <= eta * gamma) rec(rec, 0, q);
  return out;
}

std::vector<std::vector<std::uint32_t>> vertex_subsets(std::uint32_t l,
                                                       std::uint32_t eta) {
  std::vector<std::vector<std::uint32_t>> out;
  if (eta > l) return out;
  std::vector<std::uint32_t> subset(eta);
  std::iota(subset.begin(), subset.end(), 0);
  for (;;) {
    out.push_back(subset);
    int i = int(eta) - 1;
    while (i >= 0 && subset[i] == l - eta + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (std::size_t j = i + 1; j < eta; ++j) subset[j] = subset[j - 1] + 1;
  }
  return out;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::uint32_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::uint32_t component_count(const LabeledHypergraph& g) {
  UnionFind uf(g.l);
  for (const auto& e : g.edges)
    for (std::size_t i = 1; i < e.vertices.size(); ++i)
      uf.unite(e.vertices[0], e.vertices[i]);
  std::uint32_t c = 0;
  for (std::uint32_t v = 0; v < g.l; ++v)
    if (uf.find(v) == v) ++c;
  return c;
}

OrderingResult ordering_nu0(const LabeledHypergraph& g) {
  const std::uint32_t k = std::uint32_t(g.edges.size());
  if (k == 0) throw ParameterError("ordering_nu0: empty hypergraph");
  const std::uint32_t q = g.edges[0].total_power();

  // Line-graph adjacency between edges sharing a vertex.
  std::vector<std::vector<bool>> adjacent(k, std::vector<bool>(k, false));
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j) {
      const auto& a = g.edges[i].vertices;
      const auto& b = g.edges[j].vertices;
      bool meet = false;
      for (std::size_t x = 0, y = 0; x < a.size() && y < b.size();) {
        if (a[x] == b[y]) { meet = true; break; }
        a[x] < b[y] ? ++x : ++y;
      }
      adjacent[i][j] = adjacent[j][i] = meet;
    }

  std::vector<bool> alive(k, true);
  std::vector<std::uint32_t> degree(g.l, 0);
  for (const auto& e : g.edges)
    for (auto v : e.vertices) ++degree[v];

  auto pick_next = [&]() -> std::uint32_t {
    // isolated line-graph vertex first
    for (std::uint32_t i = 0; i < k; ++i) {
      if (!alive[i]) continue;
      bool isolated = true;
      for (std::uint32_t j = 0; j < k && isolated; ++j)
        if (j != i && alive[j] && adjacent[i][j]) isolated = false;
      if (isolated) return i;
    }
    // otherwise the smallest DFS-tree leaf of the lowest-indexed component
    std::uint32_t root = k;
    for (std::uint32_t i = 0; i < k && root == k; ++i)
      if (alive[i]) root = i;
    std::vector<bool> visited(k, false);
    std::vector<std::uint32_t> n_children(k, 0);
    std::vector<std::uint32_t> stack{root};
    visited[root] = true;
    std::vector<std::uint32_t> parent(k, k);
    while (!stack.empty()) {
      const std::uint32_t u = stack.back();
      stack.pop_back();
      for (std::uint32_t w = 0; w < k; ++w) {
        if (w == u || !alive[w] || visited[w] || !adjacent[u][w]) continue;
        visited[w] = true;
        parent[w] = u;
        ++n_children[u];
        stack.push_back(w);
      }
    }
    for (std::uint32_t i = 0; i < k; ++i)
      if (alive[i] && visited[i] && n_children[i] == 0 && i != root) return i;
    return root;  // single-vertex component (handled by the isolated case)
  };

  OrderingResult res;
  res.last_power.assign(g.l, 0);
  res.nu.assign(q + 1, 0);
  for (std::uint32_t step = 0; step < k; ++step) {
    const std::uint32_t e = pick_next();
    alive[e] = false;
    std::vector<std::uint32_t> removed;
    std::uint32_t shed = 0;
    const auto& edge = g.edges[e];
    for (std::size_t i = 0; i < edge.vertices.size(); ++i) {
      const auto v = edge.vertices[i];
      if (degree[v] == 1) {
        removed.push_back(v);
        res.last_power[v] = edge.powers[i];
        shed += edge.powers[i];
      }
      --degree[v];
    }
    res.order.push_back(e);
    res.removed_per_step.push_back(std::move(removed));
    ++res.nu[q - shed];
  }
  return res;
}

bool verify_ziq1(const LabeledHypergraph& g, const OrderingResult& ordering) {
  if (g.edges.empty()) return true;
  const std::int64_t q = g.edges[0].total_power();
  UnionFind uf(g.l);
  for (const auto& e : g.edges)
    for (std::size_t i = 1; i < e.vertices.size(); ++i)
      uf.unite(e.vertices[0], e.vertices[i]);
  std::map<std::uint32_t, std::pair<std::int64_t, std::int64_t>> comp;  // root -> (k_i, sum delta)
  for (const auto& e : g.edges) comp[uf.find(e.vertices[0])].first += 1;
  for (std::uint32_t v = 0; v < g.l; ++v)
    comp[uf.find(v)].second += ordering.last_power[v];
  for (const auto& [root, kc] : comp) {
    if ((q - 1) * kc.first - kc.second < q - 2) return false;
  }
  return true;
}

CensusResult enumerate_S2(std::uint32_t k, std::uint32_t l, std::uint32_t q,
                          std::uint32_t eta, std::uint32_t gamma,
                          std::size_t raw_cap, bool keep_graphs) {
  if (k == 0 || l == 0) throw ParameterError("enumerate_S2: need k, l >= 1");
  if (eta == 0 || eta > q) throw ParameterError("enumerate_S2: need 1 <= eta <= q");
  if (gamma == 0) throw ParameterError("enumerate_S2: need gamma >= 1");

  CensusResult result;
  result.k = k;
  result.l = l;
  result.q = q;
  result.eta = eta;
  result.gamma = gamma;

  const auto subsets = vertex_subsets(l, eta);
  const auto powers = power_vectors(q, eta, gamma);
  std::vector<PoweredHyperedge> domain;
  for (const auto& s : subsets)
    for (const auto& p : powers) domain.push_back(PoweredHyperedge(s, p));
  if (domain.empty()) return result;

  double raw = std::pow(double(domain.size()), double(k));
  if (raw > double(raw_cap))
    throw BudgetExceeded("enumerate_S2: raw sequence budget exceeded");

  using Key = std::tuple<std::uint32_t, std::vector<std::uint32_t>,
                         std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  std::map<Key, CensusRecord> records;

  std::vector<std::size_t> choice(k, 0);
  std::vector<std::uint32_t> degree(l), total_power(l);
  for (;;) {
    // degrees and total powers for this sequence
    std::fill(degree.begin(), degree.end(), 0);
    std::fill(total_power.begin(), total_power.end(), 0);
    for (std::uint32_t s = 0; s < k; ++s) {
      const auto& e = domain[choice[s]];
      for (std::size_t i = 0; i < e.vertices.size(); ++i) {
        ++degree[e.vertices[i]];
        total_power[e.vertices[i]] += e.powers[i];
      }
    }
    bool feasible = true;
    for (std::uint32_t v = 0; v < l && feasible; ++v)
      feasible = degree[v] >= 2;
    if (feasible) {
      LabeledHypergraph g;
      g.l = l;
      for (std::uint32_t s = 0; s < k; ++s) g.edges.push_back(domain[choice[s]]);
      const std::uint32_t c = component_count(g);
      const auto ordering = ordering_nu0(g);
      Key key{c, degree, total_power, ordering.last_power};
      auto it = records.find(key);
      if (it == records.end()) {
        CensusRecord rec;
        rec.k = k;
        rec.l = l;
        rec.c = c;
        rec.degree = degree;
        rec.total_power = total_power;
        rec.last_power = ordering.last_power;
        rec.nu = ordering.nu;
        rec.delta_sum = std::accumulate(ordering.last_power.begin(),
                                        ordering.last_power.end(), 0u);
        rec.count = 1;
        records.emplace(std::move(key), std::move(rec));
      } else {
        ++it->second.count;
      }
      if (keep_graphs) result.graphs.push_back(std::move(g));
    }
    // next sequence
    std::size_t pos = 0;
    while (pos < k && ++choice[pos] == domain.size()) choice[pos++] = 0;
    if (pos == k) break;
  }

  for (auto& [key, rec] : records) result.records.push_back(std::move(rec));
  return result;
}

std::vector<S0Check> check_S0_bound(const CensusResult& census) {
  // Group enumerated graphs by degree vector.
  std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
  for (const auto& rec : census.records) counts[rec.degree] += rec.count;

  std::vector<S0Check> checks;
  for (const auto& [deg, count] : counts) {
    S0Check chk;
    chk.degree = deg;
    chk.enumerated = count;
    std::uint64_t bound = 1;
    const std::uint64_t per_edge = binom_u64(census.q - 1, census.eta - 1);
    for (std::uint32_t i = 0; i < census.k; ++i) bound *= per_edge;
    for (auto d : deg) bound *= binom_u64(census.k, d);
    chk.bound = bound;
    chk.holds = count <= bound;
    checks.push_back(std::move(chk));
  }
  return checks;
}

double implied_maincount_constant(const CensusRecord& rec, std::uint32_t q,
                                  std::uint32_t gamma) {
  const double qk = double(q) * double(rec.k);
  double log_lhs = std::log(double(rec.count));
  for (std::size_t v = 0; v < rec.total_power.size(); ++v)
    log_lhs += log_factorial(double(rec.total_power[v])) -
               log_factorial(double(rec.last_power[v]));
  const double sum_delta = double(rec.delta_sum);
  const double gamma_expo = qk - double(rec.l) - sum_delta;
  const double k_expo =
      qk - double(rec.c) * (double(q) - 1.0) - (sum_delta - double(rec.l));
  const double log_rest =
      gamma_expo * std::log(double(gamma)) + k_expo * std::log(double(rec.k));
  return std::exp((log_lhs - log_rest) / qk);
}

double implied_maincount_constant(const CensusResult& census) {
  double best = 0.0;
  for (const auto& rec : census.records)
    best = std::max(best,
                    implied_maincount_constant(rec, census.q, census.gamma));
  return best;
}

}  // namespace polytail::census
