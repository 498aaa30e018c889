#include "polytail/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace polytail::smoothness {
namespace {

using poly::PoweredHyperedge;

// Cache of E|Y_v^{tau}| per (vertex, power).
class AbsMomentCache {
 public:
  explicit AbsMomentCache(std::span<const rv::DistributionSpec> dists,
                          std::uint32_t max_power)
      : dists_(dists), max_power_(max_power),
        cache_(dists.size() * (max_power + 1),
               std::numeric_limits<double>::quiet_NaN()) {}

  double get(std::uint32_t v, std::uint32_t power) {
    double& slot = cache_[v * (max_power_ + 1) + power];
    if (std::isnan(slot)) slot = rv::abs_moment(dists_[v], int(power));
    return slot;
  }

 private:
  std::span<const rv::DistributionSpec> dists_;
  std::uint32_t max_power_;
  std::vector<double> cache_;
};

// Accumulates, for every power-r sub-hyperedge h0 of `edge`, the extension
// mass |w| * prod over dropped vertices of E|Y^tau| into `acc`.
void accumulate_subedges(const PoweredHyperedge& edge, double abs_w,
                         std::uint32_t r, AbsMomentCache& moments,
                         std::map<PoweredHyperedge, double>& acc,
                         std::size_t& work, std::size_t cap) {
  const std::size_t m = edge.vertices.size();
  std::vector<std::uint32_t> kept_v, kept_p;
  // DFS over vertex positions: keep (exact power goes to h0) or drop
  // (contributes its absolute moment).
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t power_left,
                 double dropped_mass) -> void {
    if (power_left == 0) {
      double mass = dropped_mass;
      for (std::size_t i = pos; i < m; ++i)
        mass *= moments.get(edge.vertices[i], edge.powers[i]);
      if (++work > cap) throw BudgetExceeded("mu: sub-hyperedge budget exceeded");
      PoweredHyperedge h0;
      h0.vertices = kept_v;
      h0.powers = kept_p;
      acc[std::move(h0)] += abs_w * mass;
      return;
    }
    if (pos == m) return;
    // remaining total power must still be able to reach power_left
    std::uint32_t rest = 0;
    for (std::size_t i = pos; i < m; ++i) rest += edge.powers[i];
    if (rest < power_left) return;
    // keep this vertex in h0
    if (edge.powers[pos] <= power_left) {
      kept_v.push_back(edge.vertices[pos]);
      kept_p.push_back(edge.powers[pos]);
      self(self, pos + 1, power_left - edge.powers[pos], dropped_mass);
      kept_v.pop_back();
      kept_p.pop_back();
    }
    // drop it
    self(self, pos + 1, power_left,
         dropped_mass * moments.get(edge.vertices[pos], edge.powers[pos]));
  };
  rec(rec, 0, r, 1.0);
}

// std::map iterates in lexicographic key order, so keeping the first entry
// that strictly exceeds the running max yields the smallest witness among ties.
MuResult best_entry(const std::map<PoweredHyperedge, double>& acc) {
  MuResult result;
  for (const auto& [h0, value] : acc) {
    if (!result.witness || value > result.value) {
      result.value = value;
      result.witness = h0;
    }
  }
  if (!result.witness) result.value = 0.0;
  return result;
}

}  // namespace

MuResult mu(const poly::PoweredPolynomial& p,
            std::span<const rv::DistributionSpec> dists, std::uint32_t r,
            std::size_t cap) {
  if (dists.size() != p.n()) throw DimensionMismatch("mu: dists length != n");
  if (r > p.total_power()) throw ParameterError("mu: r must be <= q");
  AbsMomentCache moments(dists, p.max_power());
  std::map<PoweredHyperedge, double> acc;
  std::size_t work = 0;
  for (const auto& t : p.terms())
    accumulate_subedges(t.edge, std::abs(t.weight), r, moments, acc, work, cap);
  return best_entry(acc);
}

MuProfile mu_profile(const poly::PoweredPolynomial& p,
                     std::span<const rv::DistributionSpec> dists,
                     std::size_t cap) {
  MuProfile profile;
  profile.q = p.total_power();
  profile.values.resize(profile.q + 1, 0.0);
  profile.witnesses.resize(profile.q + 1);
  for (std::uint32_t r = 0; r <= profile.q; ++r) {
    MuResult res = mu(p, dists, r, cap);
    profile.values[r] = res.value;
    profile.witnesses[r] = std::move(res.witness);
  }
  return profile;
}

std::vector<double> combine_product_profiles(std::span<const double> mu_f,
                                             std::span<const double> mu_g) {
  const std::size_t qf = mu_f.size() - 1, qg = mu_g.size() - 1;
  std::vector<double> out(qf + qg + 1, 0.0);
  for (std::size_t i1 = 0; i1 <= qf; ++i1)
    for (std::size_t i2 = 0; i2 <= qg; ++i2)
      out[i1 + i2] = std::max(out[i1 + i2], mu_f[i1] * mu_g[i2]);
  return out;
}

}  // namespace polytail::smoothness
