#include "polytail/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "polytail/logspace.hpp"

namespace polytail::moments {
namespace {

using poly::PoweredHyperedge;
using poly::PoweredPolynomial;
using poly::Term;

double pow_int(double x, std::uint32_t e) {
  double r = 1.0;
  for (std::uint32_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

CenteredDecomposition center(const PoweredPolynomial& p,
                             std::span<const rv::DistributionSpec> dists,
                             std::size_t cap) {
  if (dists.size() != p.n()) throw DimensionMismatch("center: dists length != n");

  std::map<PoweredHyperedge, double> weights;  // h' -> w'_{h'}
  std::size_t work = 0;
  for (const auto& t : p.terms()) {
    const auto& e = t.edge;
    const std::size_t m = e.vertices.size();
    if (m >= 8 * sizeof(std::size_t))
      throw BudgetExceeded("center: hyperedge cardinality too large");
    const std::size_t subsets = std::size_t{1} << m;
    if ((work += subsets) > cap)
      throw BudgetExceeded("center: sub-hyperedge budget exceeded");
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      PoweredHyperedge kept;
      double coef = t.weight;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask & (std::size_t{1} << i)) {
          kept.vertices.push_back(e.vertices[i]);
          kept.powers.push_back(e.powers[i]);
        } else {
          coef *= rv::raw_moment(dists[e.vertices[i]], int(e.powers[i]));
        }
      }
      weights[std::move(kept)] += coef;
    }
  }

  CenteredDecomposition out;
  // Group by (cardinality, total power, sign); the empty hyperedge is E[f].
  std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::vector<Term>> groups;
  for (auto& [edge, w] : weights) {
    if (edge.vertices.empty()) {
      out.constant = w;
      continue;
    }
    if (w == 0.0) continue;
    const int sign = w > 0.0 ? +1 : -1;
    groups[{edge.cardinality(), edge.total_power(), sign}].push_back(Term{edge, w});
  }
  for (auto& [key, terms] : groups) {
    CenteredComponent comp;
    comp.cardinality = std::get<0>(key);
    comp.total_power = std::get<1>(key);
    comp.sign = std::get<2>(key);
    comp.poly = PoweredPolynomial(p.n(), std::move(terms));
    out.components.push_back(std::move(comp));
  }
  return out;
}

double evaluate_centered(const CenteredComponent& component,
                         std::span<const double> y,
                         std::span<const rv::DistributionSpec> dists) {
  if (y.size() != component.poly.n() || dists.size() != component.poly.n())
    throw DimensionMismatch("evaluate_centered: length mismatch");
  double acc = 0.0;
  for (const auto& t : component.poly.terms()) {
    double prod = t.weight;
    for (std::size_t i = 0; i < t.edge.vertices.size(); ++i) {
      const auto v = t.edge.vertices[i];
      const auto tau = t.edge.powers[i];
      prod *= pow_int(y[v], tau) - rv::raw_moment(dists[v], int(tau));
    }
    acc += prod;
  }
  return acc;
}

namespace {

using Profile = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

Profile merge_profile(const Profile& base, const PoweredHyperedge& e) {
  Profile out;
  out.reserve(base.size() + e.vertices.size());
  std::size_t i = 0, j = 0;
  while (i < base.size() || j < e.vertices.size()) {
    if (j == e.vertices.size() ||
        (i < base.size() && base[i].first < e.vertices[j])) {
      out.push_back(base[i++]);
    } else if (i == base.size() || e.vertices[j] < base[i].first) {
      out.emplace_back(e.vertices[j], e.powers[j]);
      ++j;
    } else {
      out.emplace_back(base[i].first, base[i].second + e.powers[j]);
      ++i;
      ++j;
    }
  }
  return out;
}

double expansion_profile_collapse(const PoweredPolynomial& p,
                                  std::span<const rv::DistributionSpec> dists,
                                  int k, std::size_t cap) {
  std::map<Profile, double> current;
  current[{}] = 1.0;
  for (int step = 0; step < k; ++step) {
    std::map<Profile, double> next;
    for (const auto& [profile, coef] : current) {
      for (const auto& t : p.terms()) {
        next[merge_profile(profile, t.edge)] += coef * t.weight;
        if (next.size() > cap)
          throw BudgetExceeded("exact_moment_expansion: profile budget exceeded");
      }
    }
    current = std::move(next);
  }
  long double acc = 0.0L;
  for (const auto& [profile, coef] : current) {
    long double prod = coef;
    for (const auto& [v, power] : profile)
      prod *= rv::raw_moment(dists[v], int(power));
    acc += prod;
  }
  return double(acc);
}

double expansion_naive(const PoweredPolynomial& p,
                       std::span<const rv::DistributionSpec> dists, int k,
                       std::size_t cap) {
  const auto& terms = p.terms();
  double leaves = 1.0;
  for (int i = 0; i < k; ++i) leaves *= double(terms.size());
  if (leaves > double(cap))
    throw BudgetExceeded("exact_moment_expansion: naive product budget exceeded");

  long double acc = 0.0L;
  Profile profile;
  auto rec = [&](auto&& self, int depth, double coef) -> void {
    if (depth == k) {
      long double prod = coef;
      for (const auto& [v, power] : profile)
        prod *= rv::raw_moment(dists[v], int(power));
      acc += prod;
      return;
    }
    for (const auto& t : terms) {
      Profile saved = profile;
      profile = merge_profile(profile, t.edge);
      self(self, depth + 1, coef * t.weight);
      profile = std::move(saved);
    }
  };
  rec(rec, 0, 1.0);
  return double(acc);
}

}  // namespace

double exact_moment_expansion(const PoweredPolynomial& p,
                              std::span<const rv::DistributionSpec> dists,
                              int k, ExpansionPath path, std::size_t cap) {
  if (dists.size() != p.n())
    throw DimensionMismatch("exact_moment_expansion: dists length != n");
  if (k < 0) throw ParameterError("exact_moment_expansion: k must be >= 0");
  if (k == 0) return 1.0;
  if (p.terms().empty()) return 0.0;
  return path == ExpansionPath::profile_collapse
             ? expansion_profile_collapse(p, dists, k, cap)
             : expansion_naive(p, dists, k, cap);
}

double exact_central_moment(const PoweredPolynomial& p,
                            std::span<const rv::DistributionSpec> dists, int k,
                            ExpansionPath path, std::size_t cap) {
  if (k < 2 || k % 2 != 0)
    throw ParameterError("exact_central_moment: k must be even and >= 2");
  const double mean = poly::expectation(p, dists);
  // (f - Ef)^k expanded binomially; |.| drops since k is even.
  long double acc = 0.0L;
  for (int j = 0; j <= k; ++j) {
    const double ef_j = j == 0 ? 1.0 : exact_moment_expansion(p, dists, j, path, cap);
    acc += (long double)(binom(k, j)) * ef_j * pow_int(-mean, std::uint32_t(k - j));
  }
  return std::max(0.0, double(acc));
}

OracleResult enumerate_oracle(const PoweredPolynomial& p,
                              std::span<const rv::DistributionSpec> dists,
                              int k, double lambda, std::size_t cap) {
  if (dists.size() != p.n())
    throw DimensionMismatch("enumerate_oracle: dists length != n");

  // Vertices absent from every term marginalize out.
  std::vector<bool> used(p.n(), false);
  for (const auto& t : p.terms())
    for (auto v : t.edge.vertices) used[v] = true;
  std::vector<std::uint32_t> active;
  for (std::uint32_t v = 0; v < p.n(); ++v)
    if (used[v]) active.push_back(v);

  std::vector<std::vector<std::pair<double, double>>> atoms(active.size());
  double outcomes = 1.0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (!dists[active[i]].has_finite_support())
      throw NonFiniteSupport("enumerate_oracle: needs finite-support variables");
    atoms[i] = dists[active[i]].support_atoms();
    outcomes *= double(atoms[i].size());
    if (outcomes > double(cap))
      throw BudgetExceeded("enumerate_oracle: outcome budget exceeded");
  }

  std::vector<double> assignment(p.n(), 0.0);
  std::vector<std::size_t> idx(active.size(), 0);
  auto for_each_outcome = [&](auto&& body) {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      long double prob = 1.0L;
      for (std::size_t i = 0; i < active.size(); ++i) {
        assignment[active[i]] = atoms[i][idx[i]].first;
        prob *= atoms[i][idx[i]].second;
      }
      body(poly::evaluate(p, assignment), prob);
      std::size_t pos = 0;
      while (pos < active.size() && ++idx[pos] == atoms[pos].size())
        idx[pos++] = 0;
      if (pos == active.size()) break;
    }
  };

  long double mean = 0.0L;
  for_each_outcome([&](double value, long double prob) { mean += prob * value; });

  OracleResult res;
  res.mean = double(mean);
  long double moment = 0.0L, central = 0.0L, tail = 0.0L;
  for_each_outcome([&](double value, long double prob) {
    long double vk = 1.0L, ck = 1.0L;
    const long double dev = std::fabs((long double)value - mean);
    for (int i = 0; i < k; ++i) {
      vk *= value;
      ck *= dev;
    }
    moment += prob * vk;
    central += prob * ck;
    if (dev >= (long double)lambda) tail += prob;
  });
  res.moment = double(moment);
  res.central_moment = double(central);
  res.tail_two_sided = double(tail);
  return res;
}

namespace {

double log_r_factor(std::uint32_t q, std::uint32_t gamma, std::uint32_t t,
                    MomentLemmaVariant variant, double constant) {
  if (constant <= 0.0) throw ParameterError("moment lemma: constant must be > 0");
  if (variant == MomentLemmaVariant::general) return q * std::log(constant);
  // gamma variant: R3 = C^{Gamma+1}, applied as R3^t
  return double(t) * (gamma + 1.0) * std::log(constant);
}

}  // namespace

double moment_lemma_bound_log(std::uint32_t q, std::uint32_t gamma, double L,
                              const smoothness::MuProfile& mu, int k,
                              MomentLemmaVariant variant, double constant) {
  if (k < 2 || k % 2 != 0)
    throw ParameterError("moment_lemma_bound_log: k must be even and >= 2");
  if (L <= 0.0) throw ParameterError("moment_lemma_bound_log: L must be > 0");
  const double log_mu0 = mu.values.at(0) > 0.0 ? std::log(mu.values[0]) : kNegInf;
  const double log_gamma = gamma > 0 ? std::log(double(gamma)) : 0.0;
  double best = kNegInf;
  for (std::uint32_t t = 1; t <= q; ++t) {
    if (mu.values.at(t) <= 0.0) continue;
    const double lr = log_r_factor(q, gamma, t, variant, constant);
    const double common =
        lr + t * log_gamma + t * std::log(L) + std::log(mu.values[t]);
    const double sqrt_term = 0.5 * (std::log(double(k)) + common + log_mu0);
    const double linear_term = t * std::log(double(k)) + common;
    best = std::max(best, std::max(sqrt_term, linear_term));
  }
  return best == kNegInf ? kNegInf : k * best;
}

MarkovResult markov_optimize(std::uint32_t q, std::uint32_t gamma, double L,
                             const smoothness::MuProfile& mu, double lambda,
                             MomentLemmaVariant variant, double constant) {
  if (lambda <= 0.0) throw ParameterError("markov_optimize: lambda must be > 0");
  const double log_lambda = std::log(lambda);
  const double log_gamma = gamma > 0 ? std::log(double(gamma)) : 0.0;
  double K = std::numeric_limits<double>::infinity();
  for (std::uint32_t t = 1; t <= q; ++t) {
    if (mu.values.at(t) <= 0.0) continue;
    const double lr = log_r_factor(q, gamma, t, variant, constant);
    const double common =
        lr + t * log_gamma + t * std::log(L) + std::log(mu.values[t]);
    if (mu.values[0] > 0.0) {
      K = std::min(K, std::exp(2.0 * log_lambda - 2.0 - common -
                               std::log(mu.values[0])));
    }
    K = std::min(K, std::exp((log_lambda - 1.0 - common) / double(t)));
  }

  MarkovResult res;
  if (!std::isfinite(K)) {  // no surviving term: the polynomial is constant
    res.k_star = 0;
    res.log_bound = kNegInf;
    res.K = K;
    return res;
  }
  res.K = K;
  res.k_star = K > 2.0 ? int(2.0 * std::floor(std::min(K, 1e9) / 2.0)) : 2;
  const double bound =
      moment_lemma_bound_log(q, gamma, L, mu, res.k_star, variant, constant);
  res.log_bound = std::min(0.0, bound - res.k_star * log_lambda);
  return res;
}

}  // namespace polytail::moments
