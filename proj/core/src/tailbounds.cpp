#include "polytail/tailbounds.hpp"

#include <cmath>
#include <limits>

#include "polytail/logspace.hpp"
#include "polytail/moments.hpp"

namespace polytail::tailbounds {
namespace {

constexpr double kLogPrefix = 2.0;  // the e^2 prefix shared by most bounds

double get(const std::optional<double>& v, const char* what) {
  if (!v) throw MissingInput(std::string("missing input: ") + what);
  return *v;
}

template <typename T>
const T& get_ref(const std::optional<T>& v, const char* what) {
  if (!v) throw MissingInput(std::string("missing input: ") + what);
  return *v;
}

// exp(a/b) with a in log space, guarded against 0 and inf.
double exp_div(double log_num, double log_den, double root) {
  if (log_num == kNegInf) return 0.0;
  return std::exp((log_num - log_den) / root);
}

}  // namespace

void ConstantsConfig::validate() const {
  const double all[] = {R_main, Q_main2, R3_moment, R_hyper,
                        R_bblm, R_cw,    c_perm,    c_cycles};
  for (double v : all)
    if (!(v > 0.0)) throw ParameterError("constants must be positive");
}

const char* theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::main1special: return "main1special";
    case TheoremId::main1: return "main1";
    case TheoremId::main2: return "main2";
    case TheoremId::kimvu: return "kimvu";
    case TheoremId::bblm: return "bblm";
    case TheoremId::hyper: return "hyper";
    case TheoremId::carbery_wright: return "carbery_wright";
    case TheoremId::permanent: return "permanent";
    case TheoremId::permanent_symmetric: return "permanent_symmetric";
    case TheoremId::cycles: return "cycles";
  }
  return "unknown";
}

TheoremId theorem_from_name(const std::string& name) {
  for (TheoremId id :
       {TheoremId::main1special, TheoremId::main1, TheoremId::main2,
        TheoremId::kimvu, TheoremId::bblm, TheoremId::hyper,
        TheoremId::carbery_wright, TheoremId::permanent,
        TheoremId::permanent_symmetric, TheoremId::cycles}) {
    if (name == theorem_name(id)) return id;
  }
  throw ParameterError("unknown theorem id: " + name);
}

namespace {

// Shared shape of the three main bounds:
//   e^2 max{ max_r exp(-lambda^2 / (mu0 mu_r L^r Gamma^r R_r)),
//            max_r exp(-(lambda / (mu_r L^r Gamma^r R_r))^{1/r}) }
// where R_r is R^r (main1special with Gamma^r = 1), R^q (main1) or R^r with
// R = Q^{Gamma+1} (main2).
TailBoundReport main_family(TheoremId id, const BoundInputs& in, double lambda,
                            const ConstantsConfig& c) {
  const auto& mu = get_ref(in.mu, "mu profile");
  const double L = get(in.L, "L");
  if (L <= 0.0) throw ParameterError("L must be > 0");
  const std::uint32_t q = mu.q;
  const double gamma =
      id == TheoremId::main1special ? 1.0 : double(get_ref(in.gamma, "gamma"));

  double log_R;  // log of the R constant used per power of r (or q)
  switch (id) {
    case TheoremId::main1special:
    case TheoremId::main1:
      log_R = std::log(c.R_main);
      break;
    default:
      log_R = (gamma + 1.0) * std::log(c.Q_main2);
      break;
  }

  const double log_lambda = lambda > 0.0 ? std::log(lambda) : kNegInf;
  const double log_mu0 = mu.values.at(0) > 0.0 ? std::log(mu.values[0]) : kNegInf;

  TailBoundReport report;
  report.theorem = id;
  report.lambda = lambda;
  double best = kNegInf;
  for (std::uint32_t r = 1; r <= q; ++r) {
    if (mu.values.at(r) <= 0.0) continue;
    const double r_const = id == TheoremId::main1 ? q * log_R : r * log_R;
    const double log_denom_common =
        std::log(mu.values[r]) + r * std::log(L) + r * std::log(gamma) + r_const;
    if (log_mu0 != kNegInf) {
      const double expo = exp_div(2.0 * log_lambda, log_mu0 + log_denom_common, 1.0);
      report.terms.push_back({r, "quadratic", kLogPrefix - expo});
      best = std::max(best, -expo);
    }
    const double expo = exp_div(log_lambda, log_denom_common, double(r));
    report.terms.push_back({r, "linear", kLogPrefix - expo});
    best = std::max(best, -expo);
  }
  report.log_bound = best == kNegInf ? kNegInf : std::min(0.0, kLogPrefix + best);
  report.constants = c;
  return report;
}

TailBoundReport kimvu_bound(const BoundInputs& in, double lambda,
                            const ConstantsConfig& c) {
  const auto& E = get_ref(in.kimvu_E, "kimvu E vector");
  const auto n = get_ref(in.n_vars, "n_vars");
  if (E.size() < 2) throw ParameterError("kimvu: E vector needs q >= 1");
  const std::size_t q = E.size() - 1;
  for (std::size_t j = 0; j + 1 <= q; ++j)
    if (E[j] < E[j + 1])
      throw KimVuConditionViolated("kimvu: E must be nonincreasing");
  if (std::abs(E[q] - 1.0) > 1e-12)
    throw KimVuConditionViolated("kimvu: E_q must equal 1");
  if (in.mu) {
    const auto& mu = *in.mu;
    for (std::size_t j = 0; j <= std::min<std::size_t>(q, mu.q); ++j)
      if (E[j] < mu.values[j] * (1.0 - 1e-12))
        throw KimVuConditionViolated(
            "kimvu: condition (1) fails, E_j < mu_j at j=" + std::to_string(j));
  }
  const double logn = std::log(double(n));
  for (std::size_t j = 0; j + 1 <= q; ++j) {
    if (E[j] / E[j + 1] < lambda + 4.0 * double(j) * logn)
      throw KimVuConditionViolated(
          "kimvu: condition (2) fails at j=" + std::to_string(j));
  }

  TailBoundReport report;
  report.theorem = TheoremId::kimvu;
  report.lambda = lambda;  // the Kim-Vu lambda parameter, not the deviation
  const double c_q = std::pow(double(q), double(q) / 2.0);
  const double d_q = std::pow(double(q), double(q));
  report.kimvu_threshold = c_q * std::sqrt(lambda * E[0] * E[1]);
  report.log_bound = std::min(0.0, std::log(d_q) - lambda / 4.0);
  report.constants = c;
  return report;
}

TailBoundReport bblm_bound(const BoundInputs& in, double lambda,
                           const ConstantsConfig& c) {
  const auto& mu = get_ref(in.mu, "mu profile");
  const std::uint32_t q = mu.q;
  if (q < 1) throw ParameterError("bblm: need q >= 1");
  const double log_lambda = lambda > 0.0 ? std::log(lambda) : kNegInf;
  const double log_mu0 = mu.values[0] > 0.0 ? std::log(mu.values[0]) : kNegInf;

  TailBoundReport report;
  report.theorem = TheoremId::bblm;
  report.lambda = lambda;
  double best = kNegInf;
  for (std::uint32_t r = 1; r <= q; ++r) {
    if (mu.values[r] <= 0.0) continue;
    const double log_mur = std::log(mu.values[r]);
    if (log_mu0 != kNegInf) {
      const double expo =
          exp_div(2.0 * log_lambda,
                  std::log(16.0) + 2.0 * std::log(double(q)) + log_mu0 + log_mur,
                  double(r));
      report.terms.push_back({r, "quadratic", -expo});
      best = std::max(best, -expo);
    }
    const double expo = exp_div(
        log_lambda, std::log(4.0) + std::log(double(q)) + log_mur, double(r));
    report.terms.push_back({r, "linear", -expo});
    best = std::max(best, -expo);
  }
  report.log_bound =
      best == kNegInf ? kNegInf
                      : std::min(0.0, -1.0 / (c.R_bblm * double(q)) + best);
  report.constants = c;
  return report;
}

TailBoundReport variance_bound(TheoremId id, const BoundInputs& in, double lambda,
                               const ConstantsConfig& c) {
  const double var = get(in.variance, "variance");
  const std::uint32_t q = get_ref(in.q, "degree q");
  if (q < 1) throw ParameterError("variance bound: need q >= 1");
  if (var < 0.0) throw ParameterError("variance bound: variance must be >= 0");
  TailBoundReport report;
  report.theorem = id;
  report.lambda = lambda;
  double expo;
  if (var == 0.0) {
    expo = lambda > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  } else if (id == TheoremId::hyper) {
    expo = std::pow(lambda * lambda / (c.R_hyper * var), 1.0 / double(q));
  } else {
    expo = std::pow(lambda / (c.R_cw * std::sqrt(var)), 1.0 / double(q));
  }
  report.log_bound =
      std::isinf(expo) ? kNegInf : std::min(0.0, kLogPrefix - expo);
  report.constants = c;
  return report;
}

TailBoundReport permanent_bound(TheoremId id, const BoundInputs& in,
                                const ConstantsConfig& c) {
  const std::uint32_t n = get_ref(in.perm_n, "perm_n");
  const double t = get(in.perm_t, "perm_t");
  if (n < 1) throw ParameterError("permanent: need n >= 1");
  if (t < 0.0) throw ParameterError("permanent: need t >= 0");
  TailBoundReport report;
  report.theorem = id;
  report.lambda = t * std::exp(0.5 * log_factorial(double(n)));  // t sqrt(n!)
  const double branch =
      kLogPrefix - c.c_perm * std::pow(t, 2.0 / double(n));
  report.terms.push_back({0, "floor", -double(n)});
  report.terms.push_back({0, "moment", branch});
  report.log_bound = std::min(0.0, std::max(-double(n), branch));
  report.constants = c;
  return report;
}

TailBoundReport cycles_bound(const BoundInputs& in, double lambda,
                             const ConstantsConfig& c) {
  const std::uint32_t n = get_ref(in.cycles_n, "cycles_n");
  const std::uint32_t q = get_ref(in.cycles_q, "cycles_q");
  if (n < 3 || q < 3) throw ParameterError("cycles: need n, q >= 3");
  const double logn = std::log(double(n));
  const double eps = in.cycles_epsilon
                         ? *in.cycles_epsilon
                         : double(q) * std::log(logn) / logn;
  if (eps <= 0.0) throw ParameterError("cycles: epsilon must be > 0");
  TailBoundReport report;
  report.theorem = TheoremId::cycles;
  report.lambda = lambda;
  const double expo = lambda > 0.0
                          ? c.c_cycles * std::pow(lambda, 1.0 / double(q)) *
                                std::pow(logn, 1.0 / eps)
                          : 0.0;
  report.log_bound = std::min(0.0, kLogPrefix - expo);
  report.constants = c;
  return report;
}

}  // namespace

TailBoundReport evaluate_bound(TheoremId id, const BoundInputs& inputs,
                               double lambda, const ConstantsConfig& constants) {
  constants.validate();
  if (lambda < 0.0) throw ParameterError("lambda must be >= 0");
  switch (id) {
    case TheoremId::main1special:
    case TheoremId::main1:
    case TheoremId::main2:
      return main_family(id, inputs, lambda, constants);
    case TheoremId::kimvu:
      return kimvu_bound(inputs, lambda, constants);
    case TheoremId::bblm:
      return bblm_bound(inputs, lambda, constants);
    case TheoremId::hyper:
    case TheoremId::carbery_wright:
      return variance_bound(id, inputs, lambda, constants);
    case TheoremId::permanent:
    case TheoremId::permanent_symmetric:
      return permanent_bound(id, inputs, constants);
    case TheoremId::cycles:
      return cycles_bound(inputs, lambda, constants);
  }
  throw ParameterError("unknown theorem id");
}

CompareTable compare_bounds(const poly::PoweredPolynomial& p,
                            std::span<const rv::DistributionSpec> dists,
                            std::span<const double> lambda_grid,
                            const ConstantsConfig& constants) {
  BoundInputs in;
  in.mu = smoothness::mu_profile(p, dists);
  double L = 0.0;
  for (const auto& d : dists) L = std::max(L, rv::moment_bound_parameter(d));
  if (dists.empty()) L = 1.0;
  in.L = L;
  in.gamma = std::max<std::uint32_t>(1, p.max_power());
  in.q = std::max<std::uint32_t>(1, p.total_power());

  bool have_var = false;
  try {
    in.variance = moments::exact_central_moment(p, dists, 2);
    have_var = true;
  } catch (const Error&) {
  }

  bool oracle_ok = true;
  bool nonneg = true;
  for (const auto& t : p.terms()) nonneg = nonneg && t.weight >= 0.0;

  CompareTable table;
  std::vector<TheoremId> ids;
  if (p.multilinear() && nonneg) ids.push_back(TheoremId::main1special);
  ids.push_back(TheoremId::main1);
  ids.push_back(TheoremId::main2);
  if (p.multilinear()) ids.push_back(TheoremId::bblm);
  if (have_var && p.total_power() >= 1) {
    ids.push_back(TheoremId::hyper);
    ids.push_back(TheoremId::carbery_wright);
  }
  for (TheoremId id : ids) table.columns.push_back(theorem_name(id));

  for (double lambda : lambda_grid) {
    CompareRow row;
    row.lambda = lambda;
    if (oracle_ok) {
      try {
        row.exact_tail =
            moments::enumerate_oracle(p, dists, 2, lambda).tail_two_sided;
      } catch (const Error&) {
        oracle_ok = false;
      }
    }
    for (TheoremId id : ids) {
      const auto rep = evaluate_bound(id, in, lambda, constants);
      row.bounds.emplace_back(theorem_name(id), std::exp(rep.log_bound));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace polytail::tailbounds
