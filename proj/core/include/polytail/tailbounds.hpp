#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polytail/common.hpp"
#include "polytail/moments.hpp"
#include "polytail/poly.hpp"
#include "polytail/smoothness.hpp"

namespace polytail::tailbounds {

// Absolute constants left unspecified by the statements. Defaults were
// calibrated against the frozen oracle suite (smallest power of two keeping
// every validity check green, then doubled); see tests/support/suite.hpp.
struct ConstantsConfig {
  double R_main = 2.0;    // main1special / main1
  double Q_main2 = 2.0;   // main2 (R = Q^{Gamma+1})
  double R3_moment = 2.0; // general even moment lemma
  double R_hyper = 4.0;   // hypercontractivity comparator
  double R_bblm = 1.0;    // BBLM comparator prefix
  double R_cw = 2.0;      // Carbery-Wright comparator
  double c_perm = 0.1;    // permanent bounds
  double c_cycles = 0.1;  // cycle-count bound

  void validate() const;
};

enum class TheoremId {
  main1special,
  main1,
  main2,
  kimvu,
  bblm,
  hyper,
  carbery_wright,
  permanent,
  permanent_symmetric,
  cycles,
};

const char* theorem_name(TheoremId id);
TheoremId theorem_from_name(const std::string& name);

struct BoundInputs {
  std::optional<smoothness::MuProfile> mu;
  std::optional<double> L;
  std::optional<std::uint32_t> gamma;
  // kimvu: the user-supplied majorant vector E_0 >= ... >= E_q = 1 plus the
  // variable count (their bound depends on log n).
  std::optional<std::vector<double>> kimvu_E;
  std::optional<std::uint64_t> n_vars;
  std::optional<double> variance;   // hyper / carbery_wright
  std::optional<std::uint32_t> q;   // polynomial degree for hyper / carbery_wright
  std::optional<std::uint32_t> perm_n;
  std::optional<double> perm_t;
  std::optional<std::uint32_t> cycles_n;
  std::optional<std::uint32_t> cycles_q;
  std::optional<double> cycles_epsilon;  // defaults to q log log n / log n
};

struct BoundTerm {
  std::uint32_t r = 0;
  std::string family;  // "quadratic" (lambda^2 family) or "linear" ((lambda/..)^{1/r})
  double log_value = 0.0;
};

struct TailBoundReport {
  TheoremId theorem = TheoremId::main1special;
  double lambda = 0.0;
  double log_bound = 0.0;  // <= 0 after capping
  std::vector<BoundTerm> terms;
  ConstantsConfig constants;
  std::optional<int> k_star;
  std::optional<double> kimvu_threshold;  // c_q sqrt(lambda E0 E1)
};

TailBoundReport evaluate_bound(TheoremId id, const BoundInputs& inputs,
                               double lambda, const ConstantsConfig& constants);

// One comparison row per lambda: exact tail (when the instance is
// oracle-sized), plus every applicable bound.
struct CompareRow {
  double lambda = 0.0;
  std::optional<double> exact_tail;
  std::vector<std::pair<std::string, double>> bounds;  // name -> probability
};

struct CompareTable {
  std::vector<std::string> columns;  // bound names present
  std::vector<CompareRow> rows;
};

CompareTable compare_bounds(const poly::PoweredPolynomial& poly,
                            std::span<const rv::DistributionSpec> dists,
                            std::span<const double> lambda_grid,
                            const ConstantsConfig& constants);

}  // namespace polytail::tailbounds
