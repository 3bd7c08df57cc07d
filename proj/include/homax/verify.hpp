#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "homax/field.hpp"
#include "homax/space.hpp"
#include "homax/weights.hpp"

namespace homax {

/// Thresholds for the statistical tier plus run-wide knobs.  Exact-tier
/// tolerances are relative to the local scale of each comparison.
struct VerifyConfig {
  double exact_tol = 1e-12;
  double luxemburg_tol = 1e-9;
  double holder_max = 4.0;
  double stability_band = 0.25;   // allowed spread of fitted constants across seeds
  double jn_r2_min = 0.9;
  double jn_c4_bound = 16.0;      // exponential-moment cap for the decay scan
  double weak_ratio_cap = 64.0;   // bound for distribution/functional ratios
  double ap_warn_threshold = 1e8; // weight accepted but flagged above this
  int ensemble_pairs = 8;         // seeded draws beyond the canonical members
  int max_family_sample = 64;     // balls sampled for per-ball sweeps
  int threads = 1;
  std::string config_version = "1";

  /// JSON object with keys named like the fields; missing keys keep their
  /// defaults, unknown keys raise IoError.
  static VerifyConfig load(const std::string& path);
};

/// One verification outcome.  For exact-tier checks `max_violation` is the
/// worst relative violation and pass means it is within exact_tol; for
/// fitted-constant checks `fitted_constant` is the max ratio observed,
/// `percentile_95_ratio` its 95th percentile, and pass means the configured
/// threshold held.  metadata always carries seed, space, and parameters.
struct Report {
  std::string check_id;
  int instances = 0;
  double max_violation = 0.0;
  double fitted_constant = 0.0;
  double percentile_95_ratio = 0.0;
  bool pass = false;
  bool exact_tier = false;
  std::map<std::string, std::string> metadata;
};

/// What goes into a seeded ensemble.  Canonical members (log-distance and
/// affine-in-distance b, ball indicators and a constant for f) are the
/// deterministic backbone; `pairs` adds seeded draws on top.
struct EnsembleSpec {
  int pairs = 8;
  bool include_canonical = true;
  bool include_ball_indicators = true;
};

/// Pointwise inequality and constant-fitting sweeps.  check_id one of:
///   exact tier: lemma_mc, lemma_cbm, msharp_le_2m, m_chain, msharp_chib,
///               mpb_geq_b, e1e2_chain, ab_grid
///   fitted tier: cor_cm, cor_cb, prop_212, eq_mml_two_sided, holder_llogl
/// Throws UnknownCheck for anything else.
Report pointwise_inequality_report(const std::string& check_id, const Space& s,
                                   const EnsembleSpec& spec, std::uint64_t seed,
                                   const VerifyConfig& cfg);

/// For one symbol b: oscillation norms, the characterization quantities of
/// both kinds, empirical commutator norms, and the per-ball two-point chain
/// (mean deviation vs deviation from the restricted maximal), which is
/// exactly checkable and feeds max_violation.  A weight above the A_p warn
/// threshold is flagged in metadata, not rejected.
Report equivalence_report(const Space& s, const FieldFunction& b, double p,
                          double q, const Weight* w, const VerifyConfig& cfg);

struct WeakTypeColumns {
  bool commutator = true;       // |[M,b]f|
  bool max_commutator = true;   // C_b f   (O(n^3 log n), heavy on big spaces)
  bool orlicz_maximal = true;   // M_{LlogL} f (heaviest)
};

enum class WeakTypeCriterion {
  BoundedRatio,        // sup_lambda mu(C_b f > lambda)/llogl_functional <= cap
  IncreasingLambdaMu,  // lambda * mu(|[M,b]f| > lambda) strictly grows as
                       // lambda decreases (the weak-(1,1) failure signature)
};

struct WeakTypeResult {
  Report report;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;  // one row per lambda, grid order
};

/// Level-set sweep over a positive decreasing lambda grid.
WeakTypeResult weak_type_sweep(const Space& s, const FieldFunction& b,
                               const FieldFunction& f,
                               const std::vector<double>& lambda_grid,
                               WeakTypeColumns columns, WeakTypeCriterion crit,
                               const VerifyConfig& cfg);

enum class OperatorKind { Maximal, CommutatorMaximal, CommutatorSharp, MaximalCommutator };

struct OperatorSpec {
  OperatorKind kind = OperatorKind::Maximal;
  double p = 1.0;  // exponent inside the maximal, where applicable
};

/// Empirical lower bound of the L^q(w) operator norm: max of ||Tf||/||f||
/// over the seeded ensemble, which always includes every family ball
/// indicator (the test functions the equivalence arguments rely on).
double operator_norm_estimate(const Space& s, const BallFamily& family,
                              OperatorSpec op, const FieldFunction* b,
                              double q, const Weight* w,
                              const EnsembleSpec& spec, std::uint64_t seed);

/// Exponential decay of the level sets of b - mean within one ball:
/// regresses ln mass{|b - m_B(b)| > alpha} on alpha over realized levels.
/// fitted_constant is the slope; metadata carries intercept, r_squared, and
/// the largest c3 in {0.05..0.5} whose exponential moment stays within
/// jn_c4_bound.  A constant b passes vacuously.
Report jn_decay_fit(const Space& s, const FieldFunction& b, const Ball& ball,
                    const VerifyConfig& cfg);

/// Independent reference for the characterization quantity with w == 1,
/// built on the naive oracles; used to cross-check weighted_char_quantity.
double char_quantity_direct(const Space& s, const BallFamily& family,
                            const FieldFunction& b, double q, CharKind kind,
                            double p = 1.0);

struct RowTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct SuiteResult {
  std::vector<Report> reports;
  std::vector<RowTable> tables;
};

/// Runs a named suite: pointwise, equivalence, weaktype, counterexample,
/// weights, jn, or all.  Throws UnknownCheck for unknown names.
SuiteResult run_suite(const std::string& suite, const Space& s,
                      std::uint64_t seed, const VerifyConfig& cfg);

/// True when every report passed (exact tier and statistical tier alike).
bool all_pass(const std::vector<Report>& reports);

void write_reports_json(const std::vector<Report>& reports,
                        const std::string& path);
void write_reports_csv(const std::vector<Report>& reports,
                       const std::string& path);

}  // namespace homax
