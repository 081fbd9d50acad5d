#pragma once

// Verification engine: witness search over the rotation parameter t, both
// recoverability bounds, instance builders for every derived inequality,
// sequential recoverability, alpha-limit tables and functoriality checks.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrecov/entropy.hpp"
#include "qrecov/quantum.hpp"
#include "qrecov/random.hpp"
#include "qrecov/recovery.hpp"

namespace qrecov {

inline constexpr double kVerdictTolerance = 1e-7;

struct TSearchConfig {
  double t_range = 10.0;
  std::size_t coarse_points = 401;
  std::size_t refine_iters = 40;

  /// Throws InvalidParameter unless t_range > 0 and coarse_points >= 3 is odd.
  void validate() const;
  /// Same range with 4 (n - 1) + 1 grid points.
  TSearchConfig escalated() const;
};

struct TSample {
  double t = 0.0;
  double value = 0.0;
};

struct TSearchResult {
  double t = 0.0;
  double value = 0.0;
  double value_at_zero = 0.0;
  std::vector<TSample> trace;  // sorted by t
};

/// Maximizes `objective` over [-T, T]: coarse grid (containing t = 0), then
/// golden-section refinement between the neighbours of the best grid point.
/// Ties prefer the smaller |t|. Throws ObjectiveError on a non-finite value.
TSearchResult t_search(const std::function<double(double)>& objective, const TSearchConfig& cfg);

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);

enum class CaseTag {
  worked,
  identity,
  channel,
  upper,
  ssa,
  concavity,
  joint_convexity,
  discord,
  holevo,
  multipartite,
  qec,
  sequential,
};
std::string to_string(CaseTag c);
CaseTag case_from_string(const std::string& s);
/// Subsystem dimensions used when a campaign does not specify any.
std::vector<std::size_t> default_dims(CaseTag c);

/// A (rho, sigma, N) triple with the data needed by case-specific audits.
struct Instance {
  CaseTag tag = CaseTag::channel;
  std::vector<std::size_t> dims;
  DensityOperator rho;
  std::optional<PsdOperator> sigma;     // absent for sequential
  std::optional<QuantumMap> channel;    // absent for sequential
  std::string interpretation;

  std::optional<Ensemble> ensemble;        // concavity, holevo, joint_convexity (rho side)
  std::optional<Ensemble> sigma_ensemble;  // joint_convexity
  std::optional<RankOneMeasurement> measurement;
  std::optional<DensityOperator> rho_a;    // discord, holevo
};

/// Throws InvalidInstance unless sigma and the channel are present, shapes
/// agree, the channel is trace preserving and supp(rho) lies in supp(sigma).
void validate_instance(const Instance& inst);
/// Additionally requires rho, sigma, N(rho), N(sigma) positive definite.
void validate_upper_instance(const Instance& inst);

/// Draws an instance of the given case. Dimension semantics:
///   identity (d), channel (s, b, env), upper (s, e', b), ssa (a, b, c),
///   concavity (x, a, b), joint_convexity (x, b), discord (a, b, outcomes),
///   holevo (a, y, outcomes), multipartite (a1, a1', a2, a2', ...),
///   qec (n, k, out, env), sequential (a1, ..., al, c). `worked` ignores dims.
Instance build_instance(CaseTag tag, const std::vector<std::size_t>& dims, Rng& rng);

/// The dephasing example: rho = [[.5,.4],[.4,.5]], sigma = I/2.
Instance worked_instance();

enum class BoundKind { lower, upper };
std::string to_string(BoundKind k);

struct BoundCheck {
  BoundKind kind = BoundKind::lower;
  Nats bound;
  double witness_t = 0.0;
  /// delta - bound for the lower bound, bound - delta for the upper bound.
  double deficit = 0.0;
  Verdict verdict = Verdict::inconclusive;
  bool t0_witnesses = false;
  bool escalated = false;
  std::vector<TSample> trace;
};

struct Audit {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::string case_name;
  std::uint64_t seed = 0;
  std::vector<std::size_t> dims;
  std::string interpretation;
  Nats delta;
  BoundCheck primary;
  std::optional<BoundCheck> secondary;
  std::vector<Audit> audits;
  /// fail if an audit failed, else inconclusive if a bound was not witnessed, else pass.
  Verdict verdict = Verdict::inconclusive;

  void finalize();
};

/// -ln sup_t F(rho, R^{P,t}(N(rho))) <= Delta. Escalates the grid once when inconclusive.
CheckReport check_lower(const Instance& inst, const TSearchConfig& cfg);
/// Delta <= sup_t D_max(rho || R^{P,t}(N(rho))); InvalidInstance unless the strict positivity holds.
CheckReport check_upper(const Instance& inst, const TSearchConfig& cfg);

/// Builds an instance of `tag` and runs the lower-bound check plus the case audits.
CheckReport check_corollary(CaseTag tag, const std::vector<std::size_t>& dims, const TSearchConfig& cfg, Rng& rng);
/// Runs the case audits for an already built instance.
CheckReport check_instance(const Instance& inst, const TSearchConfig& cfg);

/// Sequential recoverability for a state labelled (A_1, ..., A_l, C): lower
/// bound always, upper bound when rho is positive definite.
CheckReport check_sequential(const DensityOperator& rho, const TSearchConfig& cfg);

struct LimitRow {
  double alpha = 0.0;
  Nats value;
};

struct LimitReport {
  std::vector<LimitRow> rows;  // ascending alpha
  Nats delta;
  /// Richardson extrapolation to alpha = 1 from the points closest to 1.
  std::optional<double> extrapolated;
  /// |Delta~_alpha - Delta| nonincreasing toward alpha = 1 on each side.
  bool monotone_approach = false;
  /// D_max(rho || R^P(N(rho))) when both states are positive definite.
  std::optional<Nats> dmax_petz;
  /// -ln of the best fidelity found by the lower-bound search.
  double neg_log_best_fidelity = 0.0;
  /// Smallest Delta~_alpha + ln(best F) over grid points alpha in (1/2, 1).
  std::optional<double> chain_margin;
};

/// Richardson limit at alpha = 1 of (alpha, value) samples. Uses the
/// nearest pair around 1 and, when a second pair exists, cancels the
/// quadratic term as well. Returns nullopt without points on both sides.
std::optional<double> richardson_at_one(const std::vector<LimitRow>& rows);

LimitReport check_limits(const Instance& inst, const std::vector<double>& alpha_grid, const TSearchConfig& cfg);

enum class FunctorKind { normalization, parallel, serial };
std::string to_string(FunctorKind k);
FunctorKind functor_from_string(const std::string& s);

struct FunctorialityReport {
  FunctorKind kind = FunctorKind::normalization;
  std::vector<std::size_t> dims;
  double t = 0.0;
  double choi_distance = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Draws random operands and compares both sides of the identity at a random
/// t in [-5, 5] through their Choi matrices (tolerance 1e-9). Dimensions:
/// normalization (d), parallel (d1, b1, d2, b2), serial (d, m, b).
FunctorialityReport check_functoriality(FunctorKind kind, const std::vector<std::size_t>& dims, Rng& rng);

}  // namespace qrecov
