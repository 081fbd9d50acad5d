#pragma once

// Verification campaigns: (case, trial) jobs on a worker pool, merged in
// trial order into per-trial JSON files and an aggregate CSV.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qrecov/verify.hpp"

namespace qrecov {

struct CampaignConfig {
  std::vector<CaseTag> cases;
  /// Dimensions per case; cases without an entry use default_dims.
  std::map<CaseTag, std::vector<std::size_t>> dims;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  TSearchConfig t_search;
  std::vector<double> alpha_grid{0.5, 0.6, 0.75, 0.9, 0.99, 0.999, 1.001, 1.01, 1.1, 2.0, 10.0, 200.0};
  /// Directory for reports; empty writes nothing.
  std::string out_dir;
  /// 0 = one per hardware thread.
  std::size_t workers = 0;

  /// Throws InvalidParameter on an empty case list, zero trials or a bad search config.
  void validate() const;
  std::vector<std::size_t> dims_for(CaseTag c) const;
};

/// JSON mirroring CampaignConfig:
/// {"cases":[...],"dims":{"ssa":[2,2,2]},"trials":n,"seed":s,
///  "t_search":{"t_range":T,"coarse_points":n,"refine_iters":k},"alpha_grid":[...],"out":"dir","workers":w}
CampaignConfig campaign_from_json(std::string_view text);
std::string campaign_to_json(const CampaignConfig& cfg);

/// Seed of the independent stream for (case, trial); Rng(trial_seed(...)) replays it.
std::uint64_t trial_seed(std::uint64_t seed, CaseTag c, std::size_t trial);

struct TrialResult {
  CaseTag tag = CaseTag::channel;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<CheckReport> report;
  std::string instance_json;
  std::string error;
};

struct CampaignResult {
  std::vector<TrialResult> trials;  // sorted by (case order, trial)
  std::size_t passed = 0;
  std::size_t inconclusive = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;

  /// 0 all pass, 2 some inconclusive, 1 on any failed verdict or error.
  int exit_code() const;
};

/// Runs every (case, trial) pair. When out_dir is set, writes
/// <out>/<case>/trial_<i>.report.json, <out>/<case>/trial_<i>.instance.json and <out>/results.csv.
CampaignResult run_campaign(const CampaignConfig& cfg);

/// Columns: case,trial,seed,dims,delta,bound,witness_t,deficit,verdict,t0_witnesses
std::string campaign_csv(const std::vector<TrialResult>& trials);

/// One row per (instance, alpha). Columns:
/// case,trial,seed,alpha,delta_tilde,delta,extrapolated,dmax_petz,chain_margin
std::string limits_table(const CampaignConfig& cfg);

/// One row per (kind, trial). Columns: kind,trial,seed,dims,t,choi_distance,verdict
struct FunctorialityTable {
  std::string csv;
  bool all_pass = true;
};
FunctorialityTable functoriality_table(const std::vector<FunctorKind>& kinds,
                                       const std::map<FunctorKind, std::vector<std::size_t>>& dims, std::size_t trials,
                                       std::uint64_t seed, std::size_t workers = 0);

/// Runs `job(i)` for i in [0, n) on up to `workers` threads (0 = hardware threads).
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& job);

std::string dims_to_string(const std::vector<std::size_t>& dims);
/// Parses "2x2x2" or "2,2,2".
std::vector<std::size_t> dims_from_string(const std::string& s);

}  // namespace qrecov
