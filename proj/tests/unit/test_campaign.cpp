#include <gtest/gtest.h>

#include <filesystem>

#include "qrecov/campaign.hpp"
#include "qrecov/error.hpp"
#include "qrecov/io.hpp"

namespace qrecov {
namespace {

CampaignConfig small_config(std::vector<CaseTag> cases, std::size_t trials) {
  CampaignConfig cfg;
  cfg.cases = std::move(cases);
  cfg.trials = trials;
  cfg.t_search.coarse_points = 41;
  cfg.workers = 1;
  return cfg;
}

TEST(Config, JsonRoundTrip) {
  CampaignConfig cfg = small_config({CaseTag::ssa, CaseTag::qec}, 7);
  cfg.dims[CaseTag::ssa] = {2, 3, 2};
  cfg.seed = 99;
  cfg.alpha_grid = {0.5, 2.0};
  cfg.out_dir = "out";
  const CampaignConfig back = campaign_from_json(campaign_to_json(cfg));
  EXPECT_EQ(back.cases, cfg.cases);
  EXPECT_EQ(back.dims, cfg.dims);
  EXPECT_EQ(back.trials, 7u);
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.t_search.coarse_points, 41u);
  EXPECT_EQ(back.alpha_grid, cfg.alpha_grid);
  EXPECT_EQ(back.out_dir, "out");
  EXPECT_EQ(back.workers, 1u);
}

TEST(Config, Errors) {
  EXPECT_THROW(campaign_from_json("{\"cases\": ["), ParseError);
  EXPECT_THROW(campaign_from_json("{\"cases\": [\"bogus\"]}"), InvalidParameter);
  EXPECT_THROW(campaign_from_json("{\"trials\": \"many\"}"), ValidationError);
  EXPECT_THROW(small_config({}, 1).validate(), InvalidParameter);
  EXPECT_THROW(small_config({CaseTag::ssa}, 0).validate(), InvalidParameter);
  CampaignConfig bad_alpha = small_config({CaseTag::ssa}, 1);
  bad_alpha.alpha_grid = {1.0};
  EXPECT_THROW(bad_alpha.validate(), InvalidParameter);
  EXPECT_THROW(run_campaign(small_config({}, 1)), InvalidParameter);
}

TEST(Dims, Parsing) {
  EXPECT_EQ(dims_from_string("2x3x4"), (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(dims_from_string("5"), (std::vector<std::size_t>{5}));
  EXPECT_EQ(dims_to_string({2, 3}), "2x3");
  for (const char* bad : {"", "2x", "x2", "2x0", "2xa", "-1"}) EXPECT_THROW(dims_from_string(bad), InvalidParameter);
}

TEST(Seeds, TrialSeedReplaysInstance) {
  const auto s1 = trial_seed(1, CaseTag::ssa, 3);
  EXPECT_EQ(s1, trial_seed(1, CaseTag::ssa, 3));
  EXPECT_NE(s1, trial_seed(1, CaseTag::ssa, 4));
  EXPECT_NE(s1, trial_seed(1, CaseTag::qec, 3));
  EXPECT_NE(s1, trial_seed(2, CaseTag::ssa, 3));

  const auto res = run_campaign(small_config({CaseTag::ssa}, 4));
  Rng rng(res.trials[3].seed);
  const Instance inst = build_instance(CaseTag::ssa, default_dims(CaseTag::ssa), rng);
  EXPECT_EQ(instance_to_json(inst, res.trials[3].seed), res.trials[3].instance_json);
}

TEST(Campaign, SsaPassesAndIsDeterministic) {
  const auto a = run_campaign(small_config({CaseTag::ssa}, 10));
  EXPECT_EQ(a.passed, 10u);
  EXPECT_EQ(a.exit_code(), 0);
  CampaignConfig threaded = small_config({CaseTag::ssa}, 10);
  threaded.workers = 3;
  const auto b = run_campaign(threaded);
  EXPECT_EQ(campaign_csv(a.trials), campaign_csv(b.trials));
  for (std::size_t i = 0; i < a.trials.size(); ++i) EXPECT_EQ(a.trials[i].trial, i);
}

TEST(Campaign, ExitCodes) {
  CampaignResult r;
  EXPECT_EQ(r.exit_code(), 0);
  r.inconclusive = 1;
  EXPECT_EQ(r.exit_code(), 2);
  r.errors = 1;
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Campaign, WritesOutputTree) {
  const auto dir = std::filesystem::temp_directory_path() / "qrecov_campaign_test";
  std::filesystem::remove_all(dir);
  CampaignConfig cfg = small_config({CaseTag::identity, CaseTag::sequential}, 2);
  cfg.out_dir = dir.string();
  const auto res = run_campaign(cfg);
  EXPECT_EQ(res.exit_code(), 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "results.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "identity" / "trial_1.report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "sequential" / "trial_0.instance.json"));
  const std::string csv = read_text_file((dir / "results.csv").string());
  EXPECT_EQ(csv.rfind("case,trial,seed,dims,delta,bound,witness_t,deficit,verdict,t0_witnesses\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  std::filesystem::remove_all(dir);
}

TEST(Limits, TableShapeAndSequentialRejected) {
  CampaignConfig cfg = small_config({CaseTag::channel}, 2);
  cfg.alpha_grid = {0.5, 0.99, 1.01, 2.0};
  const std::string csv = limits_table(cfg);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 4);
  EXPECT_EQ(csv, limits_table(cfg));
  EXPECT_THROW(limits_table(small_config({CaseTag::sequential}, 1)), InvalidParameter);
}

TEST(Functoriality, TableIsDeterministic) {
  const auto a = functoriality_table({FunctorKind::normalization, FunctorKind::serial}, {}, 3, 5, 1);
  const auto b = functoriality_table({FunctorKind::normalization, FunctorKind::serial}, {}, 3, 5, 2);
  EXPECT_TRUE(a.all_pass);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_EQ(std::count(a.csv.begin(), a.csv.end(), '\n'), 7);
  EXPECT_THROW(functoriality_table({}, {}, 1, 1, 1), InvalidParameter);
}

}  // namespace
}  // namespace qrecov
