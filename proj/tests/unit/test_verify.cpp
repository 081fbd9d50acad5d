#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qrecov/error.hpp"
#include "qrecov/verify.hpp"
#include "test_util.hpp"

namespace qrecov {
namespace {

using testing::diag;

const double kWorkedDelta = std::log(2.0) + 0.9 * std::log(0.9) + 0.1 * std::log(0.1);
const double kWorkedBound = -std::log(0.8);

TSearchConfig small_search() {
  TSearchConfig c;
  c.coarse_points = 81;
  return c;
}

bool all_audits_pass(const CheckReport& r) {
  for (const auto& a : r.audits) {
    if (!a.passed) return false;
  }
  return true;
}

TEST(TSearch, ConfigValidation) {
  TSearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.coarse_points = 400;
  EXPECT_THROW(c.validate(), InvalidParameter);
  c.coarse_points = 1;
  EXPECT_THROW(c.validate(), InvalidParameter);
  c.coarse_points = 11;
  c.t_range = 0.0;
  EXPECT_THROW(c.validate(), InvalidParameter);
  EXPECT_EQ(TSearchConfig{}.escalated().coarse_points, 4u * 400u + 1u);
}

TEST(TSearch, FlatObjectivePrefersZero) {
  const auto r = t_search([](double) { return 1.5; }, small_search());
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.value, 1.5);
  EXPECT_EQ(r.value_at_zero, 1.5);
}

TEST(TSearch, FindsInteriorMaximum) {
  const auto r = t_search([](double t) { return -(t - 2.345) * (t - 2.345); }, small_search());
  EXPECT_NEAR(r.t, 2.345, 1e-6);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
  const auto c = t_search([](double t) { return std::cos(t); }, small_search());
  EXPECT_NEAR(c.t, 0.0, 1e-12);
  ASSERT_FALSE(c.trace.empty());
  for (std::size_t i = 1; i < c.trace.size(); ++i) EXPECT_LT(c.trace[i - 1].t, c.trace[i].t);
}

TEST(TSearch, NonFiniteObjectiveThrows) {
  EXPECT_THROW(t_search([](double t) { return t > 3.0 ? std::nan("") : 0.0; }, small_search()), ObjectiveError);
}

TEST(CheckLower, WorkedExample) {
  const auto r = check_lower(worked_instance(), TSearchConfig{});
  EXPECT_NEAR(r.delta.value(), kWorkedDelta, 1e-12);
  EXPECT_NEAR(r.primary.bound.value(), kWorkedBound, 1e-12);
  EXPECT_NEAR(r.primary.deficit, kWorkedDelta - kWorkedBound, 1e-12);
  EXPECT_EQ(r.primary.witness_t, 0.0);
  EXPECT_TRUE(r.primary.t0_witnesses);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(CheckLower, IdentityChannelIsTight) {
  Rng rng(1);
  const Instance inst = build_instance(CaseTag::identity, {3}, rng);
  const auto r = check_lower(inst, small_search());
  EXPECT_NEAR(r.delta.value(), 0.0, 1e-10);
  EXPECT_NEAR(r.primary.bound.value(), 0.0, 1e-10);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(CheckLower, RandomChannelsPass) {
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    const auto r = check_lower(build_instance(CaseTag::channel, {2, 2, 2}, rng), small_search());
    EXPECT_GE(r.primary.deficit, -kVerdictTolerance);
    EXPECT_EQ(r.verdict, Verdict::pass);
  }
}

TEST(CheckUpper, IdentityAndEqualStates) {
  Rng rng(3);
  const auto r = check_upper(build_instance(CaseTag::upper, {2, 2, 2}, rng), small_search());
  EXPECT_GE(r.primary.deficit, -kVerdictTolerance);
  EXPECT_EQ(r.verdict, Verdict::pass);

  Instance same = build_instance(CaseTag::upper, {2, 2, 2}, rng);
  same.sigma = same.rho.as_psd();
  const auto s = check_upper(same, small_search());
  EXPECT_NEAR(s.delta.value(), 0.0, 1e-10);
  EXPECT_NEAR(s.primary.bound.value(), 0.0, 1e-9);
}

TEST(CheckUpper, RejectsRankDeficientInstances) {
  Instance pure = worked_instance();
  pure.rho = DensityOperator(diag({1, 0}));
  EXPECT_THROW(check_upper(pure, small_search()), InvalidInstance);
  Instance leaky = worked_instance();
  leaky.channel = QuantumMap({diag({1, 0}), testing::mat2(0, 1, 0, 0)});
  EXPECT_THROW(check_upper(leaky, small_search()), InvalidInstance);
}

TEST(Instances, ValidationRejectsBadTriples) {
  Instance inst = worked_instance();
  inst.sigma.reset();
  EXPECT_THROW(validate_instance(inst), InvalidInstance);
  Instance leak = worked_instance();
  leak.sigma = PsdOperator(diag({1, 0}));
  EXPECT_THROW(validate_instance(leak), InvalidInstance);
}

TEST(Instances, CaseTagsRoundTrip) {
  for (auto c : {CaseTag::worked, CaseTag::identity, CaseTag::channel, CaseTag::upper, CaseTag::ssa, CaseTag::concavity,
                 CaseTag::joint_convexity, CaseTag::discord, CaseTag::holevo, CaseTag::multipartite, CaseTag::qec,
                 CaseTag::sequential}) {
    EXPECT_EQ(case_from_string(to_string(c)), c);
  }
  EXPECT_THROW(case_from_string("nope"), InvalidParameter);
}

class CorollaryCase : public ::testing::TestWithParam<CaseTag> {};

TEST_P(CorollaryCase, PassesWithAudits) {
  Rng rng(40 + static_cast<int>(GetParam()));
  for (int i = 0; i < 3; ++i) {
    const auto r = check_corollary(GetParam(), default_dims(GetParam()), small_search(), rng);
    EXPECT_EQ(r.verdict, Verdict::pass) << r.case_name;
    EXPECT_TRUE(all_audits_pass(r)) << r.case_name;
    EXPECT_GE(r.delta.value(), -1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Cases, CorollaryCase,
                         ::testing::Values(CaseTag::ssa, CaseTag::concavity, CaseTag::joint_convexity,
                                           CaseTag::discord, CaseTag::holevo, CaseTag::multipartite, CaseTag::qec),
                         [](const auto& info) { return to_string(info.param); });

TEST(Corollary, SsaOfProductStateIsZero) {
  Rng rng(5);
  Instance inst = build_instance(CaseTag::ssa, {2, 2, 2}, rng);
  const CompositeLabels abc = inst.rho.labels();
  const Matrix prod = permute_systems(
      kron(inst.rho.marginal({0, 2}).matrix(), inst.rho.marginal({1}).matrix()),
      CompositeLabels({"A", "C", "B"}, {2, 2, 2}), std::vector<std::size_t>{0, 2, 1});
  const DensityOperator markov(abc, prod);
  EXPECT_NEAR(cmi(markov).value(), 0.0, 1e-10);
}

TEST(Corollary, SingleMemberConvexityIsZero) {
  Rng rng(6);
  const auto r = check_instance(build_instance(CaseTag::joint_convexity, {1, 2}, rng), small_search());
  EXPECT_NEAR(r.delta.value(), 0.0, 1e-10);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Sequential, ProductStateIsRecoverable) {
  Rng rng(7);
  const Matrix prod = kron(kron(random_density(2, 2, rng).matrix(), random_density(2, 2, rng).matrix()),
                           random_density(2, 2, rng).matrix());
  const auto r = check_sequential(DensityOperator(CompositeLabels::anonymous({2, 2, 2}), prod), small_search());
  EXPECT_NEAR(r.delta.value(), 0.0, 1e-10);
  EXPECT_NEAR(r.primary.bound.value(), 0.0, 1e-9);
  EXPECT_EQ(r.verdict, Verdict::pass);
}

TEST(Sequential, RandomStatesPassBothBounds) {
  Rng rng(8);
  for (std::size_t l : {2u, 3u}) {
    std::vector<std::size_t> dims(l + 1, 2);
    const auto r = check_sequential(random_density(CompositeLabels::anonymous(dims), 1u << (l + 1), rng),
                                    small_search());
    EXPECT_EQ(r.verdict, Verdict::pass);
    ASSERT_TRUE(r.secondary.has_value());
    EXPECT_GE(r.secondary->deficit, -kVerdictTolerance);
  }
}

TEST(Limits, RichardsonOnPolynomial) {
  auto f = [](double a) { return 0.7 + 0.3 * (a - 1.0) - 2.0 * (a - 1.0) * (a - 1.0); };
  std::vector<LimitRow> rows;
  for (double a : {0.9, 0.99, 1.01, 1.1}) rows.push_back({a, Nats(f(a))});
  const auto ex = richardson_at_one(rows);
  ASSERT_TRUE(ex.has_value());
  EXPECT_NEAR(*ex, 0.7, 1e-12);
  EXPECT_FALSE(richardson_at_one({{0.9, Nats(1.0)}, {0.99, Nats(1.0)}}).has_value());
}

TEST(Limits, IdentityChannelIsZeroEverywhere) {
  Rng rng(9);
  const auto rep = check_limits(build_instance(CaseTag::identity, {2}, rng), {0.5, 0.9, 1.1, 2.0}, small_search());
  for (const auto& row : rep.rows) EXPECT_NEAR(row.value.value(), 0.0, 1e-9);
}

TEST(Limits, WorkedExampleExtrapolatesToDelta) {
  const auto rep = check_limits(worked_instance(), {0.99, 0.999, 1.001, 1.01}, small_search());
  ASSERT_TRUE(rep.extrapolated.has_value());
  EXPECT_NEAR(*rep.extrapolated, kWorkedDelta, 1e-6);
  EXPECT_NEAR(rep.delta.value(), kWorkedDelta, 1e-12);
  EXPECT_TRUE(rep.monotone_approach);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_LT(rep.rows[i - 1].alpha, rep.rows[i].alpha);
}

TEST(Functoriality, AllKindsHold) {
  Rng rng(10);
  for (auto [kind, dims] : std::vector<std::pair<FunctorKind, std::vector<std::size_t>>>{
           {FunctorKind::normalization, {3}}, {FunctorKind::parallel, {2, 2, 2, 1}}, {FunctorKind::serial, {2, 3, 2}}}) {
    const auto r = check_functoriality(kind, dims, rng);
    EXPECT_LE(r.choi_distance, 1e-9) << to_string(kind);
    EXPECT_EQ(r.verdict, Verdict::pass);
    EXPECT_GE(r.t, -5.0);
    EXPECT_LE(r.t, 5.0);
  }
  EXPECT_EQ(functor_from_string("serial"), FunctorKind::serial);
  EXPECT_THROW(functor_from_string("diagonal"), InvalidParameter);
}

TEST(Verdicts, Names) {
  EXPECT_EQ(to_string(Verdict::pass), "pass");
  EXPECT_EQ(to_string(Verdict::fail), "fail");
  EXPECT_EQ(to_string(Verdict::inconclusive), "inconclusive");
  EXPECT_EQ(to_string(BoundKind::upper), "upper");
}

}  // namespace
}  // namespace qrecov
