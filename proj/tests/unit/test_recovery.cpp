#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qrecov/entropy.hpp"
#include "qrecov/error.hpp"
#include "qrecov/random.hpp"
#include "qrecov/recovery.hpp"
#include "test_util.hpp"

namespace qrecov {
namespace {

using testing::dephasing;
using testing::diag;
using testing::mat2;
using testing::max_abs;

QuantumMap full_trace(std::size_t d) {
  std::vector<Matrix> ks;
  for (std::size_t i = 0; i < d; ++i) ks.push_back(testing::basis(static_cast<Index>(d), static_cast<Index>(i)).adjoint());
  return QuantumMap(std::move(ks));
}

// Naive rotated Petz map from the defining formula, composed as three maps.
Matrix naive_rotated_petz(const Matrix& sigma, const QuantumMap& n, double t, const Matrix& x) {
  const Matrix ns = n.apply(sigma);
  const Matrix inner_k = power_on_support(ns, Complex(-0.5, 0.0)) * power_on_support(ns, Complex(0.0, -t));
  const Matrix y = adjoint_map(n).apply(inner_k * x * inner_k.adjoint());
  const Matrix outer = power_on_support(sigma, Complex(0.0, t)) * power_on_support(sigma, Complex(0.5));
  return outer * y * outer.adjoint();
}

TEST(Provenance, RoundTrip) {
  for (auto p : {Provenance::petz, Provenance::rotated_petz, Provenance::cmi, Provenance::sequential, Provenance::eb,
                 Provenance::pgm}) {
    EXPECT_EQ(provenance_from_string(to_string(p)), p);
  }
  EXPECT_THROW(provenance_from_string("bogus"), InvalidParameter);
}

TEST(Petz, FullTraceRecoversSigma) {
  Rng rng(1);
  const auto sigma = random_density(3, 3, rng);
  const auto r = petz(sigma.as_psd(), full_trace(3));
  Matrix c(1, 1);
  c(0, 0) = 0.7;
  EXPECT_LE(max_abs(r.apply(c) - 0.7 * sigma.matrix()), 1e-13);
}

TEST(Petz, IdentityChannelIsSupportProjection) {
  const PsdOperator sigma(diag({0.6, 0.0, 0.4}));
  const auto r = petz(sigma, identity_map(3));
  EXPECT_LE(choi_distance(r.base, conjugation_map(diag({1, 0, 1}))), 1e-12);
}

TEST(Petz, RejectsNonTracePreserving) {
  EXPECT_THROW(petz(PsdOperator(diag({0.5, 0.5})), QuantumMap({0.5 * Matrix::Identity(2, 2)})), InvalidChannel);
}

TEST(RotatedPetz, MatchesDefinition) {
  Rng rng(2);
  const PsdOperator sigma = random_psd(3, 2, 1.3, rng);
  const QuantumMap n = random_channel(3, 2, 2, rng);
  const RotatedPetzFamily fam(sigma, n);
  for (double t : {0.0, 0.7, -3.1}) {
    const Matrix x = random_density(2, 2, rng).matrix();
    const Matrix want = naive_rotated_petz(sigma.matrix(), n, t, x);
    EXPECT_LE(max_abs(fam.apply(t, x) - want), 1e-12);
    EXPECT_LE(max_abs(rotated_petz(sigma, n, t).apply(x) - want), 1e-12);
  }
}

TEST(RotatedPetz, ZeroIsPetzAndMaximallyMixedIsStatic) {
  Rng rng(3);
  const PsdOperator sigma = random_psd(2, 2, 1.0, rng);
  const QuantumMap n = random_channel(2, 2, 2, rng);
  EXPECT_LE(choi_distance(rotated_petz(sigma, n, 0.0).base, petz(sigma, n).base), 1e-12);
  const PsdOperator mixed(0.5 * Matrix::Identity(2, 2));
  const QuantumMap u = random_channel(2, 2, 1, rng);
  EXPECT_LE(choi_distance(rotated_petz(mixed, u, 2.5).base, rotated_petz(mixed, u, -1.0).base), 1e-12);
}

TEST(RotatedPetz, RecoversSigma) {
  Rng rng(4);
  const PsdOperator sigma = random_psd(3, 2, 0.8, rng);
  const QuantumMap n = random_channel(3, 2, 3, rng);
  const Matrix diff = rotated_petz(sigma, n, 0.7).apply(n.apply(sigma.matrix())) - sigma.matrix();
  EXPECT_LE(trace_norm_hermitian(0.5 * (diff + diff.adjoint())), 1e-9);
}

TEST(Rotation, Examples) {
  Rng rng(5);
  const PsdOperator omega = random_psd(3, 2, 1.0, rng);
  EXPECT_LE(choi_distance(rotation(omega, 0.0), conjugation_map(support_projector(omega.matrix()))), 1e-12);
  const PsdOperator mixed(0.5 * Matrix::Identity(2, 2));
  EXPECT_LE(choi_distance(rotation(mixed, 1.3), identity_map(2)), 1e-12);
}

TEST(CmiRecovery, AgreesWithRotatedPetzOfTraceChannel) {
  Rng rng(6);
  const CompositeLabels abc({"A", "B", "C"}, {2, 2, 2});
  const auto rho = random_density(abc, 8, rng);
  const auto rho_ac = rho.marginal({0, 2});
  const double t = 0.9;
  // rotated_petz(rho_AC (x) I_B, Tr_A) maps B C -> A B C.
  const std::vector<std::size_t> ac{0, 2};
  const PsdOperator sigma(abc, embed_operator(rho_ac.matrix(), abc, ac));
  const QuantumMap tr_a = partial_trace_map(abc, std::vector<std::size_t>{0});
  const QuantumMap lhs = rotated_petz(sigma, tr_a, t).base;
  // (id_B (x) R_{C->AC}) gives B A C; reorder to A B C.
  const std::vector<std::size_t> perm{1, 0, 2};
  const QuantumMap rhs = compose(permutation_map(CompositeLabels({"B", "A", "C"}, {2, 2, 2}), perm),
                                 tensor(identity_map(2), cmi_recovery(rho_ac, t).base));
  EXPECT_LE(choi_distance(lhs, rhs), 1e-9);
  EXPECT_LE(max_abs(cmi_recovery(rho_ac, t).apply(rho_ac.marginal({1}).matrix()) - rho_ac.matrix()), 1e-10);
}

TEST(CmiRecovery, ProductStateAndMaximallyMixed) {
  Rng rng(7);
  const Matrix a = random_density(2, 2, rng).matrix();
  const Matrix c = random_density(3, 3, rng).matrix();
  const DensityOperator prod(CompositeLabels({"A", "C"}, {2, 3}), kron(a, c));
  const Matrix x = random_density(3, 3, rng).matrix();
  EXPECT_LE(max_abs(cmi_recovery(prod, 0.4).apply(x) - kron(a, x)), 1e-12);
  const DensityOperator mixed(CompositeLabels({"A", "C"}, {2, 2}), Matrix::Identity(4, 4) / 4.0);
  EXPECT_LE(choi_distance(cmi_recovery(mixed, 0.0).base, cmi_recovery(mixed, 5.0).base), 1e-12);
}

TEST(SequentialRecovery, TwoPartiesIsCmiRecovery) {
  Rng rng(8);
  const auto rho = random_density(CompositeLabels({"A1", "A2", "C"}, {2, 2, 2}), 8, rng);
  const double t = -0.6;
  const QuantumMap expected = tensor(identity_map(2), cmi_recovery(rho.marginal({1, 2}), t).base);
  EXPECT_LE(choi_distance(sequential_recovery(rho, t).base, expected), 1e-10);
}

TEST(SequentialRecovery, ProductAndMarkovStatesRecoverExactly) {
  Rng rng(9);
  const Matrix prod = kron(kron(random_density(2, 2, rng).matrix(), random_density(2, 2, rng).matrix()),
                           kron(random_density(2, 2, rng).matrix(), random_density(2, 2, rng).matrix()));
  const DensityOperator p(CompositeLabels::anonymous({2, 2, 2, 2}), prod);
  EXPECT_NEAR(fidelity(prod, sequential_recovery(p, 0.3).apply(p.marginal({0, 3}).matrix())), 1.0, 1e-10);

  // A1 - C - A2 Markov chain: sum_c p(c) rho_A1^c (x) rho_A2^c (x) |c><c|.
  Matrix markov = Matrix::Zero(8, 8);
  const std::vector<double> pc{0.3, 0.7};
  for (Index c = 0; c < 2; ++c) {
    const Matrix a1 = random_density(2, 2, rng).matrix();
    const Matrix a2 = random_density(2, 2, rng).matrix();
    markov += pc[static_cast<std::size_t>(c)] * kron(kron(a1, a2), testing::ket_bra(testing::basis(2, c)));
  }
  const DensityOperator m(CompositeLabels({"A1", "A2", "C"}, {2, 2, 2}), markov);
  EXPECT_NEAR(fidelity(markov, sequential_recovery(m, 0.0).apply(m.marginal({0, 2}).matrix())), 1.0, 1e-8);
}

TEST(EbMap, MaximallyMixedIsDephasing) {
  const DensityOperator mixed(0.5 * Matrix::Identity(2, 2));
  EXPECT_LE(choi_distance(eb_map(mixed, RankOneMeasurement::computational(2)), dephasing()), 1e-12);
  const DensityOperator d(diag({0.3, 0.7}));
  const QuantumMap e = eb_map(d, RankOneMeasurement::computational(2));
  EXPECT_LE(max_abs(e.apply(diag({0.6, 0.4})) - diag({0.6, 0.4})), 1e-14);
  EXPECT_LE(max_abs(e.apply(mat2(0.5, 0.4, 0.4, 0.5)) - diag({0.5, 0.5})), 1e-14);
}

TEST(EbMap, EqualsPetzOfMeasurementComposedWithMeasurement) {
  Rng rng(10);
  const auto rho = random_density(2, 2, rng);
  const auto m = random_measurement(2, 3, rng);
  const QuantumMap meas = measurement_channel(m);
  const QuantumMap petz_m = compose(petz(rho.as_psd(), meas).base, meas);
  EXPECT_LE(choi_distance(eb_map(rho, m), petz_m), 1e-9);
}

TEST(EbMap, DropsZeroProbabilityOutcomes) {
  const DensityOperator pure(diag({1, 0}));
  const QuantumMap e = eb_map(pure, RankOneMeasurement::computational(2));
  EXPECT_EQ(e.kraus().size(), 1u);
  EXPECT_TRUE(e.trace_nonincreasing());
}

TEST(Pgm, OrthogonalPureStatesAndSingleMember) {
  const Ensemble e({0.5, 0.5}, {diag({1, 0}), diag({0, 1})});
  const auto povm = pgm_povm(e, 0.8);
  EXPECT_LE(max_abs(povm[0] - diag({1, 0})), 1e-12);
  EXPECT_LE(max_abs(povm[1] - diag({0, 1})), 1e-12);
  EXPECT_LE(max_abs(pgm(e, 0.8).apply(mat2(0.5, 0.4, 0.4, 0.5)) - diag({0.5, 0.5})), 1e-12);

  Rng rng(11);
  const Matrix w = random_density(3, 2, rng).matrix();
  const auto single = pgm_povm(Ensemble({1.0}, {w}), 1.1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_LE(max_abs(single[0] - support_projector(w)), 1e-10);
}

}  // namespace
}  // namespace qrecov
