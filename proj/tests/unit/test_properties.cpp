// Randomized invariants over many seeded draws.

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "qrecov/entropy.hpp"
#include "qrecov/random.hpp"
#include "qrecov/recovery.hpp"
#include "qrecov/verify.hpp"
#include "test_util.hpp"

namespace qrecov {
namespace {

using testing::max_abs;

constexpr int kDraws = 25;

TEST(Properties, PowerAdditivityOnSupport) {
  Rng rng(1);
  for (int i = 0; i < kDraws; ++i) {
    const Matrix a = random_psd(4, 1 + rng.uniform_int(1, 3), 1.0, rng).matrix();
    const double x = rng.uniform(-1.5, 1.5);
    const double y = rng.uniform(-1.5, 1.5);
    const Matrix lhs = power_on_support(a, Complex(x, 0.3)) * power_on_support(a, Complex(y, -0.7));
    EXPECT_LE(max_abs(lhs - power_on_support(a, Complex(x + y, -0.4))), 1e-9);
    const Matrix u = power_on_support(a, Complex(0.0, rng.uniform(-5, 5)));
    EXPECT_LE(max_abs(u * u.adjoint() - support_projector(a)), 1e-12);
  }
}

TEST(Properties, SchattenInvarianceAndOrdering) {
  Rng rng(2);
  for (int i = 0; i < kDraws; ++i) {
    const Matrix x = ginibre(3, 3, rng);
    const Matrix u = random_unitary(3, rng);
    const Matrix v = random_unitary(3, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double p : {1.0, 1.5, 2.0, 4.0, 50.0}) {
      const double n = schatten_norm(x, p);
      EXPECT_NEAR(schatten_norm(u * x * v, p), n, 1e-12 * n);
      EXPECT_LE(n, prev * (1 + 1e-12));
      prev = n;
    }
    EXPECT_NEAR(schatten_norm(x, 2.0), x.norm(), 1e-12 * x.norm());
  }
}

TEST(Properties, PartialTraceOrderAndSpectrum) {
  Rng rng(3);
  const CompositeLabels abc({"A", "B", "C"}, {2, 3, 2});
  for (int i = 0; i < kDraws; ++i) {
    const Matrix rho = random_density(abc, 5, rng).matrix();
    const std::vector<std::size_t> a{0}, c{2}, ac{0, 2};
    const Matrix once = partial_trace(rho, abc, ac);
    const Matrix twice =
        partial_trace(partial_trace(rho, abc, a), CompositeLabels({"B", "C"}, {3, 2}), std::vector<std::size_t>{1});
    const Matrix other =
        partial_trace(partial_trace(rho, abc, c), CompositeLabels({"A", "B"}, {2, 3}), std::vector<std::size_t>{0});
    EXPECT_LE(max_abs(once - twice), 1e-14);
    EXPECT_LE(max_abs(once - other), 1e-14);
    const auto e = herm_eig(HermitianOperator(rho));
    EXPECT_NEAR(e.values.sum(), 1.0, 1e-12);
  }
}

TEST(Properties, AdjointDuality) {
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const QuantumMap n = random_channel(3, 2, 2 + rng.uniform_int(0, 2), rng);
    const Matrix x = ginibre(3, 3, rng);
    const Matrix y = ginibre(2, 2, rng);
    const Complex lhs = (n.apply(x).adjoint() * y).trace();
    const Complex rhs = (x.adjoint() * adjoint_map(n).apply(y)).trace();
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(Properties, ChoiIsPsdAndStinespringRoundTrips) {
  Rng rng(5);
  for (int i = 0; i < kDraws; ++i) {
    const QuantumMap n = random_channel(2, 3, 1 + rng.uniform_int(0, 4), rng);
    const auto e = herm_eig(choi(n));
    EXPECT_GE(e.values.minCoeff(), -1e-12);
    EXPECT_LE(choi_distance(channel_from_isometry(stinespring(n)), n), 1e-12);
  }
}

TEST(Properties, DataProcessingAndRecoveryBounds) {
  Rng rng(6);
  for (int i = 0; i < kDraws; ++i) {
    const Instance inst = build_instance(CaseTag::channel, {3, 2, 2}, rng);
    const double delta = rel_ent_difference(inst.rho, *inst.sigma, *inst.channel).value();
    EXPECT_GE(delta, -1e-10);
    const RecoveryMap r = petz(*inst.sigma, *inst.channel);
    const double f = fidelity(inst.rho.matrix(), r.apply(inst.channel->apply(inst.rho.matrix())));
    EXPECT_LE(f, 1.0 + 1e-12);
    EXPECT_LE(-std::log(f), delta + 1e-7);
  }
}

TEST(Properties, CmiIsRelativeEntropyDifference) {
  Rng rng(7);
  const CompositeLabels abc({"A", "B", "C"}, {2, 2, 2});
  const std::vector<std::size_t> ac{0, 2}, a{0};
  for (int i = 0; i < kDraws; ++i) {
    const auto rho = random_density(abc, 8, rng);
    const PsdOperator sigma(abc, embed_operator(rho.marginal({0, 2}).matrix(), abc, ac));
    const double via_channel = rel_ent_difference(rho, sigma, partial_trace_map(abc, a)).value();
    EXPECT_NEAR(cmi(rho).value(), via_channel, 1e-10);
    EXPECT_GE(cmi(rho).value(), -1e-12);
  }
}

TEST(Properties, RenyiCmiIsDeltaTildeOfTheSsaTriple) {
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const Instance inst = build_instance(CaseTag::ssa, {2, 2, 2}, rng);
    for (double alpha : {0.6, 0.9, 1.5}) {
      const RenyiParam p(alpha);
      EXPECT_NEAR(renyi_cmi(inst.rho, p).value(), delta_tilde(inst.rho, *inst.sigma, *inst.channel, p).value(), 1e-9);
    }
  }
}

TEST(Properties, DeltaTildeApproachesDeltaMonotonically) {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const Instance inst = build_instance(CaseTag::upper, {2, 2, 2}, rng);
    const double delta = rel_ent_difference(inst.rho, *inst.sigma, *inst.channel).value();
    double below = std::numeric_limits<double>::infinity();
    for (double alpha : {0.6, 0.9, 0.99, 0.999}) {
      const double gap = std::abs(delta_tilde(inst.rho, *inst.sigma, *inst.channel, RenyiParam(alpha)).value() - delta);
      EXPECT_LE(gap, below + 1e-10);
      below = gap;
    }
    EXPECT_LE(below, 1e-2);
  }
}

TEST(Properties, RotatedPetzIsUnitalOnSupport) {
  Rng rng(10);
  for (int i = 0; i < kDraws; ++i) {
    const PsdOperator sigma = random_psd(3, 3, 1.0, rng);
    const QuantumMap n = random_channel(3, 2, 2, rng);
    const QuantumMap r = rotated_petz(sigma, n, rng.uniform(-10, 10)).base;
    EXPECT_TRUE(r.trace_nonincreasing());
    // Adjoint of the recovery sends I to the projector onto supp N(sigma).
    EXPECT_LE(max_abs(adjoint_map(r).apply(Matrix::Identity(3, 3)) - support_projector(n.apply(sigma.matrix()))),
              1e-10);
  }
}

}  // namespace
}  // namespace qrecov
