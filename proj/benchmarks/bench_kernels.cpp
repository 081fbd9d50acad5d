#include <benchmark/benchmark.h>

#include "qrecov/entropy.hpp"
#include "qrecov/random.hpp"
#include "qrecov/recovery.hpp"
#include "qrecov/verify.hpp"

namespace {

using namespace qrecov;

void BM_HermEig(benchmark::State& state) {
  Rng rng(1);
  const HermitianOperator a(random_density(static_cast<std::size_t>(state.range(0)), 4, rng).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a));
}
BENCHMARK(BM_HermEig)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_PowerOnSupport(benchmark::State& state) {
  Rng rng(2);
  const Matrix a = random_density(static_cast<std::size_t>(state.range(0)), 3, rng).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(power_on_support(a, Complex(-0.5, 1.3)));
}
BENCHMARK(BM_PowerOnSupport)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_DeltaTilde(benchmark::State& state) {
  Rng rng(3);
  const Instance inst = build_instance(CaseTag::ssa, {2, 2, 2}, rng);
  const auto iso = stinespring(*inst.channel);
  const RenyiParam a(0.75);
  for (auto _ : state) benchmark::DoNotOptimize(delta_tilde(inst.rho, *inst.sigma, *inst.channel, iso, a));
}
BENCHMARK(BM_DeltaTilde);

void BM_RotatedPetzApply(benchmark::State& state) {
  Rng rng(4);
  const auto d = static_cast<std::size_t>(state.range(0));
  const PsdOperator sigma = random_psd(d, d, 1.0, rng);
  const QuantumMap n = random_channel(d, d, 2, rng);
  const RotatedPetzFamily fam(sigma, n);
  const Matrix x = random_density(d, d, rng).matrix();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fam.apply(t, x));
    t += 0.01;
  }
}
BENCHMARK(BM_RotatedPetzApply)->Arg(4)->Arg(8)->Arg(16);

void BM_CheckLower(benchmark::State& state) {
  Rng rng(5);
  const Instance inst = build_instance(CaseTag::channel, {2, 2, 2}, rng);
  TSearchConfig cfg;
  cfg.coarse_points = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_lower(inst, cfg));
}
BENCHMARK(BM_CheckLower)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
