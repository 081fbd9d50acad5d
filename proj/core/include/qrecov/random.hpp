#pragma once

// Seeded samplers for states, isometries, channels, measurements and
// ensembles. Every sampler takes an explicit stream; parallel trials derive
// disjoint substreams from (seed, index).

#include <cstdint>
#include <random>

#include "qrecov/quantum.hpp"

namespace qrecov {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  /// Independent stream keyed by `index`; same (seed, index) -> same stream.
  Rng substream(std::uint64_t index) const { return Rng(mix(seed_ ^ mix(index + 0x9e3779b97f4a7c15ULL))); }

  std::uint64_t seed() const noexcept { return seed_; }
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::size_t uniform_int(std::size_t lo, std::size_t hi);
  Complex complex_normal() { return {normal(), normal()}; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// rows x cols matrix of i.i.d. standard complex Gaussians.
Matrix ginibre(Index rows, Index cols, Rng& rng);

/// G G^dag / Tr(G G^dag) with G a dim x rank Gaussian draw.
DensityOperator random_density(std::size_t dim, std::size_t rank, Rng& rng);
DensityOperator random_density(const CompositeLabels& labels, std::size_t rank, Rng& rng);

/// Random PSD operator of the given rank, scaled so that its trace is `trace`.
PsdOperator random_psd(std::size_t dim, std::size_t rank, double trace, Rng& rng);

/// Density operator with support inside supp(sigma), of rank <= rank(sigma).
DensityOperator random_density_within(const PsdOperator& sigma, std::size_t rank, Rng& rng);

/// out x in isometry from orthonormalizing a Gaussian draw (Haar distributed).
Matrix random_isometry(std::size_t in_dim, std::size_t out_dim, Rng& rng);
Matrix random_unitary(std::size_t dim, Rng& rng);

/// Kraus operators (I_out (x) <e|) V for a random isometry V: in -> out (x) env.
QuantumMap random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t env_dim, Rng& rng);

/// Rank-one measurement with `outcomes` >= dim vectors, rows of a random isometry.
RankOneMeasurement random_measurement(std::size_t dim, std::size_t outcomes, Rng& rng);

/// Uniform draw from the probability simplex.
std::vector<double> random_simplex(std::size_t n, Rng& rng);

/// Ensemble of random density operators of the given rank (0 = full).
Ensemble random_ensemble(std::size_t size, std::size_t dim, std::size_t rank, Rng& rng);

}  // namespace qrecov
