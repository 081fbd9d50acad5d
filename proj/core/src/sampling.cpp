#include <cmath>

#include "qrecov/error.hpp"
#include "qrecov/random.hpp"

namespace qrecov {

std::uint64_t Rng::mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t Rng::uniform_int(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw InvalidParameter("uniform_int: empty range");
  const auto span = hi - lo + 1;
  auto k = static_cast<std::size_t>(uniform() * static_cast<double>(span));
  return lo + std::min(k, span - 1);
}

Matrix ginibre(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  // Column-major fill order is part of the reproducibility contract.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
  }
  return g;
}

DensityOperator random_density(std::size_t dim, std::size_t rank, Rng& rng) {
  return random_density(CompositeLabels::anonymous({dim}), rank, rng);
}

DensityOperator random_density(const CompositeLabels& labels, std::size_t rank, Rng& rng) {
  const auto dim = labels.total_dim();
  if (rank < 1 || rank > dim) throw InvalidParameter("random_density: need 1 <= rank <= dim");
  const Matrix g = ginibre(static_cast<Index>(dim), static_cast<Index>(rank), rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(labels, 0.5 * (rho + rho.adjoint()));
}

PsdOperator random_psd(std::size_t dim, std::size_t rank, double trace, Rng& rng) {
  const auto rho = random_density(dim, rank, rng);
  return PsdOperator(trace * rho.matrix());
}

DensityOperator random_density_within(const PsdOperator& sigma, std::size_t rank, Rng& rng) {
  const PsdSpectrum spec(sigma.matrix());
  const Index r = spec.rank();
  if (r == 0) throw InvalidParameter("random_density_within: sigma is zero");
  const auto k = std::min<std::size_t>(rank == 0 ? static_cast<std::size_t>(r) : rank, static_cast<std::size_t>(r));
  // Support eigenvectors are the last r columns (ascending order).
  const Matrix w = spec.eig().vectors.rightCols(r);
  const Matrix g = ginibre(r, static_cast<Index>(k), rng);
  Matrix small = g * g.adjoint();
  small /= small.trace().real();
  Matrix rho = w * small * w.adjoint();
  return DensityOperator(sigma.labels(), 0.5 * (rho + rho.adjoint()));
}

Matrix random_isometry(std::size_t in_dim, std::size_t out_dim, Rng& rng) {
  if (out_dim < in_dim || in_dim < 1) throw InvalidParameter("random_isometry: need 1 <= in_dim <= out_dim");
  const auto in = static_cast<Index>(in_dim);
  const auto out = static_cast<Index>(out_dim);
  const Matrix g = ginibre(out, in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(out, in);
  const Matrix r = qr.matrixQR().topRows(in).triangularView<Eigen::Upper>();
  // Phase fix so that the distribution is Haar.
  for (Index j = 0; j < in; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

Matrix random_unitary(std::size_t dim, Rng& rng) { return random_isometry(dim, dim, rng); }

QuantumMap random_channel(std::size_t in_dim, std::size_t out_dim, std::size_t env_dim, Rng& rng) {
  if (out_dim * env_dim < in_dim) throw InvalidParameter("random_channel: need out * env >= in");
  const Matrix v = random_isometry(in_dim, out_dim * env_dim, rng);
  return channel_from_isometry(StinespringIsometry{v, env_dim});
}

RankOneMeasurement random_measurement(std::size_t dim, std::size_t outcomes, Rng& rng) {
  if (outcomes < dim) throw InvalidParameter("random_measurement: need outcomes >= dim");
  const Matrix v = random_isometry(dim, outcomes, rng);  // outcomes x dim, V^dag V = I
  std::vector<Vector> phis;
  for (Index x = 0; x < v.rows(); ++x) phis.push_back(v.row(x).adjoint());
  return RankOneMeasurement(std::move(phis));
}

std::vector<double> random_simplex(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

Ensemble random_ensemble(std::size_t size, std::size_t dim, std::size_t rank, Rng& rng) {
  auto probs = random_simplex(size, rng);
  std::vector<Matrix> members;
  for (std::size_t x = 0; x < size; ++x) {
    members.push_back(random_density(dim, rank == 0 ? dim : rank, rng).matrix());
  }
  return Ensemble(std::move(probs), std::move(members));
}

}  // namespace qrecov
