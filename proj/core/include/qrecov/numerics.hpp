#pragma once

// Dense complex-matrix kernel: Hermitian eigendecomposition, matrix functions
// restricted to the support, Schatten norms, tensor products, partial traces
// and subsystem permutations.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qrecov/labels.hpp"

namespace qrecov {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by the whole library.
///
/// An eigenvalue is treated as zero iff it is at most
/// `dim * lambda_max * rank_cutoff`. Hermiticity and positivity are checked
/// relative to the largest eigenvalue magnitude.
struct Tolerances {
  double rank_cutoff = 1e-12;
  double herm = 1e-10;
  double psd = 1e-10;
};

inline constexpr Tolerances kDefaultTolerances{};
inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Hex digest of the raw matrix bits, used in diagnostics.
std::string fingerprint(const Matrix& m);

bool all_finite(const Matrix& m);

/// Square matrix validated Hermitian; stored exactly symmetrized.
class HermitianOperator {
 public:
  explicit HermitianOperator(const Matrix& m, const Tolerances& tol = kDefaultTolerances);

  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

/// Ascending eigenvalues and orthonormal eigenvector columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

EigenSystem herm_eig(const HermitianOperator& a);

/// Spectral data of a PSD operator with its support identified.
///
/// Every function of the operator evaluated through this class sums only over
/// eigenvalues above the rank cutoff.
class PsdSpectrum {
 public:
  explicit PsdSpectrum(const HermitianOperator& a, const Tolerances& tol = kDefaultTolerances);
  explicit PsdSpectrum(const Matrix& a, const Tolerances& tol = kDefaultTolerances)
      : PsdSpectrum(HermitianOperator(a, tol), tol) {}

  Index dim() const noexcept { return eig_.values.size(); }
  Index rank() const noexcept { return rank_; }
  double cutoff() const noexcept { return cutoff_; }
  const EigenSystem& eig() const noexcept { return eig_; }
  bool on_support(Index i) const { return eig_.values(i) > cutoff_; }
  double max_eigenvalue() const;

  /// sum over the support of lambda^z |i><i|.
  Matrix power(Complex z) const;
  /// sum over the support of log(lambda) |i><i|.
  Matrix log() const;
  Matrix projector() const;

 private:
  EigenSystem eig_;
  double cutoff_ = 0.0;
  Index rank_ = 0;
};

Matrix power_on_support(const HermitianOperator& a, Complex z, const Tolerances& tol = kDefaultTolerances);
Matrix power_on_support(const Matrix& a, Complex z, const Tolerances& tol = kDefaultTolerances);
Matrix support_projector(const HermitianOperator& a, const Tolerances& tol = kDefaultTolerances);
Matrix support_projector(const Matrix& a, const Tolerances& tol = kDefaultTolerances);

/// Singular values, descending.
RealVector singular_values(const Matrix& a);

/// (sum sigma_i^p)^(1/p); p = kInfinityNorm gives the largest singular value.
double schatten_norm(const Matrix& a, double p);
/// log of schatten_norm, evaluated without overflow for large p.
double log_schatten_norm(const Matrix& a, double p);

Matrix kron(const Matrix& a, const Matrix& b);

/// Traces out the subsystems listed in `traced`.
Matrix partial_trace(const Matrix& m, const CompositeLabels& labels, std::span<const std::size_t> traced);

/// Reorders tensor factors: position p of the result holds subsystem perm[p].
Matrix permute_systems(const Matrix& m, const CompositeLabels& labels, std::span<const std::size_t> perm);

/// Embeds `op`, acting on the subsystems `positions` (in that order), into the
/// full space described by `labels` by tensoring identities on the rest.
Matrix embed_operator(const Matrix& op, const CompositeLabels& labels, std::span<const std::size_t> positions);

/// Full-space offsets of every multi-index over the subsystems `subset`,
/// enumerated in row-major order of `subset` (last entry varies fastest).
std::vector<std::size_t> subsystem_offsets(const CompositeLabels& labels, std::span<const std::size_t> subset);

/// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const Matrix& m);

}  // namespace qrecov
