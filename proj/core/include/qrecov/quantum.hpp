#pragma once

// Validated quantum objects: states, channels in Kraus form, isometric
// extensions, ensembles, rank-one measurements.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrecov/labels.hpp"
#include "qrecov/numerics.hpp"

namespace qrecov {

/// Positive semi-definite operator on a labelled composite system.
class PsdOperator {
 public:
  PsdOperator(CompositeLabels labels, const Matrix& m, const Tolerances& tol = kDefaultTolerances);
  /// Single anonymous subsystem of dimension m.rows().
  explicit PsdOperator(const Matrix& m, const Tolerances& tol = kDefaultTolerances);

  const CompositeLabels& labels() const noexcept { return labels_; }
  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }
  Complex trace() const { return m_.trace(); }

 private:
  CompositeLabels labels_;
  Matrix m_;
};

/// PSD operator with unit trace.
class DensityOperator {
 public:
  DensityOperator(CompositeLabels labels, const Matrix& m, const Tolerances& tol = kDefaultTolerances);
  explicit DensityOperator(const Matrix& m, const Tolerances& tol = kDefaultTolerances);

  const CompositeLabels& labels() const noexcept { return labels_; }
  const Matrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  /// Marginal on the subsystems at `keep`, in that order.
  DensityOperator marginal(std::span<const std::size_t> keep) const;
  DensityOperator marginal(std::initializer_list<std::size_t> keep) const {
    return marginal(std::span<const std::size_t>(keep.begin(), keep.size()));
  }
  DensityOperator permuted(std::span<const std::size_t> perm) const;
  PsdOperator as_psd() const { return PsdOperator(labels_, m_); }

 private:
  CompositeLabels labels_;
  Matrix m_;
};

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
PsdOperator tensor(const PsdOperator& a, const PsdOperator& b);

/// Completely positive map X -> sum_k K_k X K_k^dag.
class QuantumMap {
 public:
  QuantumMap() = default;
  explicit QuantumMap(std::vector<Matrix> kraus);

  std::size_t in_dim() const noexcept { return in_; }
  std::size_t out_dim() const noexcept { return out_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  bool trace_preserving() const noexcept { return trace_preserving_; }
  bool trace_nonincreasing() const noexcept { return trace_nonincreasing_; }

  Matrix apply(const Matrix& x) const;
  /// sum_k K_k^dag K_k
  Matrix kraus_gram() const;

 private:
  std::size_t in_ = 0;
  std::size_t out_ = 0;
  std::vector<Matrix> kraus_;
  bool trace_preserving_ = false;
  bool trace_nonincreasing_ = false;
};

/// Isometry V: in -> out (x) env with Tr_env V X V^dag = N(X); env is the last factor.
struct StinespringIsometry {
  Matrix v;
  std::size_t env_dim = 1;
  std::size_t out_dim() const { return static_cast<std::size_t>(v.rows()) / env_dim; }
};

QuantumMap channel_from_kraus(std::vector<Matrix> kraus);
Matrix apply_map(const QuantumMap& map, const Matrix& x);
QuantumMap adjoint_map(const QuantumMap& map);
/// second o first
QuantumMap compose(const QuantumMap& second, const QuantumMap& first);
QuantumMap tensor(const QuantumMap& a, const QuantumMap& b);
QuantumMap identity_map(std::size_t dim);
/// X -> K X K^dag
QuantumMap conjugation_map(const Matrix& k);
QuantumMap partial_trace_map(const CompositeLabels& labels, std::span<const std::size_t> traced);
/// Reorders tensor factors like permute_systems.
QuantumMap permutation_map(const CompositeLabels& labels, std::span<const std::size_t> perm);

/// Environment dimension equals the number of Kraus operators.
StinespringIsometry stinespring(const QuantumMap& map);
/// Kraus operators (I (x) <e|) V.
QuantumMap channel_from_isometry(const StinespringIsometry& iso);

/// sum_ij |i><j| (x) N(|i><j|) on (input reference) (x) (output).
HermitianOperator choi(const QuantumMap& map);
/// Operator norm of the difference of the Choi matrices.
double choi_distance(const QuantumMap& a, const QuantumMap& b);

/// Probability vector with members of uniform dimension.
struct Ensemble {
  std::vector<double> probs;
  std::vector<Matrix> members;

  Ensemble(std::vector<double> probs, std::vector<Matrix> members);
  std::size_t size() const { return probs.size(); }
  Index member_dim() const { return members.front().rows(); }
  Matrix average() const;
};

/// sum_x p(x) |x><x| (x) member_x with labels (X, B).
PsdOperator cq_state(const Ensemble& e);

/// Vectors phi_x with sum_x |phi_x><phi_x| = I.
class RankOneMeasurement {
 public:
  explicit RankOneMeasurement(std::vector<Vector> vectors, double tol = 1e-10);
  /// Columns of `basis` become the measurement vectors.
  static RankOneMeasurement from_columns(const Matrix& basis);
  static RankOneMeasurement computational(std::size_t dim);

  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  std::size_t outcomes() const noexcept { return vectors_.size(); }
  Index dim() const { return vectors_.front().size(); }

 private:
  std::vector<Vector> vectors_;
};

/// X -> sum_x <phi_x|X|phi_x> |x><x|
QuantumMap measurement_channel(const RankOneMeasurement& m);

}  // namespace qrecov
