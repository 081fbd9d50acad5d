#include "qrecov/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qrecov/error.hpp"

namespace qrecov {

namespace {

void check_labels(const CompositeLabels& labels, const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() != static_cast<Index>(labels.total_dim())) {
    throw ShapeError(std::string(what) + ": matrix shape does not match subsystem dimensions");
  }
}

Matrix validated_psd(const CompositeLabels& labels, const Matrix& m, const Tolerances& tol, const char* what) {
  check_labels(labels, m, what);
  HermitianOperator h = [&] {
    try {
      return HermitianOperator(m, tol);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string(what) + ": " + e.what());
    }
  }();
  try {
    PsdSpectrum spec(h, tol);
  } catch (const NotPSDError& e) {
    throw NotPSDError(std::string(what) + ": PSD within psd_tol violated; " + e.what());
  }
  return h.matrix();
}

double hermitian_op_norm(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> s(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return std::max(std::abs(s.eigenvalues()(0)), std::abs(s.eigenvalues()(s.eigenvalues().size() - 1)));
}

double hermitian_max_eig(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> s(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return s.eigenvalues()(s.eigenvalues().size() - 1);
}

}  // namespace

PsdOperator::PsdOperator(CompositeLabels labels, const Matrix& m, const Tolerances& tol)
    : labels_(std::move(labels)), m_(validated_psd(labels_, m, tol, "PSDOperator")) {}

PsdOperator::PsdOperator(const Matrix& m, const Tolerances& tol)
    : PsdOperator(CompositeLabels::anonymous({static_cast<std::size_t>(m.rows())}), m, tol) {}

DensityOperator::DensityOperator(CompositeLabels labels, const Matrix& m, const Tolerances& tol)
    : labels_(std::move(labels)), m_(validated_psd(labels_, m, tol, "DensityOperator")) {
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "DensityOperator: Tr = 1 within 1e-10 violated (trace = %.12g)", tr);
    throw ValidationError(buf);
  }
}

DensityOperator::DensityOperator(const Matrix& m, const Tolerances& tol)
    : DensityOperator(CompositeLabels::anonymous({static_cast<std::size_t>(m.rows())}), m, tol) {}

DensityOperator DensityOperator::marginal(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);
  }
  const Matrix reduced = partial_trace(m_, labels_, traced);
  const auto kept_labels = labels_.remove(traced);
  // `reduced` is in natural order; reorder to the order requested in `keep`.
  std::vector<std::size_t> natural;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(traced.begin(), traced.end(), i) == traced.end()) natural.push_back(i);
  }
  std::vector<std::size_t> perm;
  for (auto k : keep) {
    auto it = std::find(natural.begin(), natural.end(), k);
    if (it == natural.end()) throw ShapeError("marginal: subsystem index out of range");
    perm.push_back(static_cast<std::size_t>(it - natural.begin()));
  }
  return DensityOperator(kept_labels.permuted(perm), permute_systems(reduced, kept_labels, perm));
}

DensityOperator DensityOperator::permuted(std::span<const std::size_t> perm) const {
  return DensityOperator(labels_.permuted(perm), permute_systems(m_, labels_, perm));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(a.labels().concat(b.labels()), kron(a.matrix(), b.matrix()));
}

PsdOperator tensor(const PsdOperator& a, const PsdOperator& b) {
  return PsdOperator(a.labels().concat(b.labels()), kron(a.matrix(), b.matrix()));
}

QuantumMap::QuantumMap(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ShapeError("QuantumMap needs at least one Kraus operator");
  out_ = static_cast<std::size_t>(kraus_.front().rows());
  in_ = static_cast<std::size_t>(kraus_.front().cols());
  for (const auto& k : kraus_) {
    if (static_cast<std::size_t>(k.rows()) != out_ || static_cast<std::size_t>(k.cols()) != in_) {
      throw ShapeError("Kraus operators must share one shape");
    }
    if (!all_finite(k)) throw ValidationError("ComplexMatrix: all entries finite violated (Kraus operator)");
  }
  const Matrix gram = kraus_gram();
  const Matrix id = Matrix::Identity(static_cast<Index>(in_), static_cast<Index>(in_));
  trace_preserving_ = hermitian_op_norm(gram - id) <= 1e-9;
  trace_nonincreasing_ = hermitian_max_eig(gram - id) <= 1e-9;
}

Matrix QuantumMap::apply(const Matrix& x) const {
  if (x.rows() != x.cols() || static_cast<std::size_t>(x.rows()) != in_) {
    throw ShapeError("map input has dimension " + std::to_string(x.rows()) + ", expected " + std::to_string(in_));
  }
  Matrix out = Matrix::Zero(static_cast<Index>(out_), static_cast<Index>(out_));
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

Matrix QuantumMap::kraus_gram() const {
  Matrix g = Matrix::Zero(static_cast<Index>(in_), static_cast<Index>(in_));
  for (const auto& k : kraus_) g.noalias() += k.adjoint() * k;
  return g;
}

QuantumMap channel_from_kraus(std::vector<Matrix> kraus) { return QuantumMap(std::move(kraus)); }

Matrix apply_map(const QuantumMap& map, const Matrix& x) { return map.apply(x); }

QuantumMap adjoint_map(const QuantumMap& map) {
  std::vector<Matrix> ks;
  ks.reserve(map.kraus().size());
  for (const auto& k : map.kraus()) ks.push_back(k.adjoint());
  return QuantumMap(std::move(ks));
}

QuantumMap compose(const QuantumMap& second, const QuantumMap& first) {
  if (second.in_dim() != first.out_dim()) throw ShapeError("compose: dimension mismatch");
  std::vector<Matrix> ks;
  ks.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& b : second.kraus()) {
    for (const auto& a : first.kraus()) ks.push_back(b * a);
  }
  return QuantumMap(std::move(ks));
}

QuantumMap tensor(const QuantumMap& a, const QuantumMap& b) {
  std::vector<Matrix> ks;
  ks.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus()) {
    for (const auto& kb : b.kraus()) ks.push_back(kron(ka, kb));
  }
  return QuantumMap(std::move(ks));
}

QuantumMap identity_map(std::size_t dim) {
  return QuantumMap({Matrix::Identity(static_cast<Index>(dim), static_cast<Index>(dim))});
}

QuantumMap conjugation_map(const Matrix& k) { return QuantumMap({k}); }

QuantumMap partial_trace_map(const CompositeLabels& labels, std::span<const std::size_t> traced) {
  std::vector<bool> gone(labels.size(), false);
  for (auto t : traced) {
    if (t >= labels.size()) throw ShapeError("traced subsystem index out of range");
    gone[t] = true;
  }
  std::vector<std::size_t> kept_idx, gone_idx;
  for (std::size_t i = 0; i < labels.size(); ++i) (gone[i] ? gone_idx : kept_idx).push_back(i);
  const auto off_kept = subsystem_offsets(labels, kept_idx);
  const auto off_gone = subsystem_offsets(labels, gone_idx);
  const auto d = static_cast<Index>(labels.total_dim());
  const auto dk = static_cast<Index>(off_kept.size());
  // K_g = I_kept (x) <g|_traced
  std::vector<Matrix> ks;
  ks.reserve(off_gone.size());
  for (auto g : off_gone) {
    Matrix k = Matrix::Zero(dk, d);
    for (Index i = 0; i < dk; ++i) k(i, static_cast<Index>(off_kept[static_cast<std::size_t>(i)] + g)) = 1.0;
    ks.push_back(std::move(k));
  }
  return QuantumMap(std::move(ks));
}

QuantumMap permutation_map(const CompositeLabels& labels, std::span<const std::size_t> perm) {
  validate_permutation(perm, labels.size());
  const std::vector<std::size_t> order(perm.begin(), perm.end());
  const auto old_index = subsystem_offsets(labels, order);
  const auto d = static_cast<Index>(labels.total_dim());
  Matrix p = Matrix::Zero(d, d);
  for (Index a = 0; a < d; ++a) p(a, static_cast<Index>(old_index[static_cast<std::size_t>(a)])) = 1.0;
  return QuantumMap({p});
}

StinespringIsometry stinespring(const QuantumMap& map) {
  if (!map.trace_preserving()) throw InvalidChannel("stinespring: map is not trace preserving");
  const auto env = map.kraus().size();
  const auto out = static_cast<Index>(map.out_dim());
  const auto in = static_cast<Index>(map.in_dim());
  Matrix v(out * static_cast<Index>(env), in);
  for (std::size_t e = 0; e < env; ++e) {
    const auto& k = map.kraus()[e];
    for (Index b = 0; b < out; ++b) v.row(b * static_cast<Index>(env) + static_cast<Index>(e)) = k.row(b);
  }
  return StinespringIsometry{std::move(v), env};
}

QuantumMap channel_from_isometry(const StinespringIsometry& iso) {
  const auto env = static_cast<Index>(iso.env_dim);
  if (iso.v.rows() % env != 0) throw ShapeError("isometry rows not divisible by env_dim");
  const Index out = iso.v.rows() / env;
  std::vector<Matrix> ks;
  for (Index e = 0; e < env; ++e) {
    Matrix k(out, iso.v.cols());
    for (Index b = 0; b < out; ++b) k.row(b) = iso.v.row(b * env + e);
    ks.push_back(std::move(k));
  }
  return QuantumMap(std::move(ks));
}

HermitianOperator choi(const QuantumMap& map) {
  const auto in = static_cast<Index>(map.in_dim());
  const auto out = static_cast<Index>(map.out_dim());
  Matrix c = Matrix::Zero(in * out, in * out);
  for (const auto& k : map.kraus()) {
    Vector v(in * out);
    for (Index i = 0; i < in; ++i) v.segment(i * out, out) = k.col(i);
    c.noalias() += v * v.adjoint();
  }
  return HermitianOperator(c);
}

double choi_distance(const QuantumMap& a, const QuantumMap& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim()) throw ShapeError("choi_distance: shape mismatch");
  return hermitian_op_norm(choi(a).matrix() - choi(b).matrix());
}

Ensemble::Ensemble(std::vector<double> p, std::vector<Matrix> m) : probs(std::move(p)), members(std::move(m)) {
  if (probs.empty() || probs.size() != members.size()) {
    throw ValidationError("Ensemble: probabilities and members must be non-empty and equal in number");
  }
  double total = 0.0;
  for (double q : probs) {
    if (!(q >= 0.0)) throw ValidationError("Ensemble: probs nonnegative violated");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("Ensemble: probs sum to 1 within 1e-12 violated");
  for (const auto& x : members) {
    if (x.rows() != members.front().rows() || x.cols() != x.rows()) {
      throw ShapeError("Ensemble: members must be square of uniform dimension");
    }
    PsdOperator check(x);
  }
}

Matrix Ensemble::average() const {
  Matrix avg = Matrix::Zero(member_dim(), member_dim());
  for (std::size_t x = 0; x < size(); ++x) avg += probs[x] * members[x];
  return avg;
}

PsdOperator cq_state(const Ensemble& e) {
  const Index d = e.member_dim();
  const auto n = static_cast<Index>(e.size());
  Matrix m = Matrix::Zero(n * d, n * d);
  for (Index x = 0; x < n; ++x) m.block(x * d, x * d, d, d) = e.probs[static_cast<std::size_t>(x)] * e.members[static_cast<std::size_t>(x)];
  return PsdOperator(CompositeLabels({"X", "B"}, {static_cast<std::size_t>(n), static_cast<std::size_t>(d)}), m);
}

RankOneMeasurement::RankOneMeasurement(std::vector<Vector> vectors, double tol) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InvalidMeasurement("RankOneMeasurement needs at least one vector");
  const Index d = vectors_.front().size();
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& v : vectors_) {
    if (v.size() != d) throw InvalidMeasurement("measurement vectors differ in dimension");
    sum.noalias() += v * v.adjoint();
  }
  if (hermitian_op_norm(sum - Matrix::Identity(d, d)) > tol) {
    throw InvalidMeasurement("RankOneMeasurement: sum |phi_x><phi_x| = I within 1e-10 violated");
  }
}

RankOneMeasurement RankOneMeasurement::from_columns(const Matrix& basis) {
  std::vector<Vector> vs;
  for (Index j = 0; j < basis.cols(); ++j) vs.push_back(basis.col(j));
  return RankOneMeasurement(std::move(vs));
}

RankOneMeasurement RankOneMeasurement::computational(std::size_t dim) {
  const auto d = static_cast<Index>(dim);
  return from_columns(Matrix::Identity(d, d));
}

QuantumMap measurement_channel(const RankOneMeasurement& m) {
  const auto n = static_cast<Index>(m.outcomes());
  const Index d = m.dim();
  std::vector<Matrix> ks;
  for (Index x = 0; x < n; ++x) {
    Matrix k = Matrix::Zero(n, d);
    k.row(x) = m.vectors()[static_cast<std::size_t>(x)].adjoint();
    ks.push_back(std::move(k));
  }
  return QuantumMap(std::move(ks));
}

}  // namespace qrecov
