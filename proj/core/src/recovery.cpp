#include "qrecov/recovery.hpp"

#include <cmath>

#include "qrecov/error.hpp"

namespace qrecov {

namespace {

// Phases lambda^{s i t} on the support, zero elsewhere.
Vector phases(const RealVector& log_l, const std::vector<bool>& support, double s_t) {
  Vector p(log_l.size());
  for (Index i = 0; i < log_l.size(); ++i) {
    p(i) = support[static_cast<std::size_t>(i)] ? std::polar(1.0, s_t * log_l(i)) : Complex(0.0);
  }
  return p;
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::petz:
      return "petz";
    case Provenance::rotated_petz:
      return "rotated_petz";
    case Provenance::cmi:
      return "cmi";
    case Provenance::sequential:
      return "sequential";
    case Provenance::eb:
      return "eb";
    case Provenance::pgm:
      return "pgm";
  }
  return "petz";
}

Provenance provenance_from_string(const std::string& s) {
  for (auto p : {Provenance::petz, Provenance::rotated_petz, Provenance::cmi, Provenance::sequential, Provenance::eb,
                 Provenance::pgm}) {
    if (to_string(p) == s) return p;
  }
  throw InvalidParameter("unknown recovery provenance '" + s + "'");
}

RotatedPetzFamily::RotatedPetzFamily(const PsdOperator& sigma, const QuantumMap& channel) : sigma_(sigma.matrix()) {
  if (!channel.trace_preserving()) throw InvalidChannel("Petz map: channel is not trace preserving");
  if (static_cast<std::size_t>(sigma.dim()) != channel.in_dim()) {
    throw ShapeError("Petz map: sigma does not match the channel input dimension");
  }
  n_sigma_ = channel.apply(sigma_);
  const PsdSpectrum ss(sigma_);
  const PsdSpectrum sn(n_sigma_);
  u_ = ss.eig().vectors;
  w_ = sn.eig().vectors;
  log_s_.resize(ss.dim());
  log_n_.resize(sn.dim());
  Vector s_half(ss.dim());
  Vector n_mhalf(sn.dim());
  for (Index i = 0; i < ss.dim(); ++i) {
    const bool on = ss.on_support(i);
    s_support_.push_back(on);
    log_s_(i) = on ? std::log(ss.eig().values(i)) : 0.0;
    s_half(i) = on ? std::sqrt(ss.eig().values(i)) : 0.0;
  }
  for (Index i = 0; i < sn.dim(); ++i) {
    const bool on = sn.on_support(i);
    n_support_.push_back(on);
    log_n_(i) = on ? std::log(sn.eig().values(i)) : 0.0;
    n_mhalf(i) = on ? 1.0 / std::sqrt(sn.eig().values(i)) : 0.0;
  }
  for (const auto& k : channel.kraus()) {
    const Matrix c = s_half.asDiagonal() * (u_.adjoint() * k.adjoint() * w_) * n_mhalf.asDiagonal();
    core_.push_back(c);
  }
}

std::vector<Matrix> RotatedPetzFamily::kraus(double t) const {
  const Vector ps = phases(log_s_, s_support_, t);
  const Vector pn = phases(log_n_, n_support_, -t);
  std::vector<Matrix> ks;
  ks.reserve(core_.size());
  for (const auto& c : core_) ks.push_back(u_ * ps.asDiagonal() * c * pn.asDiagonal() * w_.adjoint());
  return ks;
}

Matrix RotatedPetzFamily::apply(double t, const Matrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != in_dim() || x.cols() != x.rows()) {
    throw ShapeError("recovery map input has the wrong dimension");
  }
  const Vector ps = phases(log_s_, s_support_, t);
  const Vector pn = phases(log_n_, n_support_, -t);
  // Work in the eigenbases: y = D_n W^dag X W D_n^dag, then conjugate by each core.
  const Matrix y = pn.asDiagonal() * (w_.adjoint() * x * w_) * pn.conjugate().asDiagonal();
  Matrix acc = Matrix::Zero(sigma_.rows(), sigma_.rows());
  for (const auto& c : core_) acc.noalias() += c * y * c.adjoint();
  const Matrix z = ps.asDiagonal() * acc * ps.conjugate().asDiagonal();
  return u_ * z * u_.adjoint();
}

RecoveryMap petz(const PsdOperator& sigma, const QuantumMap& channel) {
  return RecoveryMap{RotatedPetzFamily(sigma, channel).map(0.0), 0.0, Provenance::petz};
}

RecoveryMap rotated_petz(const PsdOperator& sigma, const QuantumMap& channel, double t) {
  return RecoveryMap{RotatedPetzFamily(sigma, channel).map(t), t, Provenance::rotated_petz};
}

QuantumMap rotation(const PsdOperator& omega, double t) {
  return conjugation_map(power_on_support(omega.matrix(), Complex(0.0, t)));
}

RecoveryMap cmi_recovery(const DensityOperator& rho_ac, double t) {
  if (rho_ac.labels().size() != 2) throw ShapeError("cmi_recovery: state must be labelled (A, C)");
  const std::size_t traced[] = {0};
  const QuantumMap tr_a = partial_trace_map(rho_ac.labels(), traced);
  return RecoveryMap{RotatedPetzFamily(rho_ac.as_psd(), tr_a).map(t), t, Provenance::cmi};
}

RecoveryMap sequential_recovery(const DensityOperator& rho, double t) {
  const std::size_t n = rho.labels().size();
  if (n < 3) throw ShapeError("sequential_recovery: need l >= 2 systems plus C");
  const std::size_t c = n - 1;
  std::size_t recovered_dim = rho.labels().dim(0);
  QuantumMap total = identity_map(recovered_dim * rho.labels().dim(c));
  for (std::size_t i = 1; i < c; ++i) {
    const RecoveryMap step = cmi_recovery(rho.marginal({i, c}), t);
    total = compose(tensor(identity_map(recovered_dim), step.base), total);
    recovered_dim *= rho.labels().dim(i);
  }
  return RecoveryMap{std::move(total), t, Provenance::sequential};
}

QuantumMap eb_map(const DensityOperator& rho_a, const RankOneMeasurement& m) {
  if (m.dim() != rho_a.dim()) throw InvalidMeasurement("eb_map: measurement dimension does not match the state");
  const PsdSpectrum spec(rho_a.matrix());
  const Matrix half = spec.power(Complex(0.5));
  const double cutoff = spec.cutoff();
  std::vector<Matrix> ks;
  for (const auto& phi : m.vectors()) {
    const double q = phi.dot(rho_a.matrix() * phi).real();
    if (q <= cutoff * std::max(1.0, phi.squaredNorm())) continue;
    ks.push_back(half * phi * phi.adjoint() / std::sqrt(q));
  }
  if (ks.empty()) throw InvalidMeasurement("eb_map: every outcome has zero probability");
  return QuantumMap(std::move(ks));
}

std::vector<Matrix> pgm_povm(const Ensemble& e, double t) {
  const Matrix avg = e.average();
  const PsdSpectrum spec(avg);
  const Matrix left = spec.power(Complex(-0.5, t));  // sigma^{it} sigma^{-1/2}
  std::vector<Matrix> povm;
  for (std::size_t x = 0; x < e.size(); ++x) {
    const Matrix el = left * (e.probs[x] * e.members[x]) * left.adjoint();
    povm.push_back(0.5 * (el + el.adjoint()));
  }
  return povm;
}

QuantumMap pgm(const Ensemble& e, double t) {
  const auto povm = pgm_povm(e, t);
  const auto n = static_cast<Index>(povm.size());
  const Index d = e.member_dim();
  std::vector<Matrix> ks;
  for (Index x = 0; x < n; ++x) {
    const PsdSpectrum s(povm[static_cast<std::size_t>(x)]);
    for (Index j = 0; j < d; ++j) {
      if (!s.on_support(j)) continue;
      Matrix k = Matrix::Zero(n, d);
      k.row(x) = std::sqrt(s.eig().values(j)) * s.eig().vectors.col(j).adjoint();
      ks.push_back(std::move(k));
    }
  }
  if (ks.empty()) ks.push_back(Matrix::Zero(n, d));
  return QuantumMap(std::move(ks));
}

}  // namespace qrecov
