#pragma once

// Recovery maps: Petz and rotated Petz maps, rotations, the conditional
// mutual information special case, sequential compositions, the
// measure-and-prepare map and the rotated pretty-good measurement.

#include <string>
#include <vector>

#include "qrecov/quantum.hpp"

namespace qrecov {

enum class Provenance { petz, rotated_petz, cmi, sequential, eb, pgm };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct RecoveryMap {
  QuantumMap base;
  double t = 0.0;
  Provenance provenance = Provenance::petz;

  Matrix apply(const Matrix& x) const { return base.apply(x); }
};

/// The one-parameter family t -> R^{P,t}_{sigma,N}.
///
/// Kraus operators sigma^{it} sigma^{1/2} K^dag N(sigma)^{-1/2} N(sigma)^{-it}
/// are evaluated from eigenbases computed once, so each t costs only a phase
/// scaling and two basis changes per Kraus operator.
class RotatedPetzFamily {
 public:
  /// Throws InvalidChannel unless `channel` is trace preserving.
  RotatedPetzFamily(const PsdOperator& sigma, const QuantumMap& channel);

  std::vector<Matrix> kraus(double t) const;
  QuantumMap map(double t) const { return QuantumMap(kraus(t)); }
  Matrix apply(double t, const Matrix& x) const;

  const Matrix& sigma() const noexcept { return sigma_; }
  const Matrix& n_sigma() const noexcept { return n_sigma_; }
  std::size_t in_dim() const noexcept { return static_cast<std::size_t>(n_sigma_.rows()); }
  std::size_t out_dim() const noexcept { return static_cast<std::size_t>(sigma_.rows()); }

 private:
  Matrix sigma_;
  Matrix n_sigma_;
  Matrix u_;  // eigenvectors of sigma
  Matrix w_;  // eigenvectors of N(sigma)
  RealVector log_s_;
  RealVector log_n_;
  std::vector<bool> s_support_;
  std::vector<bool> n_support_;
  std::vector<Matrix> core_;  // U^dag sigma^{1/2} K^dag N(sigma)^{-1/2} W
};

RecoveryMap petz(const PsdOperator& sigma, const QuantumMap& channel);
RecoveryMap rotated_petz(const PsdOperator& sigma, const QuantumMap& channel, double t);

/// X -> omega^{it} X omega^{-it}
QuantumMap rotation(const PsdOperator& omega, double t);

/// C -> A (x) C recovery for a state labelled (A, C).
RecoveryMap cmi_recovery(const DensityOperator& rho_ac, double t);

/// A_1 C -> A_1 ... A_l C for a state labelled (A_1, ..., A_l, C): the
/// per-step C -> A_i C maps applied for i = 2, ..., l, each tensored with the
/// identity on the systems already recovered.
RecoveryMap sequential_recovery(const DensityOperator& rho, double t);

/// Measure-and-prepare map with Kraus operators
/// rho^{1/2} |phi_x><phi_x| / sqrt(<phi_x|rho|phi_x>); zero-probability outcomes are dropped.
QuantumMap eb_map(const DensityOperator& rho_a, const RankOneMeasurement& m);

/// Rotated pretty-good POVM elements for the ensemble {p_x, sigma_x}.
std::vector<Matrix> pgm_povm(const Ensemble& e, double t);
/// X -> sum_x Tr{E_x X} |x><x| for the POVM above.
QuantumMap pgm(const Ensemble& e, double t);

}  // namespace qrecov
