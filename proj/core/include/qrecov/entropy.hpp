#pragma once

// Scalar information measures in nats: von Neumann, relative and
// max-relative entropies, fidelity, relative-entropy differences, conditional
// and multipartite informations, and their Renyi generalizations.

#include <limits>
#include <optional>

#include "qrecov/quantum.hpp"

namespace qrecov {

/// Quantity in natural-log units. +infinity is an explicit state, never an
/// overflowed double.
class Nats {
 public:
  constexpr Nats() = default;
  constexpr explicit Nats(double v) : value_(v) {}
  static constexpr Nats infinity() {
    Nats n;
    n.infinite_ = true;
    return n;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// The value; +inf as a double when infinite.
  constexpr double value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const Nats&, const Nats&) = default;

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

/// Renyi order alpha in (0,1) u (1,inf), with alpha' = (alpha-1)/alpha cached.
class RenyiParam {
 public:
  explicit RenyiParam(double alpha);
  double alpha() const noexcept { return alpha_; }
  double alpha_prime() const noexcept { return alpha_prime_; }
  /// (1 - alpha) / (2 alpha)
  double half_exponent() const noexcept { return -alpha_prime_ / 2.0; }
  /// 2 alpha / (alpha - 1)
  double prefactor() const noexcept { return 2.0 / alpha_prime_; }

 private:
  double alpha_;
  double alpha_prime_;
};

double von_neumann_entropy(const Matrix& rho);
Nats von_neumann(const DensityOperator& rho);

/// Support test: ||(I - P_tau) omega (I - P_tau)|| <= dim * 1e-10 * ||omega||.
bool support_contained(const Matrix& omega, const Matrix& tau, const Tolerances& tol = kDefaultTolerances);

Nats relative_entropy(const Matrix& omega, const Matrix& tau);
Nats relative_entropy(const DensityOperator& omega, const PsdOperator& tau);

/// log || omega^{1/2} tau^+ omega^{1/2} ||_inf, +inf without support containment.
Nats max_relative_entropy(const Matrix& omega, const Matrix& tau);
Nats max_relative_entropy(const DensityOperator& omega, const PsdOperator& tau);

/// || sqrt(rho) sqrt(sigma) ||_1^2
double fidelity(const Matrix& rho, const Matrix& sigma);

/// Fidelity against a fixed first argument; caches sqrt(rho).
class FidelityReference {
 public:
  explicit FidelityReference(const Matrix& rho);
  /// sqrt(F(rho, sigma)) = || sqrt(rho) sqrt(sigma) ||_1
  double root_fidelity(const Matrix& sigma) const;
  double fidelity(const Matrix& sigma) const {
    const double r = root_fidelity(sigma);
    return r * r;
  }

 private:
  Matrix sqrt_rho_;
};

/// D(rho||sigma) - D(N(rho)||N(sigma)); SupportError unless supp rho in supp sigma.
Nats rel_ent_difference(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel);

/// I(A;B|C) for a state labelled (A, B, C).
Nats cmi(const DensityOperator& rho);

/// sum_i H(B_i) - H(B_1...B_l) over all subsystems.
Nats multipartite_info(const DensityOperator& rho);
/// D(rho || rho_1 (x) ... (x) rho_l), the relative-entropy form of the above.
Nats multipartite_info_relative(const DensityOperator& rho);

/// sum_i H(A_i|C) - H(A_1...A_l|C) for a state labelled (A_1, ..., A_l, C).
Nats cond_multipartite_info(const DensityOperator& rho);

/// Renyi relative-entropy difference, using the Kraus-derived isometric extension.
Nats delta_tilde(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel, RenyiParam a);
/// Same with an explicitly supplied isometric extension of `channel`.
Nats delta_tilde(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel,
                 const StinespringIsometry& iso, RenyiParam a);

/// Renyi conditional mutual information of a state labelled (A, B, C).
Nats renyi_cmi(const DensityOperator& rho, RenyiParam a);

/// Renyi conditional multipartite information of a state labelled (A_1, ..., A_l, C).
Nats renyi_cond_multipartite(const DensityOperator& rho, RenyiParam a);

}  // namespace qrecov
