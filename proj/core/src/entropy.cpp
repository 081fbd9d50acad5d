#include "qrecov/entropy.hpp"

#include <cmath>
#include <numeric>

#include "qrecov/error.hpp"

namespace qrecov {

namespace {

// log of the Schatten p-(quasi)norm for any p > 0.
double log_schatten_any(const Matrix& x, double p) {
  if (p >= 1.0) return log_schatten_norm(x, p);
  const RealVector s = singular_values(x);
  if (s.size() == 0 || s(0) == 0.0) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s(0), p);
  return std::log(s(0)) + std::log(acc) / p;
}

double op_norm(const Matrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

void require_parts(const DensityOperator& rho, std::size_t min_parts, const char* what) {
  if (rho.labels().size() < min_parts) {
    throw ShapeError(std::string(what) + ": state needs at least " + std::to_string(min_parts) + " subsystems");
  }
}

double entropy_of(const DensityOperator& rho, std::initializer_list<std::size_t> keep) {
  return von_neumann_entropy(rho.marginal(keep).matrix());
}

Matrix embedded_power(const DensityOperator& rho, const std::vector<std::size_t>& keep, double z) {
  const Matrix p = power_on_support(rho.marginal(keep).matrix(), Complex(z));
  return embed_operator(p, rho.labels(), keep);
}

}  // namespace

RenyiParam::RenyiParam(double alpha) : alpha_(alpha), alpha_prime_((alpha - 1.0) / alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw InvalidParameter("RenyiParam: alpha must lie in (0,1) u (1,inf)");
  }
}

double von_neumann_entropy(const Matrix& rho) {
  const PsdSpectrum spec(rho);
  double h = 0.0;
  for (Index i = 0; i < spec.dim(); ++i) {
    if (spec.on_support(i)) {
      const double l = spec.eig().values(i);
      h -= l * std::log(l);
    }
  }
  return h;
}

Nats von_neumann(const DensityOperator& rho) { return Nats(von_neumann_entropy(rho.matrix())); }

bool support_contained(const Matrix& omega, const Matrix& tau, const Tolerances& tol) {
  if (omega.rows() != tau.rows() || omega.cols() != tau.cols()) throw ShapeError("support test: shape mismatch");
  const Index d = tau.rows();
  const Matrix outside = Matrix::Identity(d, d) - support_projector(tau, tol);
  const double leak = op_norm(outside * omega * outside);
  return leak <= static_cast<double>(d) * 1e-10 * op_norm(omega);
}

Nats relative_entropy(const Matrix& omega, const Matrix& tau) {
  if (!support_contained(omega, tau)) return Nats::infinity();
  const PsdSpectrum so(omega);
  const PsdSpectrum st(tau);
  const double a = (omega * so.log()).trace().real();
  const double b = (omega * st.log()).trace().real();
  return Nats(a - b);
}

Nats relative_entropy(const DensityOperator& omega, const PsdOperator& tau) {
  return relative_entropy(omega.matrix(), tau.matrix());
}

Nats max_relative_entropy(const Matrix& omega, const Matrix& tau) {
  if (!support_contained(omega, tau)) return Nats::infinity();
  const Matrix half = power_on_support(omega, Complex(0.5));
  const Matrix inv = power_on_support(tau, Complex(-1.0));
  const Matrix m = half * inv * half;
  Eigen::SelfAdjointEigenSolver<Matrix> s(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return Nats(std::log(s.eigenvalues()(s.eigenvalues().size() - 1)));
}

Nats max_relative_entropy(const DensityOperator& omega, const PsdOperator& tau) {
  return max_relative_entropy(omega.matrix(), tau.matrix());
}

FidelityReference::FidelityReference(const Matrix& rho) : sqrt_rho_(power_on_support(rho, Complex(0.5))) {}

double FidelityReference::root_fidelity(const Matrix& sigma) const {
  if (sigma.rows() != sqrt_rho_.rows() || sigma.cols() != sqrt_rho_.cols()) {
    throw ShapeError("fidelity: shape mismatch");
  }
  // Trace norm of sqrt(rho) sqrt(sigma): singular values keep full accuracy on the kernel,
  // where square roots of eigenvalues of sqrt(rho) sigma sqrt(rho) would amplify rounding.
  const RealVector s = singular_values(sqrt_rho_ * power_on_support(sigma, Complex(0.5)));
  return s.sum();
}

double fidelity(const Matrix& rho, const Matrix& sigma) { return FidelityReference(rho).fidelity(sigma); }

Nats rel_ent_difference(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel) {
  if (!support_contained(rho.matrix(), sigma.matrix())) {
    throw SupportError("rel_ent_difference: supp(rho) is not contained in supp(sigma)");
  }
  const Nats d1 = relative_entropy(rho.matrix(), sigma.matrix());
  const Nats d2 = relative_entropy(channel.apply(rho.matrix()), channel.apply(sigma.matrix()));
  if (d1.is_infinite() || d2.is_infinite()) {
    throw SupportError("rel_ent_difference: support test failed after applying the channel");
  }
  return Nats(d1.value() - d2.value());
}

Nats cmi(const DensityOperator& rho) {
  if (rho.labels().size() != 3) throw ShapeError("cmi: state must be labelled (A, B, C)");
  return Nats(entropy_of(rho, {0, 2}) + entropy_of(rho, {1, 2}) - entropy_of(rho, {2}) -
              von_neumann_entropy(rho.matrix()));
}

Nats multipartite_info(const DensityOperator& rho) {
  require_parts(rho, 1, "multipartite_info");
  double acc = -von_neumann_entropy(rho.matrix());
  for (std::size_t i = 0; i < rho.labels().size(); ++i) acc += entropy_of(rho, {i});
  return Nats(acc);
}

Nats multipartite_info_relative(const DensityOperator& rho) {
  require_parts(rho, 1, "multipartite_info_relative");
  Matrix prod = rho.marginal({0}).matrix();
  for (std::size_t i = 1; i < rho.labels().size(); ++i) prod = kron(prod, rho.marginal({i}).matrix());
  return relative_entropy(rho.matrix(), prod);
}

Nats cond_multipartite_info(const DensityOperator& rho) {
  require_parts(rho, 3, "cond_multipartite_info");
  const std::size_t c = rho.labels().size() - 1;
  const double hc = entropy_of(rho, {c});
  double acc = 0.0;
  for (std::size_t i = 0; i < c; ++i) acc += entropy_of(rho, {i, c}) - hc;
  acc -= von_neumann_entropy(rho.matrix()) - hc;
  return Nats(acc);
}

Nats delta_tilde(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel, RenyiParam a) {
  return delta_tilde(rho, sigma, channel, stinespring(channel), a);
}

Nats delta_tilde(const DensityOperator& rho, const PsdOperator& sigma, const QuantumMap& channel,
                 const StinespringIsometry& iso, RenyiParam a) {
  if (rho.dim() != sigma.dim() || static_cast<std::size_t>(rho.dim()) != channel.in_dim()) {
    throw ShapeError("delta_tilde: rho, sigma and the channel input must share one dimension");
  }
  if (iso.v.cols() != rho.dim() || iso.out_dim() != channel.out_dim() ||
      static_cast<std::size_t>(iso.v.rows()) != iso.out_dim() * iso.env_dim) {
    throw ShapeError("delta_tilde: isometry does not match the channel dimensions");
  }
  if (!support_contained(rho.matrix(), sigma.matrix())) {
    throw SupportError("delta_tilde: supp(rho) is not contained in supp(sigma)");
  }
  const double h = a.half_exponent();
  const Matrix n_rho = channel.apply(rho.matrix());
  const Matrix n_sigma = channel.apply(sigma.matrix());
  const Matrix left = power_on_support(n_rho, Complex(h)) * power_on_support(n_sigma, Complex(-h));
  const auto env = static_cast<Index>(iso.env_dim);
  const Matrix x = kron(left, Matrix::Identity(env, env)) * iso.v * power_on_support(sigma.matrix(), Complex(h)) *
                   power_on_support(rho.matrix(), Complex(0.5));
  return Nats(a.prefactor() * log_schatten_any(x, 2.0 * a.alpha()));
}

Nats renyi_cmi(const DensityOperator& rho, RenyiParam a) {
  if (rho.labels().size() != 3) throw ShapeError("renyi_cmi: state must be labelled (A, B, C)");
  const double h = a.half_exponent();
  const Matrix x = embedded_power(rho, {1, 2}, h) * embedded_power(rho, {2}, -h) * embedded_power(rho, {0, 2}, h) *
                   power_on_support(rho.matrix(), Complex(0.5));
  return Nats(a.prefactor() * log_schatten_any(x, 2.0 * a.alpha()));
}

Nats renyi_cond_multipartite(const DensityOperator& rho, RenyiParam a) {
  require_parts(rho, 3, "renyi_cond_multipartite");
  const std::size_t c = rho.labels().size() - 1;
  const double h = a.half_exponent();
  const Matrix c_inv = embedded_power(rho, {c}, -h);
  Matrix x = power_on_support(rho.matrix(), Complex(0.5));
  for (std::size_t i = c; i-- > 1;) x = x * embedded_power(rho, {i, c}, h) * c_inv;
  x = x * embedded_power(rho, {0, c}, h);
  return Nats(a.prefactor() * log_schatten_any(x, 2.0 * a.alpha()));
}

}  // namespace qrecov
