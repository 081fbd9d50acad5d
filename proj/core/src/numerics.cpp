#include "qrecov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <vector>

#include "qrecov/error.hpp"

namespace qrecov {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

// Row-major strides of a composite index with the given dims.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Offsets into the full index for every multi-index over `subset`.
std::vector<std::size_t> offsets_over(const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& strides,
                                      const std::vector<std::size_t>& subset) {
  std::size_t count = 1;
  for (auto i : subset) count *= dims[i];
  std::vector<std::size_t> out(count, 0);
  std::vector<std::size_t> digit(subset.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) off += digit[j] * strides[subset[j]];
    out[k] = off;
    for (std::size_t j = subset.size(); j-- > 0;) {
      if (++digit[j] < dims[subset[j]]) break;
      digit[j] = 0;
    }
  }
  return out;
}

void require_square_of(const Matrix& m, const CompositeLabels& labels) {
  const auto d = static_cast<Index>(labels.total_dim());
  if (m.rows() != d || m.cols() != d) {
    throw ShapeError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     " but subsystem dimensions multiply to " + std::to_string(d));
  }
}

}  // namespace

std::string fingerprint(const Matrix& m) {
  // FNV-1a over shape and entry bits.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 1099511628211ULL;
    }
  };
  const Index r = m.rows(), c = m.cols();
  mix(&r, sizeof r);
  mix(&c, sizeof c);
  mix(m.data(), sizeof(Complex) * static_cast<std::size_t>(m.size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%ldx%ld:%016llx", static_cast<long>(r), static_cast<long>(c),
                static_cast<unsigned long long>(h));
  return buf;
}

bool all_finite(const Matrix& m) {
  for (Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) return false;
  }
  return true;
}

HermitianOperator::HermitianOperator(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw ShapeError("Hermitian operator must be square");
  if (!all_finite(m)) throw ValidationError("ComplexMatrix: all entries finite violated");
  const Matrix asym = m - m.adjoint();
  const double asym_f = asym.norm();
  const double n = static_cast<double>(std::max<Index>(1, m.rows()));
  // Frobenius bound first; the exact operator norms only when it is inconclusive.
  if (asym_f > tol.herm * m.norm() / std::sqrt(n)) {
    if (spectral_norm(asym) > tol.herm * spectral_norm(m)) {
      throw ValidationError("HermitianOperator: ||A - A^dag|| <= herm_tol * ||A|| violated (" +
                            fingerprint(m) + ")");
    }
  }
  m_ = 0.5 * (m + m.adjoint());
}

EigenSystem herm_eig(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw EigenError("Hermitian eigensolver did not converge for matrix " + fingerprint(a.matrix()));
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

PsdSpectrum::PsdSpectrum(const HermitianOperator& a, const Tolerances& tol) : eig_(herm_eig(a)) {
  const Index n = eig_.values.size();
  if (n == 0) return;
  const double lo = eig_.values(0);
  const double hi = eig_.values(n - 1);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (lo < -tol.psd * scale) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", lo);
    throw NotPSDError(std::string("operator is not positive semi-definite: eigenvalue ") + buf + " (" +
                      fingerprint(a.matrix()) + ")");
  }
  cutoff_ = static_cast<double>(n) * std::max(hi, 0.0) * tol.rank_cutoff;
  rank_ = 0;
  for (Index i = 0; i < n; ++i) {
    if (eig_.values(i) > cutoff_) ++rank_;
  }
}

double PsdSpectrum::max_eigenvalue() const {
  return eig_.values.size() == 0 ? 0.0 : eig_.values(eig_.values.size() - 1);
}

Matrix PsdSpectrum::power(Complex z) const {
  const Index n = dim();
  Matrix scaled = eig_.vectors;
  for (Index i = 0; i < n; ++i) {
    const double lam = eig_.values(i);
    const Complex f = lam > cutoff_ ? std::exp(z * std::log(lam)) : Complex(0.0);
    scaled.col(i) *= f;
  }
  return scaled * eig_.vectors.adjoint();
}

Matrix PsdSpectrum::log() const {
  const Index n = dim();
  Matrix scaled = eig_.vectors;
  for (Index i = 0; i < n; ++i) {
    const double lam = eig_.values(i);
    scaled.col(i) *= lam > cutoff_ ? std::log(lam) : 0.0;
  }
  return scaled * eig_.vectors.adjoint();
}

Matrix PsdSpectrum::projector() const { return power(Complex(0.0)); }

Matrix power_on_support(const HermitianOperator& a, Complex z, const Tolerances& tol) {
  return PsdSpectrum(a, tol).power(z);
}

Matrix power_on_support(const Matrix& a, Complex z, const Tolerances& tol) {
  return PsdSpectrum(a, tol).power(z);
}

Matrix support_projector(const HermitianOperator& a, const Tolerances& tol) {
  return PsdSpectrum(a, tol).projector();
}

Matrix support_projector(const Matrix& a, const Tolerances& tol) { return PsdSpectrum(a, tol).projector(); }

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

double schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0)) throw InvalidParameter("Schatten index p must be >= 1");
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0.0;
  if (std::isinf(p)) return s(0);
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s(0), p);
  return s(0) * std::pow(acc, 1.0 / p);
}

double log_schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0)) throw InvalidParameter("Schatten index p must be >= 1");
  const RealVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return -std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return std::log(s(0));
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / s(0), p);
  return std::log(s(0)) + std::log(acc) / p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, const CompositeLabels& labels, std::span<const std::size_t> traced) {
  require_square_of(m, labels);
  std::vector<bool> is_traced(labels.size(), false);
  for (auto t : traced) {
    if (t >= labels.size()) throw ShapeError("traced subsystem index out of range");
    is_traced[t] = true;
  }
  std::vector<std::size_t> kept, gone;
  for (std::size_t i = 0; i < labels.size(); ++i) (is_traced[i] ? gone : kept).push_back(i);
  if (gone.empty()) return m;

  const auto strides = strides_of(labels.dims());
  const auto off_kept = offsets_over(labels.dims(), strides, kept);
  const auto off_gone = offsets_over(labels.dims(), strides, gone);
  const auto dk = static_cast<Index>(off_kept.size());
  Matrix out = Matrix::Zero(dk, dk);
  for (Index i = 0; i < dk; ++i) {
    for (Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (auto g : off_gone) {
        acc += m(static_cast<Index>(off_kept[i] + g), static_cast<Index>(off_kept[j] + g));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix permute_systems(const Matrix& m, const CompositeLabels& labels, std::span<const std::size_t> perm) {
  require_square_of(m, labels);
  validate_permutation(perm, labels.size());
  const auto strides = strides_of(labels.dims());
  // Enumerating the old subsystems in the new order yields, for each new
  // index, the corresponding old index.
  const std::vector<std::size_t> order(perm.begin(), perm.end());
  const auto old_index = offsets_over(labels.dims(), strides, order);
  const auto d = static_cast<Index>(old_index.size());
  Matrix out(d, d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      out(a, b) = m(static_cast<Index>(old_index[a]), static_cast<Index>(old_index[b]));
    }
  }
  return out;
}

Matrix embed_operator(const Matrix& op, const CompositeLabels& labels, std::span<const std::size_t> positions) {
  std::vector<std::size_t> order(positions.begin(), positions.end());
  std::vector<bool> used(labels.size(), false);
  for (auto p : positions) {
    if (p >= labels.size() || used[p]) throw ShapeError("invalid embedding positions");
    used[p] = true;
  }
  std::size_t rest_dim = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!used[i]) {
      order.push_back(i);
      rest_dim *= labels.dim(i);
    }
  }
  const auto sub = labels.select(positions);
  if (op.rows() != static_cast<Index>(sub.total_dim()) || op.cols() != op.rows()) {
    throw ShapeError("embedded operator does not match the selected subsystems");
  }
  const Matrix padded = kron(op, Matrix::Identity(static_cast<Index>(rest_dim), static_cast<Index>(rest_dim)));
  // `padded` lives on labels.select(order); bring it back to natural order.
  const auto inv = inverse_permutation(order);
  return permute_systems(padded, labels.select(order), inv);
}

std::vector<std::size_t> subsystem_offsets(const CompositeLabels& labels, std::span<const std::size_t> subset) {
  for (auto i : subset) {
    if (i >= labels.size()) throw ShapeError("subsystem index out of range");
  }
  return offsets_over(labels.dims(), strides_of(labels.dims()), std::vector<std::size_t>(subset.begin(), subset.end()));
}

double trace_norm_hermitian(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qrecov
