#include <array>
#include <cmath>

#include "qrecov/error.hpp"
#include "qrecov/verify.hpp"

namespace qrecov {

namespace {

constexpr std::array<std::pair<CaseTag, const char*>, 12> kCaseNames{{
    {CaseTag::worked, "worked"},
    {CaseTag::identity, "identity"},
    {CaseTag::channel, "channel"},
    {CaseTag::upper, "upper"},
    {CaseTag::ssa, "ssa"},
    {CaseTag::concavity, "concavity"},
    {CaseTag::joint_convexity, "joint_convexity"},
    {CaseTag::discord, "discord"},
    {CaseTag::holevo, "holevo"},
    {CaseTag::multipartite, "multipartite"},
    {CaseTag::qec, "qec"},
    {CaseTag::sequential, "sequential"},
}};

constexpr int kUpperRetries = 100;

void require_dims(const std::vector<std::size_t>& dims, std::size_t n, const char* which) {
  if (dims.size() != n) {
    throw InvalidParameter(std::string(which) + " expects " + std::to_string(n) + " dimensions, got " +
                           std::to_string(dims.size()));
  }
  for (auto d : dims) {
    if (d < 1) throw InvalidParameter(std::string(which) + ": dimensions must be >= 1");
  }
}

std::vector<std::string> names_with_prefix(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  return names;
}

std::size_t random_rank(std::size_t dim, Rng& rng) { return rng.uniform_int(1, dim); }

bool positive_definite(const Matrix& m) {
  const PsdSpectrum s(m);
  return s.rank() == s.dim();
}

Matrix identity(std::size_t d) { return Matrix::Identity(static_cast<Index>(d), static_cast<Index>(d)); }

Instance channel_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "channel");
  const auto s = dims[0], b = dims[1], env = dims[2];
  if (b * env < s) throw InvalidParameter("channel: need b * env >= s");
  const auto sigma = random_psd(s, random_rank(s, rng), rng.uniform(0.5, 2.0), rng);
  const auto rho = random_density_within(sigma, random_rank(s, rng), rng);
  auto n = random_channel(s, b, env, rng);
  return Instance{CaseTag::channel, dims, rho, sigma, std::move(n), "Delta = D(rho||sigma) - D(N(rho)||N(sigma))",
                  {}, {}, {}, {}};
}

Instance upper_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "upper");
  const auto s = dims[0], ep = dims[1], b = dims[2];
  const auto in = s * ep;
  if (in % b != 0) throw InvalidParameter("upper: b must divide s * e' so that B E matches S E'");
  const CompositeLabels labels({"S", "E'"}, {s, ep});
  for (int attempt = 0; attempt < kUpperRetries; ++attempt) {
    const auto rho = random_density(labels, in, rng);
    const auto sigma_d = random_density(labels, in, rng);
    const PsdOperator sigma(labels, rng.uniform(0.5, 2.0) * sigma_d.matrix());
    auto n = random_channel(in, b, in / b, rng);
    if (!positive_definite(n.apply(rho.matrix())) || !positive_definite(n.apply(sigma.matrix()))) continue;
    return Instance{CaseTag::upper, dims, rho, sigma, std::move(n), "Delta = D(rho||sigma) - D(N(rho)||N(sigma))",
                    {}, {}, {}, {}};
  }
  throw InvalidInstance("upper: N(rho) and N(sigma) not positive definite after 100 draws");
}

Instance ssa_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "ssa");
  const CompositeLabels labels({"A", "B", "C"}, dims);
  const auto rho = random_density(labels, random_rank(labels.total_dim(), rng), rng);
  const std::size_t ac[] = {0, 2};
  const PsdOperator sigma(labels, embed_operator(rho.marginal({0, 2}).matrix(), labels, ac));
  const std::size_t traced[] = {0};
  return Instance{CaseTag::ssa, dims, rho, sigma, partial_trace_map(labels, traced), "Delta = I(A;B|C)",
                  {}, {}, {}, {}};
}

Instance concavity_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "concavity");
  const auto x = dims[0], a = dims[1], b = dims[2];
  Ensemble e = random_ensemble(x, a * b, 0, rng);
  for (auto& m : e.members) m = random_density(a * b, random_rank(a * b, rng), rng).matrix();
  const PsdOperator w = cq_state(e);
  const CompositeLabels labels({"X", "A", "B"}, {x, a, b});
  const DensityOperator rho(labels, w.matrix());
  const PsdOperator sigma(labels, kron(identity(x), e.average()));
  const std::size_t traced[] = {1};
  return Instance{CaseTag::concavity, dims, rho, sigma, partial_trace_map(labels, traced),
                  "Delta = H(A|B)_avg - sum_x p(x) H(A|B)_x", e, {}, {}, {}};
}

Instance joint_convexity_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 2, "joint_convexity");
  const auto x = dims[0], b = dims[1];
  auto probs = random_simplex(x, rng);
  std::vector<Matrix> rhos, sigmas;
  for (std::size_t i = 0; i < x; ++i) {
    const auto sig = random_psd(b, random_rank(b, rng), rng.uniform(0.5, 2.0), rng);
    rhos.push_back(random_density_within(sig, random_rank(b, rng), rng).matrix());
    sigmas.push_back(sig.matrix());
  }
  Ensemble er(probs, rhos);
  Ensemble es(probs, sigmas);
  const CompositeLabels labels({"X", "B"}, {x, b});
  const DensityOperator rho(labels, cq_state(er).matrix());
  const PsdOperator sigma(labels, cq_state(es).matrix());
  const std::size_t traced[] = {0};
  return Instance{CaseTag::joint_convexity, dims, rho, sigma, partial_trace_map(labels, traced),
                  "Delta = sum_x p(x) D(rho_x||sigma_x) - D(rho_avg||sigma_avg)", er, es, {}, {}};
}

Instance discord_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "discord");
  const auto a = dims[0], b = dims[1], k = dims[2];
  const CompositeLabels labels({"A", "B"}, {a, b});
  const auto rho = random_density(labels, random_rank(a * b, rng), rng);
  auto m = random_measurement(a, k, rng);
  const auto rho_a = rho.marginal({0});
  const PsdOperator sigma(labels, kron(rho_a.matrix(), identity(b)));
  auto n = tensor(measurement_channel(m), identity_map(b));
  return Instance{CaseTag::discord, dims, rho, sigma, std::move(n), "Delta = I(A;B) - I(X;B)", {}, {}, m, rho_a};
}

Instance holevo_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 3, "holevo");
  const auto a = dims[0], y = dims[1], k = dims[2];
  Ensemble e = random_ensemble(y, a, 0, rng);
  for (auto& m : e.members) m = random_density(a, random_rank(a, rng), rng).matrix();
  const CompositeLabels labels({"A", "Y"}, {a, y});
  Matrix r = Matrix::Zero(static_cast<Index>(a * y), static_cast<Index>(a * y));
  for (std::size_t i = 0; i < y; ++i) {
    Matrix flag = Matrix::Zero(static_cast<Index>(y), static_cast<Index>(y));
    flag(static_cast<Index>(i), static_cast<Index>(i)) = 1.0;
    r += e.probs[i] * kron(e.members[i], flag);
  }
  const DensityOperator rho(labels, r);
  auto m = random_measurement(a, k, rng);
  const auto rho_a = rho.marginal({0});
  const PsdOperator sigma(labels, kron(rho_a.matrix(), identity(y)));
  auto n = tensor(measurement_channel(m), identity_map(y));
  return Instance{CaseTag::holevo, dims, rho, sigma, std::move(n), "Delta = I(A;Y) - I(X;Y)", e, {}, m, rho_a};
}

Instance multipartite_case(const std::vector<std::size_t>& dims, Rng& rng) {
  if (dims.size() < 4 || dims.size() % 2 != 0) {
    throw InvalidParameter("multipartite expects an even number (>= 4) of dimensions a1, a1', a2, a2', ...");
  }
  const std::size_t l = dims.size() / 2;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < l; ++i) {
    names.push_back("A" + std::to_string(i + 1));
    names.push_back("A" + std::to_string(i + 1) + "'");
  }
  const CompositeLabels labels(names, dims);
  const auto rho = random_density(labels, random_rank(labels.total_dim(), rng), rng);
  Matrix sigma = Matrix::Identity(1, 1);
  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < l; ++i) {
    sigma = kron(sigma, rho.marginal({2 * i, 2 * i + 1}).matrix());
    traced.push_back(2 * i);
  }
  return Instance{CaseTag::multipartite, dims, rho, PsdOperator(labels, sigma), partial_trace_map(labels, traced),
                  "Delta = I(A1A1':...:AlAl') - I(A1':...:Al')", {}, {}, {}, {}};
}

Instance qec_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 4, "qec");
  const auto n = dims[0], k = dims[1], out = dims[2], env = dims[3];
  if (k > n) throw InvalidParameter("qec: code dimension k must not exceed n");
  if (out * env < n) throw InvalidParameter("qec: need out * env >= n");
  const Matrix v = random_isometry(k, n, rng);
  const PsdOperator pi(v * v.adjoint());
  const auto rho = random_density_within(pi, random_rank(k, rng), rng);
  return Instance{CaseTag::qec, dims, rho, pi, random_channel(n, out, env, rng),
                  "Delta = D(rho||Pi) - D(N(rho)||N(Pi))", {}, {}, {}, {}};
}

Instance sequential_case(const std::vector<std::size_t>& dims, Rng& rng) {
  if (dims.size() < 3) throw InvalidParameter("sequential expects dimensions a1, ..., al, c with l >= 2");
  auto names = names_with_prefix("A", dims.size() - 1);
  names.push_back("C");
  const CompositeLabels labels(names, dims);
  const auto rho = random_density(labels, labels.total_dim(), rng);
  return Instance{CaseTag::sequential, dims, rho, {}, {}, "Delta = I(A1:...:Al|C)", {}, {}, {}, {}};
}

Instance identity_case(const std::vector<std::size_t>& dims, Rng& rng) {
  require_dims(dims, 1, "identity");
  const auto d = dims[0];
  const auto sigma = random_psd(d, random_rank(d, rng), rng.uniform(0.5, 2.0), rng);
  const auto rho = random_density_within(sigma, random_rank(d, rng), rng);
  return Instance{CaseTag::identity, dims, rho, sigma, identity_map(d), "Delta = 0", {}, {}, {}, {}};
}

}  // namespace

std::string to_string(CaseTag c) {
  for (const auto& [tag, name] : kCaseNames) {
    if (tag == c) return name;
  }
  return "channel";
}

CaseTag case_from_string(const std::string& s) {
  for (const auto& [tag, name] : kCaseNames) {
    if (s == name) return tag;
  }
  throw InvalidParameter("unknown case '" + s + "'");
}

std::vector<std::size_t> default_dims(CaseTag c) {
  switch (c) {
    case CaseTag::worked:
      return {2};
    case CaseTag::identity:
      return {2};
    case CaseTag::channel:
      return {2, 2, 2};
    case CaseTag::upper:
      return {2, 2, 2};
    case CaseTag::ssa:
      return {2, 2, 2};
    case CaseTag::concavity:
      return {2, 2, 2};
    case CaseTag::joint_convexity:
      return {2, 2};
    case CaseTag::discord:
      return {2, 2, 3};
    case CaseTag::holevo:
      return {2, 2, 3};
    case CaseTag::multipartite:
      return {2, 2, 2, 2};
    case CaseTag::qec:
      return {4, 2, 3, 2};
    case CaseTag::sequential:
      return {2, 2, 2};
  }
  return {2};
}

void validate_instance(const Instance& inst) {
  if (!inst.sigma || !inst.channel) throw InvalidInstance("instance needs sigma and a channel");
  const auto d = static_cast<std::size_t>(inst.rho.dim());
  if (static_cast<std::size_t>(inst.sigma->dim()) != d || inst.channel->in_dim() != d) {
    throw InvalidInstance("rho, sigma and the channel input must share one dimension");
  }
  if (!inst.channel->trace_preserving()) throw InvalidInstance("the channel is not trace preserving");
  if (!support_contained(inst.rho.matrix(), inst.sigma->matrix())) {
    throw InvalidInstance("supp(rho) is not contained in supp(sigma)");
  }
}

void validate_upper_instance(const Instance& inst) {
  validate_instance(inst);
  const auto& n = *inst.channel;
  if (!positive_definite(inst.rho.matrix()) || !positive_definite(inst.sigma->matrix())) {
    throw InvalidInstance("upper bound requires positive definite rho and sigma");
  }
  if (!positive_definite(n.apply(inst.rho.matrix())) || !positive_definite(n.apply(inst.sigma->matrix()))) {
    throw InvalidInstance("upper bound requires positive definite N(rho) and N(sigma)");
  }
}

Instance build_instance(CaseTag tag, const std::vector<std::size_t>& dims, Rng& rng) {
  switch (tag) {
    case CaseTag::worked:
      return worked_instance();
    case CaseTag::identity:
      return identity_case(dims, rng);
    case CaseTag::channel:
      return channel_case(dims, rng);
    case CaseTag::upper:
      return upper_case(dims, rng);
    case CaseTag::ssa:
      return ssa_case(dims, rng);
    case CaseTag::concavity:
      return concavity_case(dims, rng);
    case CaseTag::joint_convexity:
      return joint_convexity_case(dims, rng);
    case CaseTag::discord:
      return discord_case(dims, rng);
    case CaseTag::holevo:
      return holevo_case(dims, rng);
    case CaseTag::multipartite:
      return multipartite_case(dims, rng);
    case CaseTag::qec:
      return qec_case(dims, rng);
    case CaseTag::sequential:
      return sequential_case(dims, rng);
  }
  throw InvalidParameter("unknown case");
}

Instance worked_instance() {
  Matrix rho(2, 2);
  rho << 0.5, 0.4, 0.4, 0.5;
  Matrix sigma = 0.5 * Matrix::Identity(2, 2);
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const QuantumMap dephasing({p0, p1});
  return Instance{CaseTag::worked, {2}, DensityOperator(rho), PsdOperator(sigma), dephasing,
                  "Delta = D(rho||sigma) - D(N(rho)||N(sigma))", {}, {}, {}, {}};
}

}  // namespace qrecov
