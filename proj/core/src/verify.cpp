#include "qrecov/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qrecov/error.hpp"

namespace qrecov {

namespace {

constexpr double kAuditTolerance = 1e-9;

Audit make_audit(std::string name, double value, double tol) {
  const bool ok = std::isfinite(value) && value <= tol;
  return Audit{std::move(name), value, tol, ok};
}

// -ln F with F = 0 mapped to the infinity sentinel.
Nats neg_log(double f) { return f > 0.0 ? Nats(-std::log(f)) : Nats::infinity(); }

BoundCheck search_lower(double delta, const std::function<double(double)>& fid, const TSearchConfig& cfg) {
  BoundCheck bc;
  bc.kind = BoundKind::lower;
  auto run = [&](const TSearchConfig& c) {
    const auto r = t_search(fid, c);
    bc.bound = neg_log(r.value);
    bc.witness_t = r.t;
    bc.deficit = delta - bc.bound.value();
    bc.verdict = bc.bound.value() <= delta + kVerdictTolerance ? Verdict::pass : Verdict::inconclusive;
    bc.t0_witnesses = neg_log(r.value_at_zero).value() <= delta + kVerdictTolerance;
    bc.trace = r.trace;
  };
  run(cfg);
  if (bc.verdict != Verdict::pass) {
    bc.escalated = true;
    run(cfg.escalated());
  }
  return bc;
}

BoundCheck search_upper(double delta, const std::function<double(double)>& dmax, const TSearchConfig& cfg) {
  BoundCheck bc;
  bc.kind = BoundKind::upper;
  auto run = [&](const TSearchConfig& c) {
    const auto r = t_search(dmax, c);
    bc.bound = Nats(r.value);
    bc.witness_t = r.t;
    bc.deficit = r.value - delta;
    bc.verdict = delta <= r.value + kVerdictTolerance ? Verdict::pass : Verdict::inconclusive;
    bc.t0_witnesses = delta <= r.value_at_zero + kVerdictTolerance;
    bc.trace = r.trace;
  };
  run(cfg);
  if (bc.verdict != Verdict::pass) {
    bc.escalated = true;
    run(cfg.escalated());
  }
  return bc;
}

CheckReport base_report(const Instance& inst) {
  CheckReport r;
  r.case_name = to_string(inst.tag);
  r.dims = inst.dims;
  r.interpretation = inst.interpretation;
  return r;
}

double cond_entropy(const DensityOperator& ab) {
  return von_neumann_entropy(ab.matrix()) - von_neumann_entropy(ab.marginal({1}).matrix());
}

double mutual_info(const DensityOperator& ab) {
  return von_neumann_entropy(ab.marginal({0}).matrix()) + von_neumann_entropy(ab.marginal({1}).matrix()) -
         von_neumann_entropy(ab.matrix());
}

// Sum over flags x of p(x) sqrt F(member_x, map(member_x)).
double flag_root_fidelity(const Ensemble& e, const std::function<Matrix(const Matrix&)>& map_of) {
  double acc = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    const Matrix& m = e.members[x];
    acc += e.probs[x] * FidelityReference(m).root_fidelity(map_of(m));
  }
  return acc;
}

void add_case_audits(const Instance& inst, CheckReport& r) {
  const double delta = r.delta.value();
  const double t = r.primary.witness_t;
  const auto& rho = inst.rho;
  const auto& n = *inst.channel;
  r.audits.push_back(make_audit("monotonicity", -delta, kAuditTolerance));

  switch (inst.tag) {
    case CaseTag::ssa:
      r.audits.push_back(make_audit("delta_equals_cmi", std::abs(delta - cmi(rho).value()), kAuditTolerance));
      break;
    case CaseTag::concavity: {
      const auto& e = *inst.ensemble;
      const CompositeLabels ab({"A", "B"}, {inst.dims[1], inst.dims[2]});
      double avg_cond = cond_entropy(DensityOperator(ab, e.average()));
      for (std::size_t x = 0; x < e.size(); ++x) avg_cond -= e.probs[x] * cond_entropy(DensityOperator(ab, e.members[x]));
      r.audits.push_back(make_audit("delta_equals_concavity_gap", std::abs(delta - avg_cond), kAuditTolerance));
      const RotatedPetzFamily whole(*inst.sigma, n);
      const double mono = FidelityReference(rho.matrix()).root_fidelity(whole.apply(t, n.apply(rho.matrix())));
      const std::size_t traced[] = {0};
      const RotatedPetzFamily part(PsdOperator(e.average()), partial_trace_map(ab, traced));
      const double flags = flag_root_fidelity(e, [&](const Matrix& m) {
        return part.apply(t, partial_trace(m, ab, traced));
      });
      r.audits.push_back(make_audit("flag_fidelity", std::abs(mono - flags), kAuditTolerance));
      break;
    }
    case CaseTag::joint_convexity: {
      const auto& er = *inst.ensemble;
      const auto& es = *inst.sigma_ensemble;
      double gap = -relative_entropy(er.average(), es.average()).value();
      for (std::size_t x = 0; x < er.size(); ++x) {
        gap += er.probs[x] * relative_entropy(er.members[x], es.members[x]).value();
      }
      r.audits.push_back(make_audit("delta_equals_convexity_gap", std::abs(delta - gap), kAuditTolerance));
      const std::size_t traced_b[] = {1};
      const auto measure = compose(partial_trace_map(rho.labels(), traced_b), RotatedPetzFamily(*inst.sigma, n).map(t));
      r.audits.push_back(make_audit("pretty_good_measurement", choi_distance(measure, pgm(es, t)), kAuditTolerance));
      break;
    }
    case CaseTag::discord:
    case CaseTag::holevo: {
      const auto& ra = *inst.rho_a;
      const DensityOperator omega(CompositeLabels({"X", "B"}, {inst.measurement->outcomes(), rho.labels().dim(1)}),
                                  n.apply(rho.matrix()));
      const double gap = mutual_info(rho) - mutual_info(omega);
      r.audits.push_back(make_audit("delta_equals_discord", std::abs(delta - gap), kAuditTolerance));
      const QuantumMap local = compose(rotation(ra.as_psd(), t), eb_map(ra, *inst.measurement));
      const QuantumMap lhs = compose(RotatedPetzFamily(*inst.sigma, n).map(t), n);
      const QuantumMap rhs = tensor(local, identity_map(rho.labels().dim(1)));
      r.audits.push_back(make_audit("eb_recovery", choi_distance(lhs, rhs), kAuditTolerance));
      if (inst.tag == CaseTag::holevo) {
        const double mono = FidelityReference(rho.matrix()).root_fidelity(rhs.apply(rho.matrix()));
        const double flags = flag_root_fidelity(*inst.ensemble, [&](const Matrix& m) { return local.apply(m); });
        r.audits.push_back(make_audit("flag_fidelity", std::abs(mono - flags), kAuditTolerance));
      }
      break;
    }
    case CaseTag::multipartite: {
      const std::size_t l = inst.dims.size() / 2;
      std::vector<std::string> names;
      std::vector<std::size_t> pair_dims, primes;
      for (std::size_t i = 0; i < l; ++i) {
        names.push_back("P" + std::to_string(i + 1));
        pair_dims.push_back(inst.dims[2 * i] * inst.dims[2 * i + 1]);
        primes.push_back(2 * i + 1);
      }
      const DensityOperator grouped(CompositeLabels(names, pair_dims), rho.matrix());
      const double gap = multipartite_info(grouped).value() - multipartite_info(rho.marginal(primes)).value();
      r.audits.push_back(make_audit("delta_equals_multipartite_gap", std::abs(delta - gap), kAuditTolerance));
      break;
    }
    default:
      break;
  }
}

// Applies the sequential recovery to rho_{A_1 C} with per-step families built once.
class SequentialFamily {
 public:
  explicit SequentialFamily(const DensityOperator& rho) {
    const std::size_t c = rho.labels().size() - 1;
    std::size_t rec = rho.labels().dim(0);
    for (std::size_t i = 1; i < c; ++i) {
      const auto rac = rho.marginal({i, c});
      const std::size_t traced[] = {0};
      steps_.emplace_back(rac.as_psd(), partial_trace_map(rac.labels(), traced));
      recovered_.push_back(rec);
      rec *= rho.labels().dim(i);
    }
    start_ = rho.marginal({0, c}).matrix();
  }

  Matrix recover(double t) const {
    Matrix x = start_;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const auto r = static_cast<Index>(recovered_[i]);
      const auto ks = steps_[i].kraus(t);
      Matrix next = Matrix::Zero(r * static_cast<Index>(steps_[i].out_dim()), r * static_cast<Index>(steps_[i].out_dim()));
      for (const auto& k : ks) {
        const Matrix big = kron(Matrix::Identity(r, r), k);
        next.noalias() += big * x * big.adjoint();
      }
      x = std::move(next);
    }
    return x;
  }

 private:
  std::vector<RotatedPetzFamily> steps_;
  std::vector<std::size_t> recovered_;
  Matrix start_;
};

bool positive_definite(const Matrix& m) {
  const PsdSpectrum s(m);
  return s.rank() == s.dim();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

void CheckReport::finalize() {
  verdict = Verdict::pass;
  for (const auto& a : audits) {
    if (!a.passed) {
      verdict = Verdict::fail;
      return;
    }
  }
  if (primary.verdict != Verdict::pass || (secondary && secondary->verdict != Verdict::pass)) {
    verdict = Verdict::inconclusive;
  }
}

CheckReport check_lower(const Instance& inst, const TSearchConfig& cfg) {
  validate_instance(inst);
  CheckReport r = base_report(inst);
  r.delta = rel_ent_difference(inst.rho, *inst.sigma, *inst.channel);
  const RotatedPetzFamily fam(*inst.sigma, *inst.channel);
  const Matrix n_rho = inst.channel->apply(inst.rho.matrix());
  const FidelityReference ref(inst.rho.matrix());
  r.primary = search_lower(r.delta.value(), [&](double t) { return ref.fidelity(fam.apply(t, n_rho)); }, cfg);
  r.finalize();
  return r;
}

CheckReport check_upper(const Instance& inst, const TSearchConfig& cfg) {
  validate_upper_instance(inst);
  CheckReport r = base_report(inst);
  r.delta = rel_ent_difference(inst.rho, *inst.sigma, *inst.channel);
  const RotatedPetzFamily fam(*inst.sigma, *inst.channel);
  const Matrix n_rho = inst.channel->apply(inst.rho.matrix());
  r.primary = search_upper(
      r.delta.value(), [&](double t) { return max_relative_entropy(inst.rho.matrix(), fam.apply(t, n_rho)).value(); },
      cfg);
  r.finalize();
  return r;
}

CheckReport check_instance(const Instance& inst, const TSearchConfig& cfg) {
  if (inst.tag == CaseTag::sequential) {
    CheckReport r = check_sequential(inst.rho, cfg);
    r.dims = inst.dims;
    r.interpretation = inst.interpretation;
    return r;
  }
  if (inst.tag == CaseTag::upper) {
    CheckReport r = check_upper(inst, cfg);
    r.secondary = check_lower(inst, cfg).primary;
    r.audits.push_back(make_audit("monotonicity", -r.delta.value(), kAuditTolerance));
    r.finalize();
    return r;
  }
  CheckReport r = check_lower(inst, cfg);
  add_case_audits(inst, r);
  r.finalize();
  return r;
}

CheckReport check_corollary(CaseTag tag, const std::vector<std::size_t>& dims, const TSearchConfig& cfg, Rng& rng) {
  const auto seed = rng.seed();
  const Instance inst = build_instance(tag, dims, rng);
  CheckReport r = check_instance(inst, cfg);
  r.seed = seed;
  return r;
}

CheckReport check_sequential(const DensityOperator& rho, const TSearchConfig& cfg) {
  if (rho.labels().size() < 3) throw ShapeError("check_sequential: need l >= 2 systems plus C");
  CheckReport r;
  r.case_name = to_string(CaseTag::sequential);
  r.dims = rho.labels().dims();
  r.interpretation = "Delta = I(A1:...:Al|C)";
  r.delta = cond_multipartite_info(rho);
  const SequentialFamily fam(rho);
  const FidelityReference ref(rho.matrix());
  r.primary = search_lower(r.delta.value(), [&](double t) { return ref.fidelity(fam.recover(t)); }, cfg);
  if (positive_definite(rho.matrix())) {
    r.secondary = search_upper(
        r.delta.value(), [&](double t) { return max_relative_entropy(rho.matrix(), fam.recover(t)).value(); }, cfg);
  }
  r.audits.push_back(make_audit("monotonicity", -r.delta.value(), kAuditTolerance));
  const Matrix direct = sequential_recovery(rho, r.primary.witness_t).apply(rho.marginal({0, rho.labels().size() - 1}).matrix());
  r.audits.push_back(make_audit("sequential_map", trace_norm_hermitian(direct - fam.recover(r.primary.witness_t)),
                                kAuditTolerance));
  r.finalize();
  return r;
}

std::optional<double> richardson_at_one(const std::vector<LimitRow>& rows) {
  std::vector<std::pair<double, double>> below, above;  // (h, value)
  for (const auto& row : rows) {
    if (row.value.is_infinite()) continue;
    const double h = row.alpha - 1.0;
    (h < 0.0 ? below : above).emplace_back(h, row.value.value());
  }
  if (below.empty() || above.empty()) return std::nullopt;
  std::sort(below.begin(), below.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::sort(above.begin(), above.end(), [](auto& a, auto& b) { return a.first < b.first; });
  // Linear extrapolation through a pair leaves c2 * h_plus * |h_minus| of a quadratic term.
  auto pair_estimate = [&](std::size_t i, double& scale) {
    const auto [hm, fm] = below[i];
    const auto [hp, fp] = above[i];
    scale = hp * (-hm);
    return (hp * fm - hm * fp) / (hp - hm);
  };
  double s1 = 0.0;
  const double l1 = pair_estimate(0, s1);
  if (below.size() < 2 || above.size() < 2) return l1;
  double s2 = 0.0;
  const double l2 = pair_estimate(1, s2);
  if (s2 == s1) return l1;
  return (s2 * l1 - s1 * l2) / (s2 - s1);
}

LimitReport check_limits(const Instance& inst, const std::vector<double>& alpha_grid, const TSearchConfig& cfg) {
  validate_instance(inst);
  LimitReport rep;
  rep.delta = rel_ent_difference(inst.rho, *inst.sigma, *inst.channel);
  const auto iso = stinespring(*inst.channel);
  std::vector<double> grid = alpha_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double a : grid) rep.rows.push_back({a, delta_tilde(inst.rho, *inst.sigma, *inst.channel, iso, RenyiParam(a))});
  rep.extrapolated = richardson_at_one(rep.rows);

  rep.monotone_approach = true;
  const double d = rep.delta.value();
  double prev_err = std::numeric_limits<double>::infinity();
  for (const auto& row : rep.rows) {
    if (row.alpha >= 1.0) break;
    const double err = std::abs(row.value.value() - d);
    if (err > prev_err) rep.monotone_approach = false;
    prev_err = err;
  }
  prev_err = std::numeric_limits<double>::infinity();
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend() && it->alpha > 1.0; ++it) {
    const double err = std::abs(it->value.value() - d);
    if (err > prev_err) rep.monotone_approach = false;
    prev_err = err;
  }

  const RotatedPetzFamily fam(*inst.sigma, *inst.channel);
  const Matrix n_rho = inst.channel->apply(inst.rho.matrix());
  const FidelityReference ref(inst.rho.matrix());
  const auto best = t_search([&](double t) { return ref.fidelity(fam.apply(t, n_rho)); }, cfg);
  rep.neg_log_best_fidelity = neg_log(best.value).value();
  for (const auto& row : rep.rows) {
    if (row.alpha > 0.5 && row.alpha < 1.0) {
      const double margin = row.value.value() - rep.neg_log_best_fidelity;
      rep.chain_margin = rep.chain_margin ? std::min(*rep.chain_margin, margin) : margin;
    }
  }

  if (positive_definite(inst.rho.matrix()) && positive_definite(inst.sigma->matrix()) && positive_definite(n_rho) &&
      positive_definite(fam.n_sigma())) {
    rep.dmax_petz = max_relative_entropy(inst.rho.matrix(), fam.apply(0.0, n_rho));
  }
  return rep;
}

std::string to_string(FunctorKind k) {
  switch (k) {
    case FunctorKind::normalization:
      return "normalization";
    case FunctorKind::parallel:
      return "parallel";
    case FunctorKind::serial:
      return "serial";
  }
  return "normalization";
}

FunctorKind functor_from_string(const std::string& s) {
  for (auto k : {FunctorKind::normalization, FunctorKind::parallel, FunctorKind::serial}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidParameter("unknown functoriality kind '" + s + "'");
}

FunctorialityReport check_functoriality(FunctorKind kind, const std::vector<std::size_t>& dims, Rng& rng) {
  FunctorialityReport rep;
  rep.kind = kind;
  rep.dims = dims;
  rep.t = rng.uniform(-5.0, 5.0);
  auto random_sigma = [&](std::size_t d) { return random_psd(d, rng.uniform_int(1, d), rng.uniform(0.5, 2.0), rng); };
  auto random_map = [&](std::size_t in, std::size_t out) {
    const std::size_t min_env = (in + out - 1) / out;
    return random_channel(in, out, min_env + rng.uniform_int(0, 1), rng);
  };
  auto need = [&](std::size_t n) {
    if (dims.size() != n) throw InvalidParameter(to_string(kind) + " expects " + std::to_string(n) + " dimensions");
  };
  switch (kind) {
    case FunctorKind::normalization: {
      need(1);
      const auto sigma = random_sigma(dims[0]);
      const auto lhs = rotated_petz(sigma, identity_map(dims[0]), rep.t).base;
      rep.choi_distance = choi_distance(lhs, conjugation_map(support_projector(sigma.matrix())));
      break;
    }
    case FunctorKind::parallel: {
      need(4);
      const PsdOperator s1(CompositeLabels::single("A", dims[0]), random_sigma(dims[0]).matrix());
      const auto n1 = random_map(dims[0], dims[1]);
      const PsdOperator s2(CompositeLabels::single("B", dims[2]), random_sigma(dims[2]).matrix());
      const auto n2 = random_map(dims[2], dims[3]);
      const auto lhs = rotated_petz(tensor(s1, s2), tensor(n1, n2), rep.t).base;
      const auto rhs = tensor(rotated_petz(s1, n1, rep.t).base, rotated_petz(s2, n2, rep.t).base);
      rep.choi_distance = choi_distance(lhs, rhs);
      break;
    }
    case FunctorKind::serial: {
      need(3);
      const auto sigma = random_sigma(dims[0]);
      const auto n1 = random_map(dims[0], dims[1]);
      const auto n2 = random_map(dims[1], dims[2]);
      const auto lhs = rotated_petz(sigma, compose(n2, n1), rep.t).base;
      const PsdOperator mid(n1.apply(sigma.matrix()));
      const auto rhs = compose(rotated_petz(sigma, n1, rep.t).base, rotated_petz(mid, n2, rep.t).base);
      rep.choi_distance = choi_distance(lhs, rhs);
      break;
    }
  }
  rep.verdict = rep.choi_distance <= kAuditTolerance ? Verdict::pass : Verdict::fail;
  return rep;
}

}  // namespace qrecov
