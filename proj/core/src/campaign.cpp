#include "qrecov/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qrecov/error.hpp"
#include "qrecov/io.hpp"

namespace qrecov {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::size_t> default_functor_dims(FunctorKind k) {
  switch (k) {
    case FunctorKind::normalization:
      return {3};
    case FunctorKind::parallel:
      return {2, 2, 2, 2};
    case FunctorKind::serial:
      return {2, 3, 2};
  }
  return {2};
}

std::string csv_nats(const Nats& n) { return n.is_infinite() ? "inf" : format_number(n.value()); }

}  // namespace

void CampaignConfig::validate() const {
  if (cases.empty()) throw InvalidParameter("campaign: the case list is empty");
  if (trials < 1) throw InvalidParameter("campaign: trials must be >= 1");
  t_search.validate();
  for (double a : alpha_grid) RenyiParam check(a);
}

std::vector<std::size_t> CampaignConfig::dims_for(CaseTag c) const {
  const auto it = dims.find(c);
  return it == dims.end() ? default_dims(c) : it->second;
}

CampaignConfig campaign_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  CampaignConfig cfg;
  try {
    if (j.contains("cases")) {
      for (const auto& c : j.at("cases")) cfg.cases.push_back(case_from_string(c.get<std::string>()));
    }
    if (j.contains("dims")) {
      for (const auto& [k, v] : j.at("dims").items()) cfg.dims[case_from_string(k)] = v.get<std::vector<std::size_t>>();
    }
    if (j.contains("trials")) cfg.trials = j.at("trials").get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("t_search")) {
      const auto& t = j.at("t_search");
      if (t.contains("t_range")) cfg.t_search.t_range = t.at("t_range").get<double>();
      if (t.contains("coarse_points")) cfg.t_search.coarse_points = t.at("coarse_points").get<std::size_t>();
      if (t.contains("refine_iters")) cfg.t_search.refine_iters = t.at("refine_iters").get<std::size_t>();
    }
    if (j.contains("alpha_grid")) cfg.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<std::size_t>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

std::string campaign_to_json(const CampaignConfig& cfg) {
  json cases = json::array();
  for (auto c : cfg.cases) cases.push_back(to_string(c));
  json dims = json::object();
  for (const auto& [c, d] : cfg.dims) dims[to_string(c)] = d;
  return json{{"cases", cases},
              {"dims", dims},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"t_search",
               {{"t_range", cfg.t_search.t_range},
                {"coarse_points", cfg.t_search.coarse_points},
                {"refine_iters", cfg.t_search.refine_iters}}},
              {"alpha_grid", cfg.alpha_grid},
              {"out", cfg.out_dir},
              {"workers", cfg.workers}}
      .dump(2);
}

std::uint64_t trial_seed(std::uint64_t seed, CaseTag c, std::size_t trial) {
  return Rng(seed).substream(Rng::mix(fnv1a(to_string(c))) + trial).seed();
}

int CampaignResult::exit_code() const {
  if (failed > 0 || errors > 0) return 1;
  if (inconclusive > 0) return 2;
  return 0;
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& job) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  CampaignResult res;
  for (auto c : cfg.cases) {
    for (std::size_t i = 0; i < cfg.trials; ++i) {
      TrialResult t;
      t.tag = c;
      t.trial = i;
      t.seed = trial_seed(cfg.seed, c, i);
      res.trials.push_back(std::move(t));
    }
  }
  parallel_for(res.trials.size(), cfg.workers, [&](std::size_t k) {
    auto& t = res.trials[k];
    try {
      Rng rng(t.seed);
      const Instance inst = build_instance(t.tag, cfg.dims_for(t.tag), rng);
      t.instance_json = instance_to_json(inst, t.seed);
      CheckReport r = check_instance(inst, cfg.t_search);
      r.seed = t.seed;
      t.report = std::move(r);
    } catch (const Error& e) {
      t.error = e.what();
    }
  });
  for (const auto& t : res.trials) {
    if (!t.report) {
      ++res.errors;
    } else if (t.report->verdict == Verdict::pass) {
      ++res.passed;
    } else if (t.report->verdict == Verdict::inconclusive) {
      ++res.inconclusive;
    } else {
      ++res.failed;
    }
  }
  if (!cfg.out_dir.empty()) {
    for (const auto& t : res.trials) {
      const std::string stem = cfg.out_dir + "/" + to_string(t.tag) + "/trial_" + std::to_string(t.trial);
      if (t.report) write_text_file(stem + ".report.json", report_to_json(*t.report) + "\n");
      if (!t.instance_json.empty()) write_text_file(stem + ".instance.json", t.instance_json + "\n");
    }
    write_text_file(cfg.out_dir + "/results.csv", campaign_csv(res.trials));
  }
  return res;
}

std::string campaign_csv(const std::vector<TrialResult>& trials) {
  std::ostringstream out;
  out << "case,trial,seed,dims,delta,bound,witness_t,deficit,verdict,t0_witnesses\n";
  for (const auto& t : trials) {
    out << to_string(t.tag) << ',' << t.trial << ',' << t.seed << ',';
    if (!t.report) {
      out << ",,,,,error,\n";
      continue;
    }
    const auto& r = *t.report;
    out << dims_to_string(r.dims) << ',' << csv_nats(r.delta) << ',' << csv_nats(r.primary.bound) << ','
        << format_number(r.primary.witness_t) << ',' << format_number(r.primary.deficit) << ','
        << to_string(r.verdict) << ',' << (r.primary.t0_witnesses ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string limits_table(const CampaignConfig& cfg) {
  cfg.validate();
  struct Job {
    CaseTag tag;
    std::size_t trial;
    std::uint64_t seed;
    std::string rows;
  };
  std::vector<Job> jobs;
  for (auto c : cfg.cases) {
    if (c == CaseTag::sequential) throw InvalidParameter("limits: the sequential case has no (rho, sigma, N) triple");
    for (std::size_t i = 0; i < cfg.trials; ++i) jobs.push_back({c, i, trial_seed(cfg.seed, c, i), {}});
  }
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t k) {
    auto& job = jobs[k];
    Rng rng(job.seed);
    const Instance inst = build_instance(job.tag, cfg.dims_for(job.tag), rng);
    const LimitReport rep = check_limits(inst, cfg.alpha_grid, cfg.t_search);
    std::ostringstream out;
    for (const auto& row : rep.rows) {
      out << to_string(job.tag) << ',' << job.trial << ',' << job.seed << ',' << format_number(row.alpha) << ','
          << csv_nats(row.value) << ',' << csv_nats(rep.delta) << ','
          << (rep.extrapolated ? format_number(*rep.extrapolated) : "") << ','
          << (rep.dmax_petz ? csv_nats(*rep.dmax_petz) : "") << ','
          << (rep.chain_margin ? format_number(*rep.chain_margin) : "") << '\n';
    }
    job.rows = out.str();
  });
  std::string csv = "case,trial,seed,alpha,delta_tilde,delta,extrapolated,dmax_petz,chain_margin\n";
  for (const auto& job : jobs) csv += job.rows;
  return csv;
}

FunctorialityTable functoriality_table(const std::vector<FunctorKind>& kinds,
                                       const std::map<FunctorKind, std::vector<std::size_t>>& dims, std::size_t trials,
                                       std::uint64_t seed, std::size_t workers) {
  if (kinds.empty()) throw InvalidParameter("functoriality: the kind list is empty");
  struct Job {
    FunctorKind kind;
    std::size_t trial;
    std::uint64_t seed;
    FunctorialityReport rep;
  };
  std::vector<Job> jobs;
  for (auto k : kinds) {
    const std::uint64_t key = Rng::mix(fnv1a(to_string(k)));
    for (std::size_t i = 0; i < trials; ++i) jobs.push_back({k, i, Rng(seed).substream(key + i).seed(), {}});
  }
  parallel_for(jobs.size(), workers, [&](std::size_t n) {
    auto& job = jobs[n];
    Rng rng(job.seed);
    const auto it = dims.find(job.kind);
    job.rep = check_functoriality(job.kind, it == dims.end() ? default_functor_dims(job.kind) : it->second, rng);
  });
  FunctorialityTable table;
  std::ostringstream out;
  out << "kind,trial,seed,dims,t,choi_distance,verdict\n";
  for (const auto& job : jobs) {
    out << to_string(job.kind) << ',' << job.trial << ',' << job.seed << ',' << dims_to_string(job.rep.dims) << ','
        << format_number(job.rep.t) << ',' << format_number(job.rep.choi_distance) << ',' << to_string(job.rep.verdict)
        << '\n';
    if (job.rep.verdict != Verdict::pass) table.all_pass = false;
  }
  table.csv = out.str();
  return table;
}

std::string dims_to_string(const std::vector<std::size_t>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims[i]);
  }
  return s;
}

std::vector<std::size_t> dims_from_string(const std::string& s) {
  std::vector<std::size_t> dims;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw InvalidParameter("malformed dimension list '" + s + "'");
    std::size_t v = 0;
    const auto r = std::from_chars(cur.data(), cur.data() + cur.size(), v);
    if (r.ec != std::errc() || r.ptr != cur.data() + cur.size() || v < 1) {
      throw InvalidParameter("malformed dimension list '" + s + "'");
    }
    dims.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == 'x' || c == ',') {
      flush();
    } else {
      cur += c;
    }
  }
  flush();
  return dims;
}

}  // namespace qrecov
