// qrecov: run, check, limits and functoriality subcommands.
//
// Exit codes: 0 all pass, 2 some inconclusive, 1 on a failed verdict or an
// error, 64 on a usage error (bad flags, unreadable or malformed config,
// empty case list).

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrecov/campaign.hpp"
#include "qrecov/error.hpp"
#include "qrecov/io.hpp"
#include "qrecov/verify.hpp"

namespace {

using namespace qrecov;

constexpr int kExitUsage = 64;

struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::string cur;
    for (char c : item) {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

// Flags shared by run and limits; unset values keep the config file (or default) value.
struct CampaignFlags {
  std::string config;
  std::vector<std::string> cases;
  std::vector<std::string> dims;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> t_range;
  std::optional<std::size_t> t_points;
  std::optional<std::string> alpha_grid;
  std::optional<std::size_t> workers;
  std::string out;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "Campaign config JSON");
    app->add_option("--case", cases, "Case tag(s); repeat or comma separate");
    app->add_option("--dims", dims, "Dimensions as 2x2x2 (all cases) or case=2x2x2");
    app->add_option("--trials", trials, "Trials per case");
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--t-range", t_range, "Search range T for t in [-T, T]");
    app->add_option("--t-points", t_points, "Coarse grid points (odd, >= 3)");
    app->add_option("--alpha-grid", alpha_grid, "Comma separated alpha values");
    app->add_option("--workers", workers, "Worker threads (0 = hardware threads)");
  }

  CampaignConfig build() const {
    CampaignConfig cfg;
    if (!config.empty()) {
      std::string text;
      try {
        text = read_text_file(config);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      try {
        cfg = campaign_from_json(text);
      } catch (const ParseError& e) {
        throw UsageError("config '" + config + "': parse error at byte " + std::to_string(e.offset()));
      } catch (const Error& e) {
        throw UsageError("config '" + config + "': " + e.what());
      }
    }
    try {
      const auto tags = split_list(cases);
      if (!tags.empty()) {
        cfg.cases.clear();
        for (const auto& t : tags) cfg.cases.push_back(case_from_string(t));
      }
      for (const auto& d : dims) {
        const auto eq = d.find('=');
        if (eq == std::string::npos) {
          for (auto c : cfg.cases) cfg.dims[c] = dims_from_string(d);
        } else {
          cfg.dims[case_from_string(d.substr(0, eq))] = dims_from_string(d.substr(eq + 1));
        }
      }
      if (trials) cfg.trials = *trials;
      if (seed) cfg.seed = *seed;
      if (t_range) cfg.t_search.t_range = *t_range;
      if (t_points) cfg.t_search.coarse_points = *t_points;
      if (alpha_grid) {
        cfg.alpha_grid.clear();
        for (const auto& a : split_list({*alpha_grid})) cfg.alpha_grid.push_back(std::stod(a));
      }
      if (workers) cfg.workers = *workers;
      if (!out.empty()) cfg.out_dir = out;
      cfg.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    } catch (const std::invalid_argument&) {
      throw UsageError("malformed --alpha-grid");
    }
    return cfg;
  }
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return 0;
    case Verdict::inconclusive:
      return 2;
    case Verdict::fail:
      return 1;
  }
  return 1;
}

int cmd_run(const CampaignFlags& flags) {
  const CampaignConfig cfg = flags.build();
  const CampaignResult res = run_campaign(cfg);
  if (cfg.out_dir.empty()) std::cout << campaign_csv(res.trials);
  for (const auto& t : res.trials) {
    if (!t.error.empty()) std::cerr << to_string(t.tag) << " trial " << t.trial << ": " << t.error << '\n';
  }
  std::cerr << res.trials.size() << " trials: " << res.passed << " pass, " << res.inconclusive << " inconclusive, "
            << res.failed << " fail, " << res.errors << " error\n";
  return res.exit_code();
}

struct CheckFlags {
  std::string instance;
  std::string rho;
  std::string sigma;
  std::string channel;
  std::string dims;
  std::string tag = "channel";
  double t_range = TSearchConfig{}.t_range;
  std::size_t t_points = TSearchConfig{}.coarse_points;
  bool no_trace = false;
};

std::string read_input(const std::string& path) {
  try {
    return read_text_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int cmd_check(const CheckFlags& f) {
  if (f.instance.empty() == f.rho.empty()) throw UsageError("check: give exactly one of --instance or --rho");
  TSearchConfig cfg;
  cfg.t_range = f.t_range;
  cfg.coarse_points = f.t_points;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  CheckReport report;
  if (!f.instance.empty()) {
    std::uint64_t seed = 0;
    const Instance inst = instance_from_json(read_input(f.instance), &seed);
    report = check_instance(inst, cfg);
    report.seed = seed;
  } else {
    const CaseTag tag = case_from_string(f.tag);
    const auto dims = f.dims.empty() ? std::vector<std::size_t>{} : dims_from_string(f.dims);
    DensityOperator rho = density_from_json(read_input(f.rho), dims);
    if (tag == CaseTag::sequential) {
      report = check_sequential(rho, cfg);
    } else {
      if (f.sigma.empty() || f.channel.empty()) throw UsageError("check: --sigma and --channel are required");
      Instance inst{tag, rho.labels().dims(), rho, psd_from_json(read_input(f.sigma), dims),
                    channel_from_json(read_input(f.channel)), "user-supplied", {}, {}, {}, {}};
      report = check_instance(inst, cfg);
    }
  }
  std::cout << report_to_json(report, !f.no_trace) << '\n';
  std::cerr << report.case_name << ": delta " << (report.delta.is_infinite() ? "inf" : format_number(report.delta.value()))
            << ", " << to_string(report.primary.kind) << " bound "
            << (report.primary.bound.is_infinite() ? "inf" : format_number(report.primary.bound.value()))
            << " at t = " << format_number(report.primary.witness_t) << ", verdict " << to_string(report.verdict)
            << '\n';
  for (const auto& a : report.audits) {
    if (!a.passed) std::cerr << "audit " << a.name << " failed: " << format_number(a.value) << '\n';
  }
  return exit_for(report.verdict);
}

int cmd_limits(const CampaignFlags& flags) {
  CampaignConfig cfg = flags.build();
  const std::string path = cfg.out_dir;
  cfg.out_dir.clear();
  const std::string csv = limits_table(cfg);
  if (path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(path, csv);
  }
  return 0;
}

struct FunctorFlags {
  std::vector<std::string> kinds;
  std::vector<std::string> dims;
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t workers = 0;
  std::string out;
};

int cmd_functoriality(const FunctorFlags& f) {
  std::vector<FunctorKind> kinds;
  std::map<FunctorKind, std::vector<std::size_t>> dims;
  try {
    for (const auto& k : split_list(f.kinds)) kinds.push_back(functor_from_string(k));
    if (kinds.empty()) kinds = {FunctorKind::normalization, FunctorKind::parallel, FunctorKind::serial};
    for (const auto& d : f.dims) {
      const auto eq = d.find('=');
      if (eq == std::string::npos) {
        for (auto k : kinds) dims[k] = dims_from_string(d);
      } else {
        dims[functor_from_string(d.substr(0, eq))] = dims_from_string(d.substr(eq + 1));
      }
    }
    if (f.trials < 1) throw InvalidParameter("functoriality: trials must be >= 1");
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const auto table = functoriality_table(kinds, dims, f.trials, f.seed, f.workers);
  if (f.out.empty()) {
    std::cout << table.csv;
  } else {
    write_text_file(f.out, table.csv);
  }
  return table.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Petz recovery bounds: numerical verification campaigns"};
  app.require_subcommand(1);

  CampaignFlags run_flags;
  auto* run = app.add_subcommand("run", "Run a verification campaign");
  run_flags.attach(run);
  run->add_option("--out", run_flags.out, "Output directory for reports and results.csv");

  CheckFlags check_flags;
  auto* check = app.add_subcommand("check", "Check one instance and print its report");
  check->add_option("--instance", check_flags.instance, "Persisted instance JSON");
  check->add_option("--rho", check_flags.rho, "State in the matrix JSON format");
  check->add_option("--sigma", check_flags.sigma, "Reference operator in the matrix JSON format");
  check->add_option("--channel", check_flags.channel, "Channel JSON {in, out, kraus}");
  check->add_option("--dims", check_flags.dims, "Subsystem dimensions of rho, e.g. 2x2");
  check->add_option("--case", check_flags.tag, "Case tag used for audits (default channel)");
  check->add_option("--t-range", check_flags.t_range, "Search range T");
  check->add_option("--t-points", check_flags.t_points, "Coarse grid points");
  check->add_flag("--no-trace", check_flags.no_trace, "Omit t_trace from the report");

  CampaignFlags limit_flags;
  auto* limits = app.add_subcommand("limits", "Tabulate the Renyi difference against alpha");
  limit_flags.attach(limits);
  limits->add_option("--out", limit_flags.out, "CSV output path (default stdout)");

  FunctorFlags functor_flags;
  auto* functor = app.add_subcommand("functoriality", "Check the Choi identities of rotated Petz maps");
  functor->add_option("--kind", functor_flags.kinds, "normalization, parallel, serial (default all)");
  functor->add_option("--dims", functor_flags.dims, "Dimensions as 2x2x2 (all kinds) or kind=2x2x2");
  functor->add_option("--trials", functor_flags.trials, "Trials per kind");
  functor->add_option("--seed", functor_flags.seed, "Master seed");
  functor->add_option("--workers", functor_flags.workers, "Worker threads (0 = hardware threads)");
  functor->add_option("--out", functor_flags.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*check) return cmd_check(check_flags);
    if (*limits) return cmd_limits(limit_flags);
    return cmd_functoriality(functor_flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error at byte " << e.offset() << ": " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
