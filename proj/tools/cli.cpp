#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relifit/compare.hpp"
#include "relifit/data_io.hpp"
#include "relifit/error.hpp"
#include "relifit/fit.hpp"
#include "relifit/model.hpp"
#include "relifit/modulation.hpp"
#include "relifit/report.hpp"
#include "relifit/simulate.hpp"

namespace relifit::cli {

namespace {

namespace fs = std::filesystem;

// Raised for any condition that maps to a specific exit code.
struct CliError {
  int code;
  std::string tag;
  std::string message;
};

[[noreturn]] void usage_error(const std::string& msg) { throw CliError{kUsage, "E_USAGE", msg}; }

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    usage_error("cannot parse " + what + " '" + s + "'");
  }
  return value;
}

ModelKind parse_kind(const std::string& token) {
  const auto kind = parse_model_kind(token);
  if (!kind) {
    usage_error("unknown model '" + token + "' (expected jm, sw, goi, mahapatra, msw, proposed)");
  }
  return *kind;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

// Flags shared by fit and compare.
struct FitFlags {
  double p = 0.95;
  double r = 0.03;
  std::optional<double> gamma;
  std::optional<double> mu;
  bool estimate_gamma = false;
  std::string profile_gamma;
  std::uint64_t seed = 0;
  std::size_t swarm = 30;
  std::size_t iters = 1000;
  std::vector<std::string> bounds;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--p", p, "fault removal probability")->capture_default_str();
    cmd.add_option("--r", r, "fault introduction probability")->capture_default_str();
    auto* g = cmd.add_option("--gamma", gamma, "fixed modulation factor (proposed)");
    auto* m = cmd.add_option("--mu", mu, "fixed modulation parameter (proposed)");
    auto* e = cmd.add_flag("--estimate-gamma", estimate_gamma, "estimate gamma jointly (proposed)");
    auto* pr = cmd.add_option("--profile-gamma", profile_gamma,
                              "profile gamma on LO:HI:STEP (proposed)");
    g->excludes(m, e, pr);
    m->excludes(e, pr);
    e->excludes(pr);
    cmd.add_option("--seed", seed, "optimizer seed")->capture_default_str();
    cmd.add_option("--swarm", swarm, "swarm size")->capture_default_str();
    cmd.add_option("--iters", iters, "optimizer generations")->capture_default_str();
    cmd.add_option("--bounds", bounds,
                   "search box overrides, e.g. phi=1e-8:1e-1,N=40:500,gamma=1:50");
  }

  bool any_gamma_mode() const { return gamma || mu || estimate_gamma || !profile_gamma.empty(); }

  FitOptions build() const {
    FitOptions options;
    options.p = p;
    options.r = r;
    try {
      DebugProbs check(p, r);
      (void)check;
    } catch (const DomainError& e) {
      usage_error(std::string("invalid debugging probabilities: ") + e.what());
    }
    if (gamma) {
      options.gamma = FixedGamma{Modulation::from_gamma(*gamma)};
    } else if (mu) {
      options.gamma = FixedGamma{Modulation::from_mu(*mu)};
    } else if (!profile_gamma.empty()) {
      const auto parts = split(profile_gamma, ':');
      if (parts.size() != 3) usage_error("--profile-gamma expects LO:HI:STEP");
      ProfileGamma prof{parse_double(parts[0], "gamma lower bound"),
                        parse_double(parts[1], "gamma upper bound"),
                        parse_double(parts[2], "gamma step")};
      (void)prof.grid();
      options.gamma = prof;
    } else {
      options.gamma = EstimateGamma{};
    }
    options.swarm.seed = seed;
    options.swarm.pop_size = swarm;
    options.swarm.max_iters = iters;
    options.swarm.validate();
    for (const auto& group : bounds) {
      for (const auto& item : split(group, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) usage_error("bound '" + item + "' must look like name=lo:hi");
        const auto name = item.substr(0, eq);
        const auto range = split(item.substr(eq + 1), ':');
        if (range.size() != 2) usage_error("bound '" + item + "' must look like name=lo:hi");
        const double lo = parse_double(range[0], "bound");
        const double hi = parse_double(range[1], "bound");
        if (!(lo < hi)) usage_error("bound '" + item + "' needs lo < hi");
        if (name == "phi") {
          if (!(lo > 0.0)) usage_error("phi bounds must be positive");
          options.bounds[Param::Phi] = {lo, hi, Scale::Log};
        } else if (name == "N") {
          if (!(lo > 0.0)) usage_error("N bounds must be positive");
          options.bounds[Param::N] = {lo, hi, Scale::Linear};
        } else if (name == "gamma") {
          if (lo < 1.0) usage_error("gamma bounds must be >= 1");
          options.bounds[Param::Gamma] = {lo, hi, Scale::Linear};
        } else {
          usage_error("unknown bound parameter '" + name + "' (phi, N, gamma)");
        }
      }
    }
    return options;
  }
};

int cmd_fit(const std::string& data_path, const std::string& release, const std::string& model,
            const FitFlags& flags, const std::string& out_path, bool verbose, std::ostream& out,
            std::ostream& err) {
  const ModelKind kind = parse_kind(model);
  if (kind != ModelKind::Proposed && flags.any_gamma_mode()) {
    usage_error("gamma options apply to the proposed model only");
  }
  const FitOptions options = flags.build();
  const auto data = load_failure_csv(data_path);
  const FailureSeries* series = nullptr;
  if (release.empty()) {
    if (data.releases.size() != 1) {
      usage_error("data holds " + std::to_string(data.releases.size()) +
                  " releases; choose one with --release");
    }
    series = &data.releases.front();
  } else {
    series = data.find(release);
    if (!series) usage_error("release '" + release + "' not found in " + data_path);
  }
  const FitResult fit = fit_model(*series, kind, options);
  write_text(out_path, fit_result_to_json(fit));
  if (verbose) err << "relifit: " << fit.optimizer.evaluations << " objective evaluations\n";
  if (!fit.feasible) {
    throw CliError{kFitFailure, "E_FIT", fit_summary_line(fit)};
  }
  out << fit_summary_line(fit) << '\n';
  return kOk;
}

int cmd_compare(const std::string& data_path, const std::string& release,
                const std::string& models_arg, const std::string& format_arg, const FitFlags& flags,
                const std::string& out_path, std::ostream& out) {
  std::vector<ModelKind> models;
  for (const auto& token : split(models_arg, ',')) {
    if (token.empty()) continue;
    const ModelKind kind = parse_kind(token);
    if (std::find(models.begin(), models.end(), kind) == models.end()) models.push_back(kind);
  }
  if (models.empty()) usage_error("--models needs at least one model");
  const auto format = parse_report_format(format_arg);
  if (!format) usage_error("unknown format '" + format_arg + "' (md, csv, json)");
  const FitOptions options = flags.build();

  const auto data = load_failure_csv(data_path);
  std::vector<FailureSeries> selected;
  if (release == "all") {
    selected = data.releases;
  } else {
    const auto* s = data.find(release);
    if (!s) usage_error("release '" + release + "' not found in " + data_path);
    selected.push_back(*s);
  }
  const auto report = compare(selected, models, options);
  const auto text = render_compare(report, *format);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
    for (const auto& wr : report.win_rates) {
      out << display_name(wr.kind) << ": lowest SSE in " << wr.wins << " of " << wr.releases
          << " iterations (" << fmt6(wr.percent()) << "%)\n";
    }
  }
  return kOk;
}

int cmd_gamma(const std::optional<double>& mu, const std::optional<double>& gamma,
              std::ostream& out) {
  if (mu.has_value() == gamma.has_value()) usage_error("give exactly one of --mu or --gamma");
  const Modulation m = mu ? Modulation::from_mu(*mu) : Modulation::from_gamma(*gamma);
  out << "mu=" << fmt6(m.mu()) << " gamma=" << fmt6(m.gamma()) << '\n';
  return kOk;
}

int cmd_ingest(const std::string& bugs_path, const std::string& windows_path,
               const std::string& grouping_arg, const std::string& out_path, std::ostream& out,
               std::ostream& err) {
  Grouping grouping;
  try {
    grouping = parse_grouping(grouping_arg);
  } catch (const DomainError& e) {
    usage_error(e.what());
  }
  const auto bugs = load_bug_reports(bugs_path);
  const auto windows = load_release_windows(windows_path);
  const auto result = ingest_bug_reports(bugs, windows, grouping);
  for (const auto& w : result.warnings) err << "relifit: warning: " << w << '\n';
  save_failure_csv(out_path, result.dataset);
  std::size_t failures = 0;
  for (const auto& s : result.dataset.releases) failures += s.total_failures();
  out << "ingested " << bugs.size() << " reports into " << result.dataset.releases.size()
      << " releases: " << failures << " failures, " << result.anchors << " time anchors, "
      << result.skipped << " skipped\n";
  return kOk;
}

int cmd_simulate(const std::string& model, double phi, double n_initial,
                 const std::optional<double>& gamma, const std::optional<double>& mu, double p,
                 double r, std::size_t count, std::uint64_t seed, const std::string& release,
                 const std::string& out_path, std::ostream& out) {
  const ModelKind kind = parse_kind(model);
  if (gamma && mu) usage_error("give at most one of --gamma or --mu");
  ModelSpec spec{kind, phi, n_initial, std::nullopt, std::nullopt, std::nullopt};
  if (uses_debug_probs(kind)) {
    try {
      spec.debug = DebugProbs(p, r);
    } catch (const DomainError& e) {
      usage_error(std::string("invalid debugging probabilities: ") + e.what());
    }
  }
  if (kind == ModelKind::Proposed) {
    if (!gamma && !mu) usage_error("the proposed model needs --gamma or --mu");
    spec.modulation = gamma ? Modulation::from_gamma(*gamma) : Modulation::from_mu(*mu);
  } else if (gamma || mu) {
    usage_error("gamma options apply to the proposed model only");
  }
  spec.validate();
  FailureDataset data;
  data.releases.push_back(simulate_series(spec, count, seed, release));
  save_failure_csv(out_path, data);
  out << "simulated " << count << " failures (" << to_token(kind) << ", seed " << seed << ") -> "
      << out_path << '\n';
  return kOk;
}

int cmd_mu_plot(const std::string& results_dir, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  if (!fs::is_directory(results_dir)) {
    throw IoError("results directory '" + results_dir + "' does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(results_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<MuPoint> points;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    FitResult fit;
    try {
      fit = fit_result_from_json(buf.str());
    } catch (const SchemaError& e) {
      err << "relifit: warning: skipping " << path.string() << ": " << e.what() << '\n';
      continue;
    }
    if (fit.kind != ModelKind::Proposed || !fit.feasible || !fit.gamma) continue;
    points.push_back({fit.release_id, fit.mu.value_or(mu_from_gamma(*fit.gamma)), *fit.gamma});
  }
  const auto csv = render_mu_csv(std::move(points));
  if (out_path.empty()) {
    out << csv;
  } else {
    write_text(out_path, csv);
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"relifit: failure-rate software reliability model fitting"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "extra diagnostics on stderr");

  // fit
  auto* fit = app.add_subcommand("fit", "fit one model to one release");
  std::string fit_data, fit_release, fit_model_name, fit_out;
  FitFlags fit_flags;
  fit->add_option("--data", fit_data, "failure-interval CSV")->required();
  fit->add_option("--release", fit_release, "release label (optional if the file has one)");
  fit->add_option("--model", fit_model_name, "jm|sw|goi|mahapatra|msw|proposed")->required();
  fit->add_option("--out", fit_out, "FitResult JSON output path")->required();
  fit_flags.add_to(*fit);

  // compare
  auto* cmp = app.add_subcommand("compare", "fit and rank several models per release");
  std::string cmp_data, cmp_release = "all", cmp_models = "jm,goi,sw,mahapatra,msw,proposed";
  std::string cmp_format = "md", cmp_out;
  FitFlags cmp_flags;
  cmp->add_option("--data", cmp_data, "failure-interval CSV")->required();
  cmp->add_option("--release", cmp_release, "release label or 'all'")->capture_default_str();
  cmp->add_option("--models", cmp_models, "comma-separated model list")->capture_default_str();
  cmp->add_option("--format", cmp_format, "md|csv|json")->capture_default_str();
  cmp->add_option("--out", cmp_out, "report path (stdout if omitted)");
  cmp_flags.add_to(*cmp);

  // gamma
  auto* gam = app.add_subcommand("gamma", "convert between mu and gamma");
  std::optional<double> gam_mu, gam_gamma;
  gam->add_option("--mu", gam_mu, "modulation parameter in (0, 1]");
  gam->add_option("--gamma", gam_gamma, "modulation factor >= 1");

  // ingest
  auto* ing = app.add_subcommand("ingest", "bug reports -> failure-interval CSV");
  std::string ing_bugs, ing_windows, ing_grouping = "per-failure", ing_out;
  ing->add_option("--bug-reports", ing_bugs, "bug-report CSV")->required();
  ing->add_option("--windows", ing_windows, "release-window CSV")->required();
  ing->add_option("--grouping", ing_grouping, "per-failure | fixed:<hours>h")->capture_default_str();
  ing->add_option("--out", ing_out, "failure-interval CSV output")->required();

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw a synthetic failure series");
  std::string sim_model, sim_out, sim_release = "sim";
  double sim_phi = 0.0, sim_n = 0.0, sim_p = 0.95, sim_r = 0.03;
  std::optional<double> sim_gamma, sim_mu;
  std::size_t sim_count = 0;
  std::uint64_t sim_seed = 0;
  sim->add_option("--model", sim_model, "model kind")->required();
  sim->add_option("--phi", sim_phi, "proportionality constant")->required();
  sim->add_option("--N", sim_n, "initial fault count")->required();
  sim->add_option("--gamma", sim_gamma, "modulation factor (proposed)");
  sim->add_option("--mu", sim_mu, "modulation parameter (proposed)");
  sim->add_option("--p", sim_p, "fault removal probability")->capture_default_str();
  sim->add_option("--r", sim_r, "fault introduction probability")->capture_default_str();
  sim->add_option("--count", sim_count, "number of failures")->required();
  sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
  sim->add_option("--release", sim_release, "release label")->capture_default_str();
  sim->add_option("--out", sim_out, "failure-interval CSV output")->required();

  // mu-plot
  auto* mup = app.add_subcommand("mu-plot", "collect (release, mu) pairs from fit results");
  std::string mup_dir, mup_out;
  mup->add_option("--results", mup_dir, "directory of FitResult JSON files")->required();
  mup->add_option("--out", mup_out, "CSV output (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "relifit: error[E_USAGE]: " << msg << '\n';
    return kUsage;
  }

  try {
    if (fit->parsed()) {
      return cmd_fit(fit_data, fit_release, fit_model_name, fit_flags, fit_out, verbose, out, err);
    }
    if (cmp->parsed()) {
      return cmd_compare(cmp_data, cmp_release, cmp_models, cmp_format, cmp_flags, cmp_out, out);
    }
    if (gam->parsed()) return cmd_gamma(gam_mu, gam_gamma, out);
    if (ing->parsed()) return cmd_ingest(ing_bugs, ing_windows, ing_grouping, ing_out, out, err);
    if (sim->parsed()) {
      return cmd_simulate(sim_model, sim_phi, sim_n, sim_gamma, sim_mu, sim_p, sim_r, sim_count,
                          sim_seed, sim_release, sim_out, out);
    }
    if (mup->parsed()) return cmd_mu_plot(mup_dir, mup_out, out, err);
  } catch (const CliError& e) {
    err << "relifit: error[" << e.tag << "]: " << e.message << '\n';
    return e.code;
  } catch (const IoError& e) {
    err << "relifit: error[E_IO]: " << e.what() << '\n';
    return kIo;
  } catch (const SchemaError& e) {
    err << "relifit: error[E_DATA]: " << e.what() << '\n';
    return kUsage;
  } catch (const FeasibilityError& e) {
    err << "relifit: error[E_FIT]: " << e.what() << '\n';
    return kFitFailure;
  } catch (const std::exception& e) {
    // DomainError, UnsupportedKindError and friends: invalid input values.
    err << "relifit: error[E_USAGE]: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace relifit::cli
