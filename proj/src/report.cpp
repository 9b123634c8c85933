#include "relifit/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "relifit/error.hpp"

namespace relifit {

namespace {

using nlohmann::ordered_json;

template <typename T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string printf_str(const char* fmt, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

ordered_json fit_json(const FitResult& fit) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "fit";
  j["release"] = fit.release_id;
  j["model"] = to_token(fit.kind);
  j["model_name"] = display_name(fit.kind);
  j["feasible"] = fit.feasible;
  j["error"] = fit.feasible ? ordered_json(nullptr) : ordered_json(fit.error);
  if (fit.feasible) {
    ordered_json params;
    params["phi"] = fit.phi;
    params["N"] = fit.n_real;
    params["N_rounded"] = fit.n_rounded;
    params["gamma"] = opt(fit.gamma);
    params["mu"] = opt(fit.mu);
    j["params"] = params;
  } else {
    j["params"] = nullptr;
  }
  j["gamma_mode"] = fit.gamma_mode.empty() ? ordered_json(nullptr) : ordered_json(fit.gamma_mode);
  if (fit.p && fit.r) {
    j["fixed"] = {{"p", *fit.p}, {"r", *fit.r}};
  } else {
    j["fixed"] = nullptr;
  }
  j["observations"] = fit.observations;
  j["total_failures"] = fit.total_failures;
  j["k_params"] = fit.k_params;
  j["llf"] = fit.feasible ? ordered_json(fit.llf) : ordered_json(nullptr);
  j["llf_at_rounded_N"] = opt(fit.llf_rounded);
  j["sse"] = fit.feasible ? ordered_json(fit.sse) : ordered_json(nullptr);
  j["mse"] = opt(fit.mse);
  if (fit.stationarity) {
    j["stationarity"] = {{"r_phi", fit.stationarity->r_phi}, {"r_N", fit.stationarity->r_n}};
  } else {
    j["stationarity"] = nullptr;
  }
  ordered_json profile = ordered_json::array();
  for (const auto& pt : fit.profile) profile.push_back({{"gamma", pt.gamma}, {"llf", opt(pt.llf)}});
  j["profile"] = profile;
  j["optimizer"] = {{"algorithm", "pso-gsa"},
                    {"seed", fit.optimizer.seed},
                    {"iters", fit.optimizer.iters},
                    {"pop", fit.optimizer.pop},
                    {"evaluations", fit.optimizer.evaluations},
                    {"trace_tail", fit.optimizer.trace_tail}};
  return j;
}

template <typename T>
std::optional<T> get_opt(const ordered_json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

std::string md_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out.push_back(c);
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

std::string render_markdown(const CompareReport& report) {
  std::ostringstream md;
  md << "# Goodness-of-fit comparison\n";
  for (const auto& rc : report.releases) {
    md << "\n## Iteration " << rc.release_id << "\n\n";
    md << "| Sr. No. | Model | Estimated Parameter values | SSE | MSE |\n";
    md << "|---|---|---|---|---|\n";
    for (std::size_t k = 0; k < rc.fits.size(); ++k) {
      const auto& fit = rc.fits[k];
      md << "| " << k + 1 << " | " << display_name(fit.kind) << " | ";
      if (fit.feasible) {
        md << parameter_text(fit) << " | " << printf_str("%.6g", fit.sse) << " | "
           << (fit.mse ? printf_str("%.6g", *fit.mse) : std::string("n/a")) << " |\n";
      } else {
        md << "fit failed: " << md_escape(fit.error) << " | n/a | n/a |\n";
      }
    }
    const auto winner = rc.winner();
    md << "\nLowest SSE: " << (winner ? std::string(display_name(*winner)) : "none") << "\n";
  }
  md << "\n## Win rate (lowest SSE)\n\n";
  for (const auto& wr : report.win_rates) {
    md << "- " << display_name(wr.kind) << ": " << wr.wins << " of " << wr.releases
       << " iterations (" << printf_str("%.2f", wr.percent()) << "%)\n";
  }
  return md.str();
}

std::string render_csv(const CompareReport& report) {
  std::ostringstream csv;
  csv << "release,sr_no,model,phi,N,N_real,n,gamma,mu,llf,sse,mse,rank,status\n";
  for (const auto& rc : report.releases) {
    for (std::size_t k = 0; k < rc.fits.size(); ++k) {
      const auto& fit = rc.fits[k];
      csv << csv_quote(rc.release_id) << ',' << k + 1 << ',' << to_token(fit.kind) << ',';
      if (fit.feasible) {
        csv << shortest(fit.phi) << ',' << fit.n_rounded << ',' << shortest(fit.n_real) << ','
            << fit.total_failures << ',' << (fit.gamma ? shortest(*fit.gamma) : "") << ','
            << (fit.mu ? shortest(*fit.mu) : "") << ',' << shortest(fit.llf) << ','
            << shortest(fit.sse) << ',' << (fit.mse ? shortest(*fit.mse) : "") << ','
            << *rc.rank[k] << ",ok\n";
      } else {
        csv << ",,,,,,,,,," << csv_quote("failed: " + fit.error) << '\n';
      }
    }
  }
  for (const auto& wr : report.win_rates) {
    csv << "# win_rate," << to_token(wr.kind) << ',' << wr.wins << ',' << wr.releases << ','
        << printf_str("%.2f", wr.percent()) << '\n';
  }
  return csv.str();
}

std::string render_json(const CompareReport& report) {
  ordered_json j;
  j["schema"] = kSchemaVersion;
  j["type"] = "compare";
  ordered_json models = ordered_json::array();
  for (auto m : report.models) models.push_back(to_token(m));
  j["models"] = models;
  ordered_json releases = ordered_json::array();
  for (const auto& rc : report.releases) {
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < rc.fits.size(); ++k) {
      rows.push_back({{"sr_no", k + 1},
                      {"rank", opt(rc.rank[k])},
                      {"parameters", rc.fits[k].feasible ? ordered_json(parameter_text(rc.fits[k]))
                                                         : ordered_json(nullptr)},
                      {"fit", fit_json(rc.fits[k])}});
    }
    const auto winner = rc.winner();
    releases.push_back({{"release", rc.release_id},
                        {"best", winner ? ordered_json(to_token(*winner)) : ordered_json(nullptr)},
                        {"rows", rows}});
  }
  j["releases"] = releases;
  ordered_json rates = ordered_json::array();
  for (const auto& wr : report.win_rates) {
    rates.push_back({{"model", to_token(wr.kind)},
                     {"wins", wr.wins},
                     {"releases", wr.releases},
                     {"percent", wr.percent()}});
  }
  j["win_rates"] = rates;
  return j.dump(2) + "\n";
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::string_view> split_dots(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find('.', start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string fit_result_to_json(const FitResult& fit) { return fit_json(fit).dump(2) + "\n"; }

FitResult fit_result_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("schema", "") != kSchemaVersion || j.value("type", "") != "fit") {
      throw SchemaError("not a relifit/1 fit document");
    }
    FitResult fit;
    fit.release_id = j.at("release").get<std::string>();
    const auto kind = parse_model_kind(j.at("model").get<std::string>());
    if (!kind) throw SchemaError("unknown model '" + j.at("model").get<std::string>() + "'");
    fit.kind = *kind;
    fit.feasible = j.at("feasible").get<bool>();
    fit.error = get_opt<std::string>(j, "error").value_or("");
    if (fit.feasible) {
      const auto& params = j.at("params");
      fit.phi = params.at("phi").get<double>();
      fit.n_real = params.at("N").get<double>();
      fit.n_rounded = params.at("N_rounded").get<long long>();
      fit.gamma = get_opt<double>(params, "gamma");
      fit.mu = get_opt<double>(params, "mu");
      fit.llf = j.at("llf").get<double>();
      fit.sse = j.at("sse").get<double>();
    }
    fit.gamma_mode = get_opt<std::string>(j, "gamma_mode").value_or("");
    if (!j.at("fixed").is_null()) {
      fit.p = j.at("fixed").at("p").get<double>();
      fit.r = j.at("fixed").at("r").get<double>();
    }
    fit.observations = j.at("observations").get<std::size_t>();
    fit.total_failures = j.at("total_failures").get<std::uint64_t>();
    fit.k_params = j.at("k_params").get<std::size_t>();
    fit.llf_rounded = get_opt<double>(j, "llf_at_rounded_N");
    fit.mse = get_opt<double>(j, "mse");
    if (!j.at("stationarity").is_null()) {
      fit.stationarity = StationarityResiduals{j.at("stationarity").at("r_phi").get<double>(),
                                               j.at("stationarity").at("r_N").get<double>()};
    }
    for (const auto& pt : j.at("profile")) {
      fit.profile.push_back({pt.at("gamma").get<double>(), get_opt<double>(pt, "llf")});
    }
    const auto& o = j.at("optimizer");
    fit.optimizer.seed = o.at("seed").get<std::uint64_t>();
    fit.optimizer.iters = o.at("iters").get<std::size_t>();
    fit.optimizer.pop = o.at("pop").get<std::size_t>();
    fit.optimizer.evaluations = o.at("evaluations").get<std::size_t>();
    fit.optimizer.trace_tail = o.at("trace_tail").get<std::vector<double>>();
    return fit;
  } catch (const ordered_json::exception& e) {
    throw SchemaError(std::string("malformed fit document: ") + e.what());
  }
}

std::string fit_summary_line(const FitResult& fit) {
  std::ostringstream os;
  os << fit.release_id << ' ' << to_token(fit.kind) << ": ";
  if (!fit.feasible) {
    os << "fit failed (" << fit.error << ")";
    return os.str();
  }
  os << "phi=" << printf_str("%.6g", fit.phi) << " N=" << printf_str("%.6g", fit.n_real) << " (~"
     << fit.n_rounded << ")";
  if (fit.gamma) {
    os << " gamma=" << printf_str("%.6g", *fit.gamma) << " mu=" << printf_str("%.6g", *fit.mu);
  }
  os << " LLF=" << printf_str("%.6f", fit.llf) << " SSE=" << printf_str("%.6g", fit.sse)
     << " MSE=" << (fit.mse ? printf_str("%.6g", *fit.mse) : std::string("n/a"));
  return os.str();
}

std::string parameter_text(const FitResult& fit) {
  std::string s = "Φ=" + printf_str("%.2E", fit.phi) + ", N=" + std::to_string(fit.n_rounded);
  if (fit.kind == ModelKind::MSW || fit.kind == ModelKind::Proposed) {
    s += ", n=" + std::to_string(fit.total_failures);
  }
  if (fit.gamma) s += ", γ=" + printf_str("%.4f", *fit.gamma);
  return s;
}

std::optional<ReportFormat> parse_report_format(std::string_view token) {
  if (token == "json") return ReportFormat::Json;
  if (token == "csv") return ReportFormat::Csv;
  if (token == "md" || token == "markdown") return ReportFormat::Markdown;
  return std::nullopt;
}

std::string render_compare(const CompareReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json:
      return render_json(report);
    case ReportFormat::Csv:
      return render_csv(report);
    case ReportFormat::Markdown:
      return render_markdown(report);
  }
  return {};
}

bool release_label_less(std::string_view a, std::string_view b) {
  const auto pa = split_dots(a);
  const auto pb = split_dots(b);
  for (std::size_t k = 0; k < std::min(pa.size(), pb.size()); ++k) {
    if (pa[k] == pb[k]) continue;
    if (all_digits(pa[k]) && all_digits(pb[k])) {
      // Compare as integers without overflow: strip zeros, then length, then text.
      auto strip = [](std::string_view s) {
        while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
        return s;
      };
      const auto sa = strip(pa[k]);
      const auto sb = strip(pb[k]);
      if (sa.size() != sb.size()) return sa.size() < sb.size();
      if (sa != sb) return sa < sb;
      return pa[k] < pb[k];
    }
    return pa[k] < pb[k];
  }
  return pa.size() < pb.size();
}

std::string render_mu_csv(std::vector<MuPoint> points) {
  std::stable_sort(points.begin(), points.end(), [](const MuPoint& a, const MuPoint& b) {
    return release_label_less(a.release_id, b.release_id);
  });
  std::ostringstream csv;
  csv << "release,mu,gamma\n";
  for (const auto& p : points) {
    csv << csv_quote(p.release_id) << ',' << shortest(p.mu) << ',' << shortest(p.gamma) << '\n';
  }
  return csv.str();
}

}  // namespace relifit
