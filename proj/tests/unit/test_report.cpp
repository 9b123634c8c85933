#include <gtest/gtest.h>

#include "relifit/error.hpp"
#include "relifit/report.hpp"
#include "relifit/simulate.hpp"

namespace relifit {
namespace {

FitResult sample_fit() {
  FitOptions o;
  o.swarm.max_iters = 100;
  o.gamma = FixedGamma{Modulation::from_mu(0.5)};
  return fit_model(simulate_series(ModelSpec::jm(0.01, 30), 15, 3, "3.2"), ModelKind::Proposed, o);
}

TEST(FitJson, RoundTrip) {
  const auto fit = sample_fit();
  const auto text = fit_result_to_json(fit);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_NE(text.find("\"schema\": \"relifit/1\""), std::string::npos);
  const auto back = fit_result_from_json(text);
  EXPECT_EQ(back.release_id, "3.2");
  EXPECT_EQ(back.kind, ModelKind::Proposed);
  EXPECT_EQ(back.phi, fit.phi);
  EXPECT_EQ(back.n_real, fit.n_real);
  EXPECT_EQ(back.mu, fit.mu);
  EXPECT_EQ(fit_result_to_json(back), text);
}

TEST(FitJson, RejectsMalformed) {
  EXPECT_THROW(fit_result_from_json("{"), SchemaError);
  EXPECT_THROW(fit_result_from_json(R"({"schema": "other/9"})"), SchemaError);
}

TEST(ParameterText, TableStyle) {
  FitResult f;
  f.kind = ModelKind::Proposed;
  f.feasible = true;
  f.phi = 2.86e-5;
  f.n_rounded = 5;
  f.total_failures = 11;
  f.gamma = 2.26664;
  EXPECT_EQ(parameter_text(f), "Φ=2.86E-05, N=5, n=11, γ=2.2666");
  f.kind = ModelKind::JM;
  f.gamma.reset();
  EXPECT_EQ(parameter_text(f), "Φ=2.86E-05, N=5");
}

TEST(ReleaseLabel, NumericOrder) {
  EXPECT_TRUE(release_label_less("2.9", "2.10"));
  EXPECT_FALSE(release_label_less("2.10", "2.9"));
  EXPECT_TRUE(release_label_less("1.0", "1.0.1"));
  const auto csv = render_mu_csv({{"3.10", 0.9, 1.0}, {"3.2", 0.5, 1.5}});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "release,mu,gamma");
  EXPECT_LT(csv.find("3.2,"), csv.find("3.10,"));
}

TEST(ReportFormat, Parse) {
  EXPECT_EQ(parse_report_format("md"), ReportFormat::Markdown);
  EXPECT_EQ(parse_report_format("json"), ReportFormat::Json);
  EXPECT_FALSE(parse_report_format("html"));
}

}  // namespace
}  // namespace relifit
