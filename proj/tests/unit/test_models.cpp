#include <doctest.h>

#include <cmath>

#include "credint/catalog.hpp"
#include "credint/errors.hpp"
#include "credint/models.hpp"
#include "oracles.hpp"

using namespace credint;

namespace {

// A second parameter point that moves the nuisance part as well as tau.
Theta shifted_theta(const PivotModel& m, double v) {
  Theta theta = m.theta_from_tau(v);
  if (m.name.rfind("location-scale", 0) == 0 || m.name == "quantile-normal") theta[1] = 3.0;
  if (m.name == "homogeneous-scale") theta.back() = 0.25;
  if (m.name == "scale-ratio") theta = {4.0, 4.0 * std::exp(v)};
  return theta;
}

}  // namespace

TEST_CASE("theta_from_tau inverts tau") {
  const ModelParams params;
  for (const auto& name : model_names()) {
    CAPTURE(name);
    const auto m = model_by_name(name, params);
    for (double v = 0.0; v <= 6.0; v += 0.25) CHECK(std::abs(m.tau(m.theta_from_tau(v)) - v) < 1e-12);
  }
}

TEST_CASE("every model is pivotal at two parameter points") {
  const ModelParams params;
  for (const auto& name : model_names()) {
    CAPTURE(name);
    const auto m = model_by_name(name, params);
    CHECK(pivotal_ks(m, m.theta_from_tau(0.0), 100'000, 101) <= 0.006);
    CHECK(pivotal_ks(m, shifted_theta(m, 2.5), 100'000, 202) <= 0.006);
  }
}

TEST_CASE("pivot check catches a wrong G") {
  auto m = location_model("normal");
  m.pivot = catalog::logistic();
  CHECK(pivotal_ks(m, m.theta_from_tau(1.0), 100'000, 5) > 0.006);
}

TEST_CASE("location models") {
  const auto m = location_model("normal");
  const Observation x{1.25};
  CHECK(m.a1(x) == 1.25);
  CHECK(m.a2(x) == 1.0);
  CHECK(m.constant_a2 == 1.0);
  // the shifted exponential noise gives G = law of -E, bounded above
  const auto e = location_model("shifted-exponential");
  CHECK(e.pivot.support().hi == doctest::Approx(1.0));
  CHECK_FALSE(e.pivot.symmetric());
  CHECK(location_model("exponential").pivot.support().hi == doctest::Approx(1.0));
  CHECK_THROWS_AS(location_model("cauchy-ish"), UnsupportedModelError);
}

TEST_CASE("scale model uses log-Gamma") {
  const auto m = scale_model("gamma", 2.0, 0.5);
  const Observation x{2.0};
  CHECK(std::abs(m.a1(x) - std::log(4.0)) < 1e-15);
  CHECK(std::abs(m.theta_from_tau(std::log(3.0))[0] - 1.5) < 1e-14);
  CHECK(std::abs(m.pivot.cdf(0.0) - (1.0 - oracle::gamma2_cdf(1.0))) < 1e-14);
  CHECK_THROWS_AS(scale_model("gamma", -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(scale_model("gamma", 2.0, 0.0), DomainError);
}

TEST_CASE("location-scale normal uses Student t") {
  const auto m = location_scale_model("normal", 10);
  const Observation x{1.0, 2.0};
  CHECK(std::abs(m.a2(x) - 2.0 / std::sqrt(10.0)) < 1e-15);
  CHECK_FALSE(m.constant_a2.has_value());
  CHECK(std::abs(m.pivot.cdf(1.5) - catalog::student_t(9.0).cdf(1.5)) < 1e-14);
  CHECK_THROWS_AS(location_scale_model("normal", 1), DomainError);
}

TEST_CASE("linear combination") {
  const std::vector<double> w{1.0, -1.0};
  const auto m = linear_combination_model(w);
  CHECK(std::abs(m.pivot.cdf(0.0) - 0.5) < 1e-15);
  CHECK(std::abs(m.pivot.quantile(oracle::normal_cdf(1.0)) - std::sqrt(2.0)) < 1e-9);
  const std::vector<double> ones{1.0, 1.0, 1.0};
  const auto e = linear_combination_model(ones, "shifted-exponential");
  CHECK_FALSE(e.pivot.symmetric());
  CHECK(pivotal_ks(e, e.theta_from_tau(1.0), 100'000, 9) <= 0.006);
  CHECK_THROWS_AS(linear_combination_model(std::vector<double>{0.0, 0.0}), DomainError);
}

TEST_CASE("scale ratio") {
  const auto m = scale_ratio_model(2.0, 1.0);
  CHECK(std::abs(m.pivot.cdf(0.0) - 0.25) < 1e-14);
  const Observation x{2.0, 6.0};
  CHECK(std::abs(m.a1(x) - std::log(3.0)) < 1e-15);
}

TEST_CASE("quantile model reduces to Student t at eta = 0") {
  const auto m = quantile_model(0.0, 10);
  const auto t9 = catalog::student_t(9.0);
  for (double p : {0.05, 0.25, 0.5, 0.9}) CHECK(std::abs(m.pivot.quantile(p) - t9.quantile(p)) < 0.02);
}

TEST_CASE("model_by_name") {
  ModelParams p;
  p.shape = 1.0;
  CHECK(model_by_name("scale-gamma", p).pivot.name() == catalog::log_gamma(1.0).name());
  CHECK_THROWS_AS(model_by_name("nope", p), UnsupportedModelError);
  p.shapes = {1.0};
  CHECK_THROWS_AS(model_by_name("scale-ratio", p), DomainError);
}
