#include <doctest.h>

#include <cmath>

#include "credint/coverage.hpp"
#include "credint/errors.hpp"

using namespace credint;

TEST_CASE("bound") {
  CHECK(std::abs(coverage_bound(0.05) - 19.0 / 21.0) < 1e-15);
  CHECK(std::abs(coverage_bound(0.32) - 0.68 / 1.32) < 1e-15);
}

TEST_CASE("tau grid") {
  const auto g = tau_grid(0.0, 5.0, 51);
  CHECK(g.size() == 51);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 5.0);
  CHECK(std::abs(g[10] - 1.0) < 1e-15);
  CHECK(tau_grid(0.0, 5.0, 1) == std::vector<double>{0.0});
  CHECK_THROWS_AS(tau_grid(-1.0, 5.0, 3), DomainError);
  CHECK_THROWS_AS(tau_grid(2.0, 1.0, 3), DomainError);
}

TEST_CASE("quadrature at tau = 0 equals 1 / (1 + alpha)") {
  for (const char* name : {"normal", "laplace", "logistic", "shifted-exponential"}) {
    CAPTURE(name);
    const auto m = location_model(name);
    for (double alpha : {0.05, 0.1, 0.32}) {
      CHECK(std::abs(coverage_quadrature(m, make_equal_tails(alpha, m.pivot), 0.0) - 1.0 / (1.0 + alpha)) < 1e-4);
    }
  }
  for (double shape : {0.5, 1.0, 2.0}) {
    const auto m = scale_model("gamma", shape, 1.0);
    CHECK(std::abs(coverage_quadrature(m, make_equal_tails(0.05, m.pivot), 0.0) - 1.0 / 1.05) < 1e-4);
  }
}

TEST_CASE("unrestricted baseline has exact coverage") {
  for (const auto& m : {location_model("normal"), location_model("shifted-exponential"), scale_model("gamma", 2.0, 1.0),
                        scale_ratio_model(2.0, 1.0)}) {
    CAPTURE(m.name);
    for (double tau : {0.0, 0.7, 1.5, 3.0, 5.0}) {
      CHECK(std::abs(coverage_quadrature(m, unrestricted_baseline_rule(0.05), tau) - 19.0 / 21.0) < 1e-4);
    }
  }
}

TEST_CASE("exponential location regression fixtures") {
  // frozen from a verified run; 4x finer grids agree to 1e-15
  const auto m = location_model("shifted-exponential");
  const auto s = make_equal_tails(0.05, m.pivot);
  const std::pair<double, double> fixtures[] = {
      {0.0, 0.952380952380952}, {0.5, 0.944593851861672}, {1.0, 0.937508134108840},
      {2.0, 0.929754706238921}, {5.0, 0.946809173681848}};
  for (const auto& [tau, value] : fixtures) {
    CAPTURE(tau);
    const double q = coverage_quadrature(m, s, tau);
    CHECK(std::abs(q - value) < 1e-9);
    CHECK(q > coverage_bound(0.05));
  }
}

TEST_CASE("quadrature needs constant a2") {
  const auto m = location_scale_model("normal", 10);
  CHECK_THROWS_AS(coverage_quadrature(m, make_equal_tails(0.05, m.pivot), 1.0), UnsupportedModelError);
}

TEST_CASE("Monte Carlo at the boundary") {
  for (const auto& m : {location_model("normal"), scale_model("gamma", 2.0, 1.0), location_scale_model("normal", 10)}) {
    CAPTURE(m.name);
    for (const auto& s : {make_equal_tails(0.05, m.pivot), make_band_lower(0.05, m.pivot), make_band_upper(0.05, m.pivot)}) {
      const auto est = coverage_mc(m, s, 0.0, 50'000, 3);
      CHECK(est.boundary_mismatches == 0);
      CHECK(est.hits == est.zero_lower);
      CHECK(std::abs(est.estimate - 1.0 / 1.05) <= 4.0 * est.std_error);
      CHECK(std::abs(est.std_error - std::sqrt(est.estimate * (1 - est.estimate) / 50'000.0)) < 1e-15);
    }
  }
}

TEST_CASE("Monte Carlo agrees with quadrature") {
  for (const auto& m : {location_model("normal"), location_model("shifted-exponential"), scale_model("gamma", 2.0, 1.0)}) {
    CAPTURE(m.name);
    const auto s = make_equal_tails(0.1, m.pivot);
    for (double tau : {0.4, 1.0, 3.0}) {
      const auto est = coverage_mc(m, s, tau, 100'000, 8, 1);
      CHECK(std::abs(est.estimate - coverage_quadrature(m, s, tau)) <= 4.0 * est.std_error);
    }
  }
}

TEST_CASE("Monte Carlo is deterministic and stream dependent") {
  const auto m = location_model("logistic");
  const auto s = make_equal_tails(0.05, m.pivot);
  const auto a = coverage_mc(m, s, 1.0, 40'000, 99, 2);
  const auto b = coverage_mc(m, s, 1.0, 40'000, 99, 2);
  const auto c = coverage_mc(m, s, 1.0, 40'000, 99, 3);
  CHECK(a.hits == b.hits);
  CHECK(a.hits != c.hits);
}

TEST_CASE("Monte Carlo refuses inadmissible spendings and small runs") {
  const auto m = location_model("normal");
  CHECK_THROWS_AS(coverage_mc(m, make_constant(0.05, m.pivot, 0.025), 0.0, 10'000, 1), InadmissibleSpendingError);
  CHECK_THROWS_AS(coverage_mc(m, make_equal_tails(0.05, m.pivot), 0.0, 9'999, 1), DomainError);
}

TEST_CASE("sweep") {
  const auto m = location_model("normal");
  const auto s = make_equal_tails(0.05, m.pivot);
  SweepOptions one;
  one.threads = 1;
  SweepOptions many;
  many.threads = 3;
  const auto a = theta_sweep(m, s, 0.0, 3.0, 7, 10'000, 5, one);
  const auto b = theta_sweep(m, s, 0.0, 3.0, 7, 10'000, 5, many);
  CHECK(a.estimates == b.estimates);
  CHECK(a.quadrature == b.quadrature);
  CHECK(a.verdict);
  CHECK(a.boundary_value.has_value());
  CHECK(std::abs(a.grid_spacing - 0.5) < 1e-15);
  CHECK(a.min_coverage == *std::min_element(a.estimates.begin(), a.estimates.end()));
  CHECK(a.boundary_mismatches.front() == 0);

  const auto single = theta_sweep(m, s, 0.0, 0.0, 1, 20'000, 5);
  CHECK(single.tau_grid.size() == 1);
  CHECK(std::abs(*single.quadrature.front() - 1.0 / 1.05) < 1e-4);

  const auto ls = location_scale_model("normal", 10);
  const auto r = theta_sweep(ls, make_equal_tails(0.05, ls.pivot), 0.0, 2.0, 3, 10'000, 5);
  CHECK_FALSE(r.quadrature.front().has_value());
  CHECK_FALSE(r.min_quadrature.has_value());
}
