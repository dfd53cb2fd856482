#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "credint/catalog.hpp"
#include "credint/errors.hpp"
#include "credint/pivot.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace credint;

TEST_CASE("standard normal quantiles") {
  const auto g = catalog::standard_normal();
  CHECK(std::abs(g.quantile(0.5)) < 1e-14);
  CHECK(std::abs(g.quantile(1.0 / 21.0) - oracle::normal_quantile(1.0 / 21.0)) < 1e-10);
  CHECK(std::abs(g.quantile(1.0 / 21.0) - -1.6683911939470795) < 1e-10);
  CHECK(std::abs(quantile_solve(g, 0.975) - oracle::normal_quantile(0.975)) < 1e-10);
}

TEST_CASE("exponential quantile closed form") {
  const auto g = catalog::exponential();
  CHECK(std::abs(g.quantile(1.0 - std::exp(-1.0)) - 1.0) < 1e-11);
  CHECK(g.cdf(-3.0) == 0.0);
  CHECK(g.density(-1.0) == 0.0);
}

TEST_CASE("quantile rejects p outside (0, 1)") {
  const auto g = catalog::logistic();
  CHECK_THROWS_AS(g.quantile(0.0), DomainError);
  CHECK_THROWS_AS(g.quantile(1.0), DomainError);
  CHECK_THROWS_AS(g.quantile(std::nan("")), DomainError);
}

TEST_CASE("round trip and monotonicity over the catalog") {
  const double ps[] = {0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99};
  for (const auto& g : fixture::catalog()) {
    CAPTURE(g.name());
    double prev = -kInf;
    for (double p : ps) {
      const double w = quantile_solve(g, p);
      CHECK(std::abs(g.cdf(w) - p) <= 1e-9);
      CHECK(w >= prev);
      prev = w;
    }
  }
}

TEST_CASE("cdf limits and monotone on a grid") {
  for (const auto& g : fixture::catalog()) {
    CAPTURE(g.name());
    const auto grid = quantile_grid(g, 1e-6, 1.0 - 1e-6, 400);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(g.cdf(grid[i]) >= g.cdf(grid[i - 1]));
    const double lo = g.support().bounded_below() ? g.support().lo : -1e6;
    const double hi = g.support().bounded_above() ? g.support().hi : 1e6;
    CHECK(g.cdf(lo) < 1e-6);
    CHECK(g.cdf(hi) > 1.0 - 1e-6);
  }
}

TEST_CASE("survival matches 1 - cdf") {
  for (const auto& g : fixture::catalog()) {
    CAPTURE(g.name());
    for (double w : quantile_grid(g, 0.001, 0.999, 50)) CHECK(std::abs(g.survival(w) - (1.0 - g.cdf(w))) < 1e-12);
  }
}

TEST_CASE("density integrates to the cdf increment") {
  for (const auto& g : fixture::catalog()) {
    CAPTURE(g.name());
    // stays clear of the laplace kink at the median
    const double a = g.quantile(0.55);
    const double b = g.quantile(0.9);
    const int n = 2000;
    double sum = 0.0;  // Simpson
    for (int i = 0; i <= n; ++i) {
      const double w = a + (b - a) * i / n;
      sum += g.density(w) * (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2));
    }
    CHECK(std::abs(sum * (b - a) / (3 * n) - 0.35) < 1e-8);
  }
}

TEST_CASE("symmetry flags agree with the symmetry identity") {
  for (const auto& g : fixture::catalog()) {
    CAPTURE(g.name());
    const auto grid = quantile_grid(g, 0.01, 0.99, 99);
    const double defect = symmetry_defect(g, grid);
    if (g.symmetric()) {
      CHECK(defect < 1e-12);
    } else {
      CHECK(defect > 1e-3);
    }
  }
  CHECK_FALSE(catalog::exponential().symmetric());
  CHECK_FALSE(catalog::log_gamma(2.0).symmetric());
  CHECK(catalog::student_t(5.0).symmetric());
}

TEST_CASE("log-gamma pivot against closed-form Gamma(2)") {
  const auto g = catalog::log_gamma(2.0);
  for (double w : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.5}) CHECK(std::abs(g.cdf(w) - oracle::log_gamma2_cdf(w)) < 1e-13);
  CHECK(std::abs(g.cdf(0.0) - 2.0 * std::exp(-1.0)) < 1e-14);
}

TEST_CASE("scale-ratio pivot at zero") {
  // log(V1/V2) <= 0 iff V1 <= V2; with shapes (2, 1), P = I_{1/2}(2, 1) = 1/4
  CHECK(std::abs(catalog::log_gamma_ratio(2.0, 1.0).cdf(0.0) - 0.25) < 1e-14);
  CHECK(std::abs(catalog::log_gamma_ratio(1.0, 1.0).cdf(0.7) - 1.0 / (1.0 + std::exp(-0.7))) < 1e-14);
}

TEST_CASE("reflect and scaled") {
  const auto e = catalog::shifted_exponential();
  const auto r = reflect(e);
  for (double w : {-2.0, -0.5, 0.2, 0.9}) CHECK(std::abs(r.cdf(w) - (1.0 - e.cdf(-w))) < 1e-14);
  CHECK(r.support().hi == doctest::Approx(1.0));
  const auto s = scaled(catalog::standard_normal(), std::sqrt(2.0));
  CHECK(std::abs(s.quantile(0.975) - 2.771807648699356) < 1e-9);
  CHECK_THROWS_AS(scaled(e, 0.0), DomainError);
}

TEST_CASE("empirical pivot") {
  SUBCASE("replicated symmetric sample has median zero") {
    std::vector<double> v;
    for (int i = 0; i < 1001; ++i) v.push_back((i % 3) - 1.0);
    const auto g = make_empirical_pivot(v);
    CHECK(g.quantile(0.5) == doctest::Approx(0.0).scale(1e-12));
  }
  SUBCASE("normal draws") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> z;
    std::vector<double> v(1'000'000);
    for (auto& x : v) x = z(rng);
    const auto g = make_empirical_pivot(std::move(v));
    CHECK(std::abs(g.quantile(0.975) - 1.959963984540054) < 0.01);
    CHECK(std::abs(g.cdf(g.quantile(0.3)) - 0.3) < 1e-9);
  }
  SUBCASE("log of Gamma(2) draws") {
    std::mt19937_64 rng(11);
    std::gamma_distribution<double> v(2.0, 1.0);
    std::vector<double> s(100'000);
    for (auto& x : s) x = -std::log(v(rng));
    const auto g = make_empirical_pivot(std::move(s));
    CHECK(std::abs(g.cdf(0.0) - (1.0 - oracle::gamma2_cdf(1.0))) < 0.01);
  }
  SUBCASE("flat extrapolation") {
    std::vector<double> v(2000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    const auto g = make_empirical_pivot(v);
    CHECK(g.cdf(-5.0) == 0.0);
    CHECK(g.cdf(1e9) == 1.0);
    CHECK(std::abs(g.cdf(999.5) - 999.5 / 1999.0) < 1e-12);
  }
  CHECK_THROWS_AS(make_empirical_pivot(std::vector<double>(999, 1.0)), InsufficientDataError);
}

TEST_CASE("plateau in the cdf is reported") {
  PivotDistribution::Definition d;
  d.name = "gapped";
  // uniform mass on [-2, -1] and [1, 2]; flat on (-1, 1)
  d.cdf = [](double w) {
    if (w <= -2) return 0.0;
    if (w <= -1) return 0.5 * (w + 2);
    if (w <= 1) return 0.5;
    if (w <= 2) return 0.5 + 0.5 * (w - 1);
    return 1.0;
  };
  d.density = [](double w) { return (std::abs(w) >= 1 && std::abs(w) <= 2) ? 0.5 : 0.0; };
  d.support = {-2.0, 2.0};
  const PivotDistribution g(d);
  CHECK_THROWS_AS(quantile_solve(g, 0.5), DistributionError);
  CHECK(std::abs(quantile_solve(g, 0.25) - -1.5) < 1e-11);
}

TEST_CASE("upper quantile keeps relative accuracy in the tail") {
  const auto n = catalog::standard_normal();
  for (double q : {0.3, 1e-3, 1e-9, 1e-15, 1e-40}) {
    CAPTURE(q);
    const double w = n.upper_quantile(q);
    CHECK(std::abs(n.survival(w) / q - 1.0) < 1e-10);
    CHECK(std::abs(w + n.quantile(q)) < 1e-9 * std::max(1.0, std::abs(w)));
  }
  const auto e = catalog::shifted_exponential();
  CHECK(std::abs(e.upper_quantile(1e-20) - (20.0 * std::log(10.0) - 1.0)) < 1e-10);
  CHECK(std::abs(catalog::log_gamma(2.0).upper_quantile(0.7) - catalog::log_gamma(2.0).quantile(0.3)) < 1e-12);
  CHECK_THROWS_AS(n.upper_quantile(0.0), DomainError);
}
