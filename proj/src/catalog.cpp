#include "credint/catalog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "credint/errors.hpp"

namespace credint::catalog {

namespace {

namespace bm = boost::math;
using FastPolicy = bm::policies::policy<bm::policies::promote_double<false>>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

// log(1 + e^x) without overflow.
double log1p_exp(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

PivotDistribution standard_normal() {
  PivotDistribution::Definition def;
  def.name = "normal";
  def.cdf = [](double w) { return 0.5 * std::erfc(-w / std::numbers::sqrt2); };
  def.survival = [](double w) { return 0.5 * std::erfc(w / std::numbers::sqrt2); };
  def.density = [](double w) { return std::exp(-0.5 * w * w) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); };
  def.symmetric = true;
  def.unimodal = true;
  return PivotDistribution(std::move(def));
}

PivotDistribution normal(double scale) {
  require_positive(scale, "normal scale");
  return scaled(standard_normal(), scale);
}

PivotDistribution student_t(double nu) {
  require_positive(nu, "student_t degrees of freedom");
  const bm::students_t_distribution<double, FastPolicy> t(nu);
  PivotDistribution::Definition def;
  def.name = "student-t(" + std::to_string(nu) + ")";
  def.cdf = [t](double w) { return bm::cdf(t, w); };
  def.survival = [t](double w) { return bm::cdf(t, -w); };
  def.density = [t](double w) { return bm::pdf(t, w); };
  def.symmetric = true;
  def.unimodal = true;
  def.scale_hint = nu > 2.0 ? std::sqrt(nu / (nu - 2.0)) : 1.0;
  return PivotDistribution(std::move(def));
}

PivotDistribution logistic() {
  PivotDistribution::Definition def;
  def.name = "logistic";
  def.cdf = [](double w) { return 1.0 / (1.0 + std::exp(-w)); };
  def.survival = [](double w) { return 1.0 / (1.0 + std::exp(w)); };
  def.density = [](double w) {
    const double e = std::exp(-std::abs(w));
    return e / ((1.0 + e) * (1.0 + e));
  };
  def.symmetric = true;
  def.unimodal = true;
  def.scale_hint = std::numbers::pi / std::sqrt(3.0);
  return PivotDistribution(std::move(def));
}

PivotDistribution laplace() {
  PivotDistribution::Definition def;
  def.name = "laplace";
  def.cdf = [](double w) { return w < 0.0 ? 0.5 * std::exp(w) : 1.0 - 0.5 * std::exp(-w); };
  def.survival = [](double w) { return w > 0.0 ? 0.5 * std::exp(-w) : 1.0 - 0.5 * std::exp(w); };
  def.density = [](double w) { return 0.5 * std::exp(-std::abs(w)); };
  def.symmetric = true;
  def.unimodal = true;
  def.scale_hint = std::numbers::sqrt2;
  return PivotDistribution(std::move(def));
}

PivotDistribution exponential() {
  PivotDistribution::Definition def;
  def.name = "exponential";
  def.cdf = [](double w) { return -std::expm1(-w); };
  def.survival = [](double w) { return std::exp(-w); };
  def.density = [](double w) { return std::exp(-w); };
  def.support = {0.0, kInf};
  def.unimodal = true;
  def.center_hint = 1.0;
  return PivotDistribution(std::move(def));
}

PivotDistribution shifted_exponential() {
  PivotDistribution::Definition def;
  def.name = "shifted-exponential";
  def.cdf = [](double w) { return -std::expm1(-(w + 1.0)); };
  def.survival = [](double w) { return std::exp(-(w + 1.0)); };
  def.density = [](double w) { return std::exp(-(w + 1.0)); };
  def.support = {-1.0, kInf};
  def.unimodal = true;
  def.center_hint = 0.0;
  return PivotDistribution(std::move(def));
}

PivotDistribution log_gamma(double shape) {
  require_positive(shape, "gamma shape");
  const double log_norm = std::lgamma(shape);
  PivotDistribution::Definition def;
  def.name = "log-gamma(" + std::to_string(shape) + ")";
  // v = e^{-w} overflows for w below about -709; the law has no mass there.
  def.cdf = [shape](double w) {
    const double v = std::exp(-w);
    return std::isfinite(v) ? bm::gamma_q(shape, v, FastPolicy()) : 0.0;
  };
  def.survival = [shape](double w) {
    const double v = std::exp(-w);
    return std::isfinite(v) ? bm::gamma_p(shape, v, FastPolicy()) : 1.0;
  };
  def.density = [shape, log_norm](double w) {
    const double v = std::exp(-w);
    return std::isfinite(v) ? std::exp(-shape * w - v - log_norm) : 0.0;
  };
  def.unimodal = true;
  def.center_hint = -std::log(shape);
  def.scale_hint = std::sqrt(bm::trigamma(shape, FastPolicy()));
  return PivotDistribution(std::move(def));
}

PivotDistribution log_weibull(double shape) {
  require_positive(shape, "weibull shape");
  PivotDistribution::Definition def;
  def.name = "log-weibull(" + std::to_string(shape) + ")";
  def.cdf = [shape](double w) { return std::exp(-std::exp(-shape * w)); };
  def.survival = [shape](double w) { return -std::expm1(-std::exp(-shape * w)); };
  def.density = [shape](double w) {
    const double e = std::exp(-shape * w);
    return std::isfinite(e) ? shape * e * std::exp(-e) : 0.0;
  };
  def.unimodal = true;
  def.scale_hint = std::numbers::pi / (std::sqrt(6.0) * shape);
  return PivotDistribution(std::move(def));
}

PivotDistribution log_gamma_ratio(double shape1, double shape2) {
  require_positive(shape1, "first gamma shape");
  require_positive(shape2, "second gamma shape");
  const double log_beta = std::lgamma(shape1) + std::lgamma(shape2) - std::lgamma(shape1 + shape2);
  PivotDistribution::Definition def;
  def.name = "log-gamma-ratio(" + std::to_string(shape1) + "," + std::to_string(shape2) + ")";
  def.cdf = [shape1, shape2](double w) {
    return bm::ibeta(shape1, shape2, 1.0 / (1.0 + std::exp(-w)), FastPolicy());
  };
  def.survival = [shape1, shape2](double w) {
    return bm::ibeta(shape2, shape1, 1.0 / (1.0 + std::exp(w)), FastPolicy());
  };
  def.density = [shape1, shape2, log_beta](double w) {
    // log sigma(w) = -log(1 + e^{-w}), log(1 - sigma(w)) = -log(1 + e^{w})
    return std::exp(-shape1 * log1p_exp(-w) - shape2 * log1p_exp(w) - log_beta);
  };
  def.symmetric = shape1 == shape2;
  def.unimodal = true;
  def.center_hint = std::log(shape1 / shape2);
  def.scale_hint = std::sqrt(bm::trigamma(shape1, FastPolicy()) + bm::trigamma(shape2, FastPolicy()));
  return PivotDistribution(std::move(def));
}

}  // namespace credint::catalog
