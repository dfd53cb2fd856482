#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "credint/pivot.hpp"
#include "credint/rng.hpp"

namespace credint {

using Observation = std::vector<double>;
using Theta = std::vector<double>;

/// A family satisfying the pivot assumption: -T(X, theta) = (tau(theta) - a1(X)) / a2(X)
/// has cdf `pivot` whatever theta is.
struct PivotModel {
  using Statistic = std::function<double(std::span<const double>)>;

  std::string name;
  Statistic a1;
  Statistic a2;
  Statistic tau;
  std::function<Observation(std::span<const double> theta, Rng& rng)> sample;
  PivotDistribution pivot;
  /// Canonical parameter with tau(theta) = v.
  std::function<Theta(double v)> theta_from_tau;
  /// Set when a2(x) is the same constant for every observation.
  std::optional<double> constant_a2;
  /// Number of entries in an observation.
  std::size_t observation_size = 1;

  double t(std::span<const double> x) const { return a1(x) / a2(x); }
  double negated_pivot(std::span<const double> x, std::span<const double> theta) const {
    return (tau(theta) - a1(x)) / a2(x);
  }
};

/// Draws used to calibrate empirical pivots.
struct Calibration {
  std::size_t draws = 1'000'000;
  std::uint64_t seed = 0x5eed0f91b07ULL;
};

/// Observation X = theta + e with noise e ~ f0; a1 = x, a2 = 1, tau = theta.
/// f0 in {normal, laplace, logistic, shifted-exponential}; G is f0 reflected.
PivotModel location_model(const std::string& f0_name);

/// X = theta * V with V ~ f1(shape) and theta >= a; a1 = log x - log a,
/// tau = log theta - log a, G the law of -log V. f1 in {gamma, weibull, exponential}.
PivotModel scale_model(const std::string& f1_name, double shape, double a);

/// Observation (mean, sd) of n draws from mu + sigma * e; a1 = mean,
/// a2 = sd / sqrt(n), tau = mu. Normal noise gives G = t(n - 1); laplace and
/// logistic noise use an empirical pivot.
PivotModel location_scale_model(const std::string& family, int n, const Calibration& cal = {});

/// Independent X_i = theta_i + e_i with e_i from the location catalog;
/// a1 = sum w_i x_i, a2 = 1, tau = sum w_i theta_i. Normal components give
/// G = N(0, |w|^2); otherwise G is empirical.
PivotModel linear_combination_model(std::span<const double> weights, const std::string& component = "normal",
                                    const Calibration& cal = {});

/// Normal linear combination with a common unknown scale: X_i = theta_i + sigma * Z_i,
/// plus an independent S with df * S^2 / sigma^2 ~ chi^2(df); a1 = sum w_i x_i,
/// a2 = s, G = |w| * t(df).
PivotModel homogeneous_scale_model(std::span<const double> weights, double df);

/// X_i = theta_i * V_i with V_i ~ Gamma(shape_i, 1); tau = log theta2 - log theta1,
/// a1 = log x2 - log x1, G the law of log(V1 / V2).
PivotModel scale_ratio_model(double shape1, double shape2);

/// Observation (mean, sd) of n normal draws; tau = mu + eta * sigma,
/// a1 = mean, a2 = sd / sqrt(n); G (a noncentral t) is calibrated empirically.
PivotModel quantile_model(double eta, int n, const Calibration& cal = {});

/// Kolmogorov-Smirnov distance between the sample and g (sample sorted in place).
double ks_statistic(std::vector<double>& sample, const PivotDistribution& g);

/// KS distance between g and n simulated values of -T(X, theta).
double pivotal_ks(const PivotModel& model, std::span<const double> theta, std::size_t n, std::uint64_t seed);

/// Parameters accepted by model_by_name.
struct ModelParams {
  double shape = 2.0;
  double a = 1.0;
  int n = 10;
  std::vector<double> weights{1.0, -1.0};
  std::string component = "normal";
  std::vector<double> shapes{1.0, 1.0};
  double eta = 0.0;
  double df = 10.0;
  Calibration calibration;
};

/// Names: location-{normal,laplace,logistic,shifted-exponential},
/// scale-{gamma,weibull,exponential}, location-scale-{normal,laplace,logistic},
/// linear-combination, homogeneous-scale, scale-ratio, quantile-normal.
/// Throws UnsupportedModelError for anything else.
PivotModel model_by_name(const std::string& name, const ModelParams& params);

std::vector<std::string> model_names();

}  // namespace credint
