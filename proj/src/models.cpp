#include "credint/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "credint/catalog.hpp"
#include "credint/errors.hpp"

namespace credint {

namespace {

using NoiseSampler = std::function<double(Rng&)>;
using Sampler = std::function<Observation(std::span<const double>, Rng&)>;

// Uniform on the open interval (0, 1).
double open_uniform(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double v = 0.0;
  do {
    v = u(rng);
  } while (v == 0.0);
  return v;
}

NoiseSampler noise_sampler(const std::string& name) {
  if (name == "normal") {
    return [](Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); };
  }
  if (name == "laplace") {
    return [](Rng& rng) {
      std::exponential_distribution<double> e(1.0);
      const double first = e(rng);
      return first - e(rng);
    };
  }
  if (name == "logistic") {
    return [](Rng& rng) {
      const double u = open_uniform(rng);
      return std::log(u / (1.0 - u));
    };
  }
  if (name == "shifted-exponential" || name == "exponential") {
    return [](Rng& rng) { return std::exponential_distribution<double>(1.0)(rng) - 1.0; };
  }
  throw UnsupportedModelError("unknown location density '" + name +
                              "' (expected normal, laplace, logistic or shifted-exponential)");
}

PivotDistribution noise_distribution(const std::string& name) {
  if (name == "normal") return catalog::standard_normal();
  if (name == "laplace") return catalog::laplace();
  if (name == "logistic") return catalog::logistic();
  if (name == "shifted-exponential" || name == "exponential") return catalog::shifted_exponential();
  throw UnsupportedModelError("unknown location density '" + name + "'");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void require_sample_size(int n) {
  if (n < 2) throw DomainError("sample size n must be at least 2, got " + std::to_string(n));
}

double squared_norm(std::span<const double> w) { return std::inner_product(w.begin(), w.end(), w.begin(), 0.0); }

// Sample mean and standard deviation (n - 1 denominator).
Observation mean_and_sd(std::span<const double> draws) {
  const double n = static_cast<double>(draws.size());
  const double mean = std::accumulate(draws.begin(), draws.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : draws) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

// Empirical law of -T at a fixed theta, from the model's own sampler.
PivotDistribution calibrate(const PivotModel::Statistic& a1, const PivotModel::Statistic& a2,
                            const PivotModel::Statistic& tau, const Sampler& sample, const Theta& theta,
                            const Calibration& cal, std::string name) {
  Rng rng = make_stream(cal.seed, 0);
  std::vector<double> draws;
  draws.reserve(cal.draws);
  const double target = tau(theta);
  for (std::size_t i = 0; i < cal.draws; ++i) {
    const Observation x = sample(theta, rng);
    draws.push_back((target - a1(x)) / a2(x));
  }
  return make_empirical_pivot(std::move(draws), std::move(name));
}

}  // namespace

PivotModel location_model(const std::string& f0_name) {
  NoiseSampler noise = noise_sampler(f0_name);
  return PivotModel{
      .name = "location-" + f0_name,
      .a1 = [](std::span<const double> x) { return x[0]; },
      .a2 = [](std::span<const double>) { return 1.0; },
      .tau = [](std::span<const double> theta) { return theta[0]; },
      .sample = [noise](std::span<const double> theta, Rng& rng) { return Observation{theta[0] + noise(rng)}; },
      .pivot = reflect(noise_distribution(f0_name)),
      .theta_from_tau = [](double v) { return Theta{v}; },
      .constant_a2 = 1.0,
      .observation_size = 1,
  };
}

PivotModel scale_model(const std::string& f1_name, double shape, double a) {
  require_positive(a, "scale lower bound a");
  std::function<double(Rng&)> draw;
  std::optional<PivotDistribution> pivot;
  if (f1_name == "gamma") {
    require_positive(shape, "gamma shape");
    draw = [shape](Rng& rng) { return std::gamma_distribution<double>(shape, 1.0)(rng); };
    pivot = catalog::log_gamma(shape);
  } else if (f1_name == "weibull") {
    require_positive(shape, "weibull shape");
    draw = [shape](Rng& rng) { return std::weibull_distribution<double>(shape, 1.0)(rng); };
    pivot = catalog::log_weibull(shape);
  } else if (f1_name == "exponential") {
    draw = [](Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); };
    pivot = catalog::log_gamma(1.0);
  } else {
    throw UnsupportedModelError("unknown scale density '" + f1_name + "' (expected gamma, weibull or exponential)");
  }
  const double log_a = std::log(a);
  return PivotModel{
      .name = "scale-" + f1_name,
      .a1 = [log_a](std::span<const double> x) { return std::log(x[0]) - log_a; },
      .a2 = [](std::span<const double>) { return 1.0; },
      .tau = [log_a](std::span<const double> theta) { return std::log(theta[0]) - log_a; },
      .sample = [draw](std::span<const double> theta, Rng& rng) { return Observation{theta[0] * draw(rng)}; },
      .pivot = *pivot,
      .theta_from_tau = [a](double v) { return Theta{a * std::exp(v)}; },
      .constant_a2 = 1.0,
      .observation_size = 1,
  };
}

PivotModel location_scale_model(const std::string& family, int n, const Calibration& cal) {
  require_sample_size(n);
  NoiseSampler noise = noise_sampler(family);
  if (family == "shifted-exponential" || family == "exponential") {
    throw UnsupportedModelError("location-scale model supports normal, laplace and logistic noise");
  }
  const double root_n = std::sqrt(static_cast<double>(n));
  PivotModel::Statistic a1 = [](std::span<const double> x) { return x[0]; };
  PivotModel::Statistic a2 = [root_n](std::span<const double> x) { return x[1] / root_n; };
  PivotModel::Statistic tau = [](std::span<const double> theta) { return theta[0]; };
  Sampler sample = [noise, n](std::span<const double> theta, Rng& rng) {
    std::vector<double> draws(static_cast<std::size_t>(n));
    for (double& v : draws) v = theta[0] + theta[1] * noise(rng);
    return mean_and_sd(draws);
  };
  const std::string name = "location-scale-" + family;
  PivotDistribution pivot = family == "normal"
                                ? catalog::student_t(n - 1)
                                : calibrate(a1, a2, tau, sample, Theta{0.0, 1.0}, cal, name + "-pivot");
  return PivotModel{
      .name = name,
      .a1 = a1,
      .a2 = a2,
      .tau = tau,
      .sample = sample,
      .pivot = pivot,
      .theta_from_tau = [](double v) { return Theta{v, 1.0}; },
      .constant_a2 = std::nullopt,
      .observation_size = 2,
  };
}

PivotModel linear_combination_model(std::span<const double> weights, const std::string& component,
                                    const Calibration& cal) {
  if (weights.size() < 2) throw DomainError("linear combination needs at least two components");
  const double norm2 = squared_norm(weights);
  if (!(norm2 > 0.0)) throw DomainError("linear combination weights are all zero");
  NoiseSampler noise = noise_sampler(component);
  std::vector<double> w(weights.begin(), weights.end());

  PivotModel::Statistic a1 = [w](std::span<const double> x) {
    return std::inner_product(w.begin(), w.end(), x.begin(), 0.0);
  };
  PivotModel::Statistic a2 = [](std::span<const double>) { return 1.0; };
  PivotModel::Statistic tau = [w](std::span<const double> theta) {
    return std::inner_product(w.begin(), w.end(), theta.begin(), 0.0);
  };
  Sampler sample = [noise, p = w.size()](std::span<const double> theta, Rng& rng) {
    Observation x(p);
    for (std::size_t i = 0; i < p; ++i) x[i] = theta[i] + noise(rng);
    return x;
  };
  const std::string name = "linear-combination-" + component;
  PivotDistribution pivot = component == "normal"
                                ? catalog::normal(std::sqrt(norm2))
                                : calibrate(a1, a2, tau, sample, Theta(w.size(), 0.0), cal, name + "-pivot");
  return PivotModel{
      .name = name,
      .a1 = a1,
      .a2 = a2,
      .tau = tau,
      .sample = sample,
      .pivot = pivot,
      .theta_from_tau =
          [w, norm2](double v) {
            Theta theta(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) theta[i] = v * w[i] / norm2;
            return theta;
          },
      .constant_a2 = 1.0,
      .observation_size = w.size(),
  };
}

PivotModel homogeneous_scale_model(std::span<const double> weights, double df) {
  if (weights.empty()) throw DomainError("homogeneous-scale model needs at least one weight");
  require_positive(df, "degrees of freedom");
  const double norm2 = squared_norm(weights);
  if (!(norm2 > 0.0)) throw DomainError("homogeneous-scale weights are all zero");
  std::vector<double> w(weights.begin(), weights.end());
  const std::size_t p = w.size();
  return PivotModel{
      .name = "homogeneous-scale",
      .a1 = [w](std::span<const double> x) { return std::inner_product(w.begin(), w.end(), x.begin(), 0.0); },
      .a2 = [p](std::span<const double> x) { return x[p]; },
      .tau = [w](std::span<const double> theta) { return std::inner_product(w.begin(), w.end(), theta.begin(), 0.0); },
      .sample =
          [p, df](std::span<const double> theta, Rng& rng) {
            const double sigma = theta[p];
            std::normal_distribution<double> z(0.0, 1.0);
            Observation x(p + 1);
            for (std::size_t i = 0; i < p; ++i) x[i] = theta[i] + sigma * z(rng);
            x[p] = sigma * std::sqrt(std::chi_squared_distribution<double>(df)(rng) / df);
            return x;
          },
      .pivot = scaled(catalog::student_t(df), std::sqrt(norm2)),
      .theta_from_tau =
          [w, norm2](double v) {
            Theta theta(w.size() + 1, 1.0);
            for (std::size_t i = 0; i < w.size(); ++i) theta[i] = v * w[i] / norm2;
            return theta;
          },
      .constant_a2 = std::nullopt,
      .observation_size = p + 1,
  };
}

PivotModel scale_ratio_model(double shape1, double shape2) {
  require_positive(shape1, "first gamma shape");
  require_positive(shape2, "second gamma shape");
  return PivotModel{
      .name = "scale-ratio",
      .a1 = [](std::span<const double> x) { return std::log(x[1]) - std::log(x[0]); },
      .a2 = [](std::span<const double>) { return 1.0; },
      .tau = [](std::span<const double> theta) { return std::log(theta[1]) - std::log(theta[0]); },
      .sample =
          [shape1, shape2](std::span<const double> theta, Rng& rng) {
            const double v1 = std::gamma_distribution<double>(shape1, 1.0)(rng);
            const double v2 = std::gamma_distribution<double>(shape2, 1.0)(rng);
            return Observation{theta[0] * v1, theta[1] * v2};
          },
      .pivot = catalog::log_gamma_ratio(shape1, shape2),
      .theta_from_tau = [](double v) { return Theta{1.0, std::exp(v)}; },
      .constant_a2 = 1.0,
      .observation_size = 2,
  };
}

PivotModel quantile_model(double eta, int n, const Calibration& cal) {
  require_sample_size(n);
  if (!std::isfinite(eta)) throw DomainError("eta must be finite");
  const double root_n = std::sqrt(static_cast<double>(n));
  PivotModel::Statistic a1 = [](std::span<const double> x) { return x[0]; };
  PivotModel::Statistic a2 = [root_n](std::span<const double> x) { return x[1] / root_n; };
  PivotModel::Statistic tau = [eta](std::span<const double> theta) { return theta[0] + eta * theta[1]; };
  Sampler sample = [n](std::span<const double> theta, Rng& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> draws(static_cast<std::size_t>(n));
    for (double& v : draws) v = theta[0] + theta[1] * z(rng);
    return mean_and_sd(draws);
  };
  return PivotModel{
      .name = "quantile-normal",
      .a1 = a1,
      .a2 = a2,
      .tau = tau,
      .sample = sample,
      .pivot = calibrate(a1, a2, tau, sample, Theta{0.0, 1.0}, cal, "noncentral-t-pivot"),
      .theta_from_tau = [eta](double v) { return Theta{v - eta, 1.0}; },
      .constant_a2 = std::nullopt,
      .observation_size = 2,
  };
}

double ks_statistic(std::vector<double>& sample, const PivotDistribution& g) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = g.cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double pivotal_ks(const PivotModel& model, std::span<const double> theta, std::size_t n, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  std::vector<double> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Observation x = model.sample(theta, rng);
    if (!(model.a2(x) > 0.0)) throw DomainError("model '" + model.name + "' produced a2(x) <= 0");
    draws.push_back(model.negated_pivot(x, theta));
  }
  return ks_statistic(draws, model.pivot);
}

PivotModel model_by_name(const std::string& name, const ModelParams& params) {
  const std::string location = "location-";
  const std::string location_scale = "location-scale-";
  const std::string scale = "scale-";
  if (name.rfind(location_scale, 0) == 0) {
    return location_scale_model(name.substr(location_scale.size()), params.n, params.calibration);
  }
  if (name.rfind(location, 0) == 0) return location_model(name.substr(location.size()));
  if (name == "scale-ratio") {
    if (params.shapes.size() != 2) throw DomainError("scale-ratio needs exactly two shapes");
    return scale_ratio_model(params.shapes[0], params.shapes[1]);
  }
  if (name.rfind(scale, 0) == 0) return scale_model(name.substr(scale.size()), params.shape, params.a);
  if (name == "linear-combination") {
    return linear_combination_model(params.weights, params.component, params.calibration);
  }
  if (name == "homogeneous-scale") return homogeneous_scale_model(params.weights, params.df);
  if (name == "quantile-normal") return quantile_model(params.eta, params.n, params.calibration);
  throw UnsupportedModelError("unknown model '" + name + "'");
}

std::vector<std::string> model_names() {
  return {"location-normal",          "location-laplace",       "location-logistic",
          "location-shifted-exponential", "scale-gamma",         "scale-weibull",
          "scale-exponential",        "location-scale-normal",  "location-scale-laplace",
          "location-scale-logistic",  "linear-combination",     "homogeneous-scale",
          "scale-ratio",              "quantile-normal"};
}

}  // namespace credint
