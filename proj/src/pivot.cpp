#include "credint/pivot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "credint/errors.hpp"

namespace credint {

namespace {

constexpr double kBracketRelTol = 1e-12;
constexpr double kNewtonRelTol = 1e-14;
constexpr int kMaxIterations = 500;

double starting_point(const PivotDistribution& dist) {
  const Support& s = dist.support();
  const double c = dist.center_hint();
  if (s.contains(c)) return c;
  const double reach = dist.scale_hint();
  if (s.bounded_below() && s.bounded_above()) return 0.5 * (s.lo + s.hi);
  if (s.bounded_below()) return s.lo + reach;
  return s.hi - reach;
}

}  // namespace

PivotDistribution::PivotDistribution(Definition def) {
  if (!def.cdf || !def.density) {
    throw DistributionError("pivot distribution '" + def.name + "' needs both cdf and density");
  }
  if (!(def.scale_hint > 0.0) || !std::isfinite(def.scale_hint)) def.scale_hint = 1.0;
  if (!(def.support.lo < def.support.hi)) {
    throw DistributionError("pivot distribution '" + def.name + "' has an empty support");
  }
  impl_ = std::make_shared<const Definition>(std::move(def));
}

double PivotDistribution::cdf(double w) const {
  if (w <= impl_->support.lo) return 0.0;
  if (w >= impl_->support.hi) return 1.0;
  return impl_->cdf(w);
}

double PivotDistribution::survival(double w) const {
  if (w <= impl_->support.lo) return 1.0;
  if (w >= impl_->support.hi) return 0.0;
  if (impl_->survival) return impl_->survival(w);
  return 1.0 - impl_->cdf(w);
}

double PivotDistribution::density(double w) const {
  if (!impl_->support.contains(w)) return 0.0;
  return impl_->density(w);
}

double PivotDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: probability " + std::to_string(p) + " outside (0, 1)");
  }
  if (impl_->quantile) return impl_->quantile(p);
  return quantile_solve(*this, p);
}

double PivotDistribution::upper_quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("upper_quantile: probability " + std::to_string(q) + " outside (0, 1)");
  }
  if (q >= 0.5) return quantile(1.0 - q);
  return upper_quantile_solve(*this, q);
}

namespace {

// Root of the increasing function excess(x) = F(x) - target over the support,
// where F is the cdf or the negated survival (derivative: the density).
template <typename Excess>
double solve_increasing(const PivotDistribution& dist, Excess excess, double x, double level, const char* what) {
  const Support& support = dist.support();
  double lo = support.lo;  // excess(lo) <= 0
  double hi = support.hi;  // excess(hi) >= 0
  double reach = dist.scale_hint();

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double f = excess(x);
    if (f == 0.0) {
      if (!(dist.density(x) > 0.0)) {
        throw DistributionError(std::string(what) + ": cdf of '" + dist.name() +
                                "' is flat at the requested level; quantile not unique");
      }
      return x;
    }
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const bool bracketed = std::isfinite(lo) && std::isfinite(hi);
    if (bracketed && hi - lo <= kBracketRelTol * std::max(1.0, std::abs(x))) {
      return 0.5 * (lo + hi);
    }

    const double d = dist.density(x);
    const double newton = (d > 0.0 && std::isfinite(d)) ? x - f / d : std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(newton) && newton > lo && newton < hi) {
      const double step = newton - x;
      x = newton;
      if (std::abs(step) <= kNewtonRelTol * std::max(1.0, std::abs(x))) return x;
      continue;
    }
    if (bracketed) {
      x = 0.5 * (lo + hi);
      continue;
    }
    // One side still open: walk outwards with doubling steps.
    reach *= 2.0;
    x = std::isfinite(lo) ? lo + reach : hi - reach;
    if (!std::isfinite(x) || std::abs(x) > 1e300) {
      throw DistributionError(std::string(what) + ": no bracket for level " + std::to_string(level) +
                              " within the support of '" + dist.name() + "'");
    }
  }
  throw DistributionError(std::string(what) + ": iteration limit reached for '" + dist.name() + "'");
}

}  // namespace

double quantile_solve(const PivotDistribution& dist, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile_solve: probability " + std::to_string(p) + " outside (0, 1)");
  }
  return solve_increasing(
      dist, [&](double x) { return dist.cdf(x) - p; }, starting_point(dist), p, "quantile_solve");
}

double upper_quantile_solve(const PivotDistribution& dist, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("upper_quantile_solve: probability " + std::to_string(q) + " outside (0, 1)");
  }
  double x = starting_point(dist);
  if (dist.has_explicit_quantile() && 1.0 - q < 1.0) {
    const double guess = dist.quantile(1.0 - q);
    if (dist.support().contains(guess)) x = guess;
  }
  return solve_increasing(
      dist, [&](double w) { return q - dist.survival(w); }, x, q, "upper_quantile_solve");
}

PivotDistribution make_empirical_pivot(std::vector<double> samples, std::string name) {
  if (samples.size() < 1000) {
    throw InsufficientDataError("make_empirical_pivot: need at least 1000 samples, got " +
                                std::to_string(samples.size()));
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw InsufficientDataError("make_empirical_pivot: non-finite sample");
  }
  std::sort(samples.begin(), samples.end());
  auto data = std::make_shared<const std::vector<double>>(std::move(samples));
  const std::size_t n = data->size();
  const double last = static_cast<double>(n - 1);

  auto quantile = [data, last](double p) {
    const double pos = p * last;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= data->size()) return data->back();
    const double frac = pos - static_cast<double>(i);
    return (*data)[i] + frac * ((*data)[i + 1] - (*data)[i]);
  };
  auto cdf = [data, last](double w) {
    const auto& s = *data;
    if (w < s.front()) return 0.0;
    if (w >= s.back()) return 1.0;
    // j = number of samples <= w; 1 <= j < n here.
    const auto j = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), w) - s.begin());
    const double left = s[j - 1];
    const double right = s[j];
    const double frac = right > left ? (w - left) / (right - left) : 0.0;
    return (static_cast<double>(j - 1) + frac) / last;
  };

  const double q1 = quantile(0.25);
  const double q3 = quantile(0.75);
  const double spread = q3 > q1 ? (q3 - q1) / 1.349 : 1.0;
  // Central difference over a window that spans many order statistics.
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
  auto density = [cdf, h](double w) { return (cdf(w + h) - cdf(w - h)) / (2.0 * h); };

  PivotDistribution::Definition def;
  def.name = std::move(name);
  def.cdf = cdf;
  def.density = density;
  def.quantile = quantile;
  def.support = {data->front(), data->back()};
  def.symmetric = false;
  def.unimodal = false;
  def.center_hint = quantile(0.5);
  def.scale_hint = spread;
  return PivotDistribution(std::move(def));
}

PivotDistribution reflect(const PivotDistribution& dist) {
  if (dist.symmetric()) return dist;
  PivotDistribution::Definition def;
  def.name = "reflected-" + dist.name();
  def.cdf = [dist](double w) { return dist.survival(-w); };
  def.survival = [dist](double w) { return dist.cdf(-w); };
  def.density = [dist](double w) { return dist.density(-w); };
  if (dist.has_explicit_quantile()) {
    def.quantile = [dist](double p) { return -dist.quantile(1.0 - p); };
  }
  def.support = {-dist.support().hi, -dist.support().lo};
  def.symmetric = false;
  def.unimodal = dist.unimodal();
  def.center_hint = -dist.center_hint();
  def.scale_hint = dist.scale_hint();
  return PivotDistribution(std::move(def));
}

PivotDistribution scaled(const PivotDistribution& dist, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("scaled: scale factor must be positive and finite");
  }
  if (s == 1.0) return dist;
  PivotDistribution::Definition def;
  def.name = dist.name();
  def.cdf = [dist, s](double w) { return dist.cdf(w / s); };
  def.survival = [dist, s](double w) { return dist.survival(w / s); };
  def.density = [dist, s](double w) { return dist.density(w / s) / s; };
  if (dist.has_explicit_quantile()) {
    def.quantile = [dist, s](double p) { return s * dist.quantile(p); };
  }
  def.support = {s * dist.support().lo, s * dist.support().hi};
  def.symmetric = dist.symmetric();
  def.unimodal = dist.unimodal();
  def.center_hint = s * dist.center_hint();
  def.scale_hint = s * dist.scale_hint();
  return PivotDistribution(std::move(def));
}

double symmetry_defect(const PivotDistribution& dist, std::span<const double> grid) {
  double worst = 0.0;
  for (double w : grid) {
    worst = std::max(worst, std::abs(dist.cdf(-w) - dist.survival(w)));
  }
  return worst;
}

std::vector<double> quantile_grid(const PivotDistribution& dist, double p_lo, double p_hi,
                                  std::size_t points) {
  if (points < 2) throw DomainError("quantile_grid: need at least two points");
  std::vector<double> grid;
  grid.reserve(points);
  const double step = (p_hi - p_lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid.push_back(dist.quantile(p_lo + step * static_cast<double>(i)));
  }
  return grid;
}

}  // namespace credint
