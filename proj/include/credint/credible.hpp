#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "credint/pivot.hpp"

namespace credint {

/// Posterior normalisers below this are treated as a degenerate posterior.
inline constexpr double kDegenerateTail = 1e-300;

/// [lower, upper] with posterior probability `credibility` under the
/// truncated prior; `spent_upper` is the mass alpha(x) left above `upper`.
struct CredibleInterval {
  double lower = 0.0;
  double upper = 0.0;
  double credibility = 0.0;
  double spent_upper = 0.0;

  bool contains(double tau) const { return lower <= tau && tau <= upper; }
};

/// P(tau >= y | x) under the truncated prior:
/// (1 - G((y - a1) / a2)) / (1 - G(-a1 / a2)), y >= 0.
double posterior_survival(double y, double a1, double a2, const PivotDistribution& g);

/// Posterior probability of [lower, upper] (lower >= 0).
double posterior_mass(double lower, double upper, double a1, double a2, const PivotDistribution& g);

/// y0 = -G^{-1}(alpha / (1 + alpha)): the largest t(x) for which the whole of
/// alpha is spent above the interval and the lower limit is zero.
double y_boundary(double alpha, const PivotDistribution& g);

/// (1 - alpha) * (1 - G(-t)), the G-mass captured between the pivot quantiles.
double delta0(double t, double alpha, const PivotDistribution& g);

/// Interval whose posterior spends alpha_x above the upper limit and
/// alpha - alpha_x below the lower limit. lower is exactly 0 iff alpha_x == alpha;
/// upper is the top of G's support (possibly +inf) iff alpha_x == 0.
CredibleInterval bounds_from_spending(double a1, double a2, double alpha, double alpha_x,
                                      const PivotDistribution& g);

/// G-equal-tails spending min{alpha, alpha/2 + G(-t) / (2 (1 - G(-t)))}, equal
/// to alpha on t <= y0.
double equal_tails_spending(double t, double alpha, const PivotDistribution& g);

/// Equal-tails pivot quantiles (gamma1, gamma2) for t:
/// -gamma1 = G^{-1}((1 - D) / 2), gamma2 = G^{-1}((1 + D) / 2), D = delta0(t).
std::pair<double, double> equal_tails_gammas(double t, double alpha, const PivotDistribution& g);

/// [a1 - a2 * gamma1, a1 + a2 * gamma2] for quantiles satisfying
/// G(gamma2) - G(-gamma1) = delta0(t). Throws FeasibilityError when
/// -gamma1 < -t (lower limit below zero) and DomainError when the pair does not
/// capture delta0(t) to 1e-10.
CredibleInterval pivot_quantile_bounds(double a1, double a2, double alpha, double gamma1, double gamma2,
                                       const PivotDistribution& g);

/// HPD interval for a symmetric unimodal G written directly in terms of G(t):
///   lower = max{0, a1 + a2 G^{-1}((1 - (1 - alpha) G(t)) / 2)}
///   upper = a1 + a2 max{G^{-1}(1 - alpha G(t)), G^{-1}((1 + (1 - alpha) G(t)) / 2)}
/// Throws UnsupportedModelError for asymmetric or non-unimodal G.
CredibleInterval hpd_symmetric_bounds(double a1, double a2, double alpha, const PivotDistribution& g);

/// Admissible band (alpha1, alpha2) for alpha(x) at t >= y0:
///   alpha1 = ((1 - alpha) G(-t) + alpha^2 / (1 + alpha)) / (1 - G(-t))
///   alpha2 = (alpha / (1 + alpha)) / (1 - G(-t))
/// Throws DomainError for t < y0.
std::pair<double, double> spending_band(double t, double alpha, const PivotDistribution& g);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double tau) const { return lower <= tau && tau <= upper; }
  bool contains(const Interval& other) const { return lower <= other.lower && other.upper <= upper; }
};

/// Unrestricted baseline I1* = [a1 + a2 G^{-1}(alpha/(1+alpha)), a1 + a2 G^{-1}(1/(1+alpha))],
/// a confidence interval with coverage exactly (1 - alpha) / (1 + alpha).
/// `clip_at_zero` gives I1, the same interval with its lower limit raised to 0.
Interval unrestricted_baseline(double a1, double a2, double alpha, const PivotDistribution& g,
                               bool clip_at_zero = false);

/// Quantities a spending rule may depend on at statistic t.
struct SpendingPoint {
  double t = 0.0;
  double lower_tail = 0.0;  // G(-t)
  double upper_tail = 1.0;  // 1 - G(-t)
  bool at_or_below_y0 = false;
};

/// Spending function alpha(x) = rule(t(x)) for credibility 1 - alpha.
class SpendingFunction {
 public:
  using Rule = std::function<double(const SpendingPoint&)>;

  SpendingFunction(std::string name, double alpha, PivotDistribution g, Rule rule);

  const std::string& name() const { return name_; }
  double alpha() const { return alpha_; }
  double y0() const { return y0_; }
  const PivotDistribution& pivot() const { return g_; }

  /// Throws DegeneratePosteriorError when 1 - G(-t) underflows.
  SpendingPoint point(double t) const;
  double operator()(double t) const { return rule_(point(t)); }
  double operator()(const SpendingPoint& pt) const { return rule_(pt); }

 private:
  std::string name_;
  double alpha_;
  PivotDistribution g_;
  double y0_;
  Rule rule_;
};

SpendingFunction make_equal_tails(double alpha, const PivotDistribution& g);
/// Same rule as equal tails; only accepted for symmetric unimodal G, where the
/// resulting intervals are the HPD intervals.
SpendingFunction make_hpd_symmetric(double alpha, const PivotDistribution& g);
/// Lower band edge alpha1 on t > y0, alpha on t <= y0.
SpendingFunction make_band_lower(double alpha, const PivotDistribution& g);
/// Upper band edge alpha2 on t > y0, alpha on t <= y0.
SpendingFunction make_band_upper(double alpha, const PivotDistribution& g);
/// (1 - weight) * alpha1 + weight * alpha2 on t > y0, alpha on t <= y0.
SpendingFunction make_band_mix(double alpha, const PivotDistribution& g, double weight);
/// alpha(x) = value everywhere. Never admissible; useful for exercising the validator.
SpendingFunction make_constant(double alpha, const PivotDistribution& g, double value);
/// Arbitrary rule of t. Admissibility is left to validate_spending().
SpendingFunction make_custom(std::string name, double alpha, const PivotDistribution& g,
                             std::function<double(double)> rule);

/// CredibleInterval for observation statistics (a1, a2) under spending s.
CredibleInterval credible_interval(double a1, double a2, const SpendingFunction& s);

struct ValidationEntry {
  double t = 0.0;
  double alpha_x = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationEntry> entries;
  bool passed = false;
  std::size_t failures = 0;
};

/// Checks alpha(x) == alpha on t <= y0 and alpha1 <= alpha(x) <= alpha2 on
/// t >= y0, each to 1e-12. Violations are reported, not thrown.
ValidationReport validate_spending(const SpendingFunction& s, const PivotDistribution& g,
                                   std::span<const double> t_grid);

/// t-grid for validate_spending: -G^{-1}(p) over p in [1e-6, 1 - 1e-6] plus y0, sorted.
std::vector<double> default_validation_grid(double alpha, const PivotDistribution& g, std::size_t points = 201);

/// Pivot-probability levels of an interval procedure at statistic t: the
/// interval is [a1 + a2 G^{-1}(lower), a1 + a2 G^{-1}(upper)], with the lower
/// limit pinned to zero when zero_lower is set.
struct PivotLevels {
  double lower = 0.0;
  double upper = 1.0;
  bool zero_lower = false;
};

using IntervalRule = std::function<PivotLevels(double t)>;

IntervalRule spending_rule(const SpendingFunction& s);
IntervalRule unrestricted_baseline_rule(double alpha);

}  // namespace credint
