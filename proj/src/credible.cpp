#include "credint/credible.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "credint/errors.hpp"

namespace credint {

namespace {

constexpr double kBandSlack = 1e-12;
constexpr double kCaptureTolerance = 1e-10;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha = " + std::to_string(alpha) + " outside (0, 1)");
  }
}

void check_scale(double a2) {
  if (!(a2 > 0.0) || !std::isfinite(a2)) throw DomainError("a2 must be positive and finite");
}

// 1 - G(-t), rejecting observations that leave no posterior mass on tau >= 0.
double posterior_normaliser(double t, const PivotDistribution& g) {
  const double s = g.survival(-t);
  if (!(s >= kDegenerateTail)) {
    throw DegeneratePosteriorError("posterior degenerate at t = " + std::to_string(t) +
                                   ": 1 - G(-t) below 1e-300 under '" + g.name() + "'");
  }
  return s;
}

// a1 + a2 * w where 1 - G(w) = q, with q == 0 mapped to the top of the support.
double upper_limit(double a1, double a2, double q, const PivotDistribution& g) {
  if (q <= 0.0) return a1 + a2 * g.support().hi;
  return a1 + a2 * g.upper_quantile(q);
}

// G^{-1} at p = 1 - q, inverting whichever tail is the smaller.
double quantile_split(double p, double q, const PivotDistribution& g) {
  return p <= 0.5 ? g.quantile(p) : g.upper_quantile(q);
}

}  // namespace

double posterior_survival(double y, double a1, double a2, const PivotDistribution& g) {
  check_scale(a2);
  if (!(y >= 0.0)) throw DomainError("posterior_survival: y must be >= 0");
  const double norm = posterior_normaliser(a1 / a2, g);
  if (y == 0.0) return 1.0;
  return g.survival((y - a1) / a2) / norm;
}

double posterior_mass(double lower, double upper, double a1, double a2, const PivotDistribution& g) {
  return posterior_survival(lower, a1, a2, g) - posterior_survival(upper, a1, a2, g);
}

double y_boundary(double alpha, const PivotDistribution& g) {
  check_alpha(alpha);
  return -g.quantile(alpha / (1.0 + alpha));
}

double delta0(double t, double alpha, const PivotDistribution& g) {
  check_alpha(alpha);
  return (1.0 - alpha) * g.survival(-t);
}

CredibleInterval bounds_from_spending(double a1, double a2, double alpha, double alpha_x,
                                      const PivotDistribution& g) {
  check_alpha(alpha);
  check_scale(a2);
  if (!(alpha_x >= 0.0 && alpha_x <= alpha)) {
    throw DomainError("bounds_from_spending: alpha_x = " + std::to_string(alpha_x) + " outside [0, alpha]");
  }
  const double t = a1 / a2;
  const double tail = posterior_normaliser(t, g);
  const double head = g.cdf(-t);

  CredibleInterval ci;
  ci.credibility = 1.0 - alpha;
  ci.spent_upper = alpha_x;
  if (alpha_x == alpha) {
    ci.lower = 0.0;
  } else {
    const double p = head + (alpha - alpha_x) * tail;
    ci.lower = std::max(0.0, a1 + a2 * quantile_split(p, (1.0 - alpha + alpha_x) * tail, g));
  }
  ci.upper = upper_limit(a1, a2, alpha_x * tail, g);
  return ci;
}

double equal_tails_spending(double t, double alpha, const PivotDistribution& g) {
  check_alpha(alpha);
  const double tail = posterior_normaliser(t, g);
  if (t <= y_boundary(alpha, g)) return alpha;
  return std::min(alpha, 0.5 * alpha + g.cdf(-t) / (2.0 * tail));
}

std::pair<double, double> equal_tails_gammas(double t, double alpha, const PivotDistribution& g) {
  const double d = delta0(t, alpha, g);
  return {-g.quantile(0.5 * (1.0 - d)), g.upper_quantile(0.5 * (1.0 - d))};
}

CredibleInterval pivot_quantile_bounds(double a1, double a2, double alpha, double gamma1, double gamma2,
                                       const PivotDistribution& g) {
  check_alpha(alpha);
  check_scale(a2);
  const double t = a1 / a2;
  const double wanted = delta0(t, alpha, g);
  const double captured = g.cdf(gamma2) - g.cdf(-gamma1);
  if (std::abs(captured - wanted) > kCaptureTolerance) {
    throw DomainError("pivot_quantile_bounds: G(gamma2) - G(-gamma1) = " + std::to_string(captured) +
                      " differs from delta0 = " + std::to_string(wanted));
  }
  if (-gamma1 < -t) {
    throw FeasibilityError("pivot_quantile_bounds: -gamma1 = " + std::to_string(-gamma1) +
                           " violates -gamma1 >= -t(x) = " + std::to_string(-t) +
                           " (lower limit would be negative)");
  }
  CredibleInterval ci;
  ci.lower = std::max(0.0, a1 - a2 * gamma1);
  ci.upper = a1 + a2 * gamma2;
  ci.credibility = 1.0 - alpha;
  ci.spent_upper = posterior_survival(ci.upper, a1, a2, g);
  return ci;
}

CredibleInterval hpd_symmetric_bounds(double a1, double a2, double alpha, const PivotDistribution& g) {
  check_alpha(alpha);
  check_scale(a2);
  if (!g.symmetric() || !g.unimodal()) {
    throw UnsupportedModelError("hpd_symmetric_bounds: '" + g.name() + "' is not symmetric and unimodal");
  }
  const double t = a1 / a2;
  const double gt = g.cdf(t);
  CredibleInterval ci;
  ci.lower = std::max(0.0, a1 + a2 * g.quantile(0.5 * (1.0 - (1.0 - alpha) * gt)));
  const double one_sided = upper_limit(a1, a2, alpha * gt, g);
  const double two_sided = upper_limit(a1, a2, 0.5 * (1.0 - (1.0 - alpha) * gt), g);
  ci.upper = std::max(one_sided, two_sided);
  ci.credibility = 1.0 - alpha;
  ci.spent_upper = posterior_survival(ci.upper, a1, a2, g);
  return ci;
}

std::pair<double, double> spending_band(double t, double alpha, const PivotDistribution& g) {
  check_alpha(alpha);
  if (t < y_boundary(alpha, g)) {
    throw DomainError("spending_band: t = " + std::to_string(t) + " below y0; alpha(x) must equal alpha there");
  }
  const double tail = posterior_normaliser(t, g);
  const double head = g.cdf(-t);
  const double edge = alpha / (1.0 + alpha);
  return {((1.0 - alpha) * head + alpha * edge) / tail, edge / tail};
}

Interval unrestricted_baseline(double a1, double a2, double alpha, const PivotDistribution& g, bool clip_at_zero) {
  check_alpha(alpha);
  check_scale(a2);
  Interval iv;
  iv.lower = a1 + a2 * g.quantile(alpha / (1.0 + alpha));
  iv.upper = a1 + a2 * g.quantile(1.0 / (1.0 + alpha));
  if (clip_at_zero) iv.lower = std::max(0.0, iv.lower);
  return iv;
}

SpendingFunction::SpendingFunction(std::string name, double alpha, PivotDistribution g, Rule rule)
    : name_(std::move(name)), alpha_(alpha), g_(std::move(g)), y0_(0.0), rule_(std::move(rule)) {
  check_alpha(alpha_);
  if (!rule_) throw DomainError("spending function '" + name_ + "' has no rule");
  y0_ = y_boundary(alpha_, g_);
}

SpendingPoint SpendingFunction::point(double t) const {
  SpendingPoint pt;
  pt.t = t;
  pt.upper_tail = posterior_normaliser(t, g_);
  pt.lower_tail = g_.cdf(-t);
  pt.at_or_below_y0 = t <= y0_;
  return pt;
}

namespace {

double band_lower_edge(double alpha, const SpendingPoint& pt) {
  const double edge = alpha / (1.0 + alpha);
  return std::min(alpha, ((1.0 - alpha) * pt.lower_tail + alpha * edge) / pt.upper_tail);
}

double band_upper_edge(double alpha, const SpendingPoint& pt) {
  return std::min(alpha, (alpha / (1.0 + alpha)) / pt.upper_tail);
}

}  // namespace

SpendingFunction make_equal_tails(double alpha, const PivotDistribution& g) {
  return SpendingFunction("equal-tails", alpha, g, [alpha](const SpendingPoint& pt) {
    if (pt.at_or_below_y0) return alpha;
    return std::min(alpha, 0.5 * alpha + pt.lower_tail / (2.0 * pt.upper_tail));
  });
}

SpendingFunction make_hpd_symmetric(double alpha, const PivotDistribution& g) {
  if (!g.symmetric() || !g.unimodal()) {
    throw UnsupportedModelError("hpd-symmetric spending needs a symmetric unimodal pivot; '" + g.name() +
                                "' is not");
  }
  SpendingFunction eqt = make_equal_tails(alpha, g);
  return SpendingFunction("hpd-symmetric", alpha, g, [eqt](const SpendingPoint& pt) { return eqt(pt); });
}

SpendingFunction make_band_lower(double alpha, const PivotDistribution& g) {
  return SpendingFunction("band-lower", alpha, g, [alpha](const SpendingPoint& pt) {
    return pt.at_or_below_y0 ? alpha : band_lower_edge(alpha, pt);
  });
}

SpendingFunction make_band_upper(double alpha, const PivotDistribution& g) {
  return SpendingFunction("band-upper", alpha, g, [alpha](const SpendingPoint& pt) {
    return pt.at_or_below_y0 ? alpha : band_upper_edge(alpha, pt);
  });
}

SpendingFunction make_band_mix(double alpha, const PivotDistribution& g, double weight) {
  if (!(weight >= 0.0 && weight <= 1.0)) throw DomainError("band mix weight outside [0, 1]");
  return SpendingFunction("band-mix", alpha, g, [alpha, weight](const SpendingPoint& pt) {
    if (pt.at_or_below_y0) return alpha;
    return std::min(alpha, (1.0 - weight) * band_lower_edge(alpha, pt) + weight * band_upper_edge(alpha, pt));
  });
}

SpendingFunction make_constant(double alpha, const PivotDistribution& g, double value) {
  return SpendingFunction("constant", alpha, g, [value](const SpendingPoint&) { return value; });
}

SpendingFunction make_custom(std::string name, double alpha, const PivotDistribution& g,
                             std::function<double(double)> rule) {
  if (!rule) throw DomainError("custom spending needs a rule");
  return SpendingFunction(std::move(name), alpha, g,
                          [rule = std::move(rule)](const SpendingPoint& pt) { return rule(pt.t); });
}

CredibleInterval credible_interval(double a1, double a2, const SpendingFunction& s) {
  check_scale(a2);
  return bounds_from_spending(a1, a2, s.alpha(), s(a1 / a2), s.pivot());
}

ValidationReport validate_spending(const SpendingFunction& s, const PivotDistribution& g,
                                   std::span<const double> t_grid) {
  const double alpha = s.alpha();
  const double y0 = y_boundary(alpha, g);
  ValidationReport report;
  report.entries.reserve(t_grid.size());
  for (double t : t_grid) {
    ValidationEntry e;
    e.t = t;
    try {
      e.alpha_x = s(t);
      e.band_lo = alpha;
      e.band_hi = alpha;
      bool ok = true;
      if (t <= y0) ok = std::abs(e.alpha_x - alpha) <= kBandSlack;
      if (t >= y0) {
        const auto [lo, hi] = spending_band(t, alpha, g);
        e.band_lo = lo;
        e.band_hi = hi;
        ok = ok && e.alpha_x >= lo - kBandSlack && e.alpha_x <= hi + kBandSlack;
      }
      e.pass = ok;
    } catch (const DegeneratePosteriorError&) {
      e.alpha_x = std::numeric_limits<double>::quiet_NaN();
      e.pass = false;
    }
    if (!e.pass) ++report.failures;
    report.entries.push_back(e);
  }
  report.passed = report.failures == 0;
  return report;
}

std::vector<double> default_validation_grid(double alpha, const PivotDistribution& g, std::size_t points) {
  std::vector<double> grid = quantile_grid(g, 1e-6, 1.0 - 1e-6, points);
  for (double& w : grid) w = -w;
  grid.push_back(y_boundary(alpha, g));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

IntervalRule spending_rule(const SpendingFunction& s) {
  return [s](double t) {
    const SpendingPoint pt = s.point(t);
    const double alpha = s.alpha();
    const double spent = s(pt);
    PivotLevels lv;
    lv.upper = 1.0 - spent * pt.upper_tail;
    lv.zero_lower = spent == alpha;
    lv.lower = pt.lower_tail + (alpha - spent) * pt.upper_tail;
    return lv;
  };
}

IntervalRule unrestricted_baseline_rule(double alpha) {
  check_alpha(alpha);
  return [alpha](double) {
    return PivotLevels{alpha / (1.0 + alpha), 1.0 / (1.0 + alpha), false};
  };
}

}  // namespace credint
