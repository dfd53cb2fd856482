#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace credint {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi) outside of which the pivot density vanishes.
struct Support {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double w) const { return w > lo && w < hi; }
  bool bounded_below() const { return lo > -kInf; }
  bool bounded_above() const { return hi < kInf; }
};

/// Distribution G of the negated pivot -T(X, theta) = (tau(theta) - a1(X)) / a2(X).
///
/// Values are immutable and cheap to copy (shared state); they can be used
/// concurrently from any number of threads. The cdf must be continuous and
/// strictly increasing on the support for quantile() to be well defined.
class PivotDistribution {
 public:
  using ScalarFn = std::function<double(double)>;

  struct Definition {
    std::string name;
    ScalarFn cdf;
    ScalarFn density;
    // Upper tail 1 - G(w). Optional; defaults to 1 - cdf(w). Supplying it keeps
    // posterior normalisers accurate when G(-t) is close to one.
    ScalarFn survival;
    // Optional explicit inverse. When absent quantile() runs quantile_solve().
    ScalarFn quantile;
    Support support;
    bool symmetric = false;
    bool unimodal = false;
    // Rough centre and spread, used to seed the bracket search.
    double center_hint = 0.0;
    double scale_hint = 1.0;
  };

  explicit PivotDistribution(Definition def);

  const std::string& name() const { return impl_->name; }
  double cdf(double w) const;
  double survival(double w) const;
  double density(double w) const;
  /// G^{-1}(p) for p in (0, 1); throws DomainError otherwise.
  double quantile(double p) const;
  /// w with 1 - G(w) = q. Keeps full relative accuracy for small q, where
  /// quantile(1 - q) would not.
  double upper_quantile(double q) const;

  const Support& support() const { return impl_->support; }
  bool symmetric() const { return impl_->symmetric; }
  bool unimodal() const { return impl_->unimodal; }
  double center_hint() const { return impl_->center_hint; }
  double scale_hint() const { return impl_->scale_hint; }
  bool has_explicit_quantile() const { return static_cast<bool>(impl_->quantile); }

 private:
  std::shared_ptr<const Definition> impl_;
};

/// Inverts dist.cdf at p by a safeguarded Newton iteration inside an
/// expanding bracket. Falls back to bisection whenever the Newton step leaves
/// the bracket. Stops when the bracket is narrower than 1e-12 * max(1, |w|) or
/// the Newton correction drops below 1e-14 * max(1, |w|).
///
/// Throws DomainError for p outside (0, 1) and DistributionError if no
/// bracket exists within the support or the root sits on a flat stretch.
double quantile_solve(const PivotDistribution& dist, double p);

/// Same iteration applied to survival(w) = q.
double upper_quantile_solve(const PivotDistribution& dist, double q);

/// Piecewise-linear ECDF interpolant through the sorted samples, with the
/// i-th order statistic (0-based) at probability i / (N - 1). Needs at least
/// 1000 finite samples (InsufficientDataError otherwise).
PivotDistribution make_empirical_pivot(std::vector<double> samples, std::string name = "empirical");

/// Distribution of -W when W ~ dist. Symmetric inputs are returned unchanged.
PivotDistribution reflect(const PivotDistribution& dist);

/// Distribution of s * W, s > 0.
PivotDistribution scaled(const PivotDistribution& dist, double s);

/// max over the grid of |G(-w) - (1 - G(w))|.
double symmetry_defect(const PivotDistribution& dist, std::span<const double> grid);

/// Grid of quantiles G^{-1}(p) for p evenly spaced on [p_lo, p_hi].
std::vector<double> quantile_grid(const PivotDistribution& dist, double p_lo, double p_hi,
                                  std::size_t points);

}  // namespace credint
