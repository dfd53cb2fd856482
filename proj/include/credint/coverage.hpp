#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "credint/credible.hpp"
#include "credint/models.hpp"

namespace credint {

/// Monte Carlo estimate of C(theta) at one tau value.
struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  std::size_t hits = 0;
  /// Replicates with t(X) <= y0, i.e. with a zero lower limit.
  std::size_t zero_lower = 0;
  /// Replicates where {interval covers tau} and {t(X) <= y0} disagree.
  /// Zero at tau = 0 for any admissible spending.
  std::size_t boundary_mismatches = 0;
  /// Replicates whose posterior was degenerate (counted as misses).
  std::size_t degenerate = 0;
};

inline constexpr std::size_t kMinReplicates = 10'000;
inline constexpr std::size_t kMcChunk = 1 << 15;

/// Coverage of the spending's intervals at theta = model.theta_from_tau(tau).
/// Draws `replicates` observations from substreams (seed, stream, chunk) and
/// builds each interval with bounds_from_spending. Throws
/// InadmissibleSpendingError if the spending fails validate_spending on the
/// model's pivot and DomainError if replicates < 10^4.
McEstimate coverage_mc(const PivotModel& model, const SpendingFunction& spending, double tau,
                       std::size_t replicates, std::uint64_t seed, std::uint64_t stream = 0);

inline constexpr std::size_t kQuadratureNodes = 100'000;
inline constexpr double kQuadratureTail = 1e-8;

/// Deterministic C(theta) for a model with constant a2 = c. With w ~ G the
/// observation satisfies a1 = tau - c * w, so
///   C = integral of 1{interval(t = tau / c - w) covers tau} dG(w)
/// over w in [G^{-1}(1e-8), G^{-1}(1 - 1e-8)]. The range is cut into `nodes`
/// cells; the integrand is an indicator, so cells where it changes value are
/// split at the change point by bisection and all masses are exact G
/// increments. Throws UnsupportedModelError when a2 is not constant.
double coverage_quadrature(const PivotModel& model, const IntervalRule& rule, double tau,
                           std::size_t nodes = kQuadratureNodes);
double coverage_quadrature(const PivotModel& model, const SpendingFunction& spending, double tau,
                           std::size_t nodes = kQuadratureNodes);

/// (1 - alpha) / (1 + alpha).
double coverage_bound(double alpha);

struct SweepOptions {
  std::size_t quadrature_nodes = kQuadratureNodes;
  /// Grid points evaluated concurrently; 0 means hardware concurrency.
  unsigned threads = 0;
  bool quadrature = true;
};

struct CoverageReport {
  std::string model;
  std::string spending;
  double alpha = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> estimates;
  std::vector<double> std_errors;
  std::vector<std::optional<double>> quadrature;
  std::vector<bool> point_pass;
  std::vector<std::size_t> boundary_mismatches;
  double min_coverage = 1.0;
  std::optional<double> min_quadrature;
  double bound = 0.0;
  /// MC estimate at tau = 0 when the grid starts there.
  std::optional<double> boundary_value;
  double grid_spacing = 0.0;
  bool verdict = false;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

/// Evenly spaced grid on [tau_min, tau_max]; a single point gives {tau_min}.
std::vector<double> tau_grid(double tau_min, double tau_max, std::size_t points);

/// Coverage over a tau grid. Point i uses substream (seed, i); quadrature is
/// added when a2 is constant. A point passes when estimate + 3 * std_error >=
/// bound and its quadrature value (if any) is strictly above the bound; the
/// verdict is the conjunction over the grid.
CoverageReport theta_sweep(const PivotModel& model, const SpendingFunction& spending, double tau_min,
                           double tau_max, std::size_t grid_points, std::size_t replicates, std::uint64_t seed,
                           const SweepOptions& options = {});

}  // namespace credint
