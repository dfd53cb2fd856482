#include "credint/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "credint/errors.hpp"

namespace credint {

namespace {

constexpr double kMarginSe = 3.0;

void require_admissible(const SpendingFunction& spending, const PivotModel& model) {
  const auto grid = default_validation_grid(spending.alpha(), model.pivot);
  const ValidationReport report = validate_spending(spending, model.pivot, grid);
  if (!report.passed) {
    throw InadmissibleSpendingError("spending '" + spending.name() + "' fails admissibility at " +
                                    std::to_string(report.failures) + " of " + std::to_string(grid.size()) +
                                    " t-values for '" + model.name + "'; coverage guarantee void");
  }
}

McEstimate run_mc(const PivotModel& model, const SpendingFunction& spending, double tau, std::size_t replicates,
                  std::uint64_t seed, std::uint64_t stream) {
  if (replicates < kMinReplicates) {
    throw DomainError("coverage_mc: need at least 10^4 replicates, got " + std::to_string(replicates));
  }
  if (!(tau >= 0.0)) throw DomainError("coverage_mc: tau must be >= 0");
  const Theta theta = model.theta_from_tau(tau);
  const double alpha = spending.alpha();
  const PivotDistribution& g = model.pivot;

  McEstimate out;
  out.replicates = replicates;
  for (std::size_t chunk = 0, done = 0; done < replicates; ++chunk) {
    Rng rng = make_stream(seed, stream, chunk);
    const std::size_t count = std::min(kMcChunk, replicates - done);
    for (std::size_t i = 0; i < count; ++i) {
      const Observation x = model.sample(theta, rng);
      const double a1 = model.a1(x);
      const double a2 = model.a2(x);
      const double t = a1 / a2;
      const bool zero_lower = t <= spending.y0();
      bool hit = false;
      try {
        const double spent = spending(t);
        hit = bounds_from_spending(a1, a2, alpha, spent, g).contains(tau);
      } catch (const DegeneratePosteriorError&) {
        ++out.degenerate;
      }
      out.hits += hit ? 1 : 0;
      out.zero_lower += zero_lower ? 1 : 0;
      out.boundary_mismatches += hit != zero_lower ? 1 : 0;
    }
    done += count;
  }
  const double n = static_cast<double>(replicates);
  out.estimate = static_cast<double>(out.hits) / n;
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

}  // namespace

McEstimate coverage_mc(const PivotModel& model, const SpendingFunction& spending, double tau,
                       std::size_t replicates, std::uint64_t seed, std::uint64_t stream) {
  require_admissible(spending, model);
  return run_mc(model, spending, tau, replicates, seed, stream);
}

double coverage_quadrature(const PivotModel& model, const IntervalRule& rule, double tau, std::size_t nodes) {
  if (!model.constant_a2) {
    throw UnsupportedModelError("coverage_quadrature: a2(x) is not constant for '" + model.name + "'");
  }
  if (nodes < 2) throw DomainError("coverage_quadrature: need at least two nodes");
  if (!(tau >= 0.0)) throw DomainError("coverage_quadrature: tau must be >= 0");
  const double c = *model.constant_a2;
  const PivotDistribution& g = model.pivot;

  auto covered = [&](double w) {
    const double t = (tau - c * w) / c;
    PivotLevels lv;
    try {
      lv = rule(t);
    } catch (const DegeneratePosteriorError&) {
      return false;
    }
    const double gw = g.cdf(w);
    return (lv.zero_lower || lv.lower <= gw) && gw <= lv.upper;
  };
  // Change point of the indicator inside (lo, hi), where covered(lo) != covered(hi).
  auto change_point = [&](double lo, double hi) {
    const bool left = covered(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++i) {
      const double mid = 0.5 * (lo + hi);
      if (covered(mid) == left) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  const double w_lo = g.quantile(kQuadratureTail);
  const double w_hi = g.quantile(1.0 - kQuadratureTail);
  const double h = (w_hi - w_lo) / static_cast<double>(nodes);

  // Runs touching either end of the grid extend through the truncated tail,
  // whose indicator is taken from the outermost node.
  double total = 0.0;
  double prev_w = w_lo;
  bool prev_in = covered(prev_w);
  double run_start_mass = 0.0;  // G at the start of the current run, valid while prev_in
  for (std::size_t i = 1; i <= nodes; ++i) {
    const double w = i == nodes ? w_hi : w_lo + h * static_cast<double>(i);
    const bool in = covered(w);
    if (in != prev_in) {
      const double s = change_point(prev_w, w);
      if (prev_in) {
        total += g.cdf(s) - run_start_mass;
      } else {
        run_start_mass = g.cdf(s);
      }
    }
    prev_w = w;
    prev_in = in;
  }
  if (prev_in) total += 1.0 - run_start_mass;
  return std::clamp(total, 0.0, 1.0);
}

double coverage_quadrature(const PivotModel& model, const SpendingFunction& spending, double tau, std::size_t nodes) {
  return coverage_quadrature(model, spending_rule(spending), tau, nodes);
}

double coverage_bound(double alpha) { return (1.0 - alpha) / (1.0 + alpha); }

std::vector<double> tau_grid(double tau_min, double tau_max, std::size_t points) {
  if (points == 0) throw DomainError("tau grid needs at least one point");
  if (!(tau_min >= 0.0)) throw DomainError("tau_min must be >= 0");
  if (points == 1) return {tau_min};
  if (!(tau_max > tau_min)) throw DomainError("tau_max must exceed tau_min");
  std::vector<double> grid(points);
  const double step = (tau_max - tau_min) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = tau_min + step * static_cast<double>(i);
  grid.back() = tau_max;
  return grid;
}

CoverageReport theta_sweep(const PivotModel& model, const SpendingFunction& spending, double tau_min,
                           double tau_max, std::size_t grid_points, std::size_t replicates, std::uint64_t seed,
                           const SweepOptions& options) {
  require_admissible(spending, model);

  CoverageReport report;
  report.model = model.name;
  report.spending = spending.name();
  report.alpha = spending.alpha();
  report.bound = coverage_bound(spending.alpha());
  report.tau_grid = tau_grid(tau_min, tau_max, grid_points);
  report.replicates = replicates;
  report.seed = seed;
  report.grid_spacing = grid_points > 1 ? report.tau_grid[1] - report.tau_grid[0] : 0.0;

  const std::size_t n = report.tau_grid.size();
  std::vector<McEstimate> mc(n);
  std::vector<std::optional<double>> quad(n);
  std::vector<std::exception_ptr> errors(n);
  const bool with_quadrature = options.quadrature && model.constant_a2.has_value();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        mc[i] = run_mc(model, spending, report.tau_grid[i], replicates, seed, i);
        if (with_quadrature) {
          quad[i] = coverage_quadrature(model, spending, report.tau_grid[i], options.quadrature_nodes);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  report.verdict = true;
  for (std::size_t i = 0; i < n; ++i) {
    report.estimates.push_back(mc[i].estimate);
    report.std_errors.push_back(mc[i].std_error);
    report.boundary_mismatches.push_back(mc[i].boundary_mismatches);
    report.quadrature.push_back(quad[i]);
    bool ok = mc[i].estimate + kMarginSe * mc[i].std_error >= report.bound;
    if (quad[i]) {
      ok = ok && *quad[i] > report.bound;
      report.min_quadrature = std::min(report.min_quadrature.value_or(1.0), *quad[i]);
    }
    report.point_pass.push_back(ok);
    report.verdict = report.verdict && ok;
    report.min_coverage = std::min(report.min_coverage, mc[i].estimate);
  }
  if (report.tau_grid.front() == 0.0) report.boundary_value = report.estimates.front();
  return report;
}

}  // namespace credint
