#include "credint/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "credint/errors.hpp"

#ifndef CREDINT_VERSION
#define CREDINT_VERSION "0.0.0"
#endif

namespace credint::cli {

namespace {

std::string num(double v) { return fmt::format("{:.12g}", v); }

// RFC-4180 quoting for free-text fields.
std::string quoted(const std::string& field) {
  if (field.find_first_of(",\t\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Table {
 public:
  explicit Table(char sep) : sep_(sep) {}

  Table& row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += sep_;
      text_ += quoted(fields[i]);
    }
    text_ += '\n';
    return *this;
  }
  const std::string& str() const { return text_; }

 private:
  char sep_;
  std::string text_;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ";" : "") + fmt::format("{:.17g}", v[i]);
  return out;
}

std::string header_comment(const RunConfig& config) {
  return fmt::format("# credint {} config={} seed={}\n", CREDINT_VERSION, config_hash(config), config.seed);
}

void emit(const RunConfig& config, const std::string& body, std::ostream& out) {
  const std::string path = resolve_output(config);
  const std::string text = header_comment(config) + body;
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream file(p, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text;
}

char separator(const RunConfig& config) {
  if (config.format == "csv") return ',';
  if (config.format == "tsv") return '\t';
  throw UsageError("unknown output format '" + config.format + "' (expected csv or tsv)");
}

PivotModel load_model(const RunConfig& config) {
  try {
    return model_by_name(config.model, config.params);
  } catch (const UnsupportedModelError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

void check_alpha(const RunConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
}

Table validation_table(const ValidationReport& report, char sep) {
  Table table(sep);
  table.row({"t", "alpha_x", "band_lo", "band_hi", "pass"});
  for (const auto& e : report.entries) {
    table.row({num(e.t), num(e.alpha_x), num(e.band_lo), num(e.band_hi), e.pass ? "1" : "0"});
  }
  return table;
}

int run_interval(const RunConfig& config, std::ostream& out) {
  const PivotModel model = load_model(config);
  if (config.x.size() != model.observation_size) {
    throw UsageError(fmt::format("model '{}' takes an observation of {} value(s) via --x, got {}", model.name,
                                 model.observation_size, config.x.size()));
  }
  const SpendingFunction spending = make_spending(config, model.pivot);
  const double a1 = model.a1(config.x);
  const double a2 = model.a2(config.x);
  if (!(a2 > 0.0) || !std::isfinite(a1)) throw UsageError("observation gives a2(x) <= 0 or a non-finite a1(x)");
  const double t = a1 / a2;
  const double spent = spending(t);
  const CredibleInterval ci = bounds_from_spending(a1, a2, config.alpha, spent, model.pivot);
  const double y0 = spending.y0();
  const double d0 = delta0(t, config.alpha, model.pivot);

  out << "model = " << model.name << '\n'
      << "spending = " << spending.name() << '\n'
      << "alpha = " << num(config.alpha) << '\n'
      << "lower = " << num(ci.lower) << '\n'
      << "upper = " << num(ci.upper) << '\n'
      << "alpha_x = " << num(spent) << '\n'
      << "t = " << num(t) << '\n'
      << "y0 = " << num(y0) << '\n'
      << "delta0 = " << num(d0) << '\n';
  Table table(separator(config));
  table.row({"lower", "upper", "alpha_x", "t", "y0", "delta0"});
  table.row({num(ci.lower), num(ci.upper), num(spent), num(t), num(y0), num(d0)});
  out << table.str();
  if (!resolve_output(config).empty()) emit(config, table.str(), out);
  return kExitOk;
}

int run_validate(const RunConfig& config, std::ostream& out) {
  const PivotModel model = load_model(config);
  const SpendingFunction spending = make_spending(config, model.pivot);
  std::vector<double> grid;
  if (config.t_points > 0) {
    if (config.t_points < 2 || !(config.t_max > config.t_min)) {
      throw UsageError("--t-points needs at least 2 points and --t-max > --t-min");
    }
    const double step = (config.t_max - config.t_min) / static_cast<double>(config.t_points - 1);
    for (std::size_t i = 0; i < config.t_points; ++i) grid.push_back(config.t_min + step * static_cast<double>(i));
    grid.push_back(spending.y0());
    std::sort(grid.begin(), grid.end());
  } else {
    grid = default_validation_grid(config.alpha, model.pivot);
  }
  const ValidationReport report = validate_spending(spending, model.pivot, grid);
  emit(config, validation_table(report, separator(config)).str(), out);
  return report.passed ? kExitOk : kExitFailed;
}

int run_coverage(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const PivotModel model = load_model(config);
  const SpendingFunction spending = make_spending(config, model.pivot);
  const char sep = separator(config);
  if (config.replicates < kMinReplicates) throw UsageError("--reps must be at least 10000");
  if (config.grid == 0) throw UsageError("--grid must be positive");

  const ValidationReport check =
      validate_spending(spending, model.pivot, default_validation_grid(config.alpha, model.pivot));
  if (!check.passed) {
    err << "spending '" << spending.name() << "' is not admissible for " << model.name << " (" << check.failures
        << " violations); writing the validation report instead\n";
    emit(config, validation_table(check, sep).str(), out);
    return kExitFailed;
  }

  SweepOptions options;
  options.quadrature_nodes = config.nodes;
  options.threads = config.threads;
  const CoverageReport report = theta_sweep(model, spending, config.tau_min, config.tau_max, config.grid,
                                            config.replicates, config.seed, options);
  Table table(sep);
  table.row({"tau", "estimate", "std_error", "quadrature", "bound", "pass"});
  for (std::size_t i = 0; i < report.tau_grid.size(); ++i) {
    table.row({num(report.tau_grid[i]), num(report.estimates[i]), num(report.std_errors[i]),
               report.quadrature[i] ? num(*report.quadrature[i]) : "", num(report.bound),
               report.point_pass[i] ? "1" : "0"});
  }
  table.row({"min_coverage", "bound", "verdict"});
  table.row({num(report.min_coverage), num(report.bound), report.verdict ? "pass" : "fail"});
  emit(config, table.str(), out);
  return report.verdict ? kExitOk : kExitFailed;
}

}  // namespace

SpendingFunction make_spending(const RunConfig& config, const PivotDistribution& g) {
  const std::string& name = config.spending;
  try {
    if (name == "equal-tails") return make_equal_tails(config.alpha, g);
    if (name == "hpd-symmetric") return make_hpd_symmetric(config.alpha, g);
    if (name == "band-lower") return make_band_lower(config.alpha, g);
    if (name == "band-upper") return make_band_upper(config.alpha, g);
    if (name == "band-mix") return make_band_mix(config.alpha, g, config.band_weight);
    if (name == "constant") return make_constant(config.alpha, g, config.constant_value.value_or(config.alpha / 2));
  } catch (const UnsupportedModelError& e) {
    throw UsageError(e.what());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown spending '" + name +
                   "' (expected equal-tails, hpd-symmetric, band-lower, band-upper, band-mix or constant)");
}

std::string config_hash(const RunConfig& c) {
  const ModelParams& p = c.params;
  const std::string canonical = fmt::format(
      "command={}|model={}|shape={:.17g}|a={:.17g}|n={}|weights={}|component={}|shapes={}|eta={:.17g}|"
      "df={:.17g}|cal_draws={}|cal_seed={}|alpha={:.17g}|spending={}|band_weight={:.17g}|constant={}|x={}|"
      "tau_min={:.17g}|tau_max={:.17g}|grid={}|reps={}|seed={}|nodes={}|t_min={:.17g}|t_max={:.17g}|"
      "t_points={}|format={}",
      c.command, c.model, p.shape, p.a, p.n, join(p.weights), p.component, join(p.shapes), p.eta, p.df,
      p.calibration.draws, p.calibration.seed, c.alpha, c.spending, c.band_weight,
      c.constant_value ? fmt::format("{:.17g}", *c.constant_value) : "none", join(c.x), c.tau_min, c.tau_max,
      c.grid, c.replicates, c.seed, c.nodes, c.t_min, c.t_max, c.t_points, c.format);
  return fmt::format("{:016x}", fnv1a(canonical));
}

std::string resolve_output(const RunConfig& config) {
  const char* dir = std::getenv(kOutputDirEnv);
  const bool has_dir = dir != nullptr && *dir != '\0';
  if (config.output.empty()) {
    if (!has_dir || config.command == "interval") return {};
    return (std::filesystem::path(dir) / (config.command + "." + config.format)).string();
  }
  if (config.output == "-") return {};
  const std::filesystem::path p(config.output);
  if (p.is_relative() && has_dir) return (std::filesystem::path(dir) / p).string();
  return p.string();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_alpha(config);
    separator(config);
    if (config.command == "interval") return run_interval(config, out);
    if (config.command == "validate") return run_validate(config, out);
    if (config.command == "coverage") return run_coverage(config, out, err);
    throw UsageError("unknown command '" + config.command + "' (expected interval, coverage or validate)");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegeneratePosteriorError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Credible intervals for lower-bounded parametric functions with a frequentist coverage floor",
               "credint"};
  app.set_version_flag("--version", CREDINT_VERSION);
  app.set_config("--config", "", "Read options from a key = value file (flags take precedence)");

  RunConfig config;
  std::uint64_t cal_draws = config.params.calibration.draws;
  app.add_option("command", config.command, "interval | coverage | validate")
      ->required()
      ->check(CLI::IsMember({"interval", "coverage", "validate"}));
  app.add_option("--model", config.model, "Model name")->capture_default_str();
  app.add_option("--alpha", config.alpha, "Credibility deficit alpha in (0, 1)")->capture_default_str();
  app.add_option("--spending", config.spending,
                 "equal-tails | hpd-symmetric | band-lower | band-upper | band-mix | constant")
      ->capture_default_str();
  app.add_option("--band-weight", config.band_weight, "band-mix weight on the upper edge")->capture_default_str();
  app.add_option("--constant-value", config.constant_value, "alpha(x) for the constant spending");
  app.add_option("--x", config.x, "Observation, comma separated")->delimiter(',')->allow_extra_args(false);
  app.add_option("--shape", config.params.shape, "Scale-family shape")->capture_default_str();
  app.add_option("--a", config.params.a, "Scale lower bound (theta >= a)")->capture_default_str();
  app.add_option("--n", config.params.n, "Sample size")->capture_default_str();
  app.add_option("--weights", config.params.weights, "Linear-combination weights")->delimiter(',');
  app.add_option("--component", config.params.component, "Linear-combination component density")
      ->capture_default_str();
  app.add_option("--shapes", config.params.shapes, "Scale-ratio gamma shapes")->delimiter(',');
  app.add_option("--eta", config.params.eta, "Quantile-model eta")->capture_default_str();
  app.add_option("--df", config.params.df, "Homogeneous-scale degrees of freedom")->capture_default_str();
  app.add_option("--calibration-draws", cal_draws, "Draws for empirical pivots")->capture_default_str();
  app.add_option("--calibration-seed", config.params.calibration.seed, "Seed for empirical pivots")
      ->capture_default_str();
  app.add_option("--tau-min", config.tau_min, "Smallest tau in the sweep")->capture_default_str();
  app.add_option("--tau-max", config.tau_max, "Largest tau in the sweep")->capture_default_str();
  app.add_option("--grid", config.grid, "Number of tau grid points")->capture_default_str();
  app.add_option("--reps", config.replicates, "Monte Carlo replicates per grid point")->capture_default_str();
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--nodes", config.nodes, "Quadrature cells")->capture_default_str();
  app.add_option("--threads", config.threads, "Grid points evaluated concurrently (0 = all cores)")
      ->capture_default_str();
  app.add_option("--t-min", config.t_min, "validate: smallest t")->capture_default_str();
  app.add_option("--t-max", config.t_max, "validate: largest t")->capture_default_str();
  app.add_option("--t-points", config.t_points, "validate: number of t values (0 = default grid)")
      ->capture_default_str();
  app.add_option("--output", config.output, "Output file ('-' for standard output)");
  app.add_option("--format", config.format, "csv | tsv")->check(CLI::IsMember({"csv", "tsv"}))->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CREDINT_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  config.params.calibration.draws = static_cast<std::size_t>(cal_draws);
  return run(config, out, err);
}

}  // namespace credint::cli
