#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "credint/coverage.hpp"
#include "credint/credible.hpp"
#include "credint/models.hpp"

namespace credint::cli {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "CREDINT_OUTPUT_DIR";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;  // interval | coverage | validate
  std::string model = "location-normal";
  ModelParams params;
  double alpha = 0.05;
  std::string spending = "equal-tails";
  double band_weight = 0.5;
  std::optional<double> constant_value;
  std::vector<double> x;
  double tau_min = 0.0;
  double tau_max = 5.0;
  std::size_t grid = 51;
  std::size_t replicates = 100'000;
  std::uint64_t seed = 42;
  std::size_t nodes = kQuadratureNodes;
  unsigned threads = 0;
  // validate: explicit t-range when t_points > 0, else the default grid
  double t_min = -5.0;
  double t_max = 5.0;
  std::size_t t_points = 0;
  std::string output;
  std::string format = "csv";  // csv | tsv
};

/// Spending named by config.spending, built on g. Throws UsageError for
/// unknown names.
SpendingFunction make_spending(const RunConfig& config, const PivotDistribution& g);

/// 16 hex digits identifying every field that affects results.
std::string config_hash(const RunConfig& config);

/// Output path after applying CREDINT_OUTPUT_DIR; empty means standard output.
std::string resolve_output(const RunConfig& config);

/// Executes one command. Returns 0 on success, 1 when validation or the
/// coverage verdict fails (report still written), 2 on usage errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (argv[0] excluded) and runs. Flags override
/// values read from --config.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace credint::cli
