#pragma once

// Batch front end: JSON run configs, suite dispatch and report files.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "balayage/measures.hpp"
#include "balayage/operators.hpp"
#include "balayage/verify.hpp"

namespace balayage::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  exit_bounded = 0,
  exit_numerical_failure = 1,
  exit_config_error = 2,
  exit_trend_violation = 3,
  exit_resolution_limited = 4,
};

struct SuiteInfo {
  std::string id;
  std::string parameters;
  std::string reference;
};

// Seven rows in a fixed order.
const std::vector<SuiteInfo>& suite_table();
std::string list_suites_text();

struct QuadratureSpec {
  int radial_count = 16;
  int angular_count = 128;
  int refinement_levels = 10;
  int grid_n = 4096;
  double max_radius = 1.0 - 0x1.0p-10;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  std::string suite;
  Measure measure = Measure::dirac(DiskPoint(0.0, 0.0));
  double s = 1.0;
  double gamma = 0.0;
  double p = 2.0;
  double sigma = 1.0;
  double alpha = 0.0;
  double r = 0.5;
  int depth_min = 2;
  int depth_max = 8;
  int depth = 10;
  int per_tier = 8;
  int rays = 16;
  int levels = 10;
  std::vector<std::complex<double>> function_coefficients = {0.0, 1.0};
  QuadratureSpec quadrature;
  std::optional<std::uint64_t> seed;
  // eval-bbalayage sampling grid
  int eval_radii = 8;
  int eval_angles = 16;
  std::string out_dir;
};

// Parses and validates; throws PreconditionError on any schema or
// precondition violation. A seed override replaces the file's seed first.
RunConfig parse_run_config(const std::string& json_text,
                           std::optional<std::uint64_t> seed_override = std::nullopt);
void validate(const RunConfig& config);

SuiteSettings settings_of(const RunConfig& config);
VerificationReport run_suite(const RunConfig& config);
int exit_code_of(Verdict verdict);

// Static log-scale plot of sample ratios.
std::string render_svg(const VerificationReport& report);
std::string bbalayage_csv(const RunConfig& config);

// Full command line; returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace balayage::cli
