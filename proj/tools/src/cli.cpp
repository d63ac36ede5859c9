#include "balayage_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "balayage/errors.hpp"
#include "balayage/report_io.hpp"
#include "json.hpp"

namespace balayage::cli {

namespace {

using Json = nlohmann::json;

const std::set<std::string> kTopKeys = {"schema_version", "suite", "measure", "parameters",
                                        "quadrature", "seed", "function", "eval_grid", "output"};
const std::set<std::string> kParameterKeys = {"s",     "gamma",    "p",     "sigma", "alpha", "r",
                                              "depth_min", "depth_max", "depth", "per_tier", "rays",
                                              "levels"};
const std::set<std::string> kQuadratureKeys = {"radial_count", "angular_count", "refinement_levels",
                                               "grid_n", "max_radius"};

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError("config: " + message);
}

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  require(j.is_object(), "'" + where + "' must be an object");
  for (const auto& item : j.items()) {
    require(allowed.count(item.key()) == 1, "unknown key '" + item.key() + "' in " + where);
  }
}

double read_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  require(j.at(key).is_number(), std::string("'") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  require(std::isfinite(v), std::string("'") + key + "' must be finite");
  return v;
}

int read_int(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  require(j.at(key).is_number_integer(), std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

std::complex<double> read_coefficient(const Json& c) {
  if (c.is_number()) return {c.get<double>(), 0.0};
  require(c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number(),
          "function coefficients must be numbers or [re, im] pairs");
  return {c[0].get<double>(), c[1].get<double>()};
}

bool is_known_suite(const std::string& id) {
  const auto& table = suite_table();
  return std::any_of(table.begin(), table.end(), [&](const SuiteInfo& s) { return s.id == id; });
}

bool uses_pairs(const std::string& suite) { return suite == "bbal" || suite == "besov"; }

void validate_depths(const RunConfig& c) {
  require(c.depth_min >= 1 && c.depth_min <= c.depth_max && c.depth_max <= 24,
          "depth range must satisfy 1 <= depth_min <= depth_max <= 24");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.flush();
  if (!out) throw PreconditionError("output: cannot write '" + path.string() + "'");
}

std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw PreconditionError("output: cannot create directory '" + dir + "'");
  }
  return dir;
}

}  // namespace

const std::vector<SuiteInfo>& suite_table() {
  static const std::vector<SuiteInfo> table = {
      {"thm1", "s in (0,1], gamma in [0,1), depth_min..depth_max", "Theorem 2.1"},
      {"campanato", "s in (0,1], depth_min..depth_max", "Theorem 2.2"},
      {"bbal", "p > 1, per_tier, seed", "Theorem 1.1"},
      {"besov", "function, p > 1, per_tier, seed", "Theorem 3.4"},
      {"weight_shift", "sigma > 0, s > 0, depth_min..depth_max (>= 4 scales)", "Section 3 Corollary"},
      {"embedding", "alpha > -1, p > 1", "Section 3 embedding theorem"},
      {"square_disk", "s > 1, depth, r > 0, rays, levels", "Section 3 Proposition"},
  };
  return table;
}

std::string list_suites_text() {
  std::ostringstream out;
  out << std::left << std::setw(14) << "suite" << std::setw(56) << "parameters"
      << "theorem" << "\n";
  for (const auto& s : suite_table()) {
    out << std::left << std::setw(14) << s.id << std::setw(56) << s.parameters << s.reference << "\n";
  }
  return out.str();
}

RunConfig parse_run_config(const std::string& json_text, std::optional<std::uint64_t> seed_override) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(j, kTopKeys, "config");
  require(j.contains("schema_version") && j.at("schema_version").is_number_integer(),
          "missing integer 'schema_version'");
  RunConfig c;
  c.schema_version = j.at("schema_version").get<int>();
  require(c.schema_version == kSchemaVersion,
          "unsupported schema_version " + std::to_string(c.schema_version));
  if (j.contains("suite")) {
    require(j.at("suite").is_string(), "'suite' must be a string");
    c.suite = j.at("suite").get<std::string>();
  }
  require(j.contains("measure"), "missing 'measure'");
  c.measure = parse_measure(j.at("measure").dump());

  if (j.contains("parameters")) {
    const Json& p = j.at("parameters");
    reject_unknown(p, kParameterKeys, "parameters");
    c.s = read_number(p, "s", c.s);
    c.gamma = read_number(p, "gamma", c.gamma);
    c.p = read_number(p, "p", c.p);
    c.sigma = read_number(p, "sigma", c.sigma);
    c.alpha = read_number(p, "alpha", c.alpha);
    c.r = read_number(p, "r", c.r);
    c.depth_min = read_int(p, "depth_min", c.depth_min);
    c.depth_max = read_int(p, "depth_max", c.depth_max);
    c.depth = read_int(p, "depth", c.depth);
    c.per_tier = read_int(p, "per_tier", c.per_tier);
    c.rays = read_int(p, "rays", c.rays);
    c.levels = read_int(p, "levels", c.levels);
  }
  if (j.contains("quadrature")) {
    const Json& q = j.at("quadrature");
    reject_unknown(q, kQuadratureKeys, "quadrature");
    c.quadrature.radial_count = read_int(q, "radial_count", c.quadrature.radial_count);
    c.quadrature.angular_count = read_int(q, "angular_count", c.quadrature.angular_count);
    c.quadrature.refinement_levels = read_int(q, "refinement_levels", c.quadrature.refinement_levels);
    c.quadrature.grid_n = read_int(q, "grid_n", c.quadrature.grid_n);
    c.quadrature.max_radius = read_number(q, "max_radius", c.quadrature.max_radius);
  }
  if (j.contains("seed")) {
    require(j.at("seed").is_number_unsigned(), "'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("function")) {
    require(j.at("function").is_array() && !j.at("function").empty(),
            "'function' must be a non-empty coefficient array");
    c.function_coefficients.clear();
    for (const auto& coeff : j.at("function")) c.function_coefficients.push_back(read_coefficient(coeff));
  }
  if (j.contains("eval_grid")) {
    const Json& g = j.at("eval_grid");
    reject_unknown(g, {"radii", "angles"}, "eval_grid");
    c.eval_radii = read_int(g, "radii", c.eval_radii);
    c.eval_angles = read_int(g, "angles", c.eval_angles);
  }
  if (j.contains("output")) {
    const Json& o = j.at("output");
    reject_unknown(o, {"dir"}, "output");
    if (o.contains("dir")) {
      require(o.at("dir").is_string(), "'output.dir' must be a string");
      c.out_dir = o.at("dir").get<std::string>();
    }
  }
  if (seed_override) c.seed = seed_override;
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  const auto& q = c.quadrature;
  require(q.radial_count >= 2 && q.radial_count <= 256, "radial_count must lie in [2, 256]");
  require(q.angular_count >= 4 && q.angular_count <= 8192, "angular_count must lie in [4, 8192]");
  require(q.refinement_levels >= 0 && q.refinement_levels <= 52, "refinement_levels must lie in [0, 52]");
  require(q.grid_n >= 8 && q.grid_n <= (1 << 22), "grid_n must lie in [8, 2^22]");
  require(q.max_radius > 0.0 && q.max_radius < 1.0, "max_radius must lie in (0, 1)");
  require(c.eval_radii >= 1 && c.eval_angles >= 1, "eval_grid sizes must be positive");

  if (c.suite.empty()) return;
  require(is_known_suite(c.suite), "unknown suite '" + c.suite + "'");
  if (c.suite == "thm1") {
    require(c.s > 0.0, "thm1 needs s > 0");
    require(c.gamma >= 0.0 && c.gamma < 1.0, "thm1 needs 0 <= gamma < 1");
    validate_depths(c);
  } else if (c.suite == "campanato") {
    require(c.s > 0.0, "campanato needs s > 0");
    validate_depths(c);
  } else if (c.suite == "bbal" || c.suite == "besov") {
    require(c.p > 1.0, c.suite + " needs p > 1");
    require(c.per_tier >= 1 && c.per_tier <= 100000, "per_tier must lie in [1, 100000]");
    if (c.suite == "besov") {
      require(!Polynomial(c.function_coefficients).is_constant(), "besov needs a non-constant function");
    }
  } else if (c.suite == "weight_shift") {
    require(c.sigma > 0.0, "weight_shift needs sigma > 0");
    require(c.s > 0.0, "weight_shift needs s > 0");
    validate_depths(c);
    require(c.depth_max - c.depth_min + 1 >= 4, "weight_shift needs at least four scales");
  } else if (c.suite == "embedding") {
    require(c.alpha > -1.0, "embedding needs alpha > -1");
    require(c.p > 1.0, "embedding needs p > 1");
  } else if (c.suite == "square_disk") {
    require(c.s > 1.0, "square_disk needs s > 1");
    require(c.r > 0.0, "square_disk needs r > 0");
    require(c.depth >= 1 && c.depth <= 24, "depth must lie in [1, 24]");
    require(c.rays >= 1 && c.levels >= 1 && c.levels <= 52, "rays and levels must be positive");
  }
  if (uses_pairs(c.suite)) require(c.seed.has_value(), c.suite + " samples random pairs and needs a seed");
}

SuiteSettings settings_of(const RunConfig& c) {
  SuiteSettings settings;
  settings.rule = build_disk_rule(c.quadrature.radial_count, c.quadrature.angular_count,
                                  c.quadrature.refinement_levels);
  settings.grid_n = c.quadrature.grid_n;
  settings.max_radius = c.quadrature.max_radius;
  return settings;
}

VerificationReport run_suite(const RunConfig& c) {
  validate(c);
  const SuiteSettings settings = settings_of(c);
  const ScaleRange depths{c.depth_min, c.depth_max};
  if (c.suite == "thm1") return verify_thm1(c.measure, c.s, c.gamma, depths, settings);
  if (c.suite == "campanato") return verify_campanato_membership(c.measure, c.s, depths, settings);
  if (c.suite == "bbal") {
    return verify_bbalayage_lipschitz(c.measure, c.p, lipschitz_pairs(*c.seed, c.per_tier, settings.max_radius),
                                      settings);
  }
  if (c.suite == "besov") {
    return verify_besov_lipschitz(Polynomial(c.function_coefficients), c.p,
                                  lipschitz_pairs(*c.seed, c.per_tier, settings.max_radius), settings);
  }
  if (c.suite == "weight_shift") return verify_weight_shift(c.measure, c.sigma, c.s, depths, settings);
  if (c.suite == "embedding") {
    return verify_embedding(c.measure, c.alpha, c.p, default_embedding_functions(), settings);
  }
  if (c.suite == "square_disk") {
    return verify_square_disk_equivalence(c.measure, c.s, c.depth, c.r, default_center_sweep(c.rays, c.levels),
                                          settings);
  }
  throw PreconditionError("config: no suite selected");
}

int exit_code_of(Verdict verdict) {
  switch (verdict) {
    case Verdict::bounded: return exit_bounded;
    case Verdict::trend_violation: return exit_trend_violation;
    case Verdict::resolution_limited: return exit_resolution_limited;
  }
  return exit_numerical_failure;
}

std::string render_svg(const VerificationReport& report) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  std::vector<double> logs;
  for (const auto& s : report.samples) logs.push_back(s.ratio > 0.0 ? std::log10(s.ratio) : NAN);
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (double v : logs) {
    if (std::isnan(v)) continue;
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  }
  if (!any || hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const std::size_t n = report.samples.size();
  auto x_of = [&](std::size_t i) {
    return kMargin + (n > 1 ? (kWidth - 2 * kMargin) * static_cast<double>(i) / static_cast<double>(n - 1) : 0.0);
  };
  auto y_of = [&](double v) { return kHeight - kMargin - (kHeight - 2 * kMargin) * (v - lo) / (hi - lo); };

  std::ostringstream out;
  out << std::setprecision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kMargin << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
      << to_string(report.theorem_id) << ": log10 ratio per sample, verdict " << to_string(report.verdict)
      << "</text>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"4\" y=\"" << kMargin << "\" font-size=\"10\">" << hi << "</text>\n";
  out << "<text x=\"4\" y=\"" << kHeight - kMargin << "\" font-size=\"10\">" << lo << "</text>\n";
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(logs[i])) continue;
    out << "<circle cx=\"" << x_of(i) << "\" cy=\"" << y_of(logs[i]) << "\" r=\"2\" fill=\"steelblue\"><title>"
        << report.samples[i].label << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string bbalayage_csv(const RunConfig& c) {
  const QuadratureRule rule = settings_of(c).rule;
  std::string out = "re,im,value\n";
  for (int i = 1; i <= c.eval_radii; ++i) {
    const double radius = c.quadrature.max_radius * i / c.eval_radii;
    for (int k = 0; k < c.eval_angles; ++k) {
      const DiskPoint z = DiskPoint::polar(radius, kTwoPi * k / c.eval_angles);
      out += format_double(z.re) + "," + format_double(z.im) + "," + format_double(b_balayage(c.measure, z, rule)) +
             "\n";
    }
  }
  return out;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for balayage operators on the unit disk", "balayage"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> formats;

  auto add_common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--config", config_path, "JSON run config")->required();
    sub->add_option("--out", out_dir, "output directory (stdout when omitted)");
    sub->add_option("--format", formats, "json, csv or svg (repeatable)")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    if (with_seed) sub->add_option("--seed", seed, "seed for pair sampling");
  };
  auto* run = app.add_subcommand("run", "run one verification suite");
  add_common(run, true);
  auto* list = app.add_subcommand("list-suites", "print the suite table");
  auto* eval_bal = app.add_subcommand("eval-balayage", "dump the balayage boundary grid");
  add_common(eval_bal, false);
  auto* eval_bbal = app.add_subcommand("eval-bbalayage", "dump the B-balayage on a polar grid");
  add_common(eval_bbal, false);
  auto* carleson = app.add_subcommand("carleson", "dump the dyadic Carleson report");
  add_common(carleson, false);

  std::vector<const char*> argv{"balayage"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_config_error;
  }

  if (list->parsed()) {
    out << list_suites_text();
    return exit_bounded;
  }

  RunConfig config;
  try {
    config = parse_run_config(read_file(config_path), seed);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (run->parsed() && config.suite.empty()) throw PreconditionError("config: 'suite' is required for run");
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  }

  // Emits one artifact either to stdout (first format only) or as a file.
  auto emit = [&](const std::string& name, const std::string& text) {
    if (config.out_dir.empty()) {
      out << text;
    } else {
      write_file(prepare_dir(config.out_dir) / name, text);
    }
  };

  try {
    if (run->parsed()) {
      if (formats.empty()) formats = config.out_dir.empty() ? std::vector<std::string>{"json"}
                                                            : std::vector<std::string>{"json", "csv"};
      if (!config.out_dir.empty()) prepare_dir(config.out_dir);
      const VerificationReport report = run_suite(config);
      for (const auto& f : formats) {
        if (f == "json") emit(config.suite + "_report.json", report_to_json(report));
        if (f == "csv") emit(config.suite + "_samples.csv", report_samples_csv(report));
        if (f == "svg") emit(config.suite + "_plot.svg", render_svg(report));
        if (config.out_dir.empty()) break;
      }
      err << config.suite << ": " << to_string(report.verdict) << " (empirical_sup "
          << format_double(report.empirical_sup) << ")\n";
      return exit_code_of(report.verdict);
    }
    const std::string format = formats.empty() ? "" : formats.front();
    if (eval_bal->parsed()) {
      const BoundaryGrid grid =
          balayage(config.measure, config.quadrature.grid_n, settings_of(config).rule, GridSampling::cell_average);
      emit("balayage_grid.csv", grid_csv(grid));
      return exit_bounded;
    }
    if (eval_bbal->parsed()) {
      emit("bbalayage_grid.csv", bbalayage_csv(config));
      return exit_bounded;
    }
    if (carleson->parsed()) {
      require(config.s > 0.0, "carleson needs s > 0");
      require(config.depth >= 1 && config.depth <= 24, "depth must lie in [1, 24]");
      const CarlesonReport report = carleson_constant(config.measure, config.s, config.depth);
      if (format == "csv") emit("carleson.csv", carleson_report_csv(report));
      else emit("carleson.json", carleson_report_json(report));
      return exit_bounded;
    }
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config_error;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical_failure;
  }
  return exit_config_error;
}

}  // namespace balayage::cli
