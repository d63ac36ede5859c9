#include "balayage/report_io.hpp"

#include <charconv>
#include <sstream>

#include "balayage/errors.hpp"
#include "json.hpp"

namespace balayage {

namespace {

using Json = nlohmann::ordered_json;

double number_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw PreconditionError(std::string("measure: missing field '") + key + "'");
  if (!j.at(key).is_number()) throw PreconditionError(std::string("measure: field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

Measure measure_from(const Json& j, int depth) {
  if (depth > 16) throw PreconditionError("measure: nesting too deep");
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw PreconditionError("measure: expected an object with a string 'type'");
  }
  const auto type = j.at("type").get<std::string>();
  if (type == "atomic") {
    if (!j.contains("atoms") || !j.at("atoms").is_array()) {
      throw PreconditionError("measure: atomic needs an 'atoms' array");
    }
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
      atoms.push_back({DiskPoint(number_field(a, "re"), number_field(a, "im")), number_field(a, "mass")});
    }
    return Measure::atomic(std::move(atoms));
  }
  if (type == "weighted_area") return Measure::weighted_area(number_field(j, "alpha"));
  if (type == "radial_segment") return Measure::radial_segment(number_field(j, "angle"));
  if (type == "cap") {
    return Measure::cap(DiskPoint(number_field(j, "re"), number_field(j, "im")), number_field(j, "radius"),
                        number_field(j, "mass"));
  }
  if (type == "weight_transform") {
    if (!j.contains("base")) throw PreconditionError("measure: weight_transform needs 'base'");
    return weight_transform(measure_from(j.at("base"), depth + 1), number_field(j, "sigma"));
  }
  throw PreconditionError("measure: unknown type '" + type + "'");
}

Json measure_json(const Measure& mu) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        Json j;
        if constexpr (std::is_same_v<T, AtomicMeasure>) {
          j["type"] = "atomic";
          j["atoms"] = Json::array();
          for (const auto& a : m.atoms) j["atoms"].push_back({{"re", a.point.re}, {"im", a.point.im}, {"mass", a.mass}});
        } else if constexpr (std::is_same_v<T, WeightedAreaMeasure>) {
          j["type"] = "weighted_area";
          j["alpha"] = m.alpha;
        } else if constexpr (std::is_same_v<T, RadialSegmentMeasure>) {
          j["type"] = "radial_segment";
          j["angle"] = m.angle;
        } else if constexpr (std::is_same_v<T, CapMeasure>) {
          j["type"] = "cap";
          j["re"] = m.center.re;
          j["im"] = m.center.im;
          j["radius"] = m.radius;
          j["mass"] = m.mass;
        } else {
          j["type"] = "weight_transform";
          j["sigma"] = m.sigma;
          j["base"] = measure_json(*m.base);
        }
        return j;
      },
      mu.variant());
}

Json pairs_json(const std::vector<std::pair<std::string, double>>& items) {
  Json j = Json::object();
  for (const auto& [k, v] : items) j[k] = v;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Measure parse_measure(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw PreconditionError(std::string("measure: invalid JSON: ") + e.what());
  }
  return measure_from(j, 0);
}

std::string measure_to_json(const Measure& mu) { return measure_json(mu).dump(); }

std::string report_to_json(const VerificationReport& report) {
  Json j;
  j["theorem_id"] = to_string(report.theorem_id);
  j["parameters"] = pairs_json(report.parameters);
  j["samples"] = Json::array();
  for (const auto& s : report.samples) j["samples"].push_back({{"label", s.label}, {"ratio", s.ratio}});
  j["empirical_sup"] = report.empirical_sup;
  j["verdict"] = to_string(report.verdict);
  j["error_budget"] = report.error_budget;
  j["flags"] = report.flags;
  j["diagnostics"] = pairs_json(report.diagnostics);
  return j.dump(2) + "\n";
}

std::string report_samples_csv(const VerificationReport& report) {
  std::string out = "label,ratio\n";
  for (const auto& s : report.samples) out += csv_field(s.label) + "," + format_double(s.ratio) + "\n";
  return out;
}

std::string grid_csv(const BoundaryGrid& grid) {
  std::string out = "angle,value\n";
  for (int j = 0; j < grid.size(); ++j) out += format_double(grid.angle(j)) + "," + format_double(grid[j]) + "\n";
  return out;
}

std::string oscillation_csv(const std::vector<OscillationSample>& samples) {
  std::string out = "scale_index,arc_center,arc_length,value\n";
  for (const auto& s : samples) {
    out += std::to_string(s.scale_index) + "," + format_double(s.arc.center()) + "," +
           format_double(s.arc.length()) + "," + format_double(s.value) + "\n";
  }
  return out;
}

std::string carleson_report_json(const CarlesonReport& report) {
  Json j;
  j["exponent"] = report.exponent;
  j["empirical_constant"] = report.empirical_constant;
  if (const auto* arc = std::get_if<Arc>(&report.argmax_region)) {
    j["argmax_region"] = {{"kind", "square"}, {"arc_center", arc->center()}, {"arc_length", arc->length()}};
  } else {
    const auto& disk = std::get<HyperbolicDisk>(report.argmax_region);
    j["argmax_region"] = {{"kind", "hyperbolic_disk"},
                          {"re", disk.center.re},
                          {"im", disk.center.im},
                          {"radius", disk.radius}};
  }
  j["samples"] = Json::array();
  for (const auto& s : report.samples) {
    j["samples"].push_back({{"scale", s.scale}, {"size", s.size}, {"max_ratio", s.max_ratio}, {"max_mass", s.max_mass}});
  }
  j["flags"] = report.flags;
  return j.dump(2) + "\n";
}

std::string carleson_report_csv(const CarlesonReport& report) {
  std::string out = "scale,size,max_ratio,max_mass\n";
  for (const auto& s : report.samples) {
    out += std::to_string(s.scale) + "," + format_double(s.size) + "," + format_double(s.max_ratio) + "," +
           format_double(s.max_mass) + "\n";
  }
  return out;
}

}  // namespace balayage
