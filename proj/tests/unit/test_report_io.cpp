#include <cmath>
#include <string>

#include "balayage/errors.hpp"
#include "balayage/report_io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace balayage;
using doctest::Approx;

TEST_CASE("parse_measure covers every tagged record") {
  const auto atoms = parse_measure(R"({"type":"atomic","atoms":[{"re":0.5,"im":0,"mass":2},{"re":0,"im":-0.25,"mass":1}]})");
  CHECK(atoms.total_mass() == 3.0);
  CHECK(std::get<AtomicMeasure>(atoms.variant()).atoms[1].point == DiskPoint(0.0, -0.25));
  CHECK(std::holds_alternative<WeightedAreaMeasure>(parse_measure(R"({"type":"weighted_area","alpha":0})").variant()));
  CHECK(std::get<RadialSegmentMeasure>(parse_measure(R"({"type":"radial_segment","angle":1.5})").variant()).angle ==
        1.5);
  const auto nested =
      parse_measure(R"({"type":"weight_transform","sigma":2,"base":{"type":"weighted_area","alpha":0}})");
  CHECK(nested.total_mass() == Approx(1.0 / 6.0));
  CHECK(parse_measure(R"({"type":"cap","re":0.1,"im":0.2,"radius":0.05,"mass":3})").total_mass() == 3.0);
}

TEST_CASE("parse_measure rejects schema violations") {
  CHECK_THROWS_AS(parse_measure("{"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"unknown"})"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"alpha":0})"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"weighted_area"})"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"weighted_area","alpha":"0"})"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"atomic","atoms":[{"re":1.0,"im":0,"mass":1}]})"), PreconditionError);
  CHECK_THROWS_AS(parse_measure(R"({"type":"weight_transform","sigma":0,"base":{"type":"weighted_area","alpha":0}})"),
                  PreconditionError);
}

TEST_CASE("measure JSON round trip") {
  const std::string text =
      R"({"type":"weight_transform","sigma":1.5,"base":{"type":"atomic","atoms":[{"re":0.1,"im":0.2,"mass":0.3}]}})";
  CHECK(measure_to_json(parse_measure(text)) == text);
}

TEST_CASE("report JSON has the documented keys in order and round-trip numbers") {
  VerificationReport r;
  r.theorem_id = TheoremId::campanato;
  r.parameters = {{"s", 1.0}, {"depth_min", 2.0}};
  r.samples = {{"k2/a0", 0.1}, {"k2/a1", 1.0 / 3.0}};
  r.empirical_sup = 1.0 / 3.0;
  r.verdict = Verdict::trend_violation;
  r.error_budget = 1e-17;
  r.flags = {"note"};
  const std::string text = report_to_json(r);
  const auto j = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"theorem_id", "parameters", "samples", "empirical_sup", "verdict",
                                         "error_budget", "flags", "diagnostics"});
  CHECK(j["theorem_id"] == "CAMPANATO");
  CHECK(j["verdict"] == "TREND_VIOLATION");
  CHECK(j["samples"][1]["ratio"].get<double>() == 1.0 / 3.0);
  CHECK(j["error_budget"].get<double>() == 1e-17);
  CHECK(report_to_json(r) == text);
}

TEST_CASE("CSV emitters") {
  VerificationReport r;
  r.samples = {{"a,b", 0.5}, {"c", 2.0}};
  CHECK(report_samples_csv(r) == "label,ratio\n\"a,b\",0.5\nc,2\n");

  const BoundaryGrid g(std::vector<double>(8, 1.0));
  const std::string grid = grid_csv(g);
  CHECK(grid.rfind("angle,value\n0,1\n", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 9);

  const std::vector<OscillationSample> osc = {{Arc(1.0, 0.5), 0.25, 3}};
  CHECK(oscillation_csv(osc) == "scale_index,arc_center,arc_length,value\n3,1,0.5,0.25\n");
}

TEST_CASE("Carleson report serializers") {
  const auto rep = carleson_constant(Measure::dirac(DiskPoint(0.0, 0.0)), 1.0, 3);
  const auto j = nlohmann::json::parse(carleson_report_json(rep));
  CHECK(j["empirical_constant"].get<double>() == Approx(1.0 / kTwoPi));
  CHECK(j["argmax_region"]["kind"] == "square");
  CHECK(j["samples"].size() == 4);
  CHECK(carleson_report_csv(rep).rfind("scale,size,max_ratio,max_mass\n0,", 0) == 0);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
