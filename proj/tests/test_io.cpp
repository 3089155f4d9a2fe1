#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "pps/report_io.hpp"

using namespace pps;

TEST_CASE("override config parsing") {
  const auto cfg = OverrideConfig::parse(
      "# literature values\n"
      "\n"
      "imm.P.5 = 7 ; provenance=\"table of immersions\"\n"
      "  gd.12.28 = 7;provenance=\"sectioning tables\"  \n"
      "tc.P.6 = 11 ; provenance = \"x\"\n");
  REQUIRE(cfg.imm_p(5));
  CHECK(cfg.imm_p(5)->value == 7);
  CHECK(cfg.imm_p(5)->provenance == "table of immersions");
  CHECK(cfg.gd(12, 28)->value == 7);
  CHECK_FALSE(cfg.tc_p(5));
  CHECK(cfg.entries().size() == 3);

  CHECK_THROWS_AS(OverrideConfig::parse("tc.P.5 = 7\n"), std::invalid_argument);
  CHECK_THROWS_AS(OverrideConfig::parse("tc.P.5 = 7 ; provenance=\"\"\n"), std::invalid_argument);
  CHECK_THROWS_AS(OverrideConfig::parse("tc.Q.5 = 7 ; provenance=\"a\"\n"), std::invalid_argument);
  CHECK_THROWS_AS(OverrideConfig::parse("tc.P.5 = -7 ; provenance=\"a\"\n"), std::invalid_argument);
  CHECK_THROWS_AS(OverrideConfig::parse("tc.P.0 = 1 ; provenance=\"a\"\n"), std::invalid_argument);
  OverrideConfig c;
  CHECK_THROWS_AS(c.set("imm.P.3", {4, ""}), std::invalid_argument);
}

TEST_CASE("config from file and environment") {
  const auto path = std::filesystem::temp_directory_path() / "pps_test_config.txt";
  {
    std::ofstream f(path);
    f << "tc.P.5 = 8 ; provenance=\"test\"\n";
  }
  CHECK(OverrideConfig::load(path).tc_p(5)->value == 8);
  ::setenv("PPS_CONFIG", path.c_str(), 1);
  CHECK(OverrideConfig::from_environment().tc_p(5)->value == 8);
  ::unsetenv("PPS_CONFIG");
  CHECK(OverrideConfig::from_environment().empty());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(OverrideConfig::load(path), std::invalid_argument);
}

TEST_CASE("overrides reach the bounds") {
  OverrideConfig cfg;
  cfg.set("tc.P.5", {8, "test"});
  CHECK(combine(SphereTuple({5}), cfg).tc == Interval::exact(8));
  CHECK(combine(SphereTuple({5})).tc == Interval(7, 10));
  bool cited = false;
  for (const auto& it : combine(SphereTuple({5, 6}), cfg).items) cited |= it.citation.find("test") != std::string::npos;
  CHECK(cited);
}

TEST_CASE("JSON round trips byte for byte") {
  for (const char* t : {"1", "2,2", "2,7", "1,1,1", "3,4,9", "15", "6,10,10"}) {
    CAPTURE(t);
    const std::string a = dump(to_json(combine(SphereTuple::parse(t))));
    CHECK(dump(Json::parse(a)) == a);
  }
  const std::string imm = dump(to_json(immersion_report(SphereTuple({12, 14}), GdOverride{7, "sectioning"})));
  CHECK(dump(Json::parse(imm)) == imm);
  VerifyOptions o;
  o.samples = 500;
  o.adversarial = 50;
  const std::string ver = dump(to_json(verify_planner(*even_sphere_planner(2), o)));
  CHECK(dump(Json::parse(ver)) == ver);
  CHECK(ver == dump(to_json(verify_planner(*even_sphere_planner(2), o))));
}

TEST_CASE("JSON content") {
  const Json j = to_json(combine(SphereTuple({1, 1, 1})));
  CHECK(j["tc"]["lo"] == 3);
  CHECK(j["tc"]["hi"] == 3);
  CHECK(j["dim"] == 3);
  CHECK(j["tuple"] == Json::array({1, 1, 1}));
  CHECK(j["flags"]["circle_factors"] == 2);
  for (const auto& item : j["items"]) CHECK(item["applicable"] == !item["value"].is_null());
  // Keys come out sorted.
  const std::string s = dump(j);
  CHECK(s.find("\"cat\"") < s.find("\"dim\""));
  CHECK(s.find("\"dim\"") < s.find("\"flags\""));
  const Json imm = to_json(immersion_report(SphereTuple({12, 14})));
  CHECK(imm["imm_exact"].is_null());
  CHECK(imm["gd_used"]["source"] == "lower_bound");
}

TEST_CASE("CSV rows") {
  const std::string head = bounds_csv_header();
  CHECK(head.rfind(kBoundsCsvVersion, 0) == 0);
  const auto cols = bounds_csv_columns();
  for (const char* t : {"2,2", "2,7", "15", "1,1,1,1"}) {
    const std::string row = bounds_csv_row(combine(SphereTuple::parse(t)));
    // The quoted tuple holds commas of its own.
    const std::size_t tuple_commas = SphereTuple::parse(t).length() - 1;
    CHECK(static_cast<std::size_t>(std::count(row.begin(), row.end(), ',')) == cols.size() - 1 + tuple_commas);
  }
  CHECK(bounds_csv_row(combine(SphereTuple({2, 2}))).rfind("\"2,2\",4,4,6,3,3,", 0) == 0);
}

TEST_CASE("text output") {
  const std::string s = to_text(combine(SphereTuple({2, 7})));
  CHECK(s.find("TC  [4, 4]  (below dim)") != std::string::npos);
  CHECK(to_text(immersion_report(SphereTuple({12, 14}))).find("imm >= 30") != std::string::npos);
}
