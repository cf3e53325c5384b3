#include <gtest/gtest.h>

#include <random>

#include <json.hpp>

#include "envlab/config.hpp"
#include "envlab/error.hpp"
#include "envlab/serialize.hpp"

using namespace envlab;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

ExperimentConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::uniform_int_distribution<int> small(1, 40);
  ExperimentConfig c;
  const FlowKind kinds[] = {FlowKind::circle_stack, FlowKind::annulus,  FlowKind::torus_circle,
                            FlowKind::shift_pair,   FlowKind::full_shift, FlowKind::rotation,
                            FlowKind::identity};
  c.flow.kind = kinds[rng() % 7];
  c.flow.params.alpha = rng() % 3 == 0 ? kGolden : unit(rng);
  c.flow.params.mu = rng() % 3 == 0 ? kSilver : unit(rng);
  c.flow.params.depth = 1 + small(rng) % 30;
  c.flow.params.block = (rng() % 2) ? "1" : "101";
  c.flow.params.window = 3 + small(rng) % 28;
  c.flow.params.horizon_cap = 1 + static_cast<std::int64_t>(rng() % 10'000'000);
  c.detectors.epsilon_ladder.clear();
  for (int i = 0, n = small(rng) % 5 + 1; i < n; ++i) c.detectors.epsilon_ladder.push_back(unit(rng));
  c.detectors.delta_grid = {unit(rng), unit(rng) * 1e-3};
  c.detectors.sensitivity_radii = {unit(rng)};
  c.detectors.epsilon = unit(rng);
  c.detectors.horizon = small(rng) * 1000;
  c.detectors.grid_resolution = small(rng);
  c.detectors.gap_bound = small(rng);
  c.detectors.run_length = small(rng);
  c.semigroup.epsilon = unit(rng);
  c.semigroup.horizon = small(rng) * 10;
  c.semigroup.directions = rng() % 2 ? ScanDirections::both : ScanDirections::forward;
  c.semigroup.grid_resolution = small(rng);
  if (rng() % 2) c.theorems.ids = {"T-dis", "T-iso"};
  c.theorems.horizon_cap = small(rng) * 100;
  c.theorems.seed = rng() >> 1;
  c.output.dir = rng() % 2 ? "" : "out/run" + std::to_string(small(rng));
  c.workers = small(rng);
  c.theorems.workers = c.workers;
  return c;
}

}  // namespace

TEST(Config, MinimalConfigTakesDefaults) {
  const auto c = parse_config(R"({"flow": {"kind": "annulus"}})");
  ExperimentConfig expect;
  expect.flow.kind = FlowKind::annulus;
  EXPECT_EQ(c, expect);
  EXPECT_EQ(parse_config(R"({"flow": "annulus"})"), expect);
  EXPECT_EQ(parse_config("{}"), ExperimentConfig{});
}

TEST(Config, NegativeEpsilonNamesTheKey) {
  const auto msg = error_of(R"({"detectors": {"epsilon": -0.1}})");
  EXPECT_NE(msg.find("detectors.epsilon"), std::string::npos) << msg;
  EXPECT_NE(error_of(R"({"semigroup": {"epsilon": -0.1}})").find("semigroup.epsilon"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"detectors": {"epsilon_ladder": [0.1, -1]}})")
                .find("detectors.epsilon_ladder[1]"),
            std::string::npos);
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_NE(error_of(R"({"flow": {"kind": "rotation", "alhpa": 0.3}})").find("flow.alhpa"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"wokers": 2})").find("wokers"), std::string::npos);
}

TEST(Config, MalformedTextReportsLineAndColumn) {
  const auto msg = error_of("{\n  \"flow\": {\"kind\": }\n}");
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Config, CommentsAndPresets) {
  const auto c = parse_config(R"({
    // rotation number by name
    "flow": {"kind": "torus-circle", "alpha": "silver", "mu": "golden"}
  })");
  EXPECT_EQ(c.flow.params.alpha, kSilver);
  EXPECT_EQ(c.flow.params.mu, kGolden);
  EXPECT_EQ(parse_float_preset("0.25"), 0.25);
  EXPECT_THROW(parse_float_preset("bronze"), ConfigError);
}

TEST(Config, FlowValidationIsApplied) {
  EXPECT_NE(error_of(R"({"flow": {"kind": "rotation", "alpha": 1.5}})").find("alpha"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"flow": {"kind": "spiral"}})").find("flow.kind"), std::string::npos);
}

TEST(Config, RoundTripOnRandomConfigs) {
  std::mt19937_64 rng(41);
  for (int n = 0; n < 300; ++n) {
    const auto c = random_config(rng);
    const auto text = serialize_config(c);
    ASSERT_EQ(parse_config(text), c) << text;
    ASSERT_EQ(serialize_config(parse_config(text)), text);
  }
}

TEST(Serialize, RoundsToTwelveDigits) {
  EXPECT_EQ(round12(0.1234567890123456), 0.123456789012);
  EXPECT_EQ(round12(0.0), 0.0);
  EXPECT_TRUE(std::isinf(round12(INFINITY)));
}

TEST(Serialize, VerdictJsonIsStableAndSorted) {
  Verdict v = Verdict::holds("p", {Witness{{"a", "b"}, 3, 1.0 / 3.0, 0.05, "w"}}, "n");
  v.with("z", 2.0).with("a", INFINITY);
  const auto a = verdict_json(v, ExperimentConfig{});
  EXPECT_EQ(a, verdict_json(v, ExperimentConfig{}));
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_TRUE(j.contains("config"));
  EXPECT_EQ(j["verdict"]["parameters"]["a"], "inf");
  EXPECT_EQ(j["verdict"]["witnesses"][0]["distance"].get<double>(), 0.333333333333);
  EXPECT_LT(a.find("\"config\""), a.find("\"verdict\""));
}

TEST(Serialize, ReportEmbedsConfigWithoutWorkers) {
  ExperimentConfig one;
  ExperimentConfig eight;
  eight.workers = 8;
  eight.theorems.workers = 8;
  HarnessReport r;
  EXPECT_EQ(report_json(r, one), report_json(r, eight));
  const auto j = nlohmann::json::parse(report_json(r, one));
  EXPECT_FALSE(j["config"].contains("workers"));
  EXPECT_EQ(j["config"]["flow"]["alpha"], "golden");
}

TEST(Serialize, RenderedTableListsChecks) {
  HarnessReport r;
  CheckReport c;
  c.id = "T-x";
  c.title = "something";
  c.relation = "iff";
  c.status = CheckStatus::inconclusive;
  c.note = "horizon exhausted";
  r.checks.push_back(c);
  r.inconclusive = 1;
  const auto text = render_report_text(r);
  EXPECT_NE(text.find("T-x"), std::string::npos);
  EXPECT_NE(text.find("horizon exhausted"), std::string::npos);
  EXPECT_NE(text.find("0 passed, 0 failed, 1 inconclusive"), std::string::npos);
  EXPECT_THROW(render_report_text(std::string_view("[1, 2]")), ConfigError);
}

TEST(Serialize, OrbitCsvColumns) {
  const auto f = make_flow({FlowKind::circle_stack, {}});
  const auto csv = orbit_csv(orbit(f, StackPoint{1, 0.0}, 2, Direction::forward));
  EXPECT_EQ(csv, "t,coord1,coord2,tag\n0,1.5,0,ring1\n1,1.5,0.5,ring1\n2,1.5,0,ring1\n");
}

TEST(Serialize, ReturnSetCsvHasOneRowPerTime) {
  const auto rs = make_return_set("x", 3, 0.5, {1, 0.25, 1, 0, 1, 0.25, 1});
  const auto csv = return_set_csv(rs);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 8);
  EXPECT_EQ(csv.substr(0, 18), "t,distance\n-3,1\n-2");
}
