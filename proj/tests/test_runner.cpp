#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "codec.hpp"
#include "runner.hpp"

using namespace seqhyper;

namespace {

RunConfig config(const std::string& text) { return parse_config(text); }

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("seed lists") {
  CHECK(parse_seeds("0-3") == std::vector<std::uint64_t>{0, 1, 2, 3});
  CHECK(parse_seeds("4,1,9") == std::vector<std::uint64_t>{4, 1, 9});
  CHECK(parse_seeds("7") == std::vector<std::uint64_t>{7});
  CHECK(parse_seeds("").empty());
  CHECK_THROWS_AS(parse_seeds("5-2"), Error);
  CHECK_THROWS_AS(parse_seeds("x"), Error);
}

TEST_CASE("config parsing and schema errors") {
  auto c = config(R"({"schema": "seqhyper.config/1", "space": {"kind": "dyadic"}, "task": "meager", "seeds": [3]})");
  CHECK(c.task == "meager");
  CHECK(c.depth == 8);
  CHECK(c.seeds == std::vector<std::uint64_t>{3});
  CHECK(config(R"({"space": {"kind": "dyadic"}, "task": "certify"})").seeds == std::vector<std::uint64_t>{0});

  CHECK(error_of("{\n  \"space\": {\"kind\": \"dyadic\"},\n  \"task\": \"meager\",\n  \"depth\": 0\n}").find("line 4") !=
        std::string::npos);
  CHECK(error_of("{\n  \"space\": {\"kind\": \"dyadic\"},\n  \"task\": \"paint\"\n}").find("line 3") != std::string::npos);
  CHECK(error_of("{\n  \"space\": {\"kind\": \"dyadic\"}\n  \"task\": \"meager\"\n}").find("line 3") != std::string::npos);
  CHECK(error_of(R"({"schema": "seqhyper.config/9", "space": {"kind": "dyadic"}, "task": "meager"})").find("schema") !=
        std::string::npos);
  CHECK(error_of(R"({"space": {"kind": "dyadic"}, "task": "game", "adversary": "scripted:"})").size() > 0);

  auto round = config(c.to_json().dump());
  CHECK(round.to_json() == c.to_json());
}

TEST_CASE("scenario presets") {
  auto psi = scenario("psi");
  CHECK(psi.space["kind"] == "psi");
  CHECK(psi.space["family"] == "branches");
  CHECK(psi.task == "game");
  CHECK(psi.rounds == 20);
  auto x = build_space(psi.space);
  CHECK(strategy_for(x, psi.space, "")()->name().find("compose") != std::string::npos);

  auto omega = scenario("omega1");
  CHECK(omega.space["kind"] == "ordinal-blocks");
  CHECK(omega.space["alpha"] == "w^3");

  auto polish = scenario("nhsc-profile");
  CHECK(polish.task == "profile");
  REQUIRE(polish.space.is_array());
  CHECK(polish.space.size() == 2);
  CHECK(scenario_names().size() == 6);
  CHECK_THROWS_AS(scenario("nope"), Error);
}

TEST_CASE("game task on the Frechet filter passes for 30 rounds") {
  auto c = config(R"({"space": {"kind": "xi", "filter": "frechet"}, "task": "game", "rounds": 30, "seeds": "0-99",
                      "transcripts": false})");
  auto r = run(c);
  CHECK(r.report["status"] == "pass");
  CHECK(r.exit_code == 0);
  CHECK(r.report["runs"][0]["summary"]["passed"] == 100);
  CHECK(r.table.size() == 101);
  CHECK_FALSE(r.report["runs"][0]["results"][0].contains("transcript"));
}

TEST_CASE("meager task verifies every avoid step") {
  auto r = run(config(R"({"space": {"kind": "dyadic"}, "task": "meager", "rounds": 5, "seeds": "0-9"})"));
  CHECK(r.report["status"] == "pass");
  for (const auto& res : r.report["runs"][0]["results"]) {
    CHECK(res["steps"].size() == 5);
    for (const auto& step : res["steps"]) CHECK(step["verified"] == true);
  }
}

TEST_CASE("empty seed list passes vacuously with a warning") {
  auto r = run(config(R"({"space": {"kind": "xi", "filter": "frechet"}, "task": "game", "seeds": []})"));
  CHECK(r.report["status"] == "pass");
  CHECK(r.exit_code == 0);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("empty seed list") != std::string::npos);
}

TEST_CASE("a failed check gives a nonzero exit status") {
  auto dir = std::filesystem::temp_directory_path() / "seqhyper_runner_test";
  std::filesystem::create_directories(dir);
  auto script = dir / "illegal.json";
  std::ofstream(script) << R"([[{"xi": 0}], [{"xi": 3}, {"singleton": 0}], [{"xi": 5}]])";
  auto c = config(R"({"space": {"kind": "xi", "filter": "frechet"}, "task": "game", "rounds": 3,
                      "adversary": "scripted:)" + script.string() + R"("})");
  auto r = run(c);
  CHECK(r.report["status"] == "fail");
  CHECK(r.exit_code == 1);
  CHECK(r.report["runs"][0]["results"][0]["verdict"] == "adversary-fault");

  auto ok = run(config(R"({"space": {"kind": "dyadic"}, "task": "diagnose"})"));
  CHECK(ok.report["status"] == "fail");
  CHECK(ok.exit_code == 1);
  std::filesystem::remove_all(dir);
}

TEST_CASE("reports are deterministic and written to disk") {
  auto dir = std::filesystem::temp_directory_path() / "seqhyper_runner_out";
  std::string text = R"({"space": {"kind": "duplicate", "base": {"kind": "sigma"}}, "task": "game", "rounds": 10,
                         "seeds": "0-7", "out": ")" + dir.string() + R"("})";
  auto a = run(config(text));
  auto b = run(config(text));
  CHECK(a.report.dump() == b.report.dump());
  write_outputs(config(text), a);
  std::ifstream f(dir / "report.json");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(Json::parse(ss.str()) == a.report);
  CHECK(std::filesystem::exists(dir / "table.tsv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("profile tasks") {
  auto polish = run(scenario("nhsc-profile"));
  CHECK(polish.report["status"] == "pass");
  for (const auto& r : polish.report["runs"]) CHECK(r["checks"].size() == 4);

  auto sum = run(scenario("sum-second-category"));
  CHECK(sum.report["status"] == "pass");
  const auto& checks = sum.report["runs"][0]["checks"];
  REQUIRE(checks.size() == 3);
  CHECK(checks[0]["witness"]["violations"] == 0);
  CHECK(checks[1]["check"].get<std::string>().find("Baire") != std::string::npos);
  CHECK(checks[2]["check"].get<std::string>().find("meager") != std::string::npos);
}
