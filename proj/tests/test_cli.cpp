#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "loewy/cli.hpp"

using namespace loewy;
using namespace loewy::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("weight and subset parsing") {
  CHECK(parse_weight("3,1") == Weight{3, 1});
  CHECK(parse_weight("-4") == Weight{-4});
  CHECK(parse_weight(" 1, -2 ") == Weight{1, -2});
  CHECK_THROWS_AS(parse_weight(""), UsageError);
  CHECK_THROWS_AS(parse_weight("1,x"), UsageError);
  CHECK(parse_subset("").empty());
  CHECK(parse_subset("1,2") == std::vector<int>{0, 1});
  CHECK(parse_subset("2") == std::vector<int>{1});
  CHECK_THROWS_AS(parse_subset("0"), UsageError);
  CHECK_THROWS_AS(parse_subset("a"), UsageError);
}

TEST_CASE("A1 table as json") {
  const Result r = invoke({"loewy", "--type", "A1", "--I", "", "--lambda", "2", "--p", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["type"] == "A1");
  CHECK(j["loewy_length"] == 2);
  REQUIRE(j["layers"].size() == 2);
  CHECK(j["layers"][0]["factors"].size() == 1);
  CHECK(j["layers"][0]["factors"][0]["weight"] == nlohmann::json::array({2}));
  CHECK(j["layers"][0]["factors"][0]["mult"] == 1);
  CHECK(j["layers"][1]["factors"].size() == 1);
  CHECK(j["layers"][1]["factors"][0]["weight"] == nlohmann::json::array({-4}));
  CHECK(j["layers"][1]["factors"][0]["mult"] == 1);
  CHECK(j["lambda_alcove_word"] == "e");
}

TEST_CASE("text and csv formats") {
  const Result t = invoke({"loewy", "--type", "A1", "--lambda", "2", "--p", "5"});
  CHECK(t.code == 0);
  CHECK(t.out == "A1 I={} lambda=(2) p=5 loewy_length=2\n  j=0: (2)[e]\n  j=1: (-4)[s1]\n");
  const Result c = invoke({"loewy", "--type", "A1", "--lambda", "2", "--p", "5", "--format", "csv"});
  CHECK(c.code == 0);
  CHECK(c.out == "j,weight,alcove_word,mult\n0,\"(2)\",e,1\n1,\"(-4)\",s1,1\n");
}

TEST_CASE("alcove words give the same table as the weight") {
  const Result a = invoke({"loewy", "--type", "A1", "--alcove", "s1", "--p", "5", "--format", "json"});
  const Result b = invoke({"loewy", "--type", "A1", "--lambda", "-2", "--p", "5", "--format", "json"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("I = all simple roots gives one layer") {
  const Result r = invoke({"loewy", "--type", "A2", "--I", "1,2", "--lambda", "1,1", "--p", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["loewy_length"] == 1);
  CHECK(j["layers"].size() == 1);
}

TEST_CASE("inversion check") {
  const Result r = invoke({"check", "inversion", "--type", "A2", "--p", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("inversion: ok") != std::string::npos);
}

TEST_CASE("all checks pass for A1 and A2") {
  for (const auto& args : {std::vector<std::string>{"check", "--type", "A1", "--lambda", "2", "--p", "7"},
                           {"check", "--type", "A2", "--I", "1", "--lambda", "1,1", "--p", "5", "--format", "json"}}) {
    const Result r = invoke(args);
    CHECK(r.code == 0);
    CHECK(r.err.empty());
  }
  const Result j = invoke({"check", "--type", "A2", "--lambda", "0,0", "--p", "5", "--format", "json"});
  REQUIRE(j.code == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["ok"] == true);
  CHECK(doc["results"].size() == 7);
}

TEST_CASE("oracle-diff is refused for types without an oracle") {
  CHECK(invoke({"check", "oracle-diff", "--type", "B2", "--lambda", "0,0", "--p", "5"}).code == 2);
  const Result r = invoke({"check", "--type", "B2", "--I", "2", "--lambda", "0,0", "--p", "5", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"].back()["skipped"] == true);
}

TEST_CASE("oracle subcommand") {
  const Result r = invoke({"oracle", "--type", "A1", "--lambda", "2", "--p", "5"});
  CHECK(r.code == 0);
  CHECK(r.out == invoke({"loewy", "--type", "A1", "--lambda", "2", "--p", "5"}).out);
  CHECK(invoke({"oracle", "--type", "B2", "--lambda", "0,0", "--p", "5"}).code == 2);
}

TEST_CASE("polynomials from alcove words") {
  const Result kl = invoke({"kl", "--type", "A2", "--x", "s1", "--y", "s1s2s0s1"});
  CHECK(kl.code == 0);
  CHECK(kl.out.find("1 + q\n") != std::string::npos);
  const Result ph = invoke({"phat", "--type", "A1", "--x", "e", "--y", "e"});
  CHECK(ph.code == 0);
  CHECK(ph.out.substr(ph.out.rfind('\n', ph.out.size() - 2) + 1) == "1\n");
  CHECK(invoke({"q", "--type", "A1", "--x", "e", "--y", "s1", "--format", "json"}).code == 0);
}

TEST_CASE("roots subcommand") {
  const Result r = invoke({"roots", "--type", "B2", "--I", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["type"] == "B2");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"loewy", "--type", "C7", "--p", "5"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "1,1", "--p", "4"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "1", "--p", "5"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "2,1", "--p", "5"}).code == 2);  // singular
  CHECK(invoke({"loewy", "--type", "A2", "--I", "3", "--lambda", "1,1", "--p", "5"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "1,1", "--p", "5", "--format", "xml"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "1,1", "--alcove", "s1", "--p", "5"}).code == 2);
  CHECK(invoke({"oracle", "--type", "A1", "--mu", "2", "--p", "5"}).code == 2);
  CHECK(invoke({"check", "bogus", "--type", "A1", "--p", "5"}).code == 2);
  CHECK(invoke({"loewy", "--type", "A2", "--lambda", "1,1", "--p", "5", "--max-depth", "0"}).code == 2);
}

TEST_CASE("help exits cleanly") {
  const Result r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("loewy") != std::string::npos);
}

TEST_CASE("contract failures exit with 1 and a failure record") {
  const Result r = invoke({"loewy", "--type", "A2", "--I", "1", "--lambda", "1,1", "--p", "5", "--window-cap", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  const auto rec = nlohmann::json::parse(r.err);
  CHECK(rec["status"] == "failure");
  CHECK(rec["error"] == "WindowCapExceeded");
  CHECK(rec["detail"]["window_size"] == 17);
  // the recorded config reproduces the failure
  const RunConfig cfg = parse_canonical(rec["config"].get<std::string>());
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
}

TEST_CASE("stabilization failure exits with 1") {
  const Result r = invoke({"loewy", "--type", "G2", "--lambda", "0,0", "--p", "7", "--max-depth", "1"});
  CHECK(r.code == 1);
  const auto rec = nlohmann::json::parse(r.err);
  CHECK(rec["error"] == "StabilizationFailed");
}

TEST_CASE("configs round-trip through the canonical string") {
  const std::vector<std::vector<std::string>> cases = {
      {"loewy", "--type", "A2", "--I", "1", "--lambda", "1,1", "--p", "5"},
      {"loewy", "--type", "A1", "--I", "", "--lambda", "2", "--p", "5", "--format", "json"},
      {"check", "inversion", "--type", "B2", "--p", "7", "--max-depth", "12", "--window-cap", "400"},
      {"phat", "--type", "A2", "--mu", "0,0", "--lambda", "-3,4", "--p", "5", "--format", "csv"},
      {"q", "--type", "G2", "--x", "s1s0", "--y", "e", "--cache-dir", "/tmp/some dir", "--no-cache"},
      {"oracle", "--type", "A2", "--I", "1,2", "--alcove", "s0", "--p", "7"},
      {"roots", "--type", "A1xA1"},
  };
  for (const auto& args : cases) {
    const RunConfig cfg = parse_args(args);
    CAPTURE(cfg.canonical());
    CHECK(parse_canonical(cfg.canonical()) == cfg);
    CHECK(parse_args(cfg.to_args()) == cfg);
    CHECK(parse_canonical(cfg.canonical()).canonical() == cfg.canonical());
  }
}

TEST_CASE("cold and warm caches give identical reports") {
  const auto dir = fresh_dir("loewy_cli_cache_test");
  const std::vector<std::vector<std::string>> cases = {
      {"loewy", "--type", "B2", "--I", "1", "--lambda", "1,1", "--p", "5", "--format", "json"},
      {"check", "--type", "A2", "--lambda", "0,0", "--p", "5"},
      {"q", "--type", "B2", "--x", "e", "--y", "s1s2s0"},
  };
  for (auto args : cases) {
    args.push_back("--cache-dir");
    args.push_back(dir.string());
    const Result cold = invoke(args);
    REQUIRE(cold.code == 0);
    CHECK(std::filesystem::exists(dir));
    const Result warm = invoke(args);
    CHECK(warm.code == 0);
    CHECK(warm.out == cold.out);
    args.push_back("--no-cache");
    CHECK(invoke(args).out == cold.out);
  }
  std::filesystem::remove_all(dir);
}
