#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lambdach/cli.hpp"

using namespace lambdach;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "lambdach");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string>& args) {
  const auto r = invoke(args);
  REQUIRE(r.code == cli::kExitOk);
  return json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("curve output") {
  const auto r = invoke({"curve"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 92);
  CHECK(rows[0] == "theta_deg,lhs,bound_zero,bound_mixed");

  const auto rows_data = cli::curve_rows({});
  REQUIRE(rows_data.size() == 91);
  const auto& r45 = rows_data[45];
  CHECK(r45.theta_deg == 45.0);
  CHECK(r45.lhs == doctest::Approx(0.5625 * (std::sqrt(2.0) / 2 - 0.5)).epsilon(1e-12));
  CHECK(r45.bound_zero == 0.0);
  CHECK(r45.bound_mixed == doctest::Approx(0.0945).epsilon(1e-12));
  CHECK(rows_data[0].lhs == doctest::Approx(0.0).scale(1.0));

  const auto j = invoke_json({"curve", "--format", "json", "--steps", "5"});
  CHECK(j["command"] == "curve");
  CHECK(j["result"]["rows"].size() == 5);
}

TEST_CASE("yield") {
  const auto j = invoke_json({"yield"});
  const double v = j["result"]["expected_pairs"];
  CHECK(v == doctest::Approx(1e8 * 1.09e-3 * 0.639 * 0.639 * 0.1));
  CHECK(v == doctest::Approx(4450.7).epsilon(1e-4));
  const double full = invoke_json({"yield", "--efficiency", "1"})["result"]["expected_pairs"];
  CHECK(full == doctest::Approx(44507.0).epsilon(1e-4));
  CHECK(full >= 4.0e4);
  CHECK(full <= 4.9e4);
  CHECK(invoke({"yield", "--efficiency", "2"}).code == cli::kExitConfig);
}

TEST_CASE("region") {
  const auto j = invoke_json({"region", "--beta", "0.664"});
  CHECK(j["result"]["violated"] == true);
  CHECK(j["result"]["theta_lo_deg"].get<double>() == doctest::Approx(33.0).epsilon(2e-3));
  CHECK(j["result"]["theta_hi_deg"].get<double>() == doctest::Approx(55.5).epsilon(2e-3));
  CHECK(invoke_json({"region", "--beta", "0.3"})["result"]["violated"] == false);
  CHECK(invoke({"region", "--bound", "-1"}).code == cli::kExitConfig);
}

TEST_CASE("summaries are reproducible apart from wall time") {
  const std::vector<std::vector<std::string>> commands{
      {"mc", "--events", "200000", "--cone", "20", "--seed", "11"},
      {"lhv", "--model", "clipped", "--samples", "20000", "--seed", "3"},
      {"spacelike", "--samples", "100000"},
      {"optimize", "--grid", "10", "--tol", "1e-6"},
  };
  for (const auto& cmd : commands) {
    auto a = invoke_json(cmd);
    auto b = invoke_json(cmd);
    auto args1 = cmd;
    args1.insert(args1.end(), {"--threads", "1"});
    auto c = invoke_json(args1);
    for (auto* j : {&a, &b, &c}) {
      CHECK(j->contains("version"));
      CHECK(j->at("wall_time_s").get<double>() >= 0.0);
      j->erase("wall_time_s");
    }
    CHECK(a.dump() == b.dump());
    CHECK(a.dump() == c.dump());
  }
}

TEST_CASE("mc result fields") {
  const auto j = invoke_json({"mc", "--events", "200000", "--cone", "20"});
  CHECK(j["seed"] == 42);
  const auto& res = j["result"];
  for (const char* key : {"table", "value", "std_error", "z_score", "n_used", "bound_zero", "bound_mixed"}) {
    CHECK(res.contains(key));
  }
  CHECK(res["n_used"] == 200000);
}

TEST_CASE("csv summary format") {
  const auto r = invoke({"spacelike", "--samples", "20000", "--format", "csv"});
  REQUIRE(r.code == cli::kExitOk);
  const auto rows = lines(r.out);
  CHECK(rows[0] == "key,value");
  bool found = false;
  for (const auto& l : rows) found = found || l.rfind("fraction_analytic,", 0) == 0;
  CHECK(found);
}

TEST_CASE("spacelike from masses") {
  const auto j = invoke_json({"spacelike", "--m-parent", "2983.9", "--m-daughter", "1115.683", "--samples", "10000"});
  CHECK(std::abs(j["config"]["beta"].get<double>() - 0.664) < 1e-3);
  CHECK(invoke({"spacelike", "--m-parent", "2000", "--m-daughter", "1115.683"}).code == cli::kExitConfig);
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitConfig);
  CHECK(invoke({"bogus"}).code == cli::kExitConfig);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
  CHECK(invoke({"--version"}).code == cli::kExitOk);
  CHECK(invoke({"mc", "--alpha", "1.5"}).code == cli::kExitConfig);
  CHECK(invoke({"mc", "--events", "5000"}).code == cli::kExitUnderpowered);
  CHECK(invoke({"lhv", "--model", "nope"}).code == cli::kExitConfig);
  CHECK(invoke({"lhv", "--param", "alpha"}).code == cli::kExitConfig);
  CHECK(invoke({"lhv", "--param", "color=2"}).code == cli::kExitConfig);
  CHECK(invoke({"mc", "--events-in", "/nonexistent/file.csv"}).code == cli::kExitConfig);
  CHECK(invoke({"curve", "--format", "xml"}).code == cli::kExitConfig);
  const auto r = invoke({"mc", "--events", "5000"});
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("explicit settings override theta") {
  const auto j = invoke_json({"lhv", "--samples", "10000", "--n1", "0,0,1", "--n1p", "1,0,0", "--n2", "0,0,1", "--n2p",
                              "1,0,0"});
  CHECK(j["config"]["settings"]["n1p"][0].get<double>() == 1.0);
  CHECK(invoke({"lhv", "--n1", "0,0,2"}).code == cli::kExitConfig);
}
