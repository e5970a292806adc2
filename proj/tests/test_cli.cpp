#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace dskg;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "dskg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST_CASE("complex values need both parts") {
  CHECK(cli::parse_complex("1+0i") == cplx(1, 0));
  CHECK(cli::parse_complex("-0.5-2i") == cplx(-0.5, -2));
  CHECK(cli::parse_complex("2e-1+1.5e1i") == cplx(0.2, 15));
  CHECK_THROWS_AS(cli::parse_complex("1"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_complex("2i"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_complex("1+i"), cli::UsageError);
}

TEST_CASE("boxes parse three ordered ranges") {
  auto b = cli::parse_box("-1:1,0.2:0.5,-3:-2");
  CHECK(b[1].first == 0.2);
  CHECK(b[2].second == -2);
  CHECK_THROWS_AS(cli::parse_box("1:0,0:1,0:1"), cli::UsageError);
  CHECK_THROWS_AS(cli::parse_box("0:1,0:1"), cli::UsageError);
}

TEST_CASE("verify passes for the Euclidean case and reports every residual") {
  auto r = run({"verify", "--case", "g3_2", "--mu", "1", "--seed", "42"});
  CHECK(r.code == cli::kPass);
  auto doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  auto res = doc["cases"][0]["residuals"];
  for (const char* key : {"hyperboloid", "pushforward", "DefEq1", "dF", "LieF", "dA", "EqChi", "comm_opX",
                          "symmetry_H", "display_H", "lambda_rep", "Xleqs", "H_phi"})
    CHECK(res.contains(key));
  CHECK(run({"verify", "--case", "g3_2", "--mu", "1", "--seed", "42"}).out == r.out);
}

TEST_CASE("an injected moment-function fault fails verification") {
  auto r = run({"verify", "--case", "g3_2", "--mu", "1", "--perturb", "chi:1e-3"});
  CHECK(r.code == cli::kFail);
  auto failed = json::parse(r.out)["cases"][0]["failed"];
  CHECK(std::find(failed.begin(), failed.end(), "symmetry_H") != failed.end());
}

TEST_CASE("usage errors are distinct from verification failures") {
  CHECK(run({"verify", "--case", "g9_9"}).code == cli::kUsage);
  CHECK(run({"verify", "--case", "g3_2", "--zeta", "0.3"}).code == cli::kUsage);
  CHECK(run({"verify", "--case", "g3_2", "--tol", "nope=1"}).code == cli::kUsage);
  CHECK(run({"verify", "--case", "g3_2", "--lambda", "1"}).code == cli::kUsage);
  CHECK(run({"chart", "--case", "g1_3a"}).code == cli::kUsage);
  CHECK(run({"chart", "--case", "g3_1", "--grid", "1"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
}

TEST_CASE("solve refuses the free-field case") {
  auto r = run({"solve", "--case", "g4_1"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("free-field case out of scope") != std::string::npos);
  CHECK(run({"solve", "--case", "g2_1"}).code == cli::kUsage);
}

TEST_CASE("solve summary carries the special-function record") {
  auto r = run({"solve", "--case", "g3_4", "--format", "json"});
  REQUIRE(r.code == cli::kPass);
  auto doc = json::parse(r.out);
  CHECK(std::abs(doc["record"]["sigma"]["re"].get<double>() - std::sqrt(1 - 0.25)) < 1e-14);
  CHECK(doc["max_residual"].get<double>() < 1e-6);
  CHECK(doc["nodes"] == 125);
}

TEST_CASE("solve CSV has one row per node and small residuals") {
  auto r = run({"solve", "--case", "g3_2", "--grid", "3"});
  REQUIRE(r.code == cli::kPass);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 28);
  CHECK(ls[0] == "q1,q2,u1,re_phi,im_phi,residual");
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::stod(ls[i].substr(ls[i].rfind(',') + 1)) < 1e-6);
}

TEST_CASE("solve drops grid nodes outside the solution domain with a warning") {
  auto r = run({"solve", "--case", "g3_5", "--grid", "3", "--box", "-1:1,-1:1,-1:1"});
  CHECK(r.code == cli::kPass);
  CHECK(r.err.find("dropped") != std::string::npos);
  CHECK(lines(r.out).size() < 28);
}

TEST_CASE("chart export stays on the hyperboloid and includes the origin") {
  auto r = run({"chart", "--case", "g3_5", "--grid", "4"});
  REQUIRE(r.code == cli::kPass);
  auto ls = lines(r.out);
  CHECK(ls.size() == 65);
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::abs(std::stod(ls[i].substr(ls[i].rfind(',') + 1))) < 1e-12);

  auto o = lines(run({"chart", "--case", "g3_1", "--grid", "4"}).out);
  CHECK(o[1] == "G31,0,0,0,0,0,0,1,0");
  auto all = run({"chart", "--grid", "2"});
  CHECK(all.code == cli::kPass);
}

TEST_CASE("catalog lists all cases and the integrability diff") {
  auto r = run({"catalog"});
  REQUIRE(r.code == cli::kPass);
  auto doc = json::parse(r.out);
  CHECK(doc["cases"].size() == 13);
  auto g34 = doc["cases"][10];
  CHECK(g34["id"] == "G34");
  CHECK(g34["table3"]["computed"]["dim"] == 4);
  CHECK(g34["table3"]["computed"]["ind"] == 2);
  CHECK(g34["table3"]["computed"]["integrable"] == true);
  auto g14 = doc["cases"][3]["table3"]["computed"];
  CHECK(g14["dim"] == 2);
  CHECK(g14["m_tilde"] == 2);
  CHECK(g14["integrable"] == false);
  for (const auto& d : doc["table3_diff"]) CHECK(d["case"] == "G41");
}
