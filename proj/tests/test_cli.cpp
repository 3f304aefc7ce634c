#include <doctest.h>

#include <json.hpp>

#include "process.hpp"
#include "schema_check.hpp"

using volform::testing::run_cli;
using volform::testing::schema_violations;
using volform::testing::slurp;

namespace {

std::string doc(const char* name) { return std::string("'") + VOLFORM_DOCS + "/" + name + "'"; }

nlohmann::json schema() { return nlohmann::json::parse(slurp(VOLFORM_SCHEMA)); }

}  // namespace

TEST_CASE("surface json report exits zero and validates") {
  auto r = run_cli("check surface:p=x,q=y --format json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  auto v = schema_violations(schema(), j);
  CHECK_MESSAGE(v.empty(), (v.empty() ? "" : v.front()));
  CHECK(j["summary"]["pass"] == j["summary"]["total"]);
  CHECK(j["exit_code"] == 0);
}

TEST_CASE("schema validator rejects malformed reports") {
  auto j = nlohmann::json::parse(run_cli("check sl2 --format json").out);
  CHECK(schema_violations(schema(), j).empty());
  auto bad = j;
  bad["checks"][0]["status"] = "MAYBE";
  CHECK_FALSE(schema_violations(schema(), bad).empty());
  bad = j;
  bad.erase("summary");
  CHECK_FALSE(schema_violations(schema(), bad).empty());
  bad = j;
  bad["extra"] = 1;
  CHECK_FALSE(schema_violations(schema(), bad).empty());
}

TEST_CASE("corrupted potential document exits one and shows the residual") {
  auto r = run_cli("check " + doc("corrupted_potential.vf"), true);
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("residual") != std::string::npos);
}

TEST_CASE("shipped documents pass") {
  for (const char* name : {"surface_xy.vf", "sl2.vf", "quadric_gamma.vf", "torus2.vf", "xm1_2.vf"}) {
    CHECK_MESSAGE(run_cli("check " + doc(name)).exit_code == 0, name);
  }
}

TEST_CASE("json output is stable and job-count independent") {
  auto a = run_cli("check surface --format json --seed 7");
  auto b = run_cli("check surface --format json --seed 7 --jobs 4");
  CHECK(a.out == b.out);
  auto t = nlohmann::json::parse(run_cli("check torus:2 --format json --timings").out);
  CHECK(schema_violations(schema(), t).empty());
  CHECK(t["checks"][0].contains("wall_time_s"));
}

TEST_CASE("usage and input errors exit two") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("check").exit_code == 2);
  CHECK(run_cli("check nosuch").exit_code == 2);
  CHECK(run_cli("check surface --format yaml").exit_code == 2);
  CHECK(run_cli("check surface --degree-bound x").exit_code == 2);
  CHECK(run_cli("check /nonexistent/file.vf").exit_code == 2);
  auto p = run_cli("parse /dev/null", true);
  CHECK(p.exit_code == 2);
  CHECK(p.out.find("1:1") != std::string::npos);
}

TEST_CASE("listing and parse subcommands") {
  auto s = run_cli("scenarios");
  CHECK(s.exit_code == 0);
  CHECK(s.out.find("surface") != std::string::npos);
  auto k = run_cli("kinds");
  CHECK(k.exit_code == 0);
  CHECK(k.out.find("formula4") != std::string::npos);
  auto p = run_cli("parse " + doc("sl2.vf") + " --print");
  CHECK(p.exit_code == 0);
  CHECK(p.out.find("group SL2 {") != std::string::npos);
}
