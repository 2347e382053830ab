#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "fglforge/cli.hpp"
#include "fglforge/suite.hpp"

using namespace fglforge;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fgl-forge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("log prints l_k over its denominator") {
  auto r = run({"log", "--n", "1", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "l1 = t1/2\n");
  // l_1 = (t_1 + gamma t_1)/2 at n = 2
  r = run({"log", "--n", "2", "--k", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "l1 = (g1t1 + t1)/2\n");

  r = run({"log", "--n", "2", "--k", "2", "--json", "-"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["schema"] == "fgl-forge/1");
  CHECK(doc["logs"][0]["denominator"] == "2");
  CHECK(doc["logs"][1]["denominator"] == "4");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"log", "--n", "0"}).code == 2);
  CHECK(run({"log", "--n", "4"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "no-such-claim"}).code == 2);
  CHECK(run({"suite", "medium"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // feasibility limits and --force
  auto r = run({"log", "--n", "1", "--k", "5"});
  CHECK(r.code == 2);
  CHECK(contains(r.err, "--force"));
  CHECK(run({"log", "--n", "1", "--k", "5", "--force"}).code == 0);
  CHECK(run({"verify", "height", "--n", "3", "--m", "2"}).code == 2);
  // library-level argument errors
  CHECK(run({"verify", "fixed-subring", "--d", "2", "--modulus", "1,0,1"}).code == 2);  // x^2+1 reducible
  CHECK(run({"verify", "fixed-subring", "--d", "2", "--modulus", "1,1"}).code == 2);
  CHECK(run({"verify", "cotangent", "--precision", "4", "--madic", "6"}).code == 2);
  CHECK(run({"verify", "recursion", "--k", "3", "--cutoff", "4"}).code == 2);
  CHECK(run({"verify", "v-collapse", "--n", "2", "--k", "2"}).code == 2);  // needs k > h
  // a config error still yields a machine-readable document
  r = run({"verify", "v-collapse", "--n", "2", "--k", "2", "--json", "-"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["status"] == "usage-error");
}

TEST_CASE("verify examples") {
  auto r = run({"verify", "recursion", "--n", "2", "--k", "2", "--json", "-"});
  CHECK(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["status"] == "verified");
  CHECK(doc["command"] == "verify");
  CHECK(doc["bounds"]["cutoff"] == 4);

  r = run({"verify", "cotangent", "--n", "2", "--m", "1", "--d", "1"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "rank 2 = h, verified"));

  r = run({"verify", "height", "--n", "2", "--m", "2", "--d", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "h = 4, coefficient u^15"));

  for (const char* claim : {"tkvk", "invariance", "eq351", "chain-inversion", "unit-factors", "fixed-subring"})
    CHECK_MESSAGE(run({"verify", claim}).code == 0, claim);
  CHECK(run({"verify", "v-collapse", "--n", "2", "--m", "1", "--k", "4"}).code == 0);

  r = run({"verify", "t-collapse", "--n", "2", "--m", "1", "--k", "4", "--json", "-"});
  CHECK(r.code == 0);
  doc = json::parse(r.out);
  bool saw = false;
  for (const auto& e : doc["details"]["excluded_instances"])
    if (e["lemma_k"] == 1 && e["r"] == 2) saw = e["membership"] == false;
  CHECK(saw);
}

TEST_CASE("a failed report carries status and witness") {
  Report bad;
  bad.claim = "x";
  bad.witness = "t1";
  Report good;
  good.claim = "y";
  good.verified = true;
  Report c = combine_reports("z", {good, bad});
  CHECK_FALSE(c.verified);
  CHECK(c.to_json()["status"] == "failed");
  CHECK(c.witness == "t1");
}

TEST_CASE("JSON output is deterministic and file output matches stdout") {
  const std::vector<std::string> args{"verify", "height", "--n", "2", "--m", "2", "--d", "2", "--json", "-"};
  auto a = run(args), b = run(args);
  CHECK(a.out == b.out);

  const std::string path = "test_cli_height.json";
  auto f = run({"verify", "height", "--n", "2", "--m", "2", "--d", "2", "--json", path});
  CHECK(f.code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == a.out);
  std::remove(path.c_str());

  CHECK(run({"verify", "height", "--json", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("suite quick passes with one record per job") {
  const std::string path = "test_cli_suite.json";
  auto r = run({"suite", "quick", "--json", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  auto doc = json::parse(in);
  CHECK(doc["results"].size() == suite_jobs("quick").size());
  CHECK(doc["summary"]["failed"] == 0);
  CHECK(doc["interrupted"] == false);
  std::remove(path.c_str());

  auto a = run({"suite", "quick", "--json", "-"}), b = run({"suite", "quick", "--json", "-"});
  CHECK(a.out == b.out);
}

TEST_CASE("interrupted suite flushes a partial report and exits 130") {
  interrupt_flag().store(true);
  auto r = run({"suite", "quick", "--json", "-"});
  CHECK(r.code == 130);
  auto doc = json::parse(r.out);
  CHECK(doc["interrupted"] == true);
  CHECK(doc["summary"]["not_run"] == suite_jobs("quick").size());
  CHECK_FALSE(interrupt_flag().load());
}
