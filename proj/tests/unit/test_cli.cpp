#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "coboundary/cli.hpp"

using namespace coboundary;

namespace {

int run_tool(const std::string& args) {
  const std::string cmd = std::string(COBOUNDARY_CHECK_EXE) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("registry is sorted and complete") {
  const auto& reg = registry();
  CHECK(reg.size() == 15);
  for (std::size_t k = 1; k < reg.size(); ++k) CHECK(reg[k - 1].name < reg[k].name);
  for (const char* name : {"schouten", "eq22", "eq17-frt", "iso-20-21", "hopf", "jacobi"})
    CHECK(registry_listing().find(name) != std::string::npos);
}

TEST_CASE("suite expansion") {
  CheckConfig shared;
  shared.n = 3;
  const auto one = expand_suite("eq22:g0=identity:n=2, qybe", shared);
  REQUIRE(one.size() == 2);
  CHECK(one[0].check == "eq22");
  CHECK(one[0].g0 == "identity");
  CHECK(one[0].n == 2);
  CHECK(one[1].check == "qybe");
  CHECK(one[1].n == 3);

  const auto all = expand_suite("all", shared);
  CHECK_FALSE(all.empty());
  for (const auto& c : all) CHECK(c.n == 3);
  CHECK(expand_suite("", shared).empty());
  CHECK_THROWS_AS(expand_suite("qybe:bogus=1", shared), UsageError);
  CHECK_THROWS_AS(expand_suite("qybe:n", shared), UsageError);
}

TEST_CASE("usage errors") {
  CheckConfig c;
  c.check = "no-such-check";
  CHECK_THROWS_AS(run_check(c), UsageError);
  c.check = "qybe";
  c.n = 1;
  CHECK_THROWS_AS(run_check(c), UsageError);
  c.n = 2;
  c.max_degree = 13;
  CHECK_THROWS_AS(run_check(c), UsageError);
}

TEST_CASE("reports are deterministic") {
  CheckConfig c;
  c.check = "multiplicativity";
  c.seed = 123;
  const std::string a = run_check(c).to_json().dump();
  CHECK(a == run_check(c).to_json().dump());
  CHECK(run_check(c).to_json()["params"]["seed"] == 123);
  c.seed = 124;
  CHECK(run_check(c).passed());
}

TEST_CASE("suite exit codes") {
  CheckConfig shared;
  const SuiteResult good = run_suite(expand_suite("eq22,qybe", shared));
  CHECK(good.exit_code == 0);
  CHECK(good.document["version"] == kToolkitVersion);
  CHECK(good.document["checks"].size() == 2);

  const SuiteResult bad = run_suite(expand_suite("eq22:g0=identity,qybe", shared));
  CHECK(bad.exit_code == 1);

  const SuiteResult usage = run_suite(expand_suite("qybe:n=1", shared));
  CHECK(usage.exit_code == 1);

  const SuiteResult empty = run_suite({});
  CHECK(empty.exit_code == 0);
  CHECK(empty.document["checks"].empty());

  // Order of the input does not matter.
  const SuiteResult swapped = run_suite(expand_suite("qybe,eq22", shared));
  CHECK(swapped.document.dump() == good.document.dump());
}

TEST_CASE("command-line tool exit codes") {
  CHECK(run_tool("--check eq22") == 0);
  CHECK(run_tool("--check eq22 --g0 identity") == 1);
  CHECK(run_tool("--check qybe --n 1") == 2);
  CHECK(run_tool("--check nope") == 2);
  CHECK(run_tool("") == 2);
  CHECK(run_tool("--list") == 0);

  const std::string a = "cli_test_a.json", b = "cli_test_b.json";
  CHECK(run_tool("--check antipode --seed 5 --out " + a) == 0);
  CHECK(run_tool("--check antipode --seed 5 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  const Json doc = Json::parse(slurp(a));
  CHECK(doc["seed"] == 5);
  CHECK(doc["timestamp"].is_null());
  std::remove(a.c_str());
  std::remove(b.c_str());
}
