#include <algorithm>

#include "common/errors.hpp"
#include "doctest.h"
#include "verify/verify.hpp"

using namespace zh;

TEST_CASE("suite registry") {
  const auto names = verify::suite_names();
  for (const char* s : {"eigen_monotonicity", "trace_monotonicity", "gauss_bonnet", "dtn", "split_point", "functionals"})
    CHECK(std::find(names.begin(), names.end(), s) != names.end());
  CHECK_THROWS_AS(verify::run_suite("nope"), Error);
}

TEST_CASE("every suite passes under two seeds") {
  for (std::uint64_t seed : {1u, 2u}) {
    for (const auto& r : verify::run_suites("all", seed)) {
      INFO(r.suite, " seed ", seed);
      CHECK(!r.checks.empty());
      for (const auto& c : r.checks) {
        INFO(c.name, ": ", c.value, " > ", c.tolerance);
        CHECK(c.passed);
      }
    }
  }
}

TEST_CASE("suites are deterministic") {
  const auto a = verify::run_suite("gauss_bonnet", 5);
  const auto b = verify::run_suite("gauss_bonnet", 5);
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].value == b.checks[i].value);
  }
}
