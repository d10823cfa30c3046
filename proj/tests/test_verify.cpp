#include <string>

#include "doctest.h"
#include "optclaw/verify.hpp"

using namespace optclaw;

TEST_CASE("the full battery passes on a healthy build") {
  const std::vector<CheckResult> results = run_verification(20240817, "", FaultInjection::None);
  CHECK(results.size() == 13);
  for (const CheckResult& r : results) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
    CHECK(r.metric <= r.threshold);
  }
}

TEST_CASE("name filters select sub-batteries") {
  CHECK(run_verification(7, "transpose", FaultInjection::None).size() == 4);
  CHECK(run_verification(7, "jacobian", FaultInjection::None).size() == 2);
  CHECK(run_verification(7, "mass", FaultInjection::None).size() == 4);
  CHECK(run_verification(7, "convexity", FaultInjection::None).size() == 1);
  CHECK(run_verification(7, "no-such-check", FaultInjection::None).empty());
}

TEST_CASE("an injected sign flip trips exactly the transpose checks") {
  const auto flipped = run_verification(11, "", FaultInjection::FlipAdjointSign);
  CHECK(flipped.size() == 13);
  int failures = 0;
  for (const CheckResult& r : flipped) {
    if (!r.passed) {
      ++failures;
      CHECK(r.name.find("transpose-identity") != std::string::npos);
    }
  }
  CHECK(failures == 4);
}

TEST_CASE("results are deterministic for a fixed seed") {
  const auto a = run_verification(123, "transpose", FaultInjection::None);
  const auto b = run_verification(123, "transpose", FaultInjection::None);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].metric == b[i].metric);
  }
}
