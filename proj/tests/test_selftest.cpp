#include <catch2/catch_amalgamated.hpp>

#include "shadowpoly/selftest.hpp"

using namespace shadowpoly;

TEST_CASE("oracle selftest passes on a healthy build") {
  SelfTestReport rep = oracle_selftest(1, 40);
  CHECK(rep.graphs_checked == 40);
  CHECK(rep.checks_run > 100);
  INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
  CHECK(rep.ok());
}

TEST_CASE("oracle selftest is deterministic in the seed") {
  SelfTestReport a = oracle_selftest(7, 10);
  SelfTestReport b = oracle_selftest(7, 10);
  CHECK(a.checks_run == b.checks_run);
  CHECK(a.failures == b.failures);
}

TEST_CASE("an injected d2 fault is reported") {
  SelfTestReport rep = oracle_selftest(1, 3, /*inject_fault=*/true);
  REQUIRE_FALSE(rep.ok());
  bool mentions_fault = false;
  for (const std::string& f : rep.failures)
    mentions_fault = mentions_fault || f.find("injected fault") != std::string::npos;
  CHECK(mentions_fault);
}

TEST_CASE("count zero yields an empty report") {
  SelfTestReport rep = oracle_selftest(5, 0);
  CHECK(rep.graphs_checked == 0);
  CHECK(rep.checks_run == 0);
  CHECK(rep.ok());
}
