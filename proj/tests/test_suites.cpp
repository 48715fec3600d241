#include <doctest.h>

#include "db/suites.hpp"

using namespace db;

TEST_CASE("every suite passes at small sizes") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    SuiteConfig cfg;
    cfg.samples = 6;
    cfg.max_arity = 3;
    auto rep = run_suite(name, cfg);
    CHECK(rep.ok());
    CHECK(rep.failures() == 0);
  }
}

TEST_CASE("suite reports are deterministic in the seed") {
  SuiteConfig cfg;
  cfg.samples = 5;
  cfg.seed = 7;
  for (const char* name : {"jacobi", "gauge", "mc"}) {
    auto a = to_json(run_suite(name, cfg)).dump();
    auto b = to_json(run_suite(name, cfg)).dump();
    CHECK(a == b);
  }
  auto c = to_json(run_suite("mc", cfg)).dump();
  cfg.seed = 8;
  CHECK(c != to_json(run_suite("mc", cfg)).dump());
}

TEST_CASE("the fault-injected jacobi suite fails with witnesses") {
  SuiteConfig cfg;
  cfg.samples = 20;
  cfg.inject_fault = true;
  auto rep = run_suite("jacobi", cfg);
  REQUIRE_FALSE(rep.ok());
  auto j = to_json(rep);
  CHECK(j["failed"].size() == static_cast<std::size_t>(rep.failures()));
  for (const auto& f : j["failed"]) {
    CHECK(f["group"].get<std::string>().rfind("a/big", 0) == 0);
    CHECK(f["witness"].contains("residual"));
  }
}

TEST_CASE("suite configuration is validated") {
  SuiteConfig cfg;
  CHECK_THROWS_AS(run_suite("nope", cfg), std::invalid_argument);
  cfg.samples = 0;
  CHECK_THROWS_AS(run_suite("oracle", cfg), std::invalid_argument);
  cfg.samples = 1;
  cfg.max_arity = 7;
  CHECK_THROWS_AS(run_suite("oracle", cfg), std::invalid_argument);
}
