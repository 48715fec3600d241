#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "db/linfty.hpp"

namespace db {

struct SuiteConfig {
  std::uint64_t seed = 1;
  int samples = 50;
  int max_arity = 4;
  int max_degree = 2;
  int max_terms = kDefaultMaxTerms;
  // jacobi only: flip the sign of the two-L-part term of m_2 in one big algebra
  bool inject_fault = false;
};

struct SampleResult {
  std::string group;
  int index = 0;
  bool ok = true;
  nlohmann::json detail;  // inputs and residuals for failures, summary fields otherwise
};

struct SuiteReport {
  std::string name;
  SuiteConfig config;
  std::vector<SampleResult> samples;
  nlohmann::json summary = nlohmann::json::object();
  int failures() const;
  bool ok() const { return failures() == 0 && !samples.empty(); }
};

// jacobi, machine, truc, oracle, gauge, flow, mc, coiso, filtration
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& config);

// Failed samples carry their witnesses; passing samples only their group and index.
nlohmann::json to_json(const SuiteReport& r);

}  // namespace db
