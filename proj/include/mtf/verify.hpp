// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mtf/json_io.hpp"

namespace mtf::verify {

struct Failure {
  std::size_t trial = 0;
  std::string message;
  Json witness;
};

struct CheckResult {
  std::string suite;
  std::string name;
  std::string anchor;  // the identity being checked
  std::size_t trials = 0;
  std::vector<Failure> failures;
  double wall_ms = 0;
  bool passed() const { return failures.empty() && trials > 0; }
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  bool timing = false;   // wall time in reports; off keeps reports byte-stable
  unsigned threads = 0;  // 0: hardware concurrency
};

const std::vector<std::string>& suite_names();  // without "all"
std::vector<std::string> check_names(const std::string& suite);
CheckResult run_check(const std::string& name, const RunConfig& cfg);
// "all" runs every suite in order.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);

Json to_json(const CheckResult& r, bool timing);
std::string table_line(const CheckResult& r, bool timing);

}  // namespace mtf::verify
