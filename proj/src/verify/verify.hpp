#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zh::verify {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured violation or discrepancy
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool passed() const;
  int failures() const;
};

std::vector<std::string> suite_names();
// Throws InvalidArgument for an unknown suite name.
SuiteReport run_suite(const std::string& name, std::uint64_t seed = 1);
// "all" runs every suite.
std::vector<SuiteReport> run_suites(const std::string& name, std::uint64_t seed = 1);

}  // namespace zh::verify
