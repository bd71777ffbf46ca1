#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullkit/types.hpp"

namespace hullkit {

/// Named executable property suites. Each suite checks one of the library's
/// stated invariants on a given link and reports trial counts; stochastic
/// suites derive everything from the given seed.
struct SuiteResult {
  std::string suite;
  bool passed = false;
  bool vacuous = false;
  long trials = 0;
  long failures = 0;
  std::uint64_t seed = 0;
  nlohmann::json details;
};

struct CheckParams {
  std::uint64_t seed = 7;
  int samples = 0;  // 0 = suite default
  int grid = 32;
};

std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string& name, const PolyLink& link,
                      const CheckParams& params, const Tolerance& tol);

}  // namespace hullkit
