#pragma once

#include <string>
#include <vector>

#include "models.hpp"

namespace prank {

constexpr std::size_t kOracleCheckLimit = 20;
constexpr double kOracleCheckTolerance = 1e-7;

struct CheckRow {
  std::string name;  // "<fast path> vs <reference>"
  double max_dev = 0.0;
};

struct CheckReport {
  std::vector<CheckRow> rows;
  double max_dev() const;
  bool ok(double tol = kOracleCheckTolerance) const { return max_dev() <= tol; }
};

// Compares every fast path that applies to the model against the
// possible-worlds enumeration. Throws kSizeLimit above kOracleCheckLimit tuples.
CheckReport oracle_check(const Model& m);

}  // namespace prank
