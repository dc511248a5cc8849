#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ww::testing {

/// Hand-derived exponent check; passes when check() returns true.
struct RegionCase {
  std::string name;
  std::function<bool()> check;
};

[[nodiscard]] std::vector<RegionCase> region_cases();

/// 2/q = n - 2 sigma - 2n/r on `count` random tuples with
/// 1/q + n/r = n/2 - sigma; returns the number of failures.
[[nodiscard]] int scaling_identity_failures(int count, unsigned seed);

}  // namespace ww::testing
