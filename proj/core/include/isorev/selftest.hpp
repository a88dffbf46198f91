#pragma once

#include <cstdint>
#include <iosfwd>

namespace isorev {

// Randomized property suites covering the algebra kernel, the spectral
// machinery, normal forms, and the classifier.  Each suite prints one
// status line; the report counts suites that saw any violation.
struct SelftestOptions {
  int n_max = 5;
  int trials = 200;
  std::uint64_t seed = 20240817;
};

struct SelftestReport {
  int suites = 0;
  int failures = 0;

  bool ok() const { return failures == 0; }
};

SelftestReport run_selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace isorev
