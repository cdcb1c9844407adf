#ifndef CALABI_VERIFY_HPP
#define CALABI_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace calabi {

// One row of the verification table. `measured` is the worst observed
// value for the check and `bound` the threshold it must stay within
// (see note for the few range-style checks).
struct CheckResult {
  int criterion = 0;  // 1..13
  std::string key;    // equation-keyed label, e.g. "eq-5.4 identity n=3"
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

// Runs every check of the verification suite. Deterministic for a fixed
// seed regardless of thread count: each check derives its own generator
// from (seed, key).
std::vector<CheckResult> run_paper_suite(std::uint64_t seed, int threads = 1);

// Number of distinct criteria covered by the suite.
inline constexpr int kCriterionCount = 13;

}  // namespace calabi

#endif
