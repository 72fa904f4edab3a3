#pragma once
//
// Built-in invariant battery. Runs exhaustive small-grid cross-checks of
// every counting route plus sampled property checks; --full widens the
// grids to the sizes the release gate uses.

#include <cstdint>
#include <string>
#include <vector>

namespace vincount::cli {

struct SelfCheck {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<SelfCheck> run_selftest(bool full, std::uint64_t seed, int workers);

}  // namespace vincount::cli
