#pragma once

#include <functional>
#include <string>
#include <vector>

namespace fqz {

struct SelftestResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Compact invariant suite covering every module; used by the `selftest`
// CLI subcommand.  Returns one entry per check.
std::vector<SelftestResult> run_selftest(const std::function<void(const SelftestResult&)>& on_result = {});

}  // namespace fqz
