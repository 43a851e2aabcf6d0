#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace ctrw {

// In-process CLI entry point, used by the replay criterion.
using CliRunner = std::function<int(const std::vector<std::string>&)>;

// Runs the ten-point release gate, printing one PASS/FAIL line per criterion.
// All parameters, seeds and tolerances are pinned inside. `scratch_dir` is a
// writable directory for the replay round-trip. Returns the failure count.
int run_acceptance(std::ostream& out, const std::string& scratch_dir,
                   const CliRunner& cli);

}  // namespace ctrw
