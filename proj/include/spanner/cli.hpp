#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spanner/enlarge.hpp"

namespace spanner {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // file/parse/flag errors
inline constexpr int kExitBadInput = 3;    // input invariant violations
inline constexpr int kExitViolation = 4;   // a prescribed step failed verification

// Deterministic CSV report for a named benchmark suite
// (regimes | gadget | oracle-cross). Throws InputError on unknown suites.
std::string bench_report(const std::string& suite, std::uint64_t seed, int trials, int slack);

struct RegimeTrial {
    int n = 0, k = 0;
    std::string regime;
    std::string model;
};

// The instance stream behind the regimes bench suite, one callback per trial.
// Exposed so test harnesses can replay the exact suite with full results.
void for_each_regime_trial(
    std::uint64_t seed, int trials, int slack,
    const std::function<void(const RegimeTrial&, const EnlargeResult&)>& fn);

// Full command-line entry point; argv[0] is the program name.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace spanner
