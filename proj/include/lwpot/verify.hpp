#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lwpot::verify {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed;
    std::string detail;
};

struct Options {
    /// all | specfun | potential | heun | closedform | spectrum | oracle | acceptance
    std::string suite = "all";
    /// Negative-control hook: "eq24-sign" flips the sign of the spectrum
    /// function's ratio term inside the spectrum checks, which must make the
    /// verification fail.  Only for exercising the harness.
    std::string mutation = {};
    std::uint64_t seed = 20260808ULL;
};

std::vector<CheckResult> run_checks(const Options& opt);
bool all_passed(const std::vector<CheckResult>& results);

}  // namespace lwpot::verify
