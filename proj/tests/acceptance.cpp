// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  The same checks back `lwpot verify --suite acceptance`.

#include <cstdio>

#include "lwpot/verify.hpp"

int main() {
    lwpot::verify::Options opt;
    opt.suite = "acceptance";
    const auto results = lwpot::verify::run_checks(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-30s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%zu/%zu acceptance criteria passed\n", results.size() - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
