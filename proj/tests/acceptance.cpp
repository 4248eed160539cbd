// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cstdio>

#include "sl2var/suite.hpp"

int main() {
    bool ok = true;
    for (const sl2var::CriterionResult& r : sl2var::run_acceptance_suite()) {
        std::printf("[%2d] %-68s %s (%.2fs)\n", r.number, r.name.c_str(),
                    r.passed ? "PASS" : "FAIL", r.seconds);
        if (!r.passed)
            std::printf("     %s\n", r.detail.c_str());
        else if (!r.detail.empty())
            std::printf("     %s\n", r.detail.c_str());
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}
