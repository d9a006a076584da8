// Acceptance gate: one pass/fail line per criterion.
#include <cstdio>

#include "trajlab/reports.hpp"

int main() {
    using namespace trajlab::reports;
    Options opts;

    std::vector<CriterionResult> first = run_suite(opts);
    std::vector<CriterionResult> second = run_suite(opts);
    const bool deterministic = suite_json(first) == suite_json(second);

    bool all_pass = true;
    for (const auto& r : first) {
        std::printf("[%s] criterion %2d: %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str());
        if (!r.pass) {
            std::printf("        details: %s\n", r.details.dump().c_str());
            all_pass = false;
        }
    }
    std::printf("[%s] criterion 12: determinism of the full suite\n",
                deterministic ? "PASS" : "FAIL");
    all_pass = all_pass && deterministic;
    return all_pass ? 0 : 1;
}
