// Acceptance suite: runs every battery criterion at its pinned threshold and
// prints one pass/fail line per criterion. Exit 0 iff all pass.

#include <cstdio>
#include <iostream>

#include "dendrite/battery.hpp"

int main() {
    dendrite::BatteryConfig config;  // pinned defaults: the acceptance gate
    std::vector<dendrite::CriterionResult> results;
    try {
        results = dendrite::run_battery(config, &std::cout);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
    bool all = true;
    double total = 0.0;
    for (const auto& r : results) {
        all = all && r.pass;
        total += r.seconds;
        std::printf("criterion %d (%s): %s in %.1fs\n", r.number, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.seconds);
    }
    std::printf("acceptance: %s (%zu criteria, %.1fs)\n", all ? "PASS" : "FAIL", results.size(), total);
    return all ? 0 : 1;
}
