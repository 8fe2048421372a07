#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dendrite/ict_omega.hpp"
#include "dendrite/julia.hpp"
#include "dendrite/report.hpp"

namespace dendrite {

/// Battery parameters. Defaults pin the acceptance thresholds; config files
/// may scale trial counts for quick runs but the shipped defaults are the
/// acceptance gate.
struct BatteryConfig {
    std::vector<std::string> taus = {"[10*]", "1[0]", "pd"};
    std::vector<std::int64_t> eps_exponents = {3, 4, 5};
    std::int64_t trials = 100;
    std::int64_t orbit_length = 200;
    double flip_rate = 0.35;
    std::uint64_t seed = 1;
    std::int64_t ict_sets = 20;
    std::int64_t omega_points = 50;
    std::int64_t proximity_pairs = 100000;
    bool adversarial_delta = false;
    std::vector<int> criteria;  // empty: all
    std::int64_t threads = 0;   // 0: hardware concurrency
};

/// Parse the line-oriented "key: value" battery config.
BatteryConfig parse_battery_config(std::istream& in);

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::int64_t checks = 0;
    std::int64_t failures = 0;
    double seconds = 0.0;
    std::string detail;
};

/// Run the requested criteria; emits one "criterion N (<name>): PASS|FAIL"
/// line per criterion to `progress` as results arrive.
std::vector<CriterionResult> run_battery(const BatteryConfig& config, std::ostream* progress);

Report battery_report(const std::vector<CriterionResult>& results);

/// Derived per-trial seed, stable across platforms.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dendrite
