#include <random>
#include <sstream>

#include "dendrite/battery.hpp"
#include "doctest.h"

using namespace dendrite;

TEST_CASE("literal format is the inverse of parsing") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
        FiniteWord pre, per;
        const auto pre_len = rng() % 5;
        const auto per_len = 1 + rng() % 5;
        for (std::uint64_t i = 0; i < pre_len; ++i) pre.push_back(static_cast<Symbol>(rng() % 3));
        for (std::uint64_t i = 0; i < per_len; ++i) per.push_back(static_cast<Symbol>(rng() % 3));
        const SymSeq a = SymSeq::exact(pre, per);
        const SymSeq b = parse_literal(a.format());
        CHECK(a.identical(b));
        // And the denoted sequences agree symbol for symbol.
        for (std::int64_t i = 0; i < 24; ++i) CHECK(a.at(i) == b.at(i));
    }
}

TEST_CASE("report emission") {
    Report report;
    report.add("verdict", "acceptable");
    report.add("n_delta", std::int64_t{33});
    report.add("verified", true);
    CHECK(report.str() == "verdict: acceptable\nn_delta: 33\nverified: true\n");
}

TEST_CASE("battery config parsing") {
    std::istringstream in(
        "taus: [10*] 1[0]\n"
        "eps_exponents: 3 4\n"
        "trials: 7\n"
        "orbit_length: 50\n"
        "flip_rate: 0.25\n"
        "seed: 99\n"
        "criteria: 2 3 8\n"
        "adversarial_delta: true\n");
    const BatteryConfig config = parse_battery_config(in);
    CHECK(config.taus == std::vector<std::string>{"[10*]", "1[0]"});
    CHECK(config.eps_exponents == std::vector<std::int64_t>{3, 4});
    CHECK(config.trials == 7);
    CHECK(config.orbit_length == 50);
    CHECK(config.flip_rate == doctest::Approx(0.25));
    CHECK(config.seed == 99);
    CHECK(config.criteria == std::vector<int>{2, 3, 8});
    CHECK(config.adversarial_delta);

    std::istringstream bad("trials 7\n");
    CHECK_THROWS_AS(parse_battery_config(bad), ParseError);
    std::istringstream unknown("frobnicate: 3\n");
    CHECK_THROWS_AS(parse_battery_config(unknown), ParseError);
}

TEST_CASE("orbit files reject malformed headers") {
    std::istringstream missing("delta_exponent: 5\n[10*]\n");
    CHECK_THROWS_AS(read_orbit_file(missing), ParseError);
    std::istringstream empty("tau: [10*]\ndelta_exponent: 5\n");
    CHECK_THROWS_AS(read_orbit_file(empty), ParseError);
}

TEST_CASE("set files reject malformed headers") {
    std::istringstream missing("[10*]\n");
    CHECK_THROWS_AS(read_set_file(missing), ParseError);
}

TEST_CASE("mix_seed decorrelates streams") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}
