#include <random>

#include "dendrite/shadowing.hpp"
#include "doctest.h"

using namespace dendrite;

namespace {

std::vector<SymSeq> exact_orbit(const SymSeq& start, std::int64_t length) {
    std::vector<SymSeq> points;
    for (std::int64_t i = 0; i < length; ++i) points.push_back(start.shifted(i));
    return points;
}

}  // namespace

TEST_CASE("delta_for_epsilon bounds") {
    auto periodic = make_space(parse_literal("[10*]"));
    CHECK(delta_for_epsilon(periodic, EpsilonScale::from_exponent(4)).n_delta == 33);
    CHECK(delta_for_epsilon(periodic, EpsilonScale::from_exponent(3)).n_delta == 25);

    auto nonrec = make_space(parse_literal("1[0]"));
    CHECK(delta_for_epsilon(nonrec, EpsilonScale::from_exponent(4)).n_delta == 13);

    // Recurrent case: one past the milestone sum plus 2 N_eps + 1, with t
    // minimal such that m_t > N_eps; recomputed here from the raw table.
    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    auto rec = make_space(pd, 49200);
    for (std::int64_t ne : {3, 4, 5}) {
        const auto& ms = rec.classification.milestone_seq.values;
        std::size_t t = 0;
        while (ms[t] <= ne) ++t;
        std::int64_t sum = 0;
        for (std::size_t q = t; q <= t + static_cast<std::size_t>(2 * ne + 1); ++q) sum += ms[q];
        CHECK(delta_for_epsilon(rec, EpsilonScale::from_exponent(ne)).n_delta == sum + 2 * ne + 2);
    }

    // Monotone: finer eps never loosens delta. The recurrent table is
    // certified through the battery range N_eps <= 5; deeper requests
    // demand more milestones and must say so.
    for (const DendriteSpace* s : {&periodic, &nonrec, &rec}) {
        const std::int64_t top = s->classification.kind == KneadingKind::RecurrentNonperiodic ? 5 : 6;
        std::int64_t prev = delta_for_epsilon(*s, EpsilonScale::from_exponent(2)).n_delta;
        for (std::int64_t ne = 3; ne <= top; ++ne) {
            const std::int64_t cur = delta_for_epsilon(*s, EpsilonScale::from_exponent(ne)).n_delta;
            CHECK(cur >= prev);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(delta_for_epsilon(rec, EpsilonScale::from_exponent(7)), ContractViolation);
}

TEST_CASE("canonical shadow of an exact orbit") {
    auto space = make_space(parse_literal("[10*]"));
    const SymSeq x = parse_literal("[01]");
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);
    auto orbit = validate(exact_orbit(x, 40), delta, space.tau);

    auto shadow = canonical_shadow(orbit, eps, space);
    CHECK(shadow.diamonds.empty());
    const FiniteWord expect = x.truncated(static_cast<std::int64_t>(shadow.raw.size()) - 1);
    CHECK(shadow.raw == expect);

    // A too-large delta must be rejected.
    auto coarse = validate(exact_orbit(x, 40), DeltaScale::from_exponent(8), space.tau);
    CHECK_THROWS_AS(canonical_shadow(coarse, eps, space), ContractViolation);
}

TEST_CASE("planted flip yields exactly one diamond at beta") {
    auto space = make_space(parse_literal("1[0]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(5);
    const DeltaScale delta = delta_for_epsilon(space, eps);

    SymSeq x1 = parse_literal("1101[0]");
    SymSeq s = x1.shifted(1);            // 101[0]: tau tail from position 2
    FiniteWord prefix = s.truncated(0);  // "1"
    prefix.push_back(Symbol::Star);      // the precritical witness point
    SymSeq x2 = SymSeq::with_prefix(prefix, space.tau);
    std::vector<SymSeq> points{x1, x2};
    for (int i = 0; i < 30; ++i) points.push_back(points.back().shifted(1));

    auto orbit = validate(points, delta, space.tau);
    auto shadow = canonical_shadow(orbit, eps, space);
    REQUIRE(shadow.ledger.records.size() == 1);
    REQUIRE(shadow.diamonds.size() == 1);
    CHECK(shadow.diamonds[0] == shadow.ledger.records[0].beta - 1);
    CHECK(shadow.word[static_cast<std::size_t>(shadow.diamonds[0])] == ShadowSym::Diamond);
}

TEST_CASE("assignment policies") {
    auto space = make_space(parse_literal("1[0]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);

    SUBCASE("no diamonds: identity on symbols") {
        auto orbit = validate(exact_orbit(parse_literal("[01]"), 30), delta, space.tau);
        auto shadow = canonical_shadow(orbit, eps, space);
        REQUIRE(shadow.diamonds.empty());
        const SymSeq z = assign_shadow(shadow, AssignmentPolicy::all_zero(), space, 64);
        for (std::int64_t i = 0; i < 30; ++i) CHECK(z.at(i) == parse_literal("[01]").at(i));
    }

    SUBCASE("unforced diamond: both constant policies give admissible points") {
        auto per_space = make_space(parse_literal("[10*]"));
        const EpsilonScale e3 = EpsilonScale::from_exponent(3);
        const DeltaScale d3 = delta_for_epsilon(per_space, e3);
        bool exercised = false;
        for (std::uint64_t seed = 1; seed <= 40 && !exercised; ++seed) {
            auto orbit = random_pseudo_orbit(per_space, d3, 60, seed, 0.6);
            auto shadow = canonical_shadow(orbit, e3, per_space);
            if (shadow.diamonds.empty()) continue;
            const SymSeq z0 = assign_shadow(shadow, AssignmentPolicy::all_zero(), per_space, 256);
            if (z0.at(shadow.diamonds[0]) == Symbol::Star) continue;  // forced case, try again
            const SymSeq z1 = assign_shadow(shadow, AssignmentPolicy::all_one(), per_space, 256);
            CHECK(z0.at(shadow.diamonds[0]) == Symbol::Zero);
            CHECK(z1.at(shadow.diamonds[0]) == Symbol::One);
            for (const SymSeq* z : {&z0, &z1}) {
                CHECK(is_consistent(*z, per_space, 64).verdict);
                CHECK(is_admissible(*z, per_space, 64).verdict);
            }
            exercised = true;
        }
        CHECK(exercised);
    }
}

TEST_CASE("forced star when the orbit tracks the critical orbit") {
    auto space = make_space(parse_literal("1[0]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);

    // One planted flip whose flipped point copies the tau tail; every later
    // step exact, so the shadow tail after the diamond is exactly tau and
    // the star is forced.
    SymSeq x1 = parse_literal("101[0]");
    SymSeq s = x1.shifted(1);  // 01[0]: the tau tail starts at position 1
    FiniteWord prefix;
    prefix.push_back(Symbol::Star);  // the successor flips onto the critical point *tau
    SymSeq x2 = SymSeq::with_prefix(prefix, space.tau);
    REQUIRE(is_admissible(x2, space, 40).verdict);
    std::vector<SymSeq> points{x1, x2};
    for (int i = 0; i < 30; ++i) points.push_back(points.back().shifted(1));

    auto orbit = validate(points, delta, space.tau);
    auto shadow = canonical_shadow(orbit, eps, space);
    REQUIRE(shadow.diamonds.size() == 1);
    const std::int64_t d = shadow.diamonds[0];

    const SymSeq z = assign_shadow(shadow, AssignmentPolicy::all_zero(), space, 64);
    CHECK(z.at(d) == Symbol::Star);
    for (std::int64_t r = 0; r < 20; ++r) CHECK(z.at(d + 1 + r) == space.tau.at(r));
    CHECK(is_consistent(z, space, 64).verdict);
    CHECK(is_admissible(z, space, 64).verdict);

    const ShadowVerifyReport verify = verify_shadowing(orbit, z, eps, space);
    CHECK(verify.verified);
}

TEST_CASE("pseudo-agreement holds on exact and battery orbits") {
    auto space = make_space(parse_literal("[10*]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);

    auto exact = validate(exact_orbit(parse_literal("[01]"), 30), delta, space.tau);
    auto report = check_pseudo_agreement(exact, eps, space);
    CHECK(report.ok);

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto orbit = random_pseudo_orbit(space, delta, 60, seed, 0.5);
        auto rep = check_pseudo_agreement(orbit, eps, space);
        CHECK(rep.ok);
    }
}

TEST_CASE("over-large delta may violate pseudo-agreement without crashing") {
    auto space = make_space(parse_literal("[10*]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    // delta = eps: far larger than delta_eps.
    const DeltaScale delta = DeltaScale::from_exponent(4);
    std::int64_t violations = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto orbit = random_pseudo_orbit(space, delta, 60, seed, 0.8);
        violations += static_cast<std::int64_t>(check_pseudo_agreement(orbit, eps, space).violations.size());
    }
    MESSAGE("adversarial-delta pseudo-agreement violations: ", violations);
}

TEST_CASE("end-to-end shadowing on random battery orbits") {
    std::mt19937_64 rng(101);
    for (const char* t : {"[10*]", "1[0]"}) {
        auto space = make_space(parse_literal(t));
        for (std::int64_t ne : {3, 4}) {
            const EpsilonScale eps = EpsilonScale::from_exponent(ne);
            const DeltaScale delta = delta_for_epsilon(space, eps);
            for (std::uint64_t seed = 1; seed <= 6; ++seed) {
                auto orbit = random_pseudo_orbit(space, delta, 80, rng(), 0.4);
                auto shadow = canonical_shadow(orbit, eps, space);
                // Diamond spacing: gaps exceed N_eps except along all-star
                // cascades (an orbit riding the critical orbit diamonds
                // every P symbols; those assignments are the forced branch).
                for (std::size_t d = 1; d < shadow.diamonds.size(); ++d)
                    if (!shadow.ledger.records[d - 1].all_star)
                        CHECK(shadow.diamonds[d] - shadow.diamonds[d - 1] > eps.n_eps);
                for (auto policy : {AssignmentPolicy::all_zero(), AssignmentPolicy::all_one(),
                                    AssignmentPolicy::random(seed)}) {
                    const SymSeq z = assign_shadow(shadow, policy, space, delta.n_delta + 64);
                    const auto verify = verify_shadowing(orbit, z, eps, space);
                    CAPTURE(t);
                    CAPTURE(ne);
                    CAPTURE(seed);
                    CHECK(verify.verified);
                }
            }
        }
    }
}

TEST_CASE("verify_shadowing rejects unrelated points") {
    auto space = make_space(parse_literal("[10*]"));
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    const DeltaScale delta = delta_for_epsilon(space, eps);
    auto orbit = validate(exact_orbit(parse_literal("[011011]"), 30), delta, space.tau);

    CHECK(verify_shadowing(orbit, parse_literal("[011011]"), eps, space).verified);
    auto bad = verify_shadowing(orbit, parse_literal("[100100]"), eps, space);
    CHECK_FALSE(bad.verified);
    REQUIRE(bad.first_failure.has_value());
    CHECK(*bad.first_failure == 0);
}
