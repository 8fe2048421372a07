#include <random>
#include <sstream>

#include "dendrite/shadowing.hpp"
#include "doctest.h"

using namespace dendrite;

namespace {

std::vector<SymSeq> exact_orbit(const SymSeq& start, std::int64_t length) {
    std::vector<SymSeq> points;
    for (std::int64_t i = 0; i < length; ++i) points.push_back(start.shifted(i));
    return points;
}

// Literal replay of the ledger definition: scan anchors in order, take the
// minimal column with either an inequality (minimal row) or an all-star
// diagonal, then jump past beta.
FlipLedger ledger_replay(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps) {
    FlipLedger ledger;
    ledger.horizon = eps.n_eps;
    const std::int64_t L = orbit.size();
    std::int64_t alpha = 1;
    while (alpha <= L) {
        std::optional<LedgerEntry> found;
        for (std::int64_t j = 0; j < eps.n_eps && !found; ++j) {
            const Symbol target = orbit.entry(alpha, j);
            for (std::int64_t i = 1; i <= std::min(j, L - alpha) && !found; ++i)
                if (orbit.entry(alpha + i, j - i) != target)
                    found = LedgerEntry{alpha, j, i, alpha + j, false};
            if (!found && target == Symbol::Star && alpha + j <= L) {
                bool all = true;
                for (std::int64_t i = 1; i <= j && all; ++i)
                    all = orbit.entry(alpha + i, j - i) == Symbol::Star;
                if (all) found = LedgerEntry{alpha, j, 1, alpha + j, true};
            }
        }
        if (found) {
            ledger.records.push_back(*found);
            alpha = found->beta + 1;
        } else {
            ++alpha;
        }
    }
    return ledger;
}

bool ledgers_equal(const FlipLedger& a, const FlipLedger& b) {
    if (a.records.size() != b.records.size()) return false;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        const LedgerEntry &x = a.records[i], &y = b.records[i];
        if (x.alpha != y.alpha || x.j != y.j || x.i != y.i || x.beta != y.beta || x.all_star != y.all_star)
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validate exact orbits and reject broken ones") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(12);

    auto orbit = validate(exact_orbit(space.tau, 20), scale, space.tau);
    CHECK(orbit.validated());
    CHECK(orbit.size() == 20);

    auto points = exact_orbit(space.tau, 20);
    points[7] = parse_literal("[01]");  // not the shift of point 7
    const auto violation = first_violation(points, scale, space.tau);
    REQUIRE(violation.has_value());
    CHECK(*violation == 7);
    CHECK_THROWS_AS(validate(points, scale, space.tau), ContractViolation);

    CHECK_THROWS_AS(validate({}, scale, space.tau), ContractViolation);
}

TEST_CASE("random pseudo-orbits validate and are deterministic") {
    auto space = make_space(parse_literal("1[0]"));
    const DeltaScale scale = DeltaScale::from_exponent(13);

    auto a = random_pseudo_orbit(space, scale, 60, 42, 1.0);
    auto b = random_pseudo_orbit(space, scale, 60, 42, 1.0);
    CHECK(a.validated());
    REQUIRE(a.size() == b.size());
    for (std::int64_t i = 1; i <= a.size(); ++i) CHECK(a.point(i).format() == b.point(i).format());

    // flip_rate 0 gives the exact orbit of the start point.
    auto exact = random_pseudo_orbit(space, scale, 40, 7, 0.0);
    for (std::int64_t i = 2; i <= exact.size(); ++i)
        CHECK(exact.point(i).identical(exact.point(i - 1).shifted(1)));

    // flip_rate 1 must still validate (planted flips only).
    auto flippy = random_pseudo_orbit(space, scale, 60, 9, 1.0);
    CHECK(flippy.validated());
    bool any_flip = false;
    for (std::int64_t i = 2; i <= flippy.size() && !any_flip; ++i)
        any_flip = !flippy.point(i).identical(flippy.point(i - 1).shifted(1));
    CHECK(any_flip);
}

TEST_CASE("flip scan") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(10);
    auto orbit = validate(exact_orbit(parse_literal("[01]"), 16), scale, space.tau);

    for (std::int64_t k = 1; k <= orbit.size(); ++k) CHECK(flip_scan(orbit, k, 10).empty());
    CHECK_THROWS_AS(flip_scan(orbit, 17, 10), ContractViolation);
    CHECK_THROWS_AS(flip_scan(orbit, 1, scale.n_delta + 2), ContractViolation);
}

TEST_CASE("planted flip appears at the planted column") {
    auto space = make_space(parse_literal("1[0]"));
    const DeltaScale scale = DeltaScale::from_exponent(8);
    // sigma(x1) = 101[0]: its tail from position 2 is the tau tail, so
    // column 1 is legal; the flipped point is the precritical witness
    // 1*1[0] itself (a 0/1 symbol glued onto the bare tau tail would be a
    // phantom preimage of the critical value, never admissible).
    SymSeq x1 = parse_literal("1101[0]");
    SymSeq s = x1.shifted(1);
    FiniteWord prefix = s.truncated(0);  // "1"
    prefix.push_back(Symbol::Star);
    SymSeq x2 = SymSeq::with_prefix(prefix, space.tau);
    REQUIRE(is_admissible(x2, space, 40).verdict);

    std::vector<SymSeq> points{x1, x2};
    for (int i = 0; i < 6; ++i) points.push_back(points.back().shifted(1));
    auto orbit = validate(points, scale, space.tau);

    // Relative to x1 the break sits at column 2 (successor position 1), row 1.
    auto flips = flip_scan(orbit, 1, 8);
    REQUIRE(flips.size() == 1);
    CHECK(flips[0].column == 2);
    CHECK(flips[0].row == 1);

    auto ledger = build_ledger(orbit, EpsilonScale::from_exponent(6));
    REQUIRE(ledger.records.size() >= 1);
    CHECK(ledger.records[0].alpha == 1);
    CHECK(ledger.records[0].j == 2);
    CHECK(ledger.records[0].beta == 3);
}

TEST_CASE("exact critical orbit ledgers all-star diamonds") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(12);
    auto orbit = validate(exact_orbit(space.critical_point, 14), scale, space.tau);

    // Case-1 flips never fire on an exact orbit.
    for (std::int64_t k = 1; k <= orbit.size(); ++k) CHECK(flip_scan(orbit, k, 12).empty());

    auto ledger = build_ledger(orbit, EpsilonScale::from_exponent(3));
    REQUIRE(!ledger.records.empty());
    // Stars of *tau sit at positions 0, 3, 6, ...: diamonds at beta = 1, 4, 7, ...
    for (std::size_t k = 0; k < ledger.records.size(); ++k) {
        CHECK(ledger.records[k].all_star);
        CHECK(ledger.records[k].beta == static_cast<std::int64_t>(1 + 3 * k));
    }
}

TEST_CASE("ledger equals the literal replay on random battery orbits") {
    for (const char* t : {"[10*]", "1[0]"}) {
        auto space = make_space(parse_literal(t));
        for (std::uint64_t seed = 1; seed <= 12; ++seed) {
            const DeltaScale scale = DeltaScale::from_exponent(t[1] == '1' ? 33 : 13);
            auto orbit = random_pseudo_orbit(space, scale, 80, seed, 0.5);
            for (std::int64_t ne : {3, 4, 5}) {
                auto fast = build_ledger(orbit, EpsilonScale::from_exponent(ne));
                auto slow = ledger_replay(orbit, EpsilonScale::from_exponent(ne));
                CHECK(ledgers_equal(fast, slow));
            }
        }
    }
}

TEST_CASE("streaming ledger matches the batch ledger") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(33);
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    for (std::uint64_t seed = 3; seed <= 8; ++seed) {
        auto orbit = random_pseudo_orbit(space, scale, 70, seed, 0.6);
        StreamingLedgerBuilder builder(space.tau, scale, eps);
        for (std::int64_t i = 1; i <= orbit.size(); ++i) builder.push(orbit.point(i));
        auto streamed = builder.finish();
        auto batch = build_ledger(orbit, eps);
        CHECK(ledgers_equal(streamed, batch));
    }
}

TEST_CASE("equality chain between consecutive pseudo-orbit links") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(33);
    auto orbit = random_pseudo_orbit(space, scale, 50, 11, 0.5);
    const std::int64_t nd = scale.n_delta;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t t = 1 + static_cast<std::int64_t>(rng() % 20);
        const std::int64_t s = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(t));
        if (s + 2 > orbit.size()) continue;
        // Link s of the chain: sigma^{t-s}(x_{s+1}) and sigma^{t-s-1}(x_{s+2})
        // are simeq at depth N_delta - t.
        const SymSeq a = orbit.point(s + 1).shifted(t - s);
        const SymSeq b = orbit.point(s + 2).shifted(t - s - 1);
        const std::int64_t depth = nd - t;
        CHECK(simeq(a.truncated(depth), b.truncated(depth), space.tau).holds);
    }
}

TEST_CASE("verify_between_flips on a two-flip orbit") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(33);
    // Exact orbit except one planted flip whose pattern stars generate
    // several flip columns relative to x1; pattern stars repeat mod 3.
    std::mt19937_64 rng(31);
    bool exercised = false;
    for (std::uint64_t seed = 1; seed <= 30 && !exercised; ++seed) {
        auto orbit = random_pseudo_orbit(space, scale, 60, seed, 0.7);
        for (std::int64_t k = 1; k < orbit.size(); ++k) {
            const auto flips = flip_scan(orbit, k, scale.n_delta + 1);
            for (std::size_t f = 1; f < flips.size(); ++f) {
                auto report = verify_between_flips(orbit, k, flips[f - 1].column, flips[f].column);
                CHECK(report.all_hold);
                exercised = exercised || report.checks > 0;
            }
        }
    }
    CHECK(exercised);
}

TEST_CASE("verify_between_flips premise violations") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(12);
    auto orbit = validate(exact_orbit(parse_literal("[01]"), 10), scale, space.tau);
    CHECK_THROWS_AS(verify_between_flips(orbit, 1, 2, 5), ContractViolation);
}

TEST_CASE("periodic flip bound diagnostics") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(33);
    bool saw_chain = false;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto orbit = random_pseudo_orbit(space, scale, 60, seed, 0.7);
        for (std::int64_t k = 1; k < orbit.size(); ++k) {
            FiniteWord shifted(orbit.window(k).begin() + 1, orbit.window(k).end());
            FiniteWord head(orbit.window(k + 1).begin(), orbit.window(k + 1).end() - 1);
            const auto rel = simeq(shifted, head, space.tau);
            if (!rel.holds || !rel.witness) continue;
            auto diag = verify_periodic_flip_bound(orbit, space, k, rel.witness->star_position + 1);
            CHECK(diag.bound_violations.empty());
            saw_chain = saw_chain || !diag.chains.empty();
        }
    }
    CHECK(saw_chain);
}

TEST_CASE("periodic flip bound contract errors") {
    auto nonper = make_space(parse_literal("1[0]"));
    const DeltaScale scale = DeltaScale::from_exponent(13);
    auto orbit = validate(exact_orbit(nonper.tau, 10), scale, nonper.tau);
    CHECK_THROWS_AS(verify_periodic_flip_bound(orbit, nonper, 1, 2), ContractViolation);

    auto per = make_space(parse_literal("[10*]"));
    auto exact = validate(exact_orbit(parse_literal("[01]"), 10), DeltaScale::from_exponent(12), per.tau);
    // Exact pair has no precritical witness.
    CHECK_THROWS_AS(verify_periodic_flip_bound(exact, per, 1, 2), ContractViolation);
}

TEST_CASE("recurrent flip gap verifier") {
    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    auto space = make_space(pd, 49200);
    const EpsilonScale eps = EpsilonScale::from_exponent(3);
    const DeltaScale scale = delta_for_epsilon(space, eps);
    const auto& milestones = space.classification.milestone_seq.values;

    // Premise instances are rare at desk scale (the doubling milestones of
    // the period-doubling sequence leave little room between (i) and (ii));
    // search planted orbits and verify every instance found, vacuity allowed.
    std::int64_t instances = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto orbit = random_pseudo_orbit(space, scale, 40, seed, 0.6);
        for (std::int64_t k = 1; k <= orbit.size(); ++k) {
            const auto flips = flip_scan(orbit, k, scale.n_delta + 1);
            for (std::size_t f = 1; f < flips.size(); ++f) {
                const auto& a = flips[f - 1];
                const auto& b = flips[f];
                if (a.row == b.row) continue;
                for (std::int64_t t = 1; t + 1 <= static_cast<std::int64_t>(milestones.size()); ++t) {
                    const std::int64_t m_t = milestones[static_cast<std::size_t>(t - 1)];
                    const std::int64_t m_t1 = milestones[static_cast<std::size_t>(t)];
                    if (!(b.column - a.column - 1 < m_t)) continue;
                    if (!(scale.n_delta - b.column - 1 > m_t1)) continue;
                    ++instances;
                    auto report = verify_recurrent_flip_gap(orbit, space, k, a.column, b.column, t);
                    CHECK(report.found);
                    break;
                }
            }
        }
    }
    MESSAGE("recurrent-gap premise instances found: ", instances);

    // Contract errors: non-recurrent space, equal rows, missing premises.
    auto exact_space = make_space(parse_literal("[10*]"));
    auto exact = validate(exact_orbit(parse_literal("[01]"), 10), DeltaScale::from_exponent(12),
                          exact_space.tau);
    CHECK_THROWS_AS(verify_recurrent_flip_gap(exact, exact_space, 1, 2, 4, 1), ContractViolation);

    auto pd_orbit = validate(exact_orbit(space.tau, 10), scale, space.tau);
    // Exact orbit: no flip columns at all, so the premise check must fire.
    CHECK_THROWS_AS(verify_recurrent_flip_gap(pd_orbit, space, 1, 2, 4, 1), ContractViolation);
    // Milestone index out of certified range.
    CHECK_THROWS_AS(verify_recurrent_flip_gap(pd_orbit, space, 1, 2, 4, 9000), ContractViolation);
}

TEST_CASE("orbit file round trip") {
    auto space = make_space(parse_literal("[10*]"));
    const DeltaScale scale = DeltaScale::from_exponent(25);
    auto orbit = random_pseudo_orbit(space, scale, 30, 5, 0.5);

    std::ostringstream first;
    write_orbit_file(first, orbit);
    std::istringstream back(first.str());
    OrbitFile file = read_orbit_file(back);
    CHECK(file.scale.n_delta == 25);
    auto reloaded = validate(std::move(file.points), file.scale, file.tau);

    std::ostringstream second;
    write_orbit_file(second, reloaded);
    CHECK(first.str() == second.str());
}
