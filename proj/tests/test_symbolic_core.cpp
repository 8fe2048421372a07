#include <random>

#include "dendrite/simeq.hpp"
#include "dendrite/space.hpp"
#include "doctest.h"

using namespace dendrite;

namespace {

FiniteWord W(const char* s) { return word_from_string(s); }

// Independent oracle: x|n simeq y|n iff equal or some enumerated precritical
// truncation approx-matches both.
bool simeq_oracle(const FiniteWord& x, const FiniteWord& y, const SymSeq& tau) {
    if (x == y) return true;
    for (const FiniteWord& w : enumerate_precritical_truncations(tau, static_cast<std::int64_t>(x.size()) - 1))
        if (match_approx(x, w) && match_approx(y, w)) return true;
    return false;
}

FiniteWord random_binary_word(std::mt19937_64& rng, std::size_t len) {
    FiniteWord w;
    for (std::size_t i = 0; i < len; ++i) w.push_back((rng() & 1) ? Symbol::One : Symbol::Zero);
    return w;
}

}  // namespace

TEST_CASE("parse_literal canonical forms") {
    CHECK(parse_literal("[10*]").format() == "[10*]");
    CHECK(parse_literal("[10*]").preperiod().empty());
    CHECK(to_string(parse_literal("[10*]").period()) == "10*");

    CHECK(parse_literal("1[0]").format() == "1[0]");
    CHECK(to_string(parse_literal("1[0]").preperiod()) == "1");

    // Period canonicalized to its primitive root, then rotations absorbed
    // into the preperiod: 1(0101)^inf = (10)^inf.
    CHECK(parse_literal("1[0101]").format() == "[10]");
    CHECK(parse_literal("10[0]").format() == "1[0]");
    CHECK(parse_literal("100[0]").format() == "1[0]");

    CHECK_THROWS_AS(parse_literal("101"), ParseError);
    CHECK_THROWS_AS(parse_literal("1[]"), ParseError);
    CHECK_THROWS_AS(parse_literal("1[01"), ParseError);
    CHECK_THROWS_AS(parse_literal("1[0x]"), ParseError);
}

TEST_CASE("truncate unrolls the sequence") {
    CHECK(to_string(parse_literal("[10*]").truncated(4)) == "10*10");
    CHECK(to_string(parse_literal("1[0]").truncated(2)) == "100");

    auto table = make_table_generator("tbl", W("10110"));
    SymSeq g = SymSeq::from_generator(table);
    CHECK(to_string(g.truncated(4)) == "10110");
    CHECK_THROWS_AS(g.truncated(g.certified_depth() + 1), DepthExceeded);
}

TEST_CASE("shift recanonicalizes") {
    CHECK(parse_literal("[10*]").shifted(3).format() == "[10*]");
    CHECK(parse_literal("1[0]").shifted(1).format() == "[0]");
    CHECK(parse_literal("[10*]").shifted(1).format() == "[0*1]");

    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    SymSeq s = pd.shifted(5);
    for (std::int64_t i = 0; i < 40; ++i) CHECK(s.at(i) == pd.at(i + 5));
}

TEST_CASE("period-doubling generator prefix") {
    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    CHECK(to_string(pd.truncated(15)) == "1011101010111011");
}

TEST_CASE("match_approx") {
    CHECK(match_approx(W("101"), W("1*1")));
    CHECK_FALSE(match_approx(W("101"), W("100")));
    CHECK(match_approx(W("1*1"), W("1*1")));
    CHECK_THROWS_AS(match_approx(W("10"), W("100")), ContractViolation);
}

TEST_CASE("simeq candidate scan") {
    SymSeq tau = parse_literal("1[0]");
    auto r = simeq(W("10110"), W("10010"), tau);
    CHECK(r.holds);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->star_position == 2);
    CHECK(to_string(r.witness->word) == "10*10");

    auto eq = simeq(W("10110"), W("10110"), tau);
    CHECK(eq.holds);
    CHECK_FALSE(eq.witness.has_value());

    CHECK_FALSE(simeq(W("00000"), W("11111"), tau).holds);
}

TEST_CASE("enumerate_precritical_truncations") {
    SymSeq tau = parse_literal("1[0]");
    auto words = enumerate_precritical_truncations(tau, 2);
    std::vector<std::string> got;
    for (const auto& w : words) got.push_back(to_string(w));
    std::sort(got.begin(), got.end());
    std::vector<std::string> want = {"*10", "00*", "01*", "0*1", "10*", "11*", "1*1"};
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    auto base = enumerate_precritical_truncations(tau, 0);
    REQUIRE(base.size() == 1);
    CHECK(to_string(base[0]) == "*");

    auto starry = enumerate_precritical_truncations(parse_literal("[10*]"), 3);
    bool found = false;
    for (const auto& w : starry) found = found || to_string(w) == "*10*";
    CHECK(found);

    CHECK_THROWS_AS(enumerate_precritical_truncations(tau, 17), ContractViolation);
}

TEST_CASE("simeq equals the enumeration oracle on small star-free words") {
    for (const char* t : {"[10*]", "1[0]", "[*]", "1[10]"}) {
        SymSeq tau = parse_literal(t);
        for (std::size_t len = 1; len <= 5; ++len) {
            const std::uint64_t count = std::uint64_t{1} << len;
            for (std::uint64_t xb = 0; xb < count; ++xb) {
                for (std::uint64_t yb = 0; yb < count; ++yb) {
                    FiniteWord x, y;
                    for (std::size_t i = 0; i < len; ++i) {
                        x.push_back(((xb >> i) & 1) ? Symbol::One : Symbol::Zero);
                        y.push_back(((yb >> i) & 1) ? Symbol::One : Symbol::Zero);
                    }
                    CAPTURE(t);
                    CAPTURE(to_string(x));
                    CAPTURE(to_string(y));
                    CHECK(simeq(x, y, tau).holds == simeq_oracle(x, y, tau));
                }
            }
        }
    }
}

TEST_CASE("simeq monotone in depth") {
    SymSeq tau = parse_literal("[10*]");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        FiniteWord x = random_binary_word(rng, 8);
        FiniteWord y = random_binary_word(rng, 8);
        bool prev = true;
        for (std::size_t n = 1; n <= 8; ++n) {
            FiniteWord xp(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
            FiniteWord yp(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
            const bool now = simeq(xp, yp, tau).holds;
            if (!prev) CHECK_FALSE(now);
            prev = now;
        }
    }
}

TEST_CASE("agreement_depth") {
    SymSeq tau = parse_literal("1[0]");
    SymSeq x = parse_literal("[10]");
    auto self = agreement_depth(x, x, tau, 10);
    CHECK_FALSE(self.failed);
    CHECK(self.value == 10);

    auto r = agreement_depth(parse_literal("1[1]"), parse_literal("0[0]"), tau, 10);
    CHECK(r.failed);
    CHECK(r.value == 1);

    // Differing spellings of one sequence share a canonical form.
    auto same = agreement_depth(parse_literal("10[0]"), parse_literal("100[0]"), tau, 10);
    CHECK_FALSE(same.failed);
}

TEST_CASE("agreement_depth matches a per-depth simeq rescan") {
    std::mt19937_64 rng(11);
    for (const char* t : {"[10*]", "1[0]"}) {
        SymSeq tau = parse_literal(t);
        for (int trial = 0; trial < 300; ++trial) {
            SymSeq x = SymSeq::exact(random_binary_word(rng, 4), random_binary_word(rng, 3));
            SymSeq y = SymSeq::exact(random_binary_word(rng, 4), random_binary_word(rng, 3));
            const std::int64_t cap = 12;
            auto fast = agreement_depth(x, y, tau, cap);
            std::int64_t slow = cap;
            for (std::int64_t m = 0; m < cap; ++m) {
                if (!simeq(x.truncated(m), y.truncated(m), tau).holds) {
                    slow = m;
                    break;
                }
            }
            CAPTURE(t);
            CAPTURE(x.format());
            CAPTURE(y.format());
            if (fast.failed)
                CHECK(fast.value == slow);
            else
                CHECK(slow == cap);
        }
    }
}

TEST_CASE("proximity contracts") {
    SymSeq tau = parse_literal("[10*]");
    SymSeq x = parse_literal("[01]");
    auto self = proximity(x, x, tau, 30);
    CHECK(self.is_upper_bound);
    CHECK(self.exponent == 30);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        SymSeq a = SymSeq::exact(random_binary_word(rng, 3), random_binary_word(rng, 2));
        SymSeq b = SymSeq::exact(random_binary_word(rng, 3), random_binary_word(rng, 2));
        auto ab = proximity(a, b, tau, 24);
        auto ba = proximity(b, a, tau, 24);
        CHECK(ab.is_upper_bound == ba.is_upper_bound);
        CHECK(ab.exponent == ba.exponent);

        // Shift expansion: proximity(sx, sy) <= 2 * proximity(x, y).
        auto shifted = proximity(a.shifted(1), b.shifted(1), tau, 23);
        if (!ab.is_upper_bound && !shifted.is_upper_bound) CHECK(shifted.exponent >= ab.exponent - 1);
    }
}

TEST_CASE("proximity realizes the ball-membership characterization") {
    // d(x,y) < eps iff the N_eps truncations are simeq-related.
    SymSeq tau = parse_literal("[10*]");
    std::mt19937_64 rng(41);
    const EpsilonScale eps = EpsilonScale::from_exponent(4);
    for (int trial = 0; trial < 2000; ++trial) {
        SymSeq x = SymSeq::exact(random_binary_word(rng, 3), random_binary_word(rng, 2));
        SymSeq y = SymSeq::exact(random_binary_word(rng, 3), random_binary_word(rng, 2));
        const bool ball = proximity(x, y, tau, 24).less_than_pow2(eps.n_eps);
        const bool cylinder = simeq(x.truncated(eps.n_eps), y.truncated(eps.n_eps), tau).holds;
        CHECK(ball == cylinder);
    }
}

TEST_CASE("epsilon scale") {
    CHECK(EpsilonScale::from_epsilon(0.0625).n_eps == 4);
    CHECK(EpsilonScale::from_epsilon(0.3).n_eps == 1);
    CHECK(EpsilonScale::from_exponent(4).n_eps == 4);
    CHECK(EpsilonScale::from_exponent(4).epsilon == doctest::Approx(0.0625));
    CHECK_THROWS_AS(EpsilonScale::from_epsilon(0.0), ContractViolation);
}

TEST_CASE("lambda acceptability") {
    CHECK(is_lambda_acceptable(parse_literal("[*]"), 30).verdict);
    CHECK(is_lambda_acceptable(parse_literal("[10*]"), 30).verdict);
    CHECK(is_lambda_acceptable(parse_literal("1[0]"), 30).verdict);

    auto bad = is_lambda_acceptable(parse_literal("[1*]"), 30);
    CHECK_FALSE(bad.verdict);
    CHECK(bad.witness == 1);

    // A star whose tail is not the whole sequence breaks condition (1).
    CHECK_FALSE(is_lambda_acceptable(parse_literal("*1[0]"), 30).verdict);

    // Period-doubling tau: aperiodic, star-free; acceptable to depth.
    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    auto v = is_lambda_acceptable(pd, 128);
    CHECK(v.verdict);
    CHECK_FALSE(v.exact);
}

TEST_CASE("accepted periodic sequences have stars exactly at P-1 mod P") {
    for (std::size_t len = 1; len <= 5; ++len) {
        const std::uint64_t count = 1;
        std::uint64_t total = count;
        for (std::size_t i = 0; i < len; ++i) total *= 3;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            FiniteWord w;
            for (std::size_t i = 0; i < len; ++i) {
                w.push_back(static_cast<Symbol>(c % 3));
                c /= 3;
            }
            SymSeq tau = SymSeq::exact({}, w);
            if (!tau.preperiod().empty()) continue;
            if (!is_lambda_acceptable(tau, 40).verdict) continue;
            const auto P = static_cast<std::int64_t>(tau.period().size());
            for (std::int64_t n = 0; n < 3 * P; ++n)
                CHECK((tau.at(n) == Symbol::Star) == (n % P == P - 1));
        }
    }
}

TEST_CASE("consistency") {
    auto space = make_space(parse_literal("1[0]"));
    SymSeq critical = SymSeq::with_prefix({Symbol::Star}, space.tau);
    CHECK(is_consistent(critical, space, 30).verdict);
    CHECK_FALSE(is_consistent(parse_literal("*0[0]"), space, 30).verdict);
    CHECK(is_consistent(parse_literal("[01]"), space, 30).verdict);
}

TEST_CASE("admissibility") {
    auto space = make_space(parse_literal("1[0]"));
    auto one = is_admissible(parse_literal("[1]"), space, 30);
    CHECK(one.verdict);
    CHECK(one.exact);
    CHECK(is_admissible(parse_literal("[0]"), space, 30).verdict);
    CHECK_THROWS_AS(is_admissible(parse_literal("*0[0]"), space, 30), ContractViolation);

    // 11000... agrees with the critical point *100... wherever both are
    // non-star, so no separating index exists.
    CHECK_FALSE(is_admissible(parse_literal("11[0]"), space, 30).verdict);

    // tau itself always lies in D_tau, as does every shift.
    CHECK(is_admissible(space.tau, space, 30).verdict);
    for (std::int64_t k = 1; k < 6; ++k) CHECK(is_admissible(space.tau.shifted(k), space, 30).verdict);
}

TEST_CASE("admissibility is shift invariant for exact verdicts") {
    auto space = make_space(parse_literal("[10*]"));
    std::mt19937_64 rng(23);
    int found = 0;
    for (int trial = 0; trial < 200 && found < 40; ++trial) {
        SymSeq alpha = SymSeq::exact(random_binary_word(rng, 3), random_binary_word(rng, 4));
        auto v = is_admissible(alpha, space, 30);
        if (!v.verdict || !v.exact) continue;
        ++found;
        CHECK(is_admissible(alpha.shifted(1), space, 30).verdict);
    }
    CHECK(found > 0);
}

TEST_CASE("sequence comparisons across representations") {
    SymSeq pd = SymSeq::from_generator(period_doubling_generator());
    CHECK(sequences_equal(pd, pd.shifted(3)) == Ternary::No);
    CHECK(sequences_equal(pd, parse_literal("1[0]")) == Ternary::No);
    // "10" is exactly the dropped head, so the composite denotes pd itself.
    CHECK(sequences_equal(SymSeq::with_prefix(W("10"), pd.shifted(2)), pd) == Ternary::Yes);
    CHECK(sequences_equal(SymSeq::with_prefix(W("11"), pd.shifted(2)), pd) == Ternary::No);

    SymSeq pfx = SymSeq::with_prefix(W("1011"), pd.shifted(4));
    CHECK(sequences_equal(pfx, pd) == Ternary::Yes);

    CHECK(matches_pattern(parse_literal("1[10]"), parse_literal("1[10]")) == Ternary::Yes);
    CHECK(matches_pattern(parse_literal("[110]"), parse_literal("[1*0]")) == Ternary::Yes);
    CHECK(matches_pattern(parse_literal("[011]"), parse_literal("[1*0]")) == Ternary::No);
}
