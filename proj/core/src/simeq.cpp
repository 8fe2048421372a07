#include "dendrite/simeq.hpp"

#include <algorithm>
#include <cmath>

namespace dendrite {

EpsilonScale EpsilonScale::from_epsilon(double eps) {
    if (!(eps > 0.0)) throw ContractViolation("epsilon must be positive");
    int e = 0;
    const double f = std::frexp(eps, &e);  // eps = f * 2^e, f in [0.5, 1)
    std::int64_t n = (f == 0.5) ? 1 - e : -e;
    if (n < 0) n = 0;
    return EpsilonScale{eps, n};
}

EpsilonScale EpsilonScale::from_exponent(std::int64_t n) {
    if (n < 0) throw ContractViolation("epsilon exponent must be >= 0");
    return EpsilonScale{std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(n, 1074))), n};
}

bool match_approx(const FiniteWord& w, const FiniteWord& pattern) {
    if (w.size() != pattern.size()) throw ContractViolation("match_approx requires equal lengths");
    for (std::size_t i = 0; i < w.size(); ++i)
        if (pattern[i] != Symbol::Star && w[i] != pattern[i]) return false;
    return true;
}

namespace {

// Pattern symbol at word position q for a candidate star at j: '*' at j,
// then the kneading tail tau_0 tau_1 ...
inline Symbol star_tau_pattern(const SymSeq& tau, std::int64_t j, std::int64_t q) {
    return q == j ? Symbol::Star : tau.at(q - j - 1);
}

// Candidate star positions for words first disagreeing at p: the pattern
// must wildcard position p, so j = p or tau has a star at p-j-1. Earlier
// stars can succeed where the first-disagreement star fails.
std::vector<std::int64_t> star_candidates(const SymSeq& tau, std::int64_t p) {
    std::vector<std::int64_t> out;
    for (std::int64_t j = 0; j < p; ++j)
        if (tau.at(p - j - 1) == Symbol::Star) out.push_back(j);
    out.push_back(p);
    return out;
}

}  // namespace

SimeqResult simeq(const FiniteWord& x, const FiniteWord& y, const SymSeq& tau) {
    if (x.size() != y.size()) throw ContractViolation("simeq requires equal lengths");
    if (x.empty()) throw ContractViolation("simeq requires nonempty words");
    const auto n = static_cast<std::int64_t>(x.size()) - 1;
    if (x == y) return SimeqResult{true, std::nullopt};
    if (n - 1 > tau.certified_depth()) throw DepthExceeded("tau too shallow for simeq at this length");

    std::int64_t p = 0;
    while (x[static_cast<std::size_t>(p)] == y[static_cast<std::size_t>(p)]) ++p;

    for (std::int64_t j : star_candidates(tau, p)) {
        bool ok = true;
        for (std::int64_t q = j; q <= n && ok; ++q) {
            const Symbol pat = star_tau_pattern(tau, j, q);
            if (pat == Symbol::Star) continue;
            const auto uq = static_cast<std::size_t>(q);
            ok = (x[uq] == pat && y[uq] == pat);
        }
        if (!ok) continue;
        SimeqResult res;
        res.holds = true;
        SimeqResult::Witness w;
        w.star_position = j;
        w.word.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(j));
        w.word.push_back(Symbol::Star);
        for (std::int64_t q = j + 1; q <= n; ++q) w.word.push_back(tau.at(q - j - 1));
        res.witness = std::move(w);
        return res;
    }
    return SimeqResult{false, std::nullopt};
}

std::vector<FiniteWord> enumerate_precritical_truncations(const SymSeq& tau, std::int64_t n) {
    if (n < 0) throw ContractViolation("length index must be >= 0");
    if (n > 16) throw ContractViolation("oracle scale exceeded (n <= 16)");
    if (n - 1 > tau.certified_depth()) throw DepthExceeded("tau too shallow");
    std::vector<FiniteWord> out;
    for (std::int64_t j = 0; j <= n; ++j) {
        FiniteWord tail;
        for (std::int64_t q = j + 1; q <= n; ++q) tail.push_back(tau.at(q - j - 1));
        const std::uint64_t count = std::uint64_t{1} << j;
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            FiniteWord w;
            w.reserve(static_cast<std::size_t>(n) + 1);
            for (std::int64_t i = 0; i < j; ++i)
                w.push_back(((bits >> i) & 1) ? Symbol::One : Symbol::Zero);
            w.push_back(Symbol::Star);
            w.insert(w.end(), tail.begin(), tail.end());
            out.push_back(std::move(w));
        }
    }
    return out;
}

AgreementResult agreement_depth_words(const FiniteWord& x, const FiniteWord& y, const SymSeq& tau,
                                      std::int64_t cap) {
    if (cap < 0) throw ContractViolation("cap must be >= 0");
    if (static_cast<std::int64_t>(x.size()) < cap || static_cast<std::int64_t>(y.size()) < cap)
        throw ContractViolation("words shorter than cap");
    if (cap == 0) return AgreementResult{false, 0};

    std::int64_t p = -1;
    for (std::int64_t i = 0; i < cap; ++i) {
        if (x[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)]) {
            p = i;
            break;
        }
    }
    if (p < 0) return AgreementResult{false, cap};
    if (cap - 2 > tau.certified_depth()) throw DepthExceeded("tau too shallow for agreement scan");

    // simeq holds at depth m >= p iff some candidate pattern matches both
    // words through m; the first failure is one past the best match.
    std::int64_t best = -1;
    for (std::int64_t j : star_candidates(tau, p)) {
        std::int64_t matched_to = cap - 1;
        for (std::int64_t q = j; q < cap; ++q) {
            const Symbol pat = star_tau_pattern(tau, j, q);
            if (pat == Symbol::Star) continue;
            const auto uq = static_cast<std::size_t>(q);
            if (x[uq] != pat || y[uq] != pat) {
                matched_to = q - 1;
                break;
            }
        }
        best = std::max(best, matched_to);
        if (best == cap - 1) break;
    }
    const std::int64_t fail = best + 1;
    if (fail >= cap) return AgreementResult{false, cap};
    return AgreementResult{true, fail};
}

AgreementResult agreement_depth(const SymSeq& x, const SymSeq& y, const SymSeq& tau, std::int64_t cap) {
    if (cap < 0) throw ContractViolation("cap must be >= 0");
    if (cap == 0) return AgreementResult{false, 0};
    if (cap - 1 > x.certified_depth() || cap - 1 > y.certified_depth())
        throw DepthExceeded("points too shallow for agreement scan");
    return agreement_depth_words(x.truncated(cap - 1), y.truncated(cap - 1), tau, cap);
}

double Proximity::value() const { return std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(exponent, 1074))); }

Proximity proximity(const SymSeq& x, const SymSeq& y, const SymSeq& tau, std::int64_t cap) {
    const AgreementResult a = agreement_depth(x, y, tau, cap);
    if (a.failed) return Proximity{false, a.value};
    return Proximity{true, cap};
}

}  // namespace dendrite
