#include "dendrite/space.hpp"

#include <algorithm>
#include <numeric>

namespace dendrite {

namespace {

constexpr std::int64_t kHorizonCap = 1 << 20;

// Exact m-scan bound for separating alpha shifted by n from the critical
// point pattern: past the joint preperiod the symbol pair is periodic.
std::int64_t exact_separation_horizon(const SymSeq& alpha, std::int64_t n, const SymSeq& tau) {
    const auto pre_a = static_cast<std::int64_t>(alpha.preperiod().size());
    const auto pre_t = static_cast<std::int64_t>(tau.preperiod().size());
    const std::int64_t lcm = std::lcm<std::int64_t>(static_cast<std::int64_t>(alpha.period().size()),
                                                    static_cast<std::int64_t>(tau.period().size()));
    const std::int64_t lead = std::max<std::int64_t>(pre_a - n, pre_t + 1);
    return std::min<std::int64_t>(lead + lcm + 1, kHorizonCap);
}

}  // namespace

Verification is_lambda_acceptable(const SymSeq& tau, std::int64_t depth) {
    Verification out;
    out.depth = depth;

    if (tau.is_exact()) {
        out.exact = true;
        const auto rho = static_cast<std::int64_t>(tau.preperiod().size());
        const auto pi = static_cast<std::int64_t>(tau.period().size());
        // sigma^k(tau) = tau exactly when k = 0, or tau is purely periodic
        // and k is a multiple of the (primitive) period.
        const auto shift_fixes = [&](std::int64_t k) { return k == 0 || (rho == 0 && k % pi == 0); };
        const std::int64_t n_range = rho + pi;  // covers every distinct shift
        const std::int64_t m_range = rho + 2 * pi + depth;
        for (std::int64_t n = 0; n < n_range; ++n) {
            const bool star = tau.at(n) == Symbol::Star;
            if (star != shift_fixes(n + 1)) {
                out.verdict = false;
                out.witness = n;
                return out;
            }
        }
        for (std::int64_t n = 1; n < n_range; ++n) {
            if (shift_fixes(n)) continue;
            bool separated = false;
            for (std::int64_t m = 0; m <= m_range && !separated; ++m) {
                const Symbol a = tau.at(m + n);
                const Symbol b = tau.at(m);
                separated = (a != Symbol::Star && b != Symbol::Star && a != b);
            }
            if (!separated) {
                out.verdict = false;
                out.witness = n;
                return out;
            }
        }
        out.verdict = true;
        return out;
    }

    out.exact = false;
    if (depth + 1 > tau.certified_depth()) throw DepthExceeded("acceptability depth exceeds certified depth");
    for (std::int64_t n = 0; n <= depth; ++n) {
        const bool star = tau.at(n) == Symbol::Star;
        const Ternary fixes = sequences_equal(tau.shifted(n + 1), tau, depth);
        if (fixes == Ternary::Unknown)
            throw DepthExceeded("cannot decide sigma^{n+1}(tau) = tau within certified depth at n=" +
                                std::to_string(n));
        if (star != (fixes == Ternary::Yes)) {
            out.verdict = false;
            out.witness = n;
            return out;
        }
    }
    for (std::int64_t n = 1; n <= depth; ++n) {
        if (sequences_equal(tau.shifted(n), tau, depth) == Ternary::Yes) continue;
        bool separated = false;
        const std::int64_t m_range = std::min(depth, tau.certified_depth() - n);
        for (std::int64_t m = 0; m <= m_range && !separated; ++m) {
            const Symbol a = tau.at(m + n);
            const Symbol b = tau.at(m);
            separated = (a != Symbol::Star && b != Symbol::Star && a != b);
        }
        if (!separated) {
            out.verdict = false;
            out.witness = n;
            return out;
        }
    }
    out.verdict = true;
    return out;
}

DendriteSpace make_space(const SymSeq& tau, std::int64_t depth) {
    Verification acc = is_lambda_acceptable(tau, depth);
    if (!acc.verdict) {
        throw ContractViolation("tau is not Lambda-acceptable (witness n=" +
                                std::to_string(acc.witness.value_or(-1)) + ")");
    }
    DendriteSpace space{tau, acc, classify(tau, depth), SymSeq::with_prefix({Symbol::Star}, tau)};
    return space;
}

Verification is_consistent(const SymSeq& alpha, const DendriteSpace& space, std::int64_t depth) {
    Verification out;
    out.depth = depth;
    const SymSeq& tau = space.tau;

    if (alpha.is_exact()) {
        out.exact = true;
        const auto rho = static_cast<std::int64_t>(alpha.preperiod().size());
        const auto pi = static_cast<std::int64_t>(alpha.period().size());
        // Star positions repeat with the period; one window decides all.
        for (std::int64_t n = 0; n < rho + pi; ++n) {
            if (alpha.at(n) != Symbol::Star) continue;
            if (sequences_equal(alpha.shifted(n + 1), tau) != Ternary::Yes) {
                out.verdict = false;
                out.witness = n;
                out.exact = sequences_equal(alpha.shifted(n + 1), tau) == Ternary::No;
                return out;
            }
        }
        out.verdict = true;
        return out;
    }

    out.exact = false;
    const std::int64_t hi = std::min(depth, alpha.certified_depth());
    for (std::int64_t n = 0; n <= hi; ++n) {
        if (alpha.at(n) != Symbol::Star) continue;
        const Ternary eq = sequences_equal(alpha.shifted(n + 1), tau, depth);
        if (eq != Ternary::Yes) {
            if (eq == Ternary::Unknown)
                throw DepthExceeded("cannot decide star tail at n=" + std::to_string(n) +
                                    " within certified depth");
            out.verdict = false;
            out.witness = n;
            return out;
        }
    }
    out.verdict = true;
    return out;
}

Verification is_admissible(const SymSeq& alpha, const DendriteSpace& space, std::int64_t depth) {
    const Verification cons = is_consistent(alpha, space, depth);
    if (!cons.verdict)
        throw ContractViolation("is_admissible requires a consistent point (star at n=" +
                                std::to_string(cons.witness.value_or(-1)) + " breaks the tau tail)");

    Verification out;
    out.depth = depth;
    const SymSeq& tau = space.tau;
    const bool both_exact = alpha.is_exact() && tau.is_exact();

    std::int64_t n_range;
    if (alpha.is_exact()) {
        // Shifts of alpha cycle; checking one window of shifts decides all n.
        n_range = static_cast<std::int64_t>(alpha.preperiod().size()) +
                  static_cast<std::int64_t>(alpha.period().size());
        out.exact = both_exact;
    } else {
        n_range = std::min(depth, alpha.certified_depth()) + 1;
        out.exact = false;
    }

    // A depth-qualified "not separated" verdict needs room to have looked:
    // shifts whose remaining window is shorter than this are out of evidence
    // and end the scan instead of failing it.
    constexpr std::int64_t kMinSeparationWindow = 4;

    for (std::int64_t n = 0; n < n_range; ++n) {
        // Consistency makes a star at n mean sigma^n(alpha) = *tau exactly.
        if (alpha.at(n) == Symbol::Star) continue;
        std::int64_t m_hi;
        if (both_exact) {
            m_hi = exact_separation_horizon(alpha, n, tau);
        } else {
            m_hi = std::min(depth, std::min(alpha.certified_depth() - n, tau.certified_depth() + 1));
            if (m_hi < kMinSeparationWindow) {
                out.depth = n - 1;
                break;
            }
        }
        bool separated = false;
        for (std::int64_t m = 1; m <= m_hi && !separated; ++m) {
            const Symbol a = alpha.at(n + m);
            const Symbol t = tau.at(m - 1);
            separated = (a != Symbol::Star && t != Symbol::Star && a != t);
        }
        if (!separated) {
            out.verdict = false;
            out.witness = n;
            return out;
        }
    }
    out.verdict = true;
    return out;
}

}  // namespace dendrite
