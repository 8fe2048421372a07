#include "dendrite/shadowing.hpp"

#include <algorithm>
#include <random>

namespace dendrite {

DeltaScale delta_for_epsilon(const DendriteSpace& space, const EpsilonScale& eps) {
    const std::int64_t ne = eps.n_eps;
    const KneadingClass& cls = space.classification;
    switch (cls.kind) {
        case KneadingKind::Periodic:
            return DeltaScale::from_exponent(2 * (cls.period + 1) * ne + 1);
        case KneadingKind::NonRecurrent:
            return DeltaScale::from_exponent(2 * (ne + cls.horizon + 1) + 1);
        case KneadingKind::RecurrentNonperiodic: {
            const auto& ms = cls.milestone_seq.values;
            std::size_t t = 0;
            while (t < ms.size() && ms[t] <= ne) ++t;
            if (t == ms.size()) throw ContractViolation("milestones too shallow: no m_t > N_eps certified");
            const std::size_t last = t + static_cast<std::size_t>(2 * ne + 1);
            if (last >= ms.size())
                throw ContractViolation("milestones too shallow: need " + std::to_string(last + 1) +
                                        " certified milestones, have " + std::to_string(ms.size()));
            std::int64_t sum = 0;
            for (std::size_t q = t; q <= last; ++q) sum += ms[q];
            return DeltaScale::from_exponent(sum + 2 * ne + 2);
        }
    }
    throw Error("unreachable kneading class");
}

char to_char(ShadowSym s) {
    switch (s) {
        case ShadowSym::Zero: return '0';
        case ShadowSym::One: return '1';
        case ShadowSym::Star: return '*';
        case ShadowSym::Diamond: return 'o';
    }
    return '?';
}

Symbol CanonicalShadow::raw_at(std::int64_t t) const {
    if (t < 0) throw ContractViolation("negative shadow index");
    if (t < static_cast<std::int64_t>(raw.size())) return raw[static_cast<std::size_t>(t)];
    return tail.at(t - static_cast<std::int64_t>(raw.size()));
}

CanonicalShadow canonical_shadow(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps,
                                 const DendriteSpace& space) {
    if (!orbit.validated()) throw ContractViolation("canonical shadow requires a validated orbit");
    const DeltaScale required = delta_for_epsilon(space, eps);
    if (orbit.scale().n_delta < required.n_delta)
        throw ContractViolation("orbit delta 2^-" + std::to_string(orbit.scale().n_delta) +
                                " is too large for eps 2^-" + std::to_string(eps.n_eps) +
                                " (needs 2^-" + std::to_string(required.n_delta) + ")");

    CanonicalShadow shadow;
    shadow.eps = eps;
    shadow.orbit_length = orbit.size();
    shadow.ledger = build_ledger(orbit, eps);

    const std::int64_t L = orbit.size();
    std::int64_t width = L - 1;
    for (const LedgerEntry& rec : shadow.ledger.records) width = std::max(width, rec.beta);
    // Leading symbols of points 1..L-1, then the final point's own symbols.
    shadow.raw.reserve(static_cast<std::size_t>(width));
    for (std::int64_t t = 0; t < width; ++t) {
        if (t < L - 1)
            shadow.raw.push_back(orbit.entry(t + 1, 0));
        else
            shadow.raw.push_back(orbit.point(L).at(t - L + 1));
    }
    shadow.tail = orbit.point(L).shifted(width - L + 1);
    shadow.word.reserve(shadow.raw.size());
    for (Symbol s : shadow.raw) shadow.word.push_back(static_cast<ShadowSym>(s));
    for (const LedgerEntry& rec : shadow.ledger.records) {
        shadow.diamonds.push_back(rec.beta - 1);
        shadow.word[static_cast<std::size_t>(rec.beta - 1)] = ShadowSym::Diamond;
    }
    return shadow;
}

std::string AssignmentPolicy::name() const {
    switch (kind) {
        case Kind::AllZero: return "all-zero";
        case Kind::AllOne: return "all-one";
        case Kind::PreferOrbit: return "prefer-orbit";
        case Kind::Random: return "random";
    }
    return "?";
}

AssignmentPolicy AssignmentPolicy::from_name(std::string_view name, std::uint64_t seed) {
    if (name == "all-zero") return all_zero();
    if (name == "all-one") return all_one();
    if (name == "prefer-orbit") return prefer_orbit();
    if (name == "random") return random(seed);
    throw ParseError("unknown assignment policy \"" + std::string(name) + "\"");
}

namespace {

// Does the word tail after diamond position d track the kneading sequence
// wherever it is non-star? Unassigned later diamonds never block; a hard
// disagreement decides No; the infinite part is compared through the
// sequence representations.
Ternary forcing_test(const CanonicalShadow& shadow, const std::vector<ShadowSym>& word, std::int64_t d,
                     const DendriteSpace& space, std::int64_t depth) {
    const auto width = static_cast<std::int64_t>(word.size());
    const SymSeq& tau = space.tau;
    for (std::int64_t q = d + 1; q < width; ++q) {
        const ShadowSym sym = word[static_cast<std::size_t>(q)];
        if (sym == ShadowSym::Diamond) continue;
        const Symbol pat = tau.at(q - d - 1);
        if (pat == Symbol::Star) continue;
        if (static_cast<Symbol>(sym) != pat) return Ternary::No;
    }
    return matches_pattern(shadow.tail, tau.shifted(width - d - 1), depth);
}

}  // namespace

SymSeq assign_shadow(const CanonicalShadow& shadow, const AssignmentPolicy& policy,
                     const DendriteSpace& space, std::int64_t depth, bool never_star) {
    std::mt19937_64 rng(policy.seed);
    std::vector<ShadowSym> word = shadow.word;

    std::optional<std::int64_t> forced_at;
    for (std::int64_t d : shadow.diamonds) {
        if (!never_star) {
            const Ternary forced = forcing_test(shadow, word, d, space, depth);
            if (forced == Ternary::Unknown)
                throw DepthExceeded("cannot decide star forcing at shadow position " + std::to_string(d) +
                                    " within depth " + std::to_string(depth));
            if (forced == Ternary::Yes) {
                forced_at = d;
                break;
            }
        }
        Symbol fill = Symbol::Zero;
        switch (policy.kind) {
            case AssignmentPolicy::Kind::AllZero: fill = Symbol::Zero; break;
            case AssignmentPolicy::Kind::AllOne: fill = Symbol::One; break;
            case AssignmentPolicy::Kind::PreferOrbit: {
                const Symbol raw = shadow.raw[static_cast<std::size_t>(d)];
                fill = (raw == Symbol::Star) ? Symbol::Zero : raw;
                break;
            }
            case AssignmentPolicy::Kind::Random: fill = (rng() & 1) ? Symbol::One : Symbol::Zero; break;
        }
        word[static_cast<std::size_t>(d)] = static_cast<ShadowSym>(fill);
    }

    SymSeq result;
    if (forced_at) {
        FiniteWord head;
        head.reserve(static_cast<std::size_t>(*forced_at) + 1);
        for (std::int64_t t = 0; t < *forced_at; ++t)
            head.push_back(static_cast<Symbol>(word[static_cast<std::size_t>(t)]));
        head.push_back(Symbol::Star);
        result = SymSeq::with_prefix(head, space.tau);
    } else {
        FiniteWord head;
        head.reserve(word.size());
        for (ShadowSym s : word) head.push_back(static_cast<Symbol>(s));
        result = SymSeq::with_prefix(head, shadow.tail);
    }

    const Verification cons = is_consistent(result, space, depth);
    if (!cons.verdict)
        throw Error("assigned shadow fails consistency at n=" + std::to_string(cons.witness.value_or(-1)));
    const Verification adm = is_admissible(result, space, depth);
    if (!adm.verdict)
        throw Error("assigned shadow fails admissibility at n=" + std::to_string(adm.witness.value_or(-1)));
    return result;
}

PseudoAgreementReport check_pseudo_agreement(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps,
                                             const DendriteSpace& space) {
    if (!orbit.validated()) throw ContractViolation("pseudo-agreement requires a validated orbit");
    PseudoAgreementReport report;
    const std::int64_t L = orbit.size();
    const std::int64_t ne = eps.n_eps;

    // Leading-symbol word with the finite-orbit tail rule.
    auto raw_at = [&](std::int64_t t) -> Symbol {
        if (t < L - 1) return orbit.entry(t + 1, 0);
        return orbit.point(L).at(t - L + 1);
    };

    for (std::int64_t n = 1; n <= L; ++n) {
        FiniteWord lead;
        lead.reserve(static_cast<std::size_t>(ne) + 1);
        for (std::int64_t t = 0; t <= ne; ++t) lead.push_back(raw_at(n - 1 + t));
        FiniteWord point(orbit.window(n).begin(), orbit.window(n).begin() + static_cast<std::ptrdiff_t>(ne) + 1);
        ++report.checks;
        if (!simeq(point, lead, space.tau).holds) {
            report.ok = false;
            report.violations.push_back({1, n, 0});
        }
    }

    const FlipLedger ledger = build_ledger(orbit, eps);
    std::int64_t entry_no = 0;
    for (const LedgerEntry& rec : ledger.records) {
        ++entry_no;
        for (std::int64_t t = 0; t <= ne && rec.beta + t <= L; ++t) {
            ++report.checks;
            bool ok = true;
            for (std::int64_t q = 0; q <= ne - t && ok; ++q) {
                const std::int64_t crit_index = t + q;  // position in *tau
                const Symbol pat = crit_index == 0 ? Symbol::Star : space.tau.at(crit_index - 1);
                if (pat == Symbol::Star) continue;
                ok = orbit.entry(rec.beta + t, q) == pat;
            }
            if (!ok) {
                report.ok = false;
                report.violations.push_back({2, entry_no, t});
            }
        }
    }
    return report;
}

ShadowVerifyReport verify_shadowing(const DeltaPseudoOrbit& orbit, const SymSeq& z,
                                    const EpsilonScale& eps, const DendriteSpace& space) {
    if (!orbit.validated()) throw ContractViolation("shadow verification requires a validated orbit");
    const std::int64_t L = orbit.size();
    const std::int64_t ne = eps.n_eps;
    if (L - 1 + ne > z.certified_depth())
        throw DepthExceeded("shadow point too shallow: need depth " + std::to_string(L - 1 + ne));

    const FiniteWord zw = z.truncated(L - 1 + ne);
    ShadowVerifyReport report;
    report.verified = true;
    for (std::int64_t i = 0; i < L; ++i) {
        FiniteWord zi(zw.begin() + static_cast<std::ptrdiff_t>(i),
                      zw.begin() + static_cast<std::ptrdiff_t>(i + ne) + 1);
        FiniteWord xi(orbit.window(i + 1).begin(),
                      orbit.window(i + 1).begin() + static_cast<std::ptrdiff_t>(ne) + 1);
        ++report.checked;
        if (!simeq(zi, xi, space.tau).holds) {
            report.verified = false;
            report.first_failure = i;
            return report;
        }
    }
    return report;
}

}  // namespace dendrite
