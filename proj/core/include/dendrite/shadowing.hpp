#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dendrite/pseudo_orbit.hpp"

namespace dendrite {

/// N_{delta_eps} for the three kneading classes, one past the strict lower
/// bound: periodic 2(P+1)N_eps, non-recurrent 2(N_eps+M+1), recurrent
/// sum of milestones m_t..m_{t+2N_eps+1} (t minimal with m_t > N_eps)
/// plus 2N_eps+1. Requires certified milestones deep enough.
DeltaScale delta_for_epsilon(const DendriteSpace& space, const EpsilonScale& eps);

enum class ShadowSym : std::uint8_t { Zero = 0, One = 1, Star = 2, Diamond = 3 };

char to_char(ShadowSym s);

/// The canonical eps-shadow word: leading symbols of the orbit points with
/// a diamond at every ledger beta_k. Word index t tracks point x_{t+1};
/// past the last point the word continues through the final point's own
/// symbols (finite-orbit tail rule), so diamonds sit at index beta_k - 1.
struct CanonicalShadow {
    std::vector<ShadowSym> word;          // materialized region; all diamonds live here
    FiniteWord raw;                       // same region without diamonds
    SymSeq tail;                          // symbols at indices >= word.size()
    std::vector<std::int64_t> diamonds;   // word indices, ascending
    FlipLedger ledger;
    EpsilonScale eps;
    std::int64_t orbit_length = 0;

    Symbol raw_at(std::int64_t t) const;  // undiamonded word, any index
};

CanonicalShadow canonical_shadow(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps,
                                 const DendriteSpace& space);

/// How 0/1 diamonds are filled when the critical tail is not forced.
struct AssignmentPolicy {
    enum class Kind : std::uint8_t { AllZero, AllOne, PreferOrbit, Random } kind = Kind::PreferOrbit;
    std::uint64_t seed = 0;

    static AssignmentPolicy all_zero() { return {Kind::AllZero, 0}; }
    static AssignmentPolicy all_one() { return {Kind::AllOne, 0}; }
    static AssignmentPolicy prefer_orbit() { return {Kind::PreferOrbit, 0}; }
    static AssignmentPolicy random(std::uint64_t seed) { return {Kind::Random, seed}; }

    std::string name() const;
    static AssignmentPolicy from_name(std::string_view name, std::uint64_t seed);
};

/// Replace diamonds per policy. If the tail after some first diamond
/// matches the kneading sequence wherever it is non-star (later unassigned
/// diamonds never block), a star is forced there and the tau tail copied;
/// the decision is exact for comparable representations and throws
/// DepthExceeded (with the undecided position) otherwise.
/// `never_star` suppresses the forcing rule (the omega-limit construction
/// assigns 0/1 only).
SymSeq assign_shadow(const CanonicalShadow& shadow, const AssignmentPolicy& policy,
                     const DendriteSpace& space, std::int64_t depth, bool never_star = false);

/// Prop 3.9 / Prop 3.8 checks over a validated orbit: every point's
/// N_eps-truncation is simeq to the shadow's leading word, and the points
/// after each beta_k track the shifted critical pattern.
struct PseudoAgreementReport {
    bool ok = true;
    struct Violation {
        int kind;            // 1: leading-word simeq, 2: critical tail approx
        std::int64_t index;  // n, or ledger entry number
        std::int64_t t;      // shift offset for kind 2
    };
    std::vector<Violation> violations;
    std::int64_t checks = 0;
};

PseudoAgreementReport check_pseudo_agreement(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps,
                                             const DendriteSpace& space);

/// d(sigma^i(z), x_{i+1}) < eps for every step i in [0, L): the shadowing
/// property at resolution N_eps.
struct ShadowVerifyReport {
    bool verified = false;
    std::optional<std::int64_t> first_failure;
    std::int64_t checked = 0;
};

ShadowVerifyReport verify_shadowing(const DeltaPseudoOrbit& orbit, const SymSeq& z,
                                    const EpsilonScale& eps, const DendriteSpace& space);

}  // namespace dendrite
