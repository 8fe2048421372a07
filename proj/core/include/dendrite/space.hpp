#pragma once

#include <cstdint>
#include <optional>

#include "dendrite/kneading.hpp"
#include "dendrite/seq.hpp"
#include "dendrite/simeq.hpp"

namespace dendrite {

/// Outcome of a depth-bounded verification. `exact` verdicts are
/// unconditional (EXACT inputs decide both quantifiers by cycling shifts);
/// otherwise the verdict holds for everything checked up to `depth`.
struct Verification {
    bool verdict = false;
    bool exact = false;
    std::int64_t depth = 0;
    std::optional<std::int64_t> witness;  // failing index when verdict is false
};

/// Lambda-acceptability of a kneading sequence:
///   (1) tau_n = * iff sigma^{n+1}(tau) = tau, and
///   (2) whenever sigma^n(tau) != tau they differ at a position where
///       neither is *.
Verification is_lambda_acceptable(const SymSeq& tau, std::int64_t depth);

/// A validated kneading sequence: D_tau stands behind this value.
struct DendriteSpace {
    SymSeq tau;
    Verification acceptability;
    KneadingClass classification;
    SymSeq critical_point;  // *tau

    bool periodic() const { return classification.kind == KneadingKind::Periodic; }
};

/// Verify acceptability, classify, and cache the critical point.
/// Throws ContractViolation when tau is not acceptable.
DendriteSpace make_space(const SymSeq& tau, std::int64_t depth = 64);

/// Every star in alpha (up to depth) forces the exact tau tail.
Verification is_consistent(const SymSeq& alpha, const DendriteSpace& space, std::int64_t depth);

/// Consistent, and every shift that is not the critical point *tau is
/// separated from it at a position where neither side is *.
/// Throws ContractViolation on inconsistent input.
Verification is_admissible(const SymSeq& alpha, const DendriteSpace& space, std::int64_t depth);

}  // namespace dendrite
