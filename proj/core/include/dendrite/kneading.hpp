#pragma once

#include <cstdint>
#include <vector>

#include "dendrite/seq.hpp"

namespace dendrite {

/// Return time entry for one truncation length. Infinite returns are only
/// certified for EXACT kneading sequences; generator-backed sequences report
/// absence-within-depth instead.
struct ReturnValue {
    enum class Kind : std::uint8_t { Finite, Infinite, NoReturnWithinDepth };
    Kind kind = Kind::Infinite;
    std::int64_t k = 0;  // valid when Finite

    bool finite() const { return kind == Kind::Finite; }
};

/// r_m for m = 0..computed_to: the least k >= 1 with sigma^k(tau)|m = tau|m.
/// Monotone nondecreasing with Infinite maximal.
struct ReturnTimeTable {
    std::vector<ReturnValue> values;
    std::int64_t computed_to = -1;
    std::int64_t search_depth = 0;

    const ReturnValue& at(std::int64_t m) const;
};

/// Least k >= 1 with tau shifted by k agreeing with tau on indices 0..m.
/// EXACT sequences get an exact answer (Infinite certified: shifts cycle
/// through at most preperiod+period distinct tails); generator-backed
/// sequences search k <= search_depth - m and report absence distinctly.
ReturnValue return_time(const SymSeq& tau, std::int64_t m, std::int64_t search_depth = 0);

ReturnTimeTable build_return_times(const SymSeq& tau, std::int64_t max_m, std::int64_t search_depth);

/// Strictly increasing m_1 < m_2 < ... with m_i <= r_{m_i} < r_{m_i}+1 < m_{i+1}.
struct MilestoneSequence {
    std::vector<std::int64_t> values;
    std::int64_t certified_to = 0;
};

/// Greedy minimal milestone sequence from a computed table. Requires every
/// consulted return time finite (recurrent input) and computed far enough.
MilestoneSequence milestones(const ReturnTimeTable& table, std::int64_t count);

enum class KneadingKind : std::uint8_t { Periodic, NonRecurrent, RecurrentNonperiodic };

struct KneadingClass {
    KneadingKind kind = KneadingKind::Periodic;
    bool exact = true;           // false: verdict certified only to a depth
    std::int64_t period = 0;     // Periodic: minimal P with sigma^P(tau) = tau
    std::int64_t horizon = 0;    // NonRecurrent: minimal M >= 1 with r_m infinite for m >= M
    MilestoneSequence milestone_seq;  // RecurrentNonperiodic
    ReturnTimeTable table;            // RecurrentNonperiodic: backing table
};

/// Classify a kneading sequence. EXACT purely periodic -> Periodic{P};
/// EXACT strictly preperiodic -> NonRecurrent{M} (eventually periodic and
/// recurrent would force periodicity, so strict preperiodicity certifies
/// non-recurrence); generator-backed -> RecurrentNonperiodic with milestones
/// certified to depth, or NonRecurrent-within-depth when some prefix stops
/// returning inside the searched window.
KneadingClass classify(const SymSeq& tau, std::int64_t depth);

/// gamma with alpha = gamma^(n/ell), ell = gcd(n, m), from the overlap
/// premise: beta = alpha alpha satisfies beta_i = beta_{i+(n-m)} wherever
/// both sides exist.
struct PrimitiveRootResult {
    FiniteWord gamma;
    std::int64_t ell = 0;
    std::int64_t repetitions = 0;
};

PrimitiveRootResult word_overlap_root(const FiniteWord& alpha, std::int64_t m);

/// Witnesses t <= depth with r_t >= t (counting returns missing from the
/// searched window as >= t). Finite scans cannot refute "infinitely many";
/// the report flags when the upper half of the range has no witness.
struct ReturnGrowthReport {
    std::vector<std::int64_t> witnesses;
    std::int64_t depth = 0;
    bool upper_half_empty = false;
};

ReturnGrowthReport check_return_time_growth(const SymSeq& tau, std::int64_t depth);

}  // namespace dendrite
