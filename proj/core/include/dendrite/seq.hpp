#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "dendrite/symbol.hpp"

namespace dendrite {

/// Pure symbol source backing a GENERATED sequence. `at` must be a function
/// of the index alone (reentrant, no state). `certified_depth` is the largest
/// readable index. `aperiodic` certifies the emitted sequence is not
/// eventually periodic; `star_free` certifies it never emits Star. Both flags
/// unlock exact comparisons that a finite scan cannot provide.
struct Generator {
    std::string name;
    std::function<Symbol(std::int64_t)> at;
    std::int64_t certified_depth = 0;
    bool aperiodic = false;
    bool star_free = false;
};

using GeneratorPtr = std::shared_ptr<const Generator>;

/// Fixed point of 1 -> 10, 0 -> 11 starting from 1: 1011101010111011...
/// Symbol at n is the parity of the trailing one-bits of n. Recurrent and
/// non-periodic; the stock recurrent kneading sequence of the test battery.
GeneratorPtr period_doubling_generator();

/// Generator backed by a materialized symbol table.
GeneratorPtr make_table_generator(std::string name, FiniteWord symbols, bool aperiodic = false);

/// Look up a named generator usable as a tau source on the command line.
/// Currently: "pd" (period-doubling). Returns nullptr if unknown.
GeneratorPtr lookup_generator(std::string_view name);

constexpr std::int64_t kUnboundedDepth = std::numeric_limits<std::int64_t>::max() / 4;

/// An infinite sequence over {0,1,*}. Either EXACT (eventually periodic,
/// canonical representation) or GENERATED (pure symbol source plus an edited
/// finite prefix and a shift offset). Immutable after construction.
///
/// Canonical EXACT form: the period is primitive and no rotation of the
/// period can be absorbed into a shorter preperiod, so two EXACT values
/// denote the same sequence iff their representations are equal.
class SymSeq {
public:
    SymSeq() : SymSeq(exact({}, {Symbol::Zero})) {}

    static SymSeq exact(FiniteWord preperiod, FiniteWord period);
    static SymSeq from_generator(GeneratorPtr gen, std::int64_t shift = 0);

    /// Prepend `prefix` to `tail`. EXACT tails stay EXACT; generated tails
    /// become composites that still compare exactly against their base.
    static SymSeq with_prefix(const FiniteWord& prefix, const SymSeq& tail);

    bool is_exact() const { return gen_ == nullptr; }

    /// Largest readable index (inclusive). Unbounded for EXACT.
    std::int64_t certified_depth() const;

    /// Symbol at index i. Throws DepthExceeded past the certified depth.
    Symbol at(std::int64_t i) const;

    /// x|n = x_0 x_1 ... x_n (length n+1).
    FiniteWord truncated(std::int64_t n) const;

    /// sigma^k: drop the first k symbols.
    SymSeq shifted(std::int64_t k) const;

    /// Literal form "pre[period]" for EXACT values.
    /// Throws ContractViolation for GENERATED values.
    std::string format() const;

    /// Human-readable description; falls back to "<name>@shift" forms for
    /// GENERATED values. Never throws.
    std::string describe() const;

    const FiniteWord& preperiod() const;
    const FiniteWord& period() const;

    /// True if no readable symbol is Star. Exact for EXACT and for generators
    /// carrying the star_free certificate; otherwise scans to the given limit.
    bool star_free_to(std::int64_t limit) const;

    /// Representation identity (canonical EXACT values: sequence equality).
    bool identical(const SymSeq& other) const;

    std::optional<std::string> label;

private:
    SymSeq(FiniteWord pre, FiniteWord per) : pre_(std::move(pre)), per_(std::move(per)) {}
    friend Ternary sequences_equal(const SymSeq&, const SymSeq&, std::int64_t);
    friend Ternary matches_pattern(const SymSeq&, const SymSeq&, std::int64_t);

    // EXACT state
    FiniteWord pre_;
    FiniteWord per_;

    // GENERATED state
    GeneratorPtr gen_;
    std::int64_t gen_shift_ = 0;
    std::shared_ptr<const FiniteWord> prefix_buf_;
    std::size_t prefix_off_ = 0;

    std::int64_t prefix_len() const {
        return prefix_buf_ ? static_cast<std::int64_t>(prefix_buf_->size() - prefix_off_) : 0;
    }
};

/// Parse the sequence literal grammar `sym* '[' sym+ ']'` over {0,1,*}.
/// The bracketed period is mandatory; the result is canonical.
SymSeq parse_literal(std::string_view text);

/// Parse either a literal or a registered generator name ("pd").
SymSeq parse_point(std::string_view text);

/// Semantic equality of the two infinite sequences. Exact for EXACT pairs,
/// for same-generator pairs, and against aperiodic generators; otherwise
/// compares up to `scan_limit` readable symbols and reports Unknown if no
/// disagreement was found.
Ternary sequences_equal(const SymSeq& a, const SymSeq& b, std::int64_t scan_limit = 1 << 14);

/// Infinite-horizon version of the word relation "a matches pattern
/// wherever the pattern is not Star". Exact when decidable (EXACT/EXACT,
/// star-free patterns with comparable representations); Unknown otherwise.
Ternary matches_pattern(const SymSeq& a, const SymSeq& pattern, std::int64_t scan_limit = 1 << 14);

}  // namespace dendrite
