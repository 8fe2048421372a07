#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dendrite/seq.hpp"

namespace dendrite {

/// eps together with N_eps = floor(log2(1/eps)). Two points are within eps
/// iff their N_eps-truncations are simeq-related (Lemma 2.9 realized by
/// construction through `proximity` below).
struct EpsilonScale {
    double epsilon = 0.0;
    std::int64_t n_eps = 0;

    static EpsilonScale from_epsilon(double eps);
    static EpsilonScale from_exponent(std::int64_t n);
};

/// w matches pattern at every position where the pattern is not Star.
/// Both words must have equal length.
bool match_approx(const FiniteWord& w, const FiniteWord& pattern);

/// Outcome of the simeq candidate scan. When the words are unequal but
/// related, `witness` carries the precritical truncation joining them:
/// star at position j, word = common prefix + '*' + kneading tail.
struct SimeqResult {
    bool holds = false;
    struct Witness {
        std::int64_t star_position = 0;
        FiniteWord word;
    };
    std::optional<Witness> witness;
};

/// x|n simeq y|n: equal words, or a precritical truncation pattern matched
/// by both. The scan tries every candidate star position (ascending), not
/// just the first disagreement; with stars in tau the pattern itself carries
/// further wildcards, permitting multiple flips.
SimeqResult simeq(const FiniteWord& x, const FiniteWord& y, const SymSeq& tau);

/// All length-(n+1) truncations of precritical points: u '*' tau_0 ... for
/// star-free u over {0,1} with |u| in [0, n]. Oracle for simeq; n <= 16.
std::vector<FiniteWord> enumerate_precritical_truncations(const SymSeq& tau, std::int64_t n);

/// Least depth m in [0, cap) at which x|m simeq y|m fails, if any.
struct AgreementResult {
    bool failed = false;      // true: FAIL_AT value; false: AT_LEAST cap
    std::int64_t value = 0;   // failing depth, or cap

    bool at_least(std::int64_t m) const { return !failed || value >= m; }
};

/// Scan depths 0..cap-1 for the first simeq failure. Simeq is monotone in
/// the depth (witnesses truncate), so the result splits [0,cap) exactly.
AgreementResult agreement_depth(const SymSeq& x, const SymSeq& y, const SymSeq& tau, std::int64_t cap);

/// Word-level variant on pre-truncated points (positions 0..len-1 readable).
AgreementResult agreement_depth_words(const FiniteWord& x, const FiniteWord& y, const SymSeq& tau,
                                      std::int64_t cap);

/// 2^-m for the least simeq failure depth m, or an upper bound 2^-cap when
/// no failure occurs before cap. Satisfies proximity(x,y) < 2^-N iff
/// x|N simeq y|N for every N < cap.
struct Proximity {
    bool is_upper_bound = false;
    std::int64_t exponent = 0;  // proximity value or bound is 2^-exponent

    double value() const;
    bool less_than_pow2(std::int64_t neg_exp) const {
        return is_upper_bound ? exponent >= neg_exp : exponent > neg_exp;
    }
};

Proximity proximity(const SymSeq& x, const SymSeq& y, const SymSeq& tau, std::int64_t cap);

}  // namespace dendrite
