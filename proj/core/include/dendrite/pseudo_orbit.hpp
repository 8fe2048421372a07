#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "dendrite/space.hpp"

namespace dendrite {

/// delta with N_delta = floor(log2(1/delta)). For deep scales (recurrent
/// kneading sequences) the exponent is authoritative; `delta` underflows to
/// zero past 2^-1074 and is only for display.
struct DeltaScale {
    double delta = 0.0;
    std::int64_t n_delta = 0;

    static DeltaScale from_delta(double d);
    static DeltaScale from_exponent(std::int64_t n);
};

/// A validated delta pseudo-orbit over D_tau. Point indices are 1-based to
/// mirror x_1, x_2, ...; the array entry x^i_j is point i, symbol j.
/// Truncations to N_delta+1 are materialized once so array scans are O(1)
/// per symbol.
class DeltaPseudoOrbit {
public:
    std::int64_t size() const { return static_cast<std::int64_t>(points_.size()); }
    const SymSeq& point(std::int64_t i) const;               // i in [1, size()]
    Symbol entry(std::int64_t i, std::int64_t j) const;      // x^i_j, j <= n_delta+1
    const FiniteWord& window(std::int64_t i) const;          // x_i | (n_delta+1)
    const DeltaScale& scale() const { return scale_; }
    const SymSeq& tau() const { return tau_; }
    bool validated() const { return validated_; }

private:
    friend DeltaPseudoOrbit validate(std::vector<SymSeq>, DeltaScale, const SymSeq&);
    std::vector<SymSeq> points_;
    std::vector<FiniteWord> windows_;
    DeltaScale scale_;
    SymSeq tau_;
    bool validated_ = false;
};

/// First index i (1-based) with sigma(x_i)|N_delta not simeq x_{i+1}|N_delta,
/// or nullopt when the list is a valid delta pseudo-orbit.
std::optional<std::int64_t> first_violation(const std::vector<SymSeq>& points, const DeltaScale& scale,
                                            const SymSeq& tau);

/// Validate and wrap. Throws ContractViolation carrying the first violating
/// index on failure; empty input is an error.
DeltaPseudoOrbit validate(std::vector<SymSeq> points, DeltaScale scale, const SymSeq& tau);

/// Flip column j relative to point `owner` with its minimal flip row:
/// the least i >= 1 with x^owner_j != x^{owner+i}_{j-i}. `all_star` marks
/// the all-star diagonal case of the ledger definition (row fixed at 1).
struct FlipRecord {
    std::int64_t owner = 0;
    std::int64_t column = 0;
    std::int64_t row = 0;
    bool all_star = false;
};

/// All inequality flips relative to x_anchor with columns < horizon,
/// scanning the array directly. Exact orbits scan empty.
std::vector<FlipRecord> flip_scan(const DeltaPseudoOrbit& orbit, std::int64_t anchor, std::int64_t horizon);

/// One alpha_k/j_k/i_k/beta_k row: the k-th tracked flip.
struct LedgerEntry {
    std::int64_t alpha = 0;
    std::int64_t j = 0;
    std::int64_t i = 0;
    std::int64_t beta = 0;  // alpha + j
    bool all_star = false;
};

struct FlipLedger {
    std::vector<LedgerEntry> records;
    std::int64_t horizon = 0;  // N_eps used
};

/// The alpha/beta/j/i sequences: alpha_k minimal past beta_{k-1} whose
/// initial N_eps columns contain a flip (inequality case, or an all-star
/// diagonal with row 1), j_k the minimal such column, beta_k = alpha_k + j_k.
FlipLedger build_ledger(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps);

/// Incremental ledger construction over a streamed orbit. Holds a bounded
/// look-back window; feed points in order, then finish(). Produces the same
/// ledger as build_ledger on the concatenated list.
class StreamingLedgerBuilder {
public:
    StreamingLedgerBuilder(const SymSeq& tau, DeltaScale scale, EpsilonScale eps);
    void push(const SymSeq& point);
    FlipLedger finish();
    std::int64_t points_seen() const { return next_index_ - 1; }

private:
    void scan_ready_anchors(bool draining);
    std::optional<LedgerEntry> flip_at(std::int64_t alpha, bool draining) const;

    SymSeq tau_;
    DeltaScale scale_;
    EpsilonScale eps_;
    std::deque<std::pair<std::int64_t, FiniteWord>> window_;
    std::optional<FiniteWord> prev_full_;
    std::int64_t next_index_ = 1;
    std::int64_t next_anchor_ = 1;
    FlipLedger ledger_;
};

/// Seeded pseudo-orbit generator. Steps are exact shifts except that with
/// probability flip_rate the successor is replaced by an admissible point
/// that differs from the exact successor across a precritical witness
/// planted at a uniformly chosen legal column. Falls back to the exact
/// successor when no legal admissible flip exists. Deterministic per seed.
DeltaPseudoOrbit random_pseudo_orbit(const DendriteSpace& space, const DeltaScale& scale,
                                     std::int64_t length, std::uint64_t seed, double flip_rate,
                                     std::optional<SymSeq> start = std::nullopt);

/// Random admissible point: a seeded binary prefix glued onto the tau tail,
/// rejection-sampled against the admissibility checker.
SymSeq random_admissible_point(const DendriteSpace& space, std::mt19937_64& rng,
                               std::int64_t prefix_len = 12, std::int64_t depth = 64);

/// Columns p where a flip can be planted on successor s: the tail of s
/// beyond p must match the kneading pattern wherever it is non-star, so a
/// precritical witness with star at p joins s to the flipped point.
std::vector<std::int64_t> legal_flip_columns(const FiniteWord& successor_window, const SymSeq& tau,
                                             std::int64_t n_delta);

/// Between consecutive flip columns j1 < j2 relative to x_k the array agrees
/// strictly between the columns: family (1) compares x_k against x_{k+l}
/// for l <= j1+1, family (2) against the points entering at rows j1+1..j2-1.
struct BetweenFlipsReport {
    bool all_hold = true;
    struct Violation {
        int family;
        std::int64_t index;   // l or n
        std::int64_t column;
    };
    std::vector<Violation> violations;
    std::int64_t checks = 0;
};

BetweenFlipsReport verify_between_flips(const DeltaPseudoOrbit& orbit, std::int64_t k, std::int64_t j1,
                                        std::int64_t j2);

/// The s_i/t_i chains for out-of-sync flips over a periodic kneading
/// sequence, with the bound N_delta - t_i < i P asserted on every branch.
struct FlipDiagnostics {
    struct ChainStep {
        std::int64_t s = 0;
        std::int64_t t = 0;
    };
    std::vector<std::vector<ChainStep>> chains;  // every maximal branch
    std::vector<ChainStep> bound_violations;     // expected empty
    std::int64_t anchor = 0;
    std::int64_t anchor_column = 0;  // j: first flip column of the anchor pair
};

/// Lemma verifier for the periodic case. `j` is the anchor pair's first
/// flip column in array coordinates (witness star at j-1 within the
/// successor); out-of-sync means t - j is not a multiple of P.
FlipDiagnostics verify_periodic_flip_bound(const DeltaPseudoOrbit& orbit, const DendriteSpace& space,
                                           std::int64_t k, std::int64_t j);

/// Recurrent-case gap verifier: under (i) j2-j1-1 < m_t and
/// (ii) N_delta-j2-1 > m_{t+1}, a third flip column j3 exists with
/// j3-j2-1 < m_{t+1} whose diagonal break manifests between the two flip
/// rows. Reports the found column or a counterexample.
struct RecurrentGapReport {
    bool found = false;
    std::int64_t j3 = 0;
    std::int64_t row = 0;
    std::int64_t searched_to = 0;
};

RecurrentGapReport verify_recurrent_flip_gap(const DeltaPseudoOrbit& orbit, const DendriteSpace& space,
                                             std::int64_t k, std::int64_t j1, std::int64_t j2,
                                             std::int64_t t);

/// Pseudo-orbit file: "tau: <literal>", "delta_exponent: <N>", then one
/// EXACT point literal per line (UTF-8, LF). Writer/parser round-trip
/// byte-exactly.
void write_orbit_file(std::ostream& out, const DeltaPseudoOrbit& orbit);

struct OrbitFile {
    SymSeq tau;
    DeltaScale scale;
    std::vector<SymSeq> points;
};

OrbitFile read_orbit_file(std::istream& in);

}  // namespace dendrite
