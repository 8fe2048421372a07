#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "dendrite/shadowing.hpp"

namespace dendrite {

/// Finitely many pairwise distinct admissible points (B in the omega-limit
/// characterization). EXACT members serialize to set files; generator-backed
/// members are allowed in memory when their certified depth suffices.
struct FinitePointSet {
    std::vector<SymSeq> points;
    std::vector<Verification> certificates;

    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

/// Deduplicate (semantic equality), verify admissibility of every member.
/// Throws ContractViolation when a member fails the admissibility check.
FinitePointSet make_point_set(std::vector<SymSeq> points, const DendriteSpace& space,
                              std::int64_t depth = 64);

/// Edge (u, v) present iff sigma(point_u)|N_eps simeq point_v|N_eps, i.e.
/// d(sigma(p_u), p_v) < eps.
struct TransitionGraph {
    std::int64_t n = 0;
    EpsilonScale eps;
    std::vector<std::vector<bool>> edge;

    bool has_edge(std::int64_t u, std::int64_t v) const {
        return edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    }
};

TransitionGraph transition_graph(const FinitePointSet& set, const EpsilonScale& eps,
                                 const DendriteSpace& space);

/// eps-resolution internal chain transitivity: an eps pseudo-orbit of
/// length >= 1 joins every ordered pair, i.e. the transition graph is
/// strongly connected through at least one edge. The certificate is a
/// closed walk visiting every node, or a disconnected pair.
struct IctResult {
    bool ict = false;
    std::optional<std::pair<std::int64_t, std::int64_t>> disconnected;
    std::vector<std::int64_t> closed_walk;
};

IctResult is_ict(const FinitePointSet& set, const EpsilonScale& eps, const DendriteSpace& space);

/// Brute-force eps-resolution weak incompressibility: every nonempty proper
/// subset K receives an edge from its complement. |set| <= 16.
bool is_weakly_incompressible(const FinitePointSet& set, const EpsilonScale& eps,
                              const DendriteSpace& space);

/// One chain of the omega-point construction: a delta_i pseudo-orbit
/// through the set from one cycle anchor to the next, padded with loops
/// until its contribution exceeds N_{1/2^{i-1}}.
struct OmegaSegment {
    std::int64_t index = 0;  // i: scale 2^-i
    std::int64_t from = 0;
    std::int64_t to = 0;
    std::int64_t delta_exponent = 0;
    std::vector<std::int64_t> path;   // node indices, length contribution+1
    std::int64_t contribution = 0;    // symbols emitted
    std::int64_t start_offset = 0;    // nu_{i-1}: where this segment begins in z
};

struct OmegaBuildPlan {
    std::vector<OmegaSegment> segments;
    std::int64_t depth = 0;
};

struct OmegaBuildResult {
    SymSeq z;  // generator-backed, certified to depth
    OmegaBuildPlan plan;
};

/// Thm 4.3 construction at desk scale: cyclically enumerate the set, chain
/// segment i at scale delta_i = delta_for_epsilon(2^-i) found by path
/// search in the transition graph (self-cycle padding as needed), shadow
/// each segment with 0/1 assignments (never a star), concatenate.
/// Errors when the set is not chain-connected at some required scale or
/// contains no non-precritical point.
OmegaBuildResult build_omega_point(const FinitePointSet& set, const DendriteSpace& space,
                                   std::int64_t depth);

/// Finite-horizon omega proxy: cluster sigma^i(z) for i in [burn_in,
/// horizon] by N_eps agreement; cluster representatives plus visit counts.
struct OmegaApproximation {
    FinitePointSet set;
    std::vector<std::int64_t> visit_counts;
    std::int64_t horizon = 0;
    std::int64_t burn_in = 0;
};

OmegaApproximation approximate_omega(const SymSeq& z, const EpsilonScale& eps, const DendriteSpace& space,
                                     std::int64_t horizon, std::int64_t burn_in);

/// Both inclusions of omega(z) = B at finite resolution: every member is
/// eps-visited at least min_visits times past burn-in, and every iterate
/// past burn-in sits within 2 eps of some member.
struct OmegaVerifyReport {
    bool superset_ok = false;  // B subset of omega(z) proxy
    bool subset_ok = false;    // omega(z) proxy subset of B
    std::vector<std::int64_t> visits;
    std::optional<std::int64_t> unvisited_member;
    std::optional<std::int64_t> stray_iterate;
};

OmegaVerifyReport verify_omega_equals(const FinitePointSet& set, const SymSeq& z, const EpsilonScale& eps,
                                      const DendriteSpace& space, std::int64_t horizon,
                                      std::int64_t min_visits, std::int64_t burn_in);

/// Random purely periodic admissible point's full shift cycle (a finite ICT
/// set at every scale). Periods up to max_period.
FinitePointSet random_cycle_set(const DendriteSpace& space, std::mt19937_64& rng,
                                std::int64_t max_period);

/// Set file: "tau: <literal>", then one EXACT point literal per line.
void write_set_file(std::ostream& out, const DendriteSpace& space, const FinitePointSet& set);

struct SetFile {
    SymSeq tau;
    std::vector<SymSeq> points;
};

SetFile read_set_file(std::istream& in);

}  // namespace dendrite
