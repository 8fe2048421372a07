#include "dendrite/ict_omega.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>

namespace dendrite {

FinitePointSet make_point_set(std::vector<SymSeq> points, const DendriteSpace& space, std::int64_t depth) {
    FinitePointSet set;
    for (SymSeq& p : points) {
        bool dup = false;
        for (const SymSeq& q : set.points)
            if (sequences_equal(p, q) == Ternary::Yes) {
                dup = true;
                break;
            }
        if (dup) continue;
        Verification adm = is_admissible(p, space, depth);
        if (!adm.verdict)
            throw ContractViolation("point " + p.describe() + " is not admissible (witness n=" +
                                    std::to_string(adm.witness.value_or(-1)) + ")");
        set.points.push_back(std::move(p));
        set.certificates.push_back(adm);
    }
    if (set.points.empty()) throw ContractViolation("point set must be nonempty");
    return set;
}

TransitionGraph transition_graph(const FinitePointSet& set, const EpsilonScale& eps,
                                 const DendriteSpace& space) {
    TransitionGraph g;
    g.n = set.size();
    g.eps = eps;
    const std::int64_t ne = eps.n_eps;
    std::vector<FiniteWord> heads, shifted;
    heads.reserve(set.points.size());
    shifted.reserve(set.points.size());
    for (const SymSeq& p : set.points) {
        heads.push_back(p.truncated(ne));
        shifted.push_back(p.shifted(1).truncated(ne));
    }
    g.edge.assign(static_cast<std::size_t>(g.n), std::vector<bool>(static_cast<std::size_t>(g.n), false));
    for (std::int64_t u = 0; u < g.n; ++u)
        for (std::int64_t v = 0; v < g.n; ++v)
            g.edge[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                simeq(shifted[static_cast<std::size_t>(u)], heads[static_cast<std::size_t>(v)], space.tau)
                    .holds;
    return g;
}

namespace {

// Shortest path from u to v through at least one edge; empty when none.
std::vector<std::int64_t> bfs_path(const TransitionGraph& g, std::int64_t u, std::int64_t v) {
    std::vector<std::int64_t> parent(static_cast<std::size_t>(g.n), -1);
    std::queue<std::int64_t> q;
    // Seed with u's successors so the path uses >= 1 edge even when u == v.
    for (std::int64_t w = 0; w < g.n; ++w) {
        if (g.has_edge(u, w) && parent[static_cast<std::size_t>(w)] < 0) {
            parent[static_cast<std::size_t>(w)] = u;
            q.push(w);
        }
    }
    while (!q.empty()) {
        const std::int64_t x = q.front();
        q.pop();
        if (x == v) {
            std::vector<std::int64_t> path{v};
            std::int64_t cur = v;
            while (cur != u || path.size() == 1) {
                cur = parent[static_cast<std::size_t>(cur)];
                path.push_back(cur);
                if (cur == u) break;
            }
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (std::int64_t w = 0; w < g.n; ++w) {
            if (g.has_edge(x, w) && parent[static_cast<std::size_t>(w)] < 0) {
                parent[static_cast<std::size_t>(w)] = x;
                q.push(w);
            }
        }
    }
    return {};
}

}  // namespace

IctResult is_ict(const FinitePointSet& set, const EpsilonScale& eps, const DendriteSpace& space) {
    const TransitionGraph g = transition_graph(set, eps, space);
    IctResult out;
    for (std::int64_t u = 0; u < g.n; ++u) {
        for (std::int64_t v = 0; v < g.n; ++v) {
            if (bfs_path(g, u, v).empty()) {
                out.ict = false;
                out.disconnected = {u, v};
                return out;
            }
        }
    }
    out.ict = true;
    // Certificate: a closed walk through every node.
    std::vector<std::int64_t> walk{0};
    for (std::int64_t v = 1; v <= g.n; ++v) {
        const std::int64_t target = v % g.n;
        auto leg = bfs_path(g, walk.back(), target);
        walk.insert(walk.end(), leg.begin() + 1, leg.end());
    }
    out.closed_walk = std::move(walk);
    return out;
}

bool is_weakly_incompressible(const FinitePointSet& set, const EpsilonScale& eps,
                              const DendriteSpace& space) {
    const std::int64_t n = set.size();
    if (n > 16) throw ContractViolation("weak incompressibility brute force limited to 16 points");
    const TransitionGraph g = transition_graph(set, eps, space);
    std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(n), 0);
    for (std::int64_t u = 0; u < n; ++u)
        for (std::int64_t v = 0; v < n; ++v)
            if (g.has_edge(u, v)) out_mask[static_cast<std::size_t>(u)] |= (std::uint32_t{1} << v);
    const std::uint32_t full = (n == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
    for (std::uint32_t K = 1; K < full; ++K) {
        bool reached = false;
        for (std::int64_t m = 0; m < n && !reached; ++m) {
            if (K & (std::uint32_t{1} << m)) continue;  // m must lie in the complement
            reached = (out_mask[static_cast<std::size_t>(m)] & K) != 0;
        }
        if (!reached) return false;
    }
    return true;
}

OmegaBuildResult build_omega_point(const FinitePointSet& set, const DendriteSpace& space,
                                   std::int64_t depth) {
    if (depth < 1) throw ContractViolation("omega build depth must be >= 1");
    bool has_non_precritical = false;
    for (const SymSeq& p : set.points)
        if (p.star_free_to(64)) has_non_precritical = true;
    if (!has_non_precritical)
        throw ContractViolation("omega build requires a non-precritical point in the set");

    const std::int64_t B = set.size();
    FiniteWord symbols;
    symbols.reserve(static_cast<std::size_t>(depth));
    OmegaBuildPlan plan;
    plan.depth = depth;

    std::int64_t i = 1;
    while (static_cast<std::int64_t>(symbols.size()) < depth) {
        const std::int64_t from = (i - 1) % B;
        const std::int64_t to = i % B;
        const EpsilonScale eps_i = EpsilonScale::from_exponent(i);
        const DeltaScale delta_i = delta_for_epsilon(space, eps_i);
        const TransitionGraph g = transition_graph(set, EpsilonScale::from_exponent(delta_i.n_delta), space);

        // The set must stay chain-connected at this resolution.
        for (std::int64_t u = 0; u < B; ++u)
            for (std::int64_t v = 0; v < B; ++v)
                if (bfs_path(g, u, v).empty())
                    throw ContractViolation("set is not internally chain transitive at scale 2^-" +
                                            std::to_string(delta_i.n_delta) + " (pair " + std::to_string(u) +
                                            " -> " + std::to_string(v) + ")");

        std::vector<std::int64_t> path = bfs_path(g, from, to);
        const std::int64_t min_contribution = std::max<std::int64_t>(i - 1, 1);
        while (static_cast<std::int64_t>(path.size()) - 1 < min_contribution) {
            auto loop = bfs_path(g, to, to);
            path.insert(path.end(), loop.begin() + 1, loop.end());
        }

        std::vector<SymSeq> leg_points;
        leg_points.reserve(path.size());
        for (std::int64_t node : path) leg_points.push_back(set.points[static_cast<std::size_t>(node)]);
        DeltaPseudoOrbit leg = validate(std::move(leg_points), delta_i, space.tau);
        CanonicalShadow shadow = canonical_shadow(leg, eps_i, space);
        SymSeq assigned = assign_shadow(shadow, AssignmentPolicy::prefer_orbit(), space,
                                        std::max<std::int64_t>(64, 2 * delta_i.n_delta),
                                        /*never_star=*/true);

        OmegaSegment seg;
        seg.index = i;
        seg.from = from;
        seg.to = to;
        seg.delta_exponent = delta_i.n_delta;
        seg.path = path;
        seg.contribution = static_cast<std::int64_t>(path.size()) - 1;
        seg.start_offset = static_cast<std::int64_t>(symbols.size());
        plan.segments.push_back(seg);

        const FiniteWord leg_word = assigned.truncated(seg.contribution - 1);
        symbols.insert(symbols.end(), leg_word.begin(), leg_word.end());
        ++i;
    }
    symbols.resize(static_cast<std::size_t>(depth));

    OmegaBuildResult out;
    out.plan = std::move(plan);
    out.z = SymSeq::from_generator(make_table_generator("omega-point", std::move(symbols)));
    return out;
}

OmegaApproximation approximate_omega(const SymSeq& z, const EpsilonScale& eps, const DendriteSpace& space,
                                     std::int64_t horizon, std::int64_t burn_in) {
    if (horizon < burn_in) throw ContractViolation("horizon must be >= burn_in");
    const std::int64_t ne = eps.n_eps;
    if (horizon + ne > z.certified_depth()) throw DepthExceeded("z too shallow for the requested horizon");

    const FiniteWord zw = z.truncated(horizon + ne);
    OmegaApproximation out;
    out.horizon = horizon;
    out.burn_in = burn_in;
    std::vector<FiniteWord> reps;
    for (std::int64_t i = burn_in; i <= horizon; ++i) {
        FiniteWord w(zw.begin() + static_cast<std::ptrdiff_t>(i),
                     zw.begin() + static_cast<std::ptrdiff_t>(i + ne) + 1);
        bool matched = false;
        for (std::size_t r = 0; r < reps.size() && !matched; ++r) {
            if (simeq(w, reps[r], space.tau).holds) {
                matched = true;
                ++out.visit_counts[r];
            }
        }
        if (!matched) {
            reps.push_back(w);
            out.set.points.push_back(z.shifted(i));
            out.visit_counts.push_back(1);
        }
    }
    for (const SymSeq& p : out.set.points)
        out.set.certificates.push_back(is_admissible(p, space, std::min<std::int64_t>(32, z.certified_depth() - horizon)));
    return out;
}

OmegaVerifyReport verify_omega_equals(const FinitePointSet& set, const SymSeq& z, const EpsilonScale& eps,
                                      const DendriteSpace& space, std::int64_t horizon,
                                      std::int64_t min_visits, std::int64_t burn_in) {
    if (horizon < burn_in) throw ContractViolation("horizon must be >= burn_in");
    const std::int64_t ne = eps.n_eps;
    if (horizon + ne > z.certified_depth()) throw DepthExceeded("z too shallow for the requested horizon");

    OmegaVerifyReport report;
    report.visits.assign(set.points.size(), 0);

    const FiniteWord zw = z.truncated(horizon + ne);
    std::vector<FiniteWord> member_heads, member_coarse;
    const std::int64_t coarse = std::max<std::int64_t>(ne - 1, 0);  // 2 eps resolution
    for (const SymSeq& p : set.points) {
        member_heads.push_back(p.truncated(ne));
        member_coarse.push_back(p.truncated(coarse));
    }

    report.subset_ok = true;
    for (std::int64_t i = burn_in; i <= horizon; ++i) {
        bool near = false;
        for (std::size_t b = 0; b < set.points.size(); ++b) {
            FiniteWord wi(zw.begin() + static_cast<std::ptrdiff_t>(i),
                          zw.begin() + static_cast<std::ptrdiff_t>(i + ne) + 1);
            if (simeq(wi, member_heads[b], space.tau).holds) ++report.visits[b];
            FiniteWord ci(zw.begin() + static_cast<std::ptrdiff_t>(i),
                          zw.begin() + static_cast<std::ptrdiff_t>(i + coarse) + 1);
            near = near || simeq(ci, member_coarse[b], space.tau).holds;
        }
        if (!near && report.subset_ok) {
            report.subset_ok = false;
            report.stray_iterate = i;
        }
    }
    report.superset_ok = true;
    for (std::size_t b = 0; b < set.points.size(); ++b) {
        if (report.visits[b] < min_visits) {
            report.superset_ok = false;
            report.unvisited_member = static_cast<std::int64_t>(b);
            break;
        }
    }
    return report;
}

FinitePointSet random_cycle_set(const DendriteSpace& space, std::mt19937_64& rng,
                                std::int64_t max_period) {
    if (max_period < 1) throw ContractViolation("max_period must be >= 1");
    for (int attempt = 0; attempt < 512; ++attempt) {
        const auto len = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(max_period));
        FiniteWord w;
        for (std::int64_t ii = 0; ii < len; ++ii) w.push_back((rng() & 1) ? Symbol::One : Symbol::Zero);
        SymSeq p = SymSeq::exact({}, w);
        if (!is_admissible(p, space, 64).verdict) continue;
        std::vector<SymSeq> cycle;
        const auto P = static_cast<std::int64_t>(p.period().size());
        for (std::int64_t k = 0; k < P; ++k) cycle.push_back(p.shifted(k));
        return make_point_set(std::move(cycle), space);
    }
    throw Error("no admissible periodic point found after 512 attempts");
}

void write_set_file(std::ostream& out, const DendriteSpace& space, const FinitePointSet& set) {
    out << "tau: " << space.tau.format() << "\n";
    for (const SymSeq& p : set.points) out << p.format() << "\n";
}

SetFile read_set_file(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("tau: ", 0) != 0)
        throw ParseError("set file must start with 'tau: <literal>'");
    SetFile file;
    file.tau = parse_literal(line.substr(5));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        file.points.push_back(parse_literal(line));
    }
    if (file.points.empty()) throw ParseError("set file carries no points");
    return file;
}

}  // namespace dendrite
