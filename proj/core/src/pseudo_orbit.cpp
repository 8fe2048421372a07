#include "dendrite/pseudo_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace dendrite {

DeltaScale DeltaScale::from_delta(double d) {
    const EpsilonScale e = EpsilonScale::from_epsilon(d);
    return DeltaScale{d, e.n_eps};
}

DeltaScale DeltaScale::from_exponent(std::int64_t n) {
    if (n < 0) throw ContractViolation("delta exponent must be >= 0");
    return DeltaScale{std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(n, 1074))), n};
}

const SymSeq& DeltaPseudoOrbit::point(std::int64_t i) const {
    if (i < 1 || i > size()) throw ContractViolation("point index out of range");
    return points_[static_cast<std::size_t>(i - 1)];
}

Symbol DeltaPseudoOrbit::entry(std::int64_t i, std::int64_t j) const {
    const FiniteWord& w = window(i);
    if (j < 0 || j >= static_cast<std::int64_t>(w.size()))
        throw ContractViolation("array column outside the materialized window");
    return w[static_cast<std::size_t>(j)];
}

const FiniteWord& DeltaPseudoOrbit::window(std::int64_t i) const {
    if (i < 1 || i > size()) throw ContractViolation("point index out of range");
    return windows_[static_cast<std::size_t>(i - 1)];
}

namespace {

// sigma(x_i)|N_delta simeq x_{i+1}|N_delta, on materialized windows of
// length N_delta+2.
bool pair_valid(const FiniteWord& wi, const FiniteWord& wj, const SymSeq& tau, std::int64_t n_delta) {
    FiniteWord shifted(wi.begin() + 1, wi.begin() + static_cast<std::ptrdiff_t>(n_delta) + 2);
    FiniteWord head(wj.begin(), wj.begin() + static_cast<std::ptrdiff_t>(n_delta) + 1);
    return simeq(shifted, head, tau).holds;
}

}  // namespace

std::optional<std::int64_t> first_violation(const std::vector<SymSeq>& points, const DeltaScale& scale,
                                            const SymSeq& tau) {
    if (points.empty()) throw ContractViolation("pseudo-orbit requires at least one point");
    std::vector<FiniteWord> windows;
    windows.reserve(points.size());
    for (const SymSeq& p : points) windows.push_back(p.truncated(scale.n_delta + 1));
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!pair_valid(windows[i], windows[i + 1], tau, scale.n_delta))
            return static_cast<std::int64_t>(i) + 1;
    return std::nullopt;
}

DeltaPseudoOrbit validate(std::vector<SymSeq> points, DeltaScale scale, const SymSeq& tau) {
    if (points.empty()) throw ContractViolation("pseudo-orbit requires at least one point");
    DeltaPseudoOrbit orbit;
    orbit.windows_.reserve(points.size());
    for (const SymSeq& p : points) orbit.windows_.push_back(p.truncated(scale.n_delta + 1));
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!pair_valid(orbit.windows_[i], orbit.windows_[i + 1], tau, scale.n_delta))
            throw ContractViolation("pseudo-orbit violation at index " + std::to_string(i + 1));
    }
    orbit.points_ = std::move(points);
    orbit.scale_ = scale;
    orbit.tau_ = tau;
    orbit.validated_ = true;
    return orbit;
}

std::vector<FlipRecord> flip_scan(const DeltaPseudoOrbit& orbit, std::int64_t anchor, std::int64_t horizon) {
    if (!orbit.validated()) throw ContractViolation("flip scan requires a validated orbit");
    if (anchor < 1 || anchor > orbit.size()) throw ContractViolation("anchor beyond orbit end");
    if (horizon < 0 || horizon > orbit.scale().n_delta + 1)
        throw ContractViolation("flip horizon exceeds the materialized window");
    std::vector<FlipRecord> out;
    const std::int64_t L = orbit.size();
    for (std::int64_t j = 0; j < horizon; ++j) {
        const Symbol target = orbit.entry(anchor, j);
        const std::int64_t max_i = std::min(j, L - anchor);
        for (std::int64_t i = 1; i <= max_i; ++i) {
            if (orbit.entry(anchor + i, j - i) != target) {
                out.push_back(FlipRecord{anchor, j, i, false});
                break;
            }
        }
    }
    return out;
}

namespace {

// Ledger flip detection at one anchor: minimal column j < horizon carrying
// either an inequality down the diagonal (case 1, minimal row) or an
// all-star diagonal (case 2, row 1). `window_of` must serve points
// first..last.
template <typename WindowOf>
std::optional<LedgerEntry> ledger_flip_at(WindowOf&& window_of, std::int64_t last, std::int64_t alpha,
                                          std::int64_t horizon) {
    const FiniteWord& base = window_of(alpha);
    for (std::int64_t j = 0; j < horizon; ++j) {
        const Symbol target = base[static_cast<std::size_t>(j)];
        const std::int64_t max_i = std::min(j, last - alpha);
        for (std::int64_t i = 1; i <= max_i; ++i) {
            if (window_of(alpha + i)[static_cast<std::size_t>(j - i)] != target)
                return LedgerEntry{alpha, j, i, alpha + j, false};
        }
        if (target == Symbol::Star && alpha + j <= last) {
            bool all_star = true;
            for (std::int64_t i = 1; i <= j && all_star; ++i)
                all_star = window_of(alpha + i)[static_cast<std::size_t>(j - i)] == Symbol::Star;
            if (all_star) return LedgerEntry{alpha, j, 1, alpha + j, true};
        }
    }
    return std::nullopt;
}

}  // namespace

FlipLedger build_ledger(const DeltaPseudoOrbit& orbit, const EpsilonScale& eps) {
    if (!orbit.validated()) throw ContractViolation("ledger requires a validated orbit");
    if (eps.n_eps > orbit.scale().n_delta)
        throw ContractViolation("ledger horizon N_eps exceeds the orbit's N_delta");
    FlipLedger ledger;
    ledger.horizon = eps.n_eps;
    const std::int64_t L = orbit.size();
    auto window_of = [&](std::int64_t i) -> const FiniteWord& { return orbit.window(i); };
    std::int64_t alpha = 1;
    while (alpha <= L) {
        auto entry = ledger_flip_at(window_of, L, alpha, eps.n_eps);
        if (entry) {
            ledger.records.push_back(*entry);
            alpha = entry->beta + 1;
        } else {
            ++alpha;
        }
    }
    return ledger;
}

StreamingLedgerBuilder::StreamingLedgerBuilder(const SymSeq& tau, DeltaScale scale, EpsilonScale eps)
    : tau_(tau), scale_(scale), eps_(eps) {
    if (eps.n_eps > scale.n_delta)
        throw ContractViolation("ledger horizon N_eps exceeds the orbit's N_delta");
}

void StreamingLedgerBuilder::push(const SymSeq& point) {
    FiniteWord w = point.truncated(scale_.n_delta + 1);
    if (prev_full_ && !pair_valid(*prev_full_, w, tau_, scale_.n_delta))
        throw ContractViolation("pseudo-orbit violation at index " + std::to_string(next_index_ - 1));
    prev_full_ = w;
    window_.emplace_back(next_index_, std::move(w));
    ++next_index_;
    scan_ready_anchors(false);
}

std::optional<LedgerEntry> StreamingLedgerBuilder::flip_at(std::int64_t alpha, bool) const {
    const std::int64_t front = window_.front().first;
    auto window_of = [&](std::int64_t i) -> const FiniteWord& {
        return window_[static_cast<std::size_t>(i - front)].second;
    };
    return ledger_flip_at(window_of, points_seen(), alpha, eps_.n_eps);
}

void StreamingLedgerBuilder::scan_ready_anchors(bool draining) {
    while (next_anchor_ <= points_seen() &&
           (draining || next_anchor_ + eps_.n_eps - 1 <= points_seen())) {
        while (!window_.empty() && window_.front().first < next_anchor_) window_.pop_front();
        auto entry = flip_at(next_anchor_, draining);
        if (entry) {
            ledger_.records.push_back(*entry);
            next_anchor_ = entry->beta + 1;
        } else {
            ++next_anchor_;
        }
    }
}

FlipLedger StreamingLedgerBuilder::finish() {
    scan_ready_anchors(true);
    ledger_.horizon = eps_.n_eps;
    return ledger_;
}

std::vector<std::int64_t> legal_flip_columns(const FiniteWord& successor_window, const SymSeq& tau,
                                             std::int64_t n_delta) {
    if (static_cast<std::int64_t>(successor_window.size()) < n_delta + 1)
        throw ContractViolation("successor window shorter than N_delta+1");
    std::vector<std::int64_t> legal;
    const FiniteWord tau_win = tau.truncated(std::max<std::int64_t>(n_delta - 1, 0));
    if (star_free(tau_win)) {
        // Wildcard-free pattern: the condition is a plain suffix/prefix
        // match, one Z pass over tau # successor decides every column.
        FiniteWord concat = tau_win;
        concat.push_back(Symbol::Star);  // separator never matches a binary symbol
        concat.insert(concat.end(), successor_window.begin(), successor_window.end());
        const auto tlen = static_cast<std::int64_t>(tau_win.size());
        std::vector<std::int64_t> z(concat.size(), 0);
        {
            const auto n = static_cast<std::int64_t>(concat.size());
            std::int64_t l = 0, r = 0;
            z[0] = n;
            for (std::int64_t q = 1; q < n; ++q) {
                std::int64_t m = 0;
                if (q < r) m = std::min(r - q, z[static_cast<std::size_t>(q - l)]);
                while (q + m < n &&
                       concat[static_cast<std::size_t>(m)] == concat[static_cast<std::size_t>(q + m)])
                    ++m;
                z[static_cast<std::size_t>(q)] = m;
                if (q + m > r) {
                    l = q;
                    r = q + m;
                }
            }
        }
        for (std::int64_t p = 0; p <= n_delta; ++p) {
            if (p == n_delta) {
                legal.push_back(p);
                continue;
            }
            const std::int64_t match = z[static_cast<std::size_t>(tlen + 1 + p + 1)];
            if (match >= n_delta - p) legal.push_back(p);
        }
        return legal;
    }
    for (std::int64_t p = 0; p <= n_delta; ++p) {
        bool ok = true;
        for (std::int64_t q = p + 1; q <= n_delta && ok; ++q) {
            const Symbol pat = tau_win[static_cast<std::size_t>(q - p - 1)];
            ok = (pat == Symbol::Star) || successor_window[static_cast<std::size_t>(q)] == pat;
        }
        if (ok) legal.push_back(p);
    }
    return legal;
}

SymSeq random_admissible_point(const DendriteSpace& space, std::mt19937_64& rng, std::int64_t prefix_len,
                               std::int64_t depth) {
    // Gluing the bare tau tail onto a binary word yields phantom preimages
    // of the critical value (never admissible), so candidate tails are
    // either random periodic words or proper shifts of tau.
    for (int attempt = 0; attempt < 512; ++attempt) {
        FiniteWord prefix;
        for (std::int64_t i = 0; i < prefix_len; ++i)
            prefix.push_back((rng() & 1) ? Symbol::One : Symbol::Zero);
        SymSeq candidate;
        if (space.tau.is_exact()) {
            FiniteWord period;
            const std::int64_t per_len = 1 + static_cast<std::int64_t>(rng() % 4);
            for (std::int64_t i = 0; i < per_len; ++i)
                period.push_back((rng() & 1) ? Symbol::One : Symbol::Zero);
            candidate = SymSeq::exact(prefix, period);
        } else {
            const std::int64_t shift = 1 + static_cast<std::int64_t>(rng() % 8);
            candidate = SymSeq::with_prefix(prefix, space.tau.shifted(shift));
        }
        if (is_admissible(candidate, space, depth).verdict) return candidate;
    }
    throw Error("no admissible point found after 512 attempts");
}

DeltaPseudoOrbit random_pseudo_orbit(const DendriteSpace& space, const DeltaScale& scale,
                                     std::int64_t length, std::uint64_t seed, double flip_rate,
                                     std::optional<SymSeq> start) {
    if (length < 1) throw ContractViolation("orbit length must be >= 1");
    if (flip_rate < 0.0 || flip_rate > 1.0) throw ContractViolation("flip rate must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<SymSeq> points;
    points.reserve(static_cast<std::size_t>(length));
    points.push_back(start ? *start : random_admissible_point(space, rng));

    const std::int64_t nd = scale.n_delta;
    for (std::int64_t step = 1; step < length; ++step) {
        SymSeq successor = points.back().shifted(1);
        SymSeq next = successor;
        if (unif(rng) < flip_rate) {
            const FiniteWord s_win = successor.truncated(nd);
            const auto legal = legal_flip_columns(s_win, space.tau, nd);
            if (!legal.empty()) {
                const std::int64_t p =
                    legal[static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(legal.size()))];
                const Symbol here = s_win[static_cast<std::size_t>(p)];
                // A star inside the kept prefix pins everything after it to
                // the tau tail. For generated (star-free) tau no rewrite can
                // honor that, and the depth-qualified consistency check
                // cannot certify deep stars, so such columns are skipped;
                // EXACT tau candidates get an unconditional check below.
                bool prefix_clean = true;
                for (std::int64_t q = 0; q < p; ++q)
                    prefix_clean = prefix_clean && s_win[static_cast<std::size_t>(q)] != Symbol::Star;
                Symbol order[3] = {Symbol::Zero, Symbol::One, Symbol::Star};
                std::shuffle(order, order + 3, rng);
                for (Symbol b : order) {
                    if (b == here) continue;
                    if (!prefix_clean && !space.tau.is_exact()) break;
                    FiniteWord prefix(s_win.begin(), s_win.begin() + static_cast<std::ptrdiff_t>(p));
                    prefix.push_back(b);
                    SymSeq candidate;
                    if (b == Symbol::Star) {
                        // The precritical witness itself: star forces the tau tail.
                        candidate = SymSeq::with_prefix(prefix, space.tau);
                    } else {
                        // Copy the pattern through the window, fill its star
                        // slots with fresh bits, then leave the orbit of tau:
                        // a point that copies the whole critical tail is a
                        // phantom preimage and never admissible.
                        for (std::int64_t q = p + 1; q <= nd; ++q) {
                            const Symbol pat = space.tau.at(q - p - 1);
                            prefix.push_back(pat == Symbol::Star ? ((rng() & 1) ? Symbol::One : Symbol::Zero)
                                                                 : pat);
                        }
                        candidate = SymSeq::with_prefix(prefix, random_admissible_point(space, rng, 8, 64));
                    }
                    // A star in the copied prefix pins the rest of the point
                    // to the tau tail; a plant that rewrites that region is
                    // inconsistent and vetoed here.
                    if (!is_consistent(candidate, space, 64).verdict) continue;
                    if (is_admissible(candidate, space, 64).verdict) {
                        next = candidate;
                        break;
                    }
                }
            }
        }
        points.push_back(std::move(next));
    }
    return validate(std::move(points), scale, space.tau);
}

BetweenFlipsReport verify_between_flips(const DeltaPseudoOrbit& orbit, std::int64_t k, std::int64_t j1,
                                        std::int64_t j2) {
    if (j1 < 0 || j1 >= j2) throw ContractViolation("need flip columns j1 < j2");
    const auto flips = flip_scan(orbit, k, j2 + 1);
    bool saw1 = false, saw2 = false;
    for (const FlipRecord& f : flips) {
        if (f.column == j1) saw1 = true;
        if (f.column == j2) saw2 = true;
        if (f.column > j1 && f.column < j2)
            throw ContractViolation("premise violated: flip column " + std::to_string(f.column) +
                                    " lies between j1 and j2");
    }
    if (!saw1 || !saw2) throw ContractViolation("premise violated: j1 and j2 must be flip columns");

    BetweenFlipsReport report;
    const std::int64_t L = orbit.size();
    for (std::int64_t l = 1; l <= std::min(j1 + 1, L - k); ++l) {
        for (std::int64_t c = j1 + 1; c <= j2 - 1; ++c) {
            ++report.checks;
            if (orbit.entry(k, c) != orbit.entry(k + l, c - l)) {
                report.all_hold = false;
                report.violations.push_back({1, l, c});
            }
        }
    }
    for (std::int64_t n = 1; n <= j2 - j1 - 1 && k + j1 + n <= L; ++n) {
        for (std::int64_t c = j1 + n; c <= j2 - 1; ++c) {
            ++report.checks;
            if (orbit.entry(k, c) != orbit.entry(k + j1 + n, c - j1 - n)) {
                report.all_hold = false;
                report.violations.push_back({2, n, c});
            }
        }
    }
    return report;
}

namespace {

// The s_i/t_i chain: at each step the minimal flip row past the previous
// one, and among that row's qualifying columns the one nearest the window
// edge (the downstream-agreement argument needs no further flip beyond it).
void enumerate_chain(const std::vector<FlipRecord>& flips, std::int64_t n_delta, std::int64_t period,
                     FlipDiagnostics& diag) {
    std::int64_t prev_s = 0;
    std::int64_t prev_t = n_delta;
    std::vector<FlipDiagnostics::ChainStep> chain;
    for (std::size_t step = 1;; ++step) {
        std::int64_t s = -1;
        for (const FlipRecord& f : flips)
            if (f.row > prev_s && f.column < prev_t && (s < 0 || f.row < s)) s = f.row;
        if (s < 0) break;
        std::int64_t t = -1;
        for (const FlipRecord& f : flips)
            if (f.row == s && f.column < prev_t) t = std::max(t, f.column);
        const FlipDiagnostics::ChainStep here{s, t};
        if (n_delta - t >= static_cast<std::int64_t>(step) * period) diag.bound_violations.push_back(here);
        chain.push_back(here);
        prev_s = s;
        prev_t = t;
    }
    if (!chain.empty()) diag.chains.push_back(std::move(chain));
}

}  // namespace

FlipDiagnostics verify_periodic_flip_bound(const DeltaPseudoOrbit& orbit, const DendriteSpace& space,
                                           std::int64_t k, std::int64_t j) {
    if (space.classification.kind != KneadingKind::Periodic)
        throw ContractViolation("periodic flip bound requires a periodic kneading sequence");
    if (k < 1 || k >= orbit.size()) throw ContractViolation("anchor must have a successor");
    const std::int64_t nd = orbit.scale().n_delta;
    const std::int64_t P = space.classification.period;

    // Premise: the anchor pair is joined by a precritical witness whose
    // first star sits at array column j (successor position j-1).
    FiniteWord shifted(orbit.window(k).begin() + 1, orbit.window(k).end());
    FiniteWord head(orbit.window(k + 1).begin(), orbit.window(k + 1).end() - 1);
    const SimeqResult rel = simeq(shifted, head, space.tau);
    if (!rel.holds || !rel.witness)
        throw ContractViolation("anchor pair carries no precritical witness");
    if (rel.witness->star_position != j - 1)
        throw ContractViolation("anchor witness star sits at column " +
                                std::to_string(rel.witness->star_position + 1) + ", not " + std::to_string(j));

    FlipDiagnostics diag;
    diag.anchor = k;
    diag.anchor_column = j;
    // Only flips beyond the anchor star are governed by the witness
    // pattern; out-of-sync means the column leaves the star's mod-P class.
    std::vector<FlipRecord> flips;
    for (const FlipRecord& f : flip_scan(orbit, k, nd + 1))
        if (f.column > j && f.column < nd && (f.column - j) % P != 0) flips.push_back(f);

    enumerate_chain(flips, nd, P, diag);
    return diag;
}

RecurrentGapReport verify_recurrent_flip_gap(const DeltaPseudoOrbit& orbit, const DendriteSpace& space,
                                             std::int64_t k, std::int64_t j1, std::int64_t j2,
                                             std::int64_t t) {
    if (space.classification.kind != KneadingKind::RecurrentNonperiodic)
        throw ContractViolation("recurrent flip gap requires a recurrent non-periodic kneading sequence");
    const auto& ms = space.classification.milestone_seq.values;
    if (t < 1 || static_cast<std::size_t>(t + 1) > ms.size())
        throw ContractViolation("milestone index t (and t+1) not certified");
    const std::int64_t m_t = ms[static_cast<std::size_t>(t - 1)];
    const std::int64_t m_t1 = ms[static_cast<std::size_t>(t)];
    const std::int64_t nd = orbit.scale().n_delta;

    const auto flips = flip_scan(orbit, k, j2 + 1);
    std::optional<std::int64_t> i1, i2;
    for (const FlipRecord& f : flips) {
        if (f.column == j1) i1 = f.row;
        if (f.column == j2) i2 = f.row;
        if (f.column > j1 && f.column < j2)
            throw ContractViolation("premise violated: flips must be consecutive");
    }
    if (!i1 || !i2) throw ContractViolation("premise violated: j1 and j2 must be flip columns");
    if (*i1 == *i2) throw ContractViolation("rows must differ");
    if (!(j2 - j1 - 1 < m_t)) throw ContractViolation("premise (i) fails: j2-j1-1 >= m_t");
    if (!(nd - j2 - 1 > m_t1)) throw ContractViolation("premise (ii) fails: N_delta-j2-1 <= m_{t+1}");

    const std::int64_t lo = std::min(*i1, *i2);
    const std::int64_t hi = std::max(*i1, *i2);
    RecurrentGapReport report;
    report.searched_to = std::min(j2 + m_t1, nd);
    const std::int64_t L = orbit.size();
    for (std::int64_t j3 = j2 + 1; j3 <= report.searched_to; ++j3) {
        for (std::int64_t i = lo; i < hi && k + i + 1 <= L && i + 1 <= j3; ++i) {
            if (orbit.entry(k + i, j3 - i) != orbit.entry(k + i + 1, j3 - i - 1)) {
                report.found = true;
                report.j3 = j3;
                for (std::int64_t r = 1; r <= std::min(j3, L - k); ++r) {
                    if (orbit.entry(k + r, j3 - r) != orbit.entry(k, j3)) {
                        report.row = r;
                        break;
                    }
                }
                return report;
            }
        }
    }
    return report;
}

void write_orbit_file(std::ostream& out, const DeltaPseudoOrbit& orbit) {
    out << "tau: " << orbit.tau().format() << "\n";
    out << "delta_exponent: " << orbit.scale().n_delta << "\n";
    for (std::int64_t i = 1; i <= orbit.size(); ++i) out << orbit.point(i).format() << "\n";
}

OrbitFile read_orbit_file(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("tau: ", 0) != 0)
        throw ParseError("orbit file must start with 'tau: <literal>'");
    OrbitFile file;
    file.tau = parse_literal(line.substr(5));
    if (!std::getline(in, line) || line.rfind("delta_exponent: ", 0) != 0)
        throw ParseError("orbit file needs 'delta_exponent: <N>' on line 2");
    file.scale = DeltaScale::from_exponent(std::stoll(line.substr(16)));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        file.points.push_back(parse_literal(line));
    }
    if (file.points.empty()) throw ParseError("orbit file carries no points");
    return file;
}

}  // namespace dendrite
