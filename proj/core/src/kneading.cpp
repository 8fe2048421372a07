#include "dendrite/kneading.hpp"

#include <algorithm>
#include <numeric>

namespace dendrite {

namespace {

bool words_equal_at_shift(const SymSeq& tau, std::int64_t k, std::int64_t m) {
    for (std::int64_t i = 0; i <= m; ++i)
        if (tau.at(k + i) != tau.at(i)) return false;
    return true;
}

// Z[i] = length of the longest common prefix of w and w[i..].
std::vector<std::int64_t> z_array(const FiniteWord& w) {
    const auto n = static_cast<std::int64_t>(w.size());
    std::vector<std::int64_t> z(static_cast<std::size_t>(n), 0);
    if (n == 0) return z;
    z[0] = n;
    std::int64_t l = 0, r = 0;
    for (std::int64_t i = 1; i < n; ++i) {
        std::int64_t k = 0;
        if (i < r) k = std::min(r - i, z[static_cast<std::size_t>(i - l)]);
        while (i + k < n && w[static_cast<std::size_t>(k)] == w[static_cast<std::size_t>(i + k)]) ++k;
        z[static_cast<std::size_t>(i)] = k;
        if (i + k > r) {
            l = i;
            r = i + k;
        }
    }
    return z;
}

}  // namespace

const ReturnValue& ReturnTimeTable::at(std::int64_t m) const {
    if (m < 0 || m > computed_to) throw ContractViolation("return time table too shallow");
    return values[static_cast<std::size_t>(m)];
}

ReturnValue return_time(const SymSeq& tau, std::int64_t m, std::int64_t search_depth) {
    if (m < 0) throw ContractViolation("return time index must be >= 0");
    if (tau.is_exact()) {
        const auto rho = static_cast<std::int64_t>(tau.preperiod().size());
        const auto pi = static_cast<std::int64_t>(tau.period().size());
        // Shifts cycle with period pi past the preperiod, so any return is
        // witnessed by some k <= rho + pi; scan a wider window regardless.
        const std::int64_t horizon = rho + 2 * pi + m;
        for (std::int64_t k = 1; k <= horizon; ++k)
            if (words_equal_at_shift(tau, k, m)) return ReturnValue{ReturnValue::Kind::Finite, k};
        return ReturnValue{ReturnValue::Kind::Infinite, 0};
    }
    if (search_depth <= 0) throw ContractViolation("generator-backed return time requires a search depth");
    if (search_depth + m > tau.certified_depth()) throw DepthExceeded("return time scan exceeds certified depth");
    for (std::int64_t k = 1; k <= search_depth; ++k)
        if (words_equal_at_shift(tau, k, m)) return ReturnValue{ReturnValue::Kind::Finite, k};
    return ReturnValue{ReturnValue::Kind::NoReturnWithinDepth, 0};
}

ReturnTimeTable build_return_times(const SymSeq& tau, std::int64_t max_m, std::int64_t search_depth) {
    if (max_m < 0) throw ContractViolation("max_m must be >= 0");
    ReturnTimeTable table;
    table.computed_to = max_m;
    table.search_depth = search_depth;
    table.values.reserve(static_cast<std::size_t>(max_m) + 1);
    if (tau.is_exact()) {
        for (std::int64_t m = 0; m <= max_m; ++m) table.values.push_back(return_time(tau, m));
        return table;
    }
    if (search_depth <= 1 + max_m) throw ContractViolation("search depth too small for requested table");
    if (search_depth - 1 > tau.certified_depth()) throw DepthExceeded("table scan exceeds certified depth");
    const FiniteWord w = tau.truncated(search_depth - 1);
    const auto z = z_array(w);
    // first_k[len] = least k >= 1 whose match with the prefix has length >= len.
    const auto n = static_cast<std::int64_t>(w.size());
    std::vector<std::int64_t> exact_min(static_cast<std::size_t>(n) + 2, -1);
    for (std::int64_t k = 1; k < n; ++k) {
        const std::int64_t len = z[static_cast<std::size_t>(k)];
        if (len < 1) continue;
        auto& slot = exact_min[static_cast<std::size_t>(len)];
        if (slot < 0 || k < slot) slot = k;
    }
    std::vector<std::int64_t> first_k(static_cast<std::size_t>(n) + 2, -1);
    for (std::int64_t len = n; len >= 1; --len) {
        std::int64_t best = first_k[static_cast<std::size_t>(len) + 1];
        const std::int64_t em = exact_min[static_cast<std::size_t>(len)];
        if (em >= 0 && (best < 0 || em < best)) best = em;
        first_k[static_cast<std::size_t>(len)] = best;
    }
    for (std::int64_t m = 0; m <= max_m; ++m) {
        const std::int64_t k = first_k[static_cast<std::size_t>(m) + 1];
        if (k > 0)
            table.values.push_back(ReturnValue{ReturnValue::Kind::Finite, k});
        else
            table.values.push_back(ReturnValue{ReturnValue::Kind::NoReturnWithinDepth, 0});
    }
    return table;
}

MilestoneSequence milestones(const ReturnTimeTable& table, std::int64_t count) {
    if (count < 0) throw ContractViolation("milestone count must be >= 0");
    MilestoneSequence out;
    out.certified_to = table.computed_to;
    std::int64_t m = 1;
    while (static_cast<std::int64_t>(out.values.size()) < count) {
        if (m > table.computed_to) throw ContractViolation("return time table too shallow for milestones");
        const ReturnValue& r = table.at(m);
        if (!r.finite()) throw ContractViolation("milestones require recurrent input (finite return times)");
        if (r.k >= m) {
            out.values.push_back(m);
            m = r.k + 2;  // m_{i+1} > r_{m_i} + 1
        } else {
            ++m;
        }
    }
    return out;
}

KneadingClass classify(const SymSeq& tau, std::int64_t depth) {
    KneadingClass out;
    if (tau.is_exact()) {
        out.exact = true;
        if (tau.preperiod().empty()) {
            out.kind = KneadingKind::Periodic;
            out.period = static_cast<std::int64_t>(tau.period().size());
            return out;
        }
        out.kind = KneadingKind::NonRecurrent;
        const auto rho = static_cast<std::int64_t>(tau.preperiod().size());
        const auto pi = static_cast<std::int64_t>(tau.period().size());
        const std::int64_t cap = rho + 2 * pi + 64;
        for (std::int64_t m = 1; m <= cap; ++m) {
            if (!return_time(tau, m).finite()) {
                out.horizon = m;
                return out;
            }
        }
        // Bounded monotone return times would force periodicity.
        throw Error("strictly preperiodic sequence with no infinite return time: canonical form broken");
    }
    if (depth < 16) throw ContractViolation("classification of a generator-backed tau needs depth >= 16");
    out.exact = false;
    ReturnTimeTable table = build_return_times(tau, depth / 2, depth);
    // A missing return only certifies non-recurrence when the searched
    // window dwarfs m; otherwise the table merely ran out of room and the
    // scan stops there.
    const auto absence_certified = [&](std::int64_t m) {
        return table.search_depth - 1 - m >= std::max<std::int64_t>(4 * m, 64);
    };
    out.kind = KneadingKind::RecurrentNonperiodic;
    std::int64_t m = 1;
    std::int64_t trusted_to = 0;
    while (m <= table.computed_to) {
        const ReturnValue& r = table.at(m);
        if (!r.finite()) {
            if (absence_certified(m)) {
                out.kind = KneadingKind::NonRecurrent;
                out.horizon = m;
                return out;
            }
            break;
        }
        trusted_to = m;
        if (r.k >= m) {
            out.milestone_seq.values.push_back(m);
            m = r.k + 2;
        } else {
            ++m;
        }
    }
    out.milestone_seq.certified_to = trusted_to;
    out.table = std::move(table);
    return out;
}

PrimitiveRootResult word_overlap_root(const FiniteWord& alpha, std::int64_t m) {
    const auto n = static_cast<std::int64_t>(alpha.size());
    if (n < 2 || m < 1 || m >= n) throw ContractViolation("word_overlap_root requires 1 <= m < len(alpha)");
    const std::int64_t period = n - m;
    // beta = alpha alpha read through indices; overlap premise on all of beta.
    auto beta_at = [&](std::int64_t i) { return alpha[static_cast<std::size_t>(i % n)]; };
    for (std::int64_t i = 0; i + period < 2 * n; ++i) {
        if (beta_at(i) != beta_at(i + period))
            throw ContractViolation("overlap precondition fails at index " + std::to_string(i));
    }
    const std::int64_t g = std::gcd(n, m);
    PrimitiveRootResult out;
    out.ell = g;
    out.repetitions = n / g;
    out.gamma.assign(alpha.begin(), alpha.begin() + static_cast<std::ptrdiff_t>(g));
    for (std::int64_t i = 0; i < n; ++i) {
        if (alpha[static_cast<std::size_t>(i)] != out.gamma[static_cast<std::size_t>(i % g)])
            throw Error("overlap premise held but gcd root failed; impossible by Fine-Wilf");
    }
    return out;
}

ReturnGrowthReport check_return_time_growth(const SymSeq& tau, std::int64_t depth) {
    if (tau.is_exact())
        throw ContractViolation("return-time growth requires a recurrent non-periodic (generator-backed) tau");
    ReturnGrowthReport report;
    report.depth = depth;
    if (depth <= 0) return report;
    const std::int64_t search = std::min<std::int64_t>(4 * depth + 16, tau.certified_depth() - depth);
    ReturnTimeTable table = build_return_times(tau, depth, search);
    for (std::int64_t t = 1; t <= depth; ++t) {
        const ReturnValue& r = table.at(t);
        if (!r.finite() || r.k >= t) report.witnesses.push_back(t);
    }
    report.upper_half_empty = true;
    for (std::int64_t t : report.witnesses)
        if (t > depth / 2) report.upper_half_empty = false;
    return report;
}

}  // namespace dendrite
