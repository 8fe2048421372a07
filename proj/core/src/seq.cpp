#include "dendrite/seq.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace dendrite {

namespace {

// Smallest d dividing |w| with w = root^(|w|/d).
std::size_t primitive_root_length(const FiniteWord& w) {
    const std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
        if (ok) return d;
    }
    return n;
}

void canonicalize(FiniteWord& pre, FiniteWord& per) {
    if (per.empty()) throw ContractViolation("EXACT sequence requires a nonempty period");
    const std::size_t root = primitive_root_length(per);
    per.resize(root);
    // Absorb period rotations into the preperiod: "1[01]" denotes the same
    // sequence as "[10]", and only one of them may exist.
    while (!pre.empty() && pre.back() == per.back()) {
        per.pop_back();
        per.insert(per.begin(), pre.back());
        pre.pop_back();
    }
}

Symbol period_doubling_at(std::int64_t n) {
    // Trailing one-bits of n: u_{2i} = 1, u_{2i+1} = 1 - u_i unrolled.
    const auto u = static_cast<std::uint64_t>(n);
    const int ones = std::countr_one(u);
    return (ones % 2 == 0) ? Symbol::One : Symbol::Zero;
}

}  // namespace

GeneratorPtr period_doubling_generator() {
    static const GeneratorPtr gen = std::make_shared<Generator>(Generator{
        "pd", &period_doubling_at, kUnboundedDepth, /*aperiodic=*/true, /*star_free=*/true});
    return gen;
}

GeneratorPtr make_table_generator(std::string name, FiniteWord symbols, bool aperiodic) {
    if (symbols.empty()) throw ContractViolation("table generator requires symbols");
    bool sf = star_free(symbols);
    auto table = std::make_shared<FiniteWord>(std::move(symbols));
    Generator g;
    g.name = std::move(name);
    g.at = [table](std::int64_t i) { return (*table)[static_cast<std::size_t>(i)]; };
    g.certified_depth = static_cast<std::int64_t>(table->size()) - 1;
    g.aperiodic = aperiodic;
    g.star_free = sf;
    return std::make_shared<Generator>(std::move(g));
}

GeneratorPtr lookup_generator(std::string_view name) {
    if (name == "pd" || name == "period-doubling") return period_doubling_generator();
    return nullptr;
}

SymSeq SymSeq::exact(FiniteWord preperiod, FiniteWord period) {
    canonicalize(preperiod, period);
    return SymSeq(std::move(preperiod), std::move(period));
}

SymSeq SymSeq::from_generator(GeneratorPtr gen, std::int64_t shift) {
    if (!gen) throw ContractViolation("null generator");
    if (shift < 0 || shift > gen->certified_depth)
        throw DepthExceeded("generator shift outside certified depth");
    SymSeq s({}, {Symbol::Zero});
    s.per_.clear();
    s.gen_ = std::move(gen);
    s.gen_shift_ = shift;
    return s;
}

SymSeq SymSeq::with_prefix(const FiniteWord& prefix, const SymSeq& tail) {
    if (tail.is_exact()) {
        FiniteWord pre = prefix;
        pre.insert(pre.end(), tail.pre_.begin(), tail.pre_.end());
        return exact(std::move(pre), tail.per_);
    }
    auto buf = std::make_shared<FiniteWord>(prefix);
    if (tail.prefix_buf_)
        buf->insert(buf->end(), tail.prefix_buf_->begin() + static_cast<std::ptrdiff_t>(tail.prefix_off_),
                    tail.prefix_buf_->end());
    SymSeq s = tail;
    s.prefix_buf_ = std::move(buf);
    s.prefix_off_ = 0;
    s.label.reset();
    return s;
}

std::int64_t SymSeq::certified_depth() const {
    if (is_exact()) return kUnboundedDepth;
    return prefix_len() + (gen_->certified_depth - gen_shift_);
}

Symbol SymSeq::at(std::int64_t i) const {
    if (i < 0) throw ContractViolation("negative index");
    if (is_exact()) {
        const auto pre_n = static_cast<std::int64_t>(pre_.size());
        if (i < pre_n) return pre_[static_cast<std::size_t>(i)];
        return per_[static_cast<std::size_t>((i - pre_n) % static_cast<std::int64_t>(per_.size()))];
    }
    const std::int64_t pl = prefix_len();
    if (i < pl) return (*prefix_buf_)[prefix_off_ + static_cast<std::size_t>(i)];
    const std::int64_t gi = gen_shift_ + (i - pl);
    if (gi > gen_->certified_depth)
        throw DepthExceeded("read at index " + std::to_string(i) + " exceeds certified depth " +
                            std::to_string(certified_depth()));
    return gen_->at(gi);
}

FiniteWord SymSeq::truncated(std::int64_t n) const {
    if (n < 0) throw ContractViolation("truncation index must be >= 0");
    if (n > certified_depth())
        throw DepthExceeded("truncation to " + std::to_string(n) + " exceeds certified depth " +
                            std::to_string(certified_depth()));
    FiniteWord w;
    w.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) w.push_back(at(i));
    return w;
}

SymSeq SymSeq::shifted(std::int64_t k) const {
    if (k < 0) throw ContractViolation("negative shift");
    if (k == 0) return *this;
    if (is_exact()) {
        const auto pre_n = static_cast<std::int64_t>(pre_.size());
        if (k <= pre_n) {
            FiniteWord pre(pre_.begin() + static_cast<std::ptrdiff_t>(k), pre_.end());
            return exact(std::move(pre), per_);
        }
        const auto r = static_cast<std::size_t>((k - pre_n) % static_cast<std::int64_t>(per_.size()));
        FiniteWord per(per_.begin() + static_cast<std::ptrdiff_t>(r), per_.end());
        per.insert(per.end(), per_.begin(), per_.begin() + static_cast<std::ptrdiff_t>(r));
        return exact({}, std::move(per));
    }
    if (k > certified_depth()) throw DepthExceeded("shift exceeds certified depth");
    SymSeq s = *this;
    s.label.reset();
    const std::int64_t pl = prefix_len();
    if (k < pl) {
        s.prefix_off_ += static_cast<std::size_t>(k);
        return s;
    }
    s.prefix_buf_.reset();
    s.prefix_off_ = 0;
    s.gen_shift_ += k - pl;
    return s;
}

std::string SymSeq::format() const {
    if (!is_exact()) throw ContractViolation("only EXACT sequences have a literal form");
    return to_string(pre_) + "[" + to_string(per_) + "]";
}

std::string SymSeq::describe() const {
    if (is_exact()) return format();
    std::string out = gen_->name;
    if (gen_shift_ != 0) out += "@" + std::to_string(gen_shift_);
    if (prefix_len() > 0) out += "+" + std::to_string(prefix_len()) + "pfx";
    return out;
}

const FiniteWord& SymSeq::preperiod() const {
    if (!is_exact()) throw ContractViolation("GENERATED sequence has no preperiod");
    return pre_;
}

const FiniteWord& SymSeq::period() const {
    if (!is_exact()) throw ContractViolation("GENERATED sequence has no period");
    return per_;
}

bool SymSeq::star_free_to(std::int64_t limit) const {
    if (is_exact()) return star_free(pre_) && star_free(per_);
    const std::int64_t pl = prefix_len();
    for (std::int64_t i = 0; i < pl; ++i)
        if (at(i) == Symbol::Star) return false;
    if (gen_->star_free) return true;
    const std::int64_t hi = std::min(limit, certified_depth());
    for (std::int64_t i = pl; i <= hi; ++i)
        if (at(i) == Symbol::Star) return false;
    return true;
}

bool SymSeq::identical(const SymSeq& other) const {
    if (is_exact() != other.is_exact()) return false;
    if (is_exact()) return pre_ == other.pre_ && per_ == other.per_;
    if (gen_ != other.gen_ || prefix_len() != other.prefix_len() ||
        gen_shift_ - prefix_len() != other.gen_shift_ - other.prefix_len())
        return false;
    for (std::int64_t i = 0; i < prefix_len(); ++i)
        if (at(i) != other.at(i)) return false;
    return true;
}

SymSeq parse_literal(std::string_view text) {
    const auto open = text.find('[');
    if (open == std::string_view::npos)
        throw ParseError("sequence literal requires a bracketed period: \"" + std::string(text) + "\"");
    if (text.empty() || text.back() != ']')
        throw ParseError("sequence literal must end with ']': \"" + std::string(text) + "\"");
    const auto period_text = text.substr(open + 1, text.size() - open - 2);
    if (period_text.empty()) throw ParseError("empty period in \"" + std::string(text) + "\"");
    if (period_text.find('[') != std::string_view::npos || period_text.find(']') != std::string_view::npos)
        throw ParseError("nested brackets in \"" + std::string(text) + "\"");
    return SymSeq::exact(word_from_string(text.substr(0, open)), word_from_string(period_text));
}

SymSeq parse_point(std::string_view text) {
    if (text.find('[') != std::string_view::npos) return parse_literal(text);
    if (auto gen = lookup_generator(text)) return SymSeq::from_generator(gen);
    throw ParseError("neither a sequence literal nor a known generator: \"" + std::string(text) + "\"");
}

namespace {

// Compare readable symbols up to `limit` indices; No on the first
// disagreement at a position the pattern does not wildcard.
Ternary scan_compare(const SymSeq& a, const SymSeq& b, std::int64_t limit, bool pattern_stars_wild) {
    const std::int64_t hi = std::min({limit - 1, a.certified_depth(), b.certified_depth()});
    for (std::int64_t i = 0; i <= hi; ++i) {
        const Symbol pb = b.at(i);
        if (pattern_stars_wild && pb == Symbol::Star) continue;
        if (a.at(i) != pb) return Ternary::No;
    }
    return Ternary::Unknown;
}

constexpr std::int64_t kExactHorizonCap = 1 << 20;

// Decision horizon for two eventually periodic sequences: past the joint
// preperiod both are periodic with the joint period, so agreement there
// implies agreement everywhere.
std::int64_t exact_horizon(const SymSeq& a, const SymSeq& b) {
    const auto pa = static_cast<std::int64_t>(a.preperiod().size());
    const auto pb = static_cast<std::int64_t>(b.preperiod().size());
    const auto la = static_cast<std::int64_t>(a.period().size());
    const auto lb = static_cast<std::int64_t>(b.period().size());
    const std::int64_t l = std::lcm(la, lb);
    if (l > kExactHorizonCap) return -1;
    return std::max(pa, pb) + l;
}

}  // namespace

Ternary sequences_equal(const SymSeq& a, const SymSeq& b, std::int64_t scan_limit) {
    if (a.is_exact() && b.is_exact())
        return (a.pre_ == b.pre_ && a.per_ == b.per_) ? Ternary::Yes : Ternary::No;
    if (a.is_exact() != b.is_exact()) {
        const SymSeq& g = a.is_exact() ? b : a;
        if (g.gen_->aperiodic) return Ternary::No;
        return scan_compare(a, b, scan_limit, false);
    }
    if (a.gen_ == b.gen_) {
        const std::int64_t off_a = a.gen_shift_ - a.prefix_len();
        const std::int64_t off_b = b.gen_shift_ - b.prefix_len();
        if (off_a != off_b) {
            if (a.gen_->aperiodic) return Ternary::No;
            return scan_compare(a, b, scan_limit, false);
        }
        const std::int64_t head = std::max(a.prefix_len(), b.prefix_len());
        for (std::int64_t i = 0; i < head; ++i)
            if (a.at(i) != b.at(i)) return Ternary::No;
        return Ternary::Yes;
    }
    return scan_compare(a, b, scan_limit, false);
}

Ternary matches_pattern(const SymSeq& a, const SymSeq& pattern, std::int64_t scan_limit) {
    bool pattern_star_free;
    if (pattern.is_exact()) {
        pattern_star_free = star_free(pattern.pre_) && star_free(pattern.per_);
    } else {
        pattern_star_free = pattern.gen_->star_free;
        for (std::int64_t i = 0; pattern_star_free && i < pattern.prefix_len(); ++i)
            if (pattern.at(i) == Symbol::Star) pattern_star_free = false;
    }
    if (pattern_star_free) {
        // No wildcards anywhere: matching is plain equality.
        return sequences_equal(a, pattern, scan_limit);
    }
    if (a.is_exact() && pattern.is_exact()) {
        const std::int64_t h = exact_horizon(a, pattern);
        if (h > 0) {
            for (std::int64_t i = 0; i < h; ++i) {
                const Symbol p = pattern.at(i);
                if (p != Symbol::Star && a.at(i) != p) return Ternary::No;
            }
            return Ternary::Yes;
        }
    }
    return scan_compare(a, pattern, scan_limit, true);
}

}  // namespace dendrite
