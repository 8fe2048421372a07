#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dendrite {

/// Base error for library failures that map to CLI exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A read past the certified depth of a generator-backed sequence.
class DepthExceeded : public Error {
public:
    using Error::Error;
};

/// Malformed literal, file, or config input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A violated operation precondition.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// The three-letter alphabet. Star is the wildcard of the non-Hausdorff
/// basis {{0},{1},{0,1,*}}: it cannot be separated from 0 or 1 by open sets.
enum class Symbol : std::uint8_t { Zero = 0, One = 1, Star = 2 };

constexpr char to_char(Symbol s) {
    switch (s) {
        case Symbol::Zero: return '0';
        case Symbol::One: return '1';
        case Symbol::Star: return '*';
    }
    return '?';
}

inline Symbol symbol_from_char(char c) {
    switch (c) {
        case '0': return Symbol::Zero;
        case '1': return Symbol::One;
        case '*': return Symbol::Star;
        default: throw ParseError(std::string("invalid symbol character '") + c + "'");
    }
}

/// Finite word over {0,1,*}. Indexing is 0-based; the truncation x|n of a
/// sequence has length n+1 (indices 0..n).
using FiniteWord = std::vector<Symbol>;

inline std::string to_string(const FiniteWord& w) {
    std::string out;
    out.reserve(w.size());
    for (Symbol s : w) out.push_back(to_char(s));
    return out;
}

inline FiniteWord word_from_string(std::string_view text) {
    FiniteWord w;
    w.reserve(text.size());
    for (char c : text) w.push_back(symbol_from_char(c));
    return w;
}

inline bool star_free(const FiniteWord& w) {
    for (Symbol s : w)
        if (s == Symbol::Star) return false;
    return true;
}

/// Three-valued answer for questions about infinite sequences that are only
/// decidable for some representations.
enum class Ternary : std::uint8_t { No = 0, Yes = 1, Unknown = 2 };

}  // namespace dendrite
