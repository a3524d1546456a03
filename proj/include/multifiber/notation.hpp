#pragma once

// Text notation for linear systems: "(d_1,...,d_n)(m_1^e_1,...,m_k^e_k)",
// where "^e" repeats a multiplicity e times and may be omitted (e = 1).
// Example: (13,9,5)(11^2,7^2,3^2) is the system of degree (13,9,5) through
// two points of multiplicity 11, two of 7 and two of 3.

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>
#include <string_view>

#include "multifiber/lattice.hpp"

namespace multifiber {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
};

namespace detail {

class SystemParser {
public:
    explicit SystemParser(std::string_view text) : text_(text) {}

    std::pair<std::vector<Int>, std::vector<Int>> parse() {
        auto degrees = group();
        auto mults = group();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError(pos_, "trailing characters after system");
        if (degrees.empty())
            throw ParseError(0, "degree group must not be empty");
        return {std::move(degrees), std::move(mults)};
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Int integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-')
            throw ParseError(pos_, "negative entries are not valid system notation");
        std::size_t len = 0;
        Int value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = chk_add(chk_mul(value, 10), text_[pos_] - '0');
            ++pos_;
            ++len;
        }
        if (len == 0) throw ParseError(start, "expected a nonnegative integer");
        return value;
    }

    std::vector<Int> group() {
        expect('(');
        std::vector<Int> out;
        if (peek(')')) return out; // empty multiplicity group means r = 0
        while (true) {
            const std::size_t at = pos_;
            Int v = integer();
            Int rep = 1;
            if (peek('^')) rep = integer();
            if (rep < 0 || rep > 4096)
                throw ParseError(at, "multiplicity exponent out of range");
            for (Int i = 0; i < rep; ++i) out.push_back(v);
            if (peek(')')) break;
            expect(',');
        }
        return out;
    }
};

} // namespace detail

/// Parses "(d_1,...,d_n)(m_1^e_1,...)" into a divisor class. All entries
/// must be nonnegative; n is the length of the first group and r the
/// expanded length of the second.
inline DivisorClassY parse_system(std::string_view text) {
    detail::SystemParser p(text);
    auto [d, m] = p.parse();
    return DivisorClassY(std::move(d), std::move(m));
}

namespace detail {

inline std::string render_multiplicities(std::vector<Int> m) {
    std::stable_sort(m.begin(), m.end(), std::greater<Int>());
    std::string out = "(";
    std::size_t i = 0;
    while (i < m.size()) {
        std::size_t j = i;
        while (j < m.size() && m[j] == m[i]) ++j;
        if (i) out += ',';
        out += std::to_string(m[i]);
        if (j - i > 1) out += '^' + std::to_string(j - i);
        i = j;
    }
    out += ')';
    return out;
}

} // namespace detail

/// Renders a class back to notation, multiplicities sorted non-increasing
/// and grouped with '^'. parse_system(render_system(D)) round-trips up to
/// that sorting.
inline std::string render_system(const DivisorClassY& D) {
    std::string out = "(";
    for (int i = 0; i < D.n(); ++i) {
        if (i) out += ',';
        out += std::to_string(D.d[static_cast<size_t>(i)]);
    }
    out += ')';
    return out + detail::render_multiplicities(D.m);
}

/// Notation for classes on the blow-up of P^n: "(d0)(m_1^e_1,...)"; the
/// ambient dimension n is supplied separately.
inline DivisorClassX parse_x_class(std::string_view text, int n) {
    detail::SystemParser p(text);
    auto [d, m] = p.parse();
    if (d.size() != 1)
        throw ParseError(0, "a P^n class has a single degree entry");
    return DivisorClassX(n, d[0], std::move(m));
}

inline std::string render_x_class(const DivisorClassX& X) {
    return "(" + std::to_string(X.d0) + ")" + detail::render_multiplicities(X.m);
}

} // namespace multifiber
