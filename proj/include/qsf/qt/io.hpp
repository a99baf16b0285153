#pragma once

// Canonical text form of Q(q,t) scalars.
//
//   polynomial : terms by ascending total degree, higher q-degree first within
//                a degree, e.g. "1 - 2*q + t + q*t^2"
//   fraction   : "(<num>)/(<den>)", the denominator omitted when it is 1

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <qsf/qt/rat.hpp>

namespace qsf {

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos)
    {
    }
    std::size_t position;
};

namespace detail {

inline void format_monomial(std::ostream& os, const Monomial& m)
{
    bool first = true;
    if (m.q > 0) {
        os << 'q';
        if (m.q > 1) os << '^' << m.q;
        first = false;
    }
    if (m.t > 0) {
        if (!first) os << '*';
        os << 't';
        if (m.t > 1) os << '^' << m.t;
    }
}

} // namespace detail

inline std::string format(const QtPoly& p)
{
    if (p.is_zero()) return "0";
    std::vector<const QtPoly::Term*> order;
    order.reserve(p.size());
    for (const auto& term : p.terms()) order.push_back(&term);
    std::sort(order.begin(), order.end(), [](const QtPoly::Term* a, const QtPoly::Term* b) {
        const auto da = a->m.q + a->m.t, db = b->m.q + b->m.t;
        return da != db ? da < db : a->m.q > b->m.q;
    });
    std::ostringstream os;
    bool first = true;
    for (const QtPoly::Term* tp : order) {
        const auto& term = *tp;
        const bool negative = sgn(term.c) < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const Integer mag = abs(term.c);
        const bool constant = term.m == Monomial{};
        if (constant) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            detail::format_monomial(os, term.m);
        }
    }
    return os.str();
}

inline std::string format(const QtRat& r)
{
    if (r.den().is_one()) return format(r.num());
    return "(" + format(r.num()) + ")/(" + format(r.den()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const QtPoly& p) { return os << format(p); }
inline std::ostream& operator<<(std::ostream& os, const QtRat& r) { return os << format(r); }

namespace detail {

// Recursive-descent reader for sums, products, quotients, integer powers
// and parentheses over the symbols q and t. Accepts the canonical grammar
// and anything built from it with + - * / ^ ( ).
class ScalarParser
{
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    QtRat parse()
    {
        QtRat r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        if (pos_ >= s_.size()) throw ParseError(what + " (end of input)", pos_);
        throw ParseError(what, pos_);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    QtRat expr()
    {
        skip();
        bool negate = false;
        if (accept('-')) {
            negate = true;
        } else {
            accept('+');
        }
        QtRat r = term();
        if (negate) r = -r;
        for (;;) {
            if (accept('+')) {
                r += term();
            } else if (accept('-')) {
                r -= term();
            } else {
                return r;
            }
        }
    }

    QtRat term()
    {
        QtRat r = factor();
        for (;;) {
            if (accept('*')) {
                r *= factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                QtRat d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                r /= d;
            } else {
                return r;
            }
        }
    }

    QtRat factor()
    {
        QtRat base = primary();
        if (accept('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            base = base.pow(e);
        }
        return base;
    }

    QtRat primary()
    {
        skip();
        if (pos_ >= s_.size()) fail("expected operand");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            QtRat r = expr();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (c == 'q') {
            ++pos_;
            return QtRat::q();
        }
        if (c == 't') {
            ++pos_;
            return QtRat::t();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return QtRat(Integer(std::string(s_.substr(start, pos_ - start))));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

} // namespace detail

/// Parses a scalar; throws ParseError carrying the failing position.
inline QtRat parse_qt(std::string_view s) { return detail::ScalarParser(s).parse(); }

} // namespace qsf
