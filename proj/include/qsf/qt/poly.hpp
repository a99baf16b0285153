#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <qsf/qt/dense.hpp>

namespace qsf {

/// Exponent pair of a monomial q^q t^t. Ordered by q-degree, then t-degree.
struct Monomial {
    std::uint32_t q = 0;
    std::uint32_t t = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Sparse polynomial in q and t with integer coefficients.
///
/// Terms are kept sorted by ascending (q, t) and never carry a zero
/// coefficient, so equal polynomials have identical storage.
class QtPoly
{
public:
    struct Term {
        Monomial m;
        Integer c;

        friend bool operator==(const Term& a, const Term& b) { return a.m == b.m && a.c == b.c; }
    };

    QtPoly() = default;
    QtPoly(long c) : QtPoly(Integer(c)) {}
    QtPoly(const Integer& c)
    {
        if (sgn(c) != 0) terms_.push_back({{0, 0}, c});
    }

    static QtPoly monomial(const Integer& c, std::uint32_t qe, std::uint32_t te)
    {
        QtPoly p;
        if (sgn(c) != 0) p.terms_.push_back({{qe, te}, c});
        return p;
    }
    static QtPoly q() { return monomial(1, 1, 0); }
    static QtPoly t() { return monomial(1, 0, 1); }

    // Takes ownership of an arbitrary term list; sorts and merges it.
    static QtPoly from_terms(std::vector<Term> terms)
    {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
        QtPoly p;
        for (auto& term : terms) {
            if (!p.terms_.empty() && p.terms_.back().m == term.m) {
                p.terms_.back().c += term.c;
                if (sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
            } else if (sgn(term.c) != 0) {
                p.terms_.push_back(std::move(term));
            }
        }
        return p;
    }

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m == Monomial{}); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].m == Monomial{} && terms_[0].c == 1; }
    bool is_monomial() const { return terms_.size() == 1; }

    // Constant coefficient (zero when absent).
    Integer constant_term() const
    {
        if (!terms_.empty() && terms_[0].m == Monomial{}) return terms_[0].c;
        return 0;
    }

    std::uint32_t degree_q() const
    {
        std::uint32_t d = 0;
        for (const auto& term : terms_) d = std::max(d, term.m.q);
        return d;
    }
    std::uint32_t degree_t() const
    {
        std::uint32_t d = 0;
        for (const auto& term : terms_) d = std::max(d, term.m.t);
        return d;
    }

    // Positive gcd of the coefficients; zero for the zero polynomial.
    Integer content() const
    {
        Integer g;
        for (const auto& term : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), term.c.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }

    // Coefficient of the lowest monomial in (q, t) order.
    const Integer& lowest_coefficient() const { return terms_.front().c; }

    QtPoly operator-() const
    {
        QtPoly r(*this);
        for (auto& term : r.terms_) term.c = -term.c;
        return r;
    }

    friend QtPoly operator+(const QtPoly& a, const QtPoly& b) { return merge(a, b, false); }
    friend QtPoly operator-(const QtPoly& a, const QtPoly& b) { return merge(a, b, true); }
    QtPoly& operator+=(const QtPoly& b) { return *this = *this + b; }
    QtPoly& operator-=(const QtPoly& b) { return *this = *this - b; }

    friend QtPoly operator*(const QtPoly& a, const QtPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.is_monomial()) return b.mul_term(a.terms_[0]);
        if (b.is_monomial()) return a.mul_term(b.terms_[0]);
        const std::uint64_t qa = a.degree_q(), ta = a.degree_t();
        const std::uint64_t qb = b.degree_q(), tb = b.degree_t();
        const std::uint64_t width = ta + tb + 1;
        const std::uint64_t box = (qa + qb + 1) * width;
        if (box <= (std::uint64_t{1} << 20) && box <= 64 * a.size() * b.size()) {
            std::vector<Integer> acc(box);
            for (const auto& x : a.terms_) {
                for (const auto& y : b.terms_) {
                    const std::uint64_t idx = (std::uint64_t{x.m.q} + y.m.q) * width + x.m.t + y.m.t;
                    mpz_addmul(acc[idx].get_mpz_t(), x.c.get_mpz_t(), y.c.get_mpz_t());
                }
            }
            QtPoly r;
            for (std::uint64_t i = 0; i < box; ++i) {
                if (sgn(acc[i]) != 0) {
                    r.terms_.push_back({{static_cast<std::uint32_t>(i / width), static_cast<std::uint32_t>(i % width)},
                                        std::move(acc[i])});
                }
            }
            return r;
        }
        std::vector<Term> prod;
        prod.reserve(a.size() * b.size());
        for (const auto& x : a.terms_) {
            for (const auto& y : b.terms_) {
                prod.push_back({{x.m.q + y.m.q, x.m.t + y.m.t}, x.c * y.c});
            }
        }
        return from_terms(std::move(prod));
    }
    QtPoly& operator*=(const QtPoly& b) { return *this = *this * b; }

    QtPoly scaled(const Integer& c) const
    {
        if (sgn(c) == 0) return {};
        QtPoly r(*this);
        for (auto& term : r.terms_) term.c *= c;
        return r;
    }

    // Divides every coefficient by c, which must divide all of them.
    QtPoly divexact_ground(const Integer& c) const
    {
        QtPoly r(*this);
        for (auto& term : r.terms_) mpz_divexact(term.c.get_mpz_t(), term.c.get_mpz_t(), c.get_mpz_t());
        return r;
    }

    QtPoly pow(unsigned n) const
    {
        QtPoly r(1);
        QtPoly base(*this);
        while (n) {
            if (n & 1U) r *= base;
            n >>= 1U;
            if (n) base *= base;
        }
        return r;
    }

    /// Quotient a / b when b divides a exactly in Z[q, t].
    std::optional<QtPoly> divide_exact(const QtPoly& b) const
    {
        if (b.is_zero()) throw std::domain_error("QtPoly: division by zero");
        if (is_zero()) return QtPoly{};
        if (b.is_monomial()) {
            const auto& bt = b.terms_[0];
            QtPoly r;
            r.terms_.reserve(terms_.size());
            for (const auto& term : terms_) {
                if (term.m.q < bt.m.q || term.m.t < bt.m.t) return std::nullopt;
                if (!mpz_divisible_p(term.c.get_mpz_t(), bt.c.get_mpz_t())) return std::nullopt;
                Integer c;
                mpz_divexact(c.get_mpz_t(), term.c.get_mpz_t(), bt.c.get_mpz_t());
                r.terms_.push_back({{term.m.q - bt.m.q, term.m.t - bt.m.t}, std::move(c)});
            }
            return r;
        }
        if (degree_q() < b.degree_q() || degree_t() < b.degree_t()) return std::nullopt;
        detail::BPoly quo;
        if (!detail::divexact(to_dense(), b.to_dense(), quo)) return std::nullopt;
        return from_dense(quo);
    }

    // Substitutes q -> q^n, t -> t^n.
    QtPoly twist(unsigned n) const
    {
        QtPoly r(*this);
        for (auto& term : r.terms_) {
            term.m.q *= n;
            term.m.t *= n;
        }
        return r;
    }

    QtPoly swap_qt() const
    {
        std::vector<Term> ts(terms_);
        for (auto& term : ts) std::swap(term.m.q, term.m.t);
        return from_terms(std::move(ts));
    }

    Integer evaluate(const Integer& qv, const Integer& tv) const
    {
        Integer r;
        Integer qp, tp;
        for (const auto& term : terms_) {
            mpz_pow_ui(qp.get_mpz_t(), qv.get_mpz_t(), term.m.q);
            mpz_pow_ui(tp.get_mpz_t(), tv.get_mpz_t(), term.m.t);
            r += term.c * qp * tp;
        }
        return r;
    }

    detail::BPoly to_dense() const
    {
        detail::BPoly a(degree_q() + 1);
        for (const auto& term : terms_) {
            auto& row = a[term.m.q];
            if (row.size() <= term.m.t) row.resize(term.m.t + 1);
            row[term.m.t] = term.c;
        }
        detail::trim(a);
        return a;
    }

    static QtPoly from_dense(const detail::BPoly& a)
    {
        QtPoly r;
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::size_t j = 0; j < a[i].size(); ++j) {
                if (sgn(a[i][j]) != 0) {
                    r.terms_.push_back({{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)}, a[i][j]});
                }
            }
        }
        return r;
    }

    friend bool operator==(const QtPoly& a, const QtPoly& b) { return a.terms_ == b.terms_; }

private:
    std::vector<Term> terms_;

    QtPoly mul_term(const Term& m) const
    {
        QtPoly r(*this);
        const bool unit = (m.c == 1);
        for (auto& term : r.terms_) {
            term.m.q += m.m.q;
            term.m.t += m.m.t;
            if (!unit) term.c *= m.c;
        }
        return r;
    }

    static QtPoly merge(const QtPoly& a, const QtPoly& b, bool subtract)
    {
        QtPoly r;
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a.terms_[i].m < b.terms_[j].m)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || b.terms_[j].m < a.terms_[i].m) {
                r.terms_.push_back({b.terms_[j].m, subtract ? Integer(-b.terms_[j].c) : b.terms_[j].c});
                ++j;
            } else {
                Integer c = subtract ? Integer(a.terms_[i].c - b.terms_[j].c) : Integer(a.terms_[i].c + b.terms_[j].c);
                if (sgn(c) != 0) r.terms_.push_back({a.terms_[i].m, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }
};

} // namespace qsf
