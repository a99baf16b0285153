#pragma once

// Dense univariate and bivariate integer polynomial kernels used by the gcd
// and exact-division routines. Not part of the public surface.

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qsf {

using Integer = mpz_class;

namespace detail {

// Coefficient i is the coefficient of x^i. Trimmed: no trailing zeros, zero is {}.
using UPoly = std::vector<Integer>;

// Row i is the coefficient of q^i, itself a UPoly in t. Trimmed: no trailing zero rows.
using BPoly = std::vector<UPoly>;

inline void trim(UPoly& a)
{
    while (!a.empty() && sgn(a.back()) == 0) {
        a.pop_back();
    }
}

inline void trim(BPoly& a)
{
    while (!a.empty() && a.back().empty()) {
        a.pop_back();
    }
}

inline int degree(const UPoly& a) { return static_cast<int>(a.size()) - 1; }
inline int degree(const BPoly& a) { return static_cast<int>(a.size()) - 1; }

inline UPoly add(const UPoly& a, const UPoly& b)
{
    UPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    trim(r);
    return r;
}

// a -= c * x^shift * b
inline void submul_shifted(UPoly& a, const Integer& c, const UPoly& b, std::size_t shift = 0)
{
    if (a.size() < b.size() + shift) {
        a.resize(b.size() + shift);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        mpz_submul(a[j + shift].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    trim(a);
}

inline UPoly mul(const UPoly& a, const UPoly& b)
{
    if (a.empty() || b.empty()) {
        return {};
    }
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    trim(r);
    return r;
}

inline UPoly scale(const UPoly& a, const Integer& c)
{
    if (sgn(c) == 0) return {};
    UPoly r(a);
    for (auto& x : r) x *= c;
    return r;
}

// a -= x^shift * c * b, with c a polynomial.
inline void submul_poly(UPoly& a, const UPoly& c, const UPoly& b)
{
    if (c.empty() || b.empty()) return;
    if (a.size() < c.size() + b.size() - 1) {
        a.resize(c.size() + b.size() - 1);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            mpz_submul(a[i + j].get_mpz_t(), c[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    trim(a);
}

// Exact division in Z[x]. Returns false when b does not divide a.
inline bool divexact(UPoly a, const UPoly& b, UPoly& quo)
{
    quo.clear();
    if (a.empty()) return true;
    if (b.empty() || a.size() < b.size()) return false;
    const int db = degree(b);
    const Integer& lb = b.back();
    quo.assign(a.size() - b.size() + 1, Integer{});
    Integer c;
    for (int i = degree(a); i >= db; --i) {
        if (static_cast<int>(a.size()) <= i || sgn(a[i]) == 0) continue;
        if (!mpz_divisible_p(a[i].get_mpz_t(), lb.get_mpz_t())) return false;
        mpz_divexact(c.get_mpz_t(), a[i].get_mpz_t(), lb.get_mpz_t());
        submul_shifted(a, c, b, static_cast<std::size_t>(i - db));
        quo[i - db] = c;
    }
    trim(quo);
    return a.empty();
}

inline Integer content(const UPoly& a)
{
    Integer g;
    for (const auto& c : a) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

inline Integer content(const BPoly& a)
{
    Integer g;
    for (const auto& row : a) {
        for (const auto& c : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) return g;
        }
    }
    return g;
}

inline void divexact_ground(UPoly& a, const Integer& c)
{
    for (auto& x : a) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
}

inline void divexact_ground(BPoly& a, const Integer& c)
{
    for (auto& row : a) divexact_ground(row, c);
}

inline Integer max_norm(const UPoly& a)
{
    Integer m;
    for (const auto& c : a) {
        if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
    }
    return m;
}

inline Integer max_norm(const BPoly& a)
{
    Integer m;
    for (const auto& row : a) {
        for (const auto& c : row) {
            if (mpz_cmpabs(c.get_mpz_t(), m.get_mpz_t()) > 0) m = abs(c);
        }
    }
    return m;
}

inline Integer eval(const UPoly& a, const Integer& x)
{
    Integer r;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        r *= x;
        r += *it;
    }
    return r;
}

// Evaluates the main variable (row index) at x.
inline UPoly eval_main(const BPoly& a, const Integer& x)
{
    UPoly r;
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        for (auto& c : r) c *= x;
        if (r.size() < it->size()) r.resize(it->size());
        for (std::size_t j = 0; j < it->size(); ++j) r[j] += (*it)[j];
        trim(r);
    }
    return r;
}

// Balanced x-adic digits of h, lowest first.
inline UPoly balanced_digits(Integer h, const Integer& x)
{
    UPoly out;
    Integer half = x / 2;
    Integer g;
    while (sgn(h) != 0) {
        mpz_fdiv_r(g.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
        if (g > half) g -= x;
        out.push_back(g);
        h -= g;
        mpz_divexact(h.get_mpz_t(), h.get_mpz_t(), x.get_mpz_t());
    }
    trim(out);
    return out;
}

// Exact division in Z[t][q].
inline bool divexact(BPoly a, const BPoly& b, BPoly& quo)
{
    quo.clear();
    if (a.empty()) return true;
    if (b.empty() || a.size() < b.size()) return false;
    const int db = degree(b);
    const UPoly& lb = b.back();
    quo.assign(a.size() - b.size() + 1, UPoly{});
    UPoly qi;
    for (int i = degree(a); i >= db; --i) {
        if (a[i].empty()) continue;
        if (!divexact(a[i], lb, qi)) return false;
        for (int j = 0; j <= db; ++j) {
            submul_poly(a[i - db + j], qi, b[j]);
        }
        quo[i - db] = qi;
    }
    for (const auto& row : a) {
        if (!row.empty()) return false;
    }
    trim(quo);
    return true;
}

inline BPoly mul(const BPoly& a, const BPoly& b)
{
    if (a.empty() || b.empty()) return {};
    BPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].empty()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].empty()) continue;
            r[i + j] = add(r[i + j], mul(a[i], b[j]));
        }
    }
    trim(r);
    return r;
}

} // namespace detail
} // namespace qsf
