#pragma once

// Greatest common divisors in Z[q, t].
//
// The main path is the heuristic gcd (evaluate, take integer gcds, rebuild
// from balanced digits, confirm by exact division). If the heuristic gives
// up, a primitive pseudo-remainder sequence over Z[t][q] finishes the job.

#include <optional>

#include <qsf/qt/dense.hpp>
#include <qsf/qt/poly.hpp>

namespace qsf {

namespace detail {

inline constexpr int heuristic_gcd_attempts = 6;

inline Integer isqrt(const Integer& x)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

inline Integer next_evaluation_point(const Integer& x)
{
    Integer r = 73794 * x * isqrt(isqrt(x));
    mpz_fdiv_q_ui(r.get_mpz_t(), r.get_mpz_t(), 27011);
    return r;
}

inline Integer initial_evaluation_point(const Integer& fnorm, const Integer& gnorm, const Integer& flc,
                                        const Integer& glc)
{
    const Integer bound = 2 * (fnorm < gnorm ? fnorm : gnorm) + 29;
    Integer x = 99 * isqrt(bound);
    if (bound < x) x = bound;
    // Below 2 min(|f|, |g|) + 2 a candidate that divides both need not be the gcd.
    Integer a = fnorm / abs(flc);
    Integer b = gnorm / abs(glc);
    Integer y = 2 * (a < b ? a : b) + 29;
    Integer floor = 2 * (fnorm < gnorm ? fnorm : gnorm) + 2;
    if (y < floor) y = floor;
    return x > y ? x : y;
}

inline UPoly primitive(UPoly a)
{
    if (a.empty()) return a;
    Integer c = content(a);
    if (c != 1) divexact_ground(a, c);
    return a;
}

// Heuristic gcd of primitive, nonzero univariate polynomials.
inline std::optional<UPoly> heu_gcd_primitive(const UPoly& f, const UPoly& g)
{
    if (degree(f) == 0 || degree(g) == 0) return UPoly{Integer(1)};
    Integer x = initial_evaluation_point(max_norm(f), max_norm(g), f.back(), g.back());
    for (int attempt = 0; attempt < heuristic_gcd_attempts; ++attempt) {
        const Integer ff = eval(f, x);
        const Integer gg = eval(g, x);
        if (sgn(ff) != 0 && sgn(gg) != 0) {
            Integer h;
            mpz_gcd(h.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
            UPoly hp = primitive(balanced_digits(h, x));
            UPoly cf, cg;
            if (!hp.empty() && divexact(f, hp, cf) && divexact(g, hp, cg)) return hp;
            Integer cff = ff / h;
            UPoly cfp = balanced_digits(cff, x);
            if (!cfp.empty() && divexact(f, cfp, hp) && divexact(g, hp, cg)) return hp;
            Integer cfg = gg / h;
            UPoly cgp = balanced_digits(cfg, x);
            if (!cgp.empty() && divexact(g, cgp, hp) && divexact(f, hp, cf)) return hp;
        }
        x = next_evaluation_point(x);
    }
    return std::nullopt;
}

// Pseudo-remainder of a by b in Z[x].
inline UPoly prem(UPoly a, const UPoly& b)
{
    const int db = degree(b);
    const Integer& lb = b.back();
    while (degree(a) >= db && !a.empty()) {
        Integer la = a.back();
        const std::size_t shift = static_cast<std::size_t>(degree(a) - db);
        for (auto& c : a) c *= lb;
        submul_shifted(a, la, b, shift);
    }
    return a;
}

inline UPoly prs_gcd_primitive(UPoly a, UPoly b)
{
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        UPoly r = primitive(prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    return primitive(a);
}

inline UPoly gcd(const UPoly& f, const UPoly& g)
{
    if (f.empty()) return g;
    if (g.empty()) return f;
    Integer cf = content(f), cg = content(g), c;
    mpz_gcd(c.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    UPoly pf(f), pg(g);
    divexact_ground(pf, cf);
    divexact_ground(pg, cg);
    auto h = heu_gcd_primitive(pf, pg);
    UPoly r = h ? *h : prs_gcd_primitive(pf, pg);
    for (auto& x : r) x *= c;
    return r;
}

inline BPoly primitive(BPoly a)
{
    Integer c = content(a);
    if (c != 1 && sgn(c) != 0) divexact_ground(a, c);
    return a;
}

inline const Integer& ground_lc(const BPoly& a) { return a.back().back(); }

// Heuristic gcd of integer-primitive, nonzero bivariate polynomials.
inline std::optional<BPoly> heu_gcd_primitive(const BPoly& f, const BPoly& g)
{
    Integer x = initial_evaluation_point(max_norm(f), max_norm(g), ground_lc(f), ground_lc(g));
    for (int attempt = 0; attempt < heuristic_gcd_attempts; ++attempt) {
        const UPoly ff = eval_main(f, x);
        const UPoly gg = eval_main(g, x);
        if (!ff.empty() && !gg.empty()) {
            const UPoly h = gcd(ff, gg);
            auto rebuild = [&x](const UPoly& u) {
                BPoly out;
                for (std::size_t j = 0; j < u.size(); ++j) {
                    UPoly digits = balanced_digits(u[j], x);
                    if (out.size() < digits.size()) out.resize(digits.size());
                    for (std::size_t i = 0; i < digits.size(); ++i) {
                        if (out[i].size() <= j) out[i].resize(j + 1);
                        out[i][j] = digits[i];
                    }
                }
                for (auto& row : out) trim(row);
                trim(out);
                return out;
            };
            BPoly hb = primitive(rebuild(h));
            BPoly cf, cg;
            if (!hb.empty() && divexact(f, hb, cf) && divexact(g, hb, cg)) return hb;
            UPoly cff, cfg;
            if (divexact(ff, h, cff)) {
                BPoly cb = rebuild(cff);
                if (!cb.empty() && divexact(f, cb, hb) && divexact(g, hb, cg)) return hb;
            }
            if (divexact(gg, h, cfg)) {
                BPoly cb = rebuild(cfg);
                if (!cb.empty() && divexact(g, cb, hb) && divexact(f, hb, cf)) return hb;
            }
        }
        x = next_evaluation_point(x);
    }
    return std::nullopt;
}

// Content of a bivariate polynomial viewed in Z[t][q].
inline UPoly content_main(const BPoly& a)
{
    UPoly c;
    for (const auto& row : a) {
        if (row.empty()) continue;
        c = c.empty() ? row : gcd(c, row);
        if (degree(c) == 0 && abs(c[0]) == 1) break;
    }
    return c;
}

inline BPoly primitive_main(BPoly a)
{
    if (a.empty()) return a;
    UPoly c = content_main(a);
    if (degree(c) == 0 && c[0] == 1) return a;
    if (degree(c) == 0 && c[0] == -1) c[0] = 1;
    for (auto& row : a) {
        if (row.empty()) continue;
        UPoly qr;
        divexact(row, c, qr);
        row = std::move(qr);
    }
    return a;
}

inline BPoly prem(BPoly a, const BPoly& b)
{
    const int db = degree(b);
    const UPoly& lb = b.back();
    while (!a.empty() && degree(a) >= db) {
        UPoly la = a.back();
        const std::size_t shift = static_cast<std::size_t>(degree(a) - db);
        for (auto& row : a) row = mul(row, lb);
        for (int j = 0; j <= db; ++j) submul_poly(a[shift + j], la, b[j]);
        trim(a);
    }
    return a;
}

inline BPoly prs_gcd(const BPoly& f, const BPoly& g)
{
    UPoly cf = content_main(f), cg = content_main(g);
    UPoly c = gcd(cf, cg);
    BPoly a = primitive_main(f), b = primitive_main(g);
    if (degree(a) < degree(b)) std::swap(a, b);
    while (!b.empty()) {
        BPoly r = primitive_main(prem(a, b));
        a = std::move(b);
        b = std::move(r);
    }
    a = primitive_main(a);
    for (auto& row : a) row = mul(row, c);
    trim(a);
    return a;
}

} // namespace detail

/// Fallback-only gcd via pseudo-remainder sequences. Exposed for testing.
inline QtPoly gcd_prs(const QtPoly& a, const QtPoly& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return QtPoly::from_dense(detail::prs_gcd(a.to_dense(), b.to_dense()));
}

/// gcd in Z[q, t]; the sign of the result is unspecified.
inline QtPoly gcd(const QtPoly& a, const QtPoly& b)
{
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a == b) return a;
    Integer ca = a.content(), cb = b.content(), c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.is_constant() || b.is_constant()) return QtPoly(c);
    if (a.is_monomial() || b.is_monomial()) {
        const QtPoly& m = a.is_monomial() ? a : b;
        const QtPoly& other = a.is_monomial() ? b : a;
        std::uint32_t qe = m.terms()[0].m.q, te = m.terms()[0].m.t;
        for (const auto& term : other.terms()) {
            qe = std::min(qe, term.m.q);
            te = std::min(te, term.m.t);
        }
        return QtPoly::monomial(c, qe, te);
    }
    // Pull out common monomial factors; the dense kernels then see smaller inputs.
    std::uint32_t qa = UINT32_MAX, ta = UINT32_MAX, qb = UINT32_MAX, tb = UINT32_MAX;
    for (const auto& term : a.terms()) {
        qa = std::min(qa, term.m.q);
        ta = std::min(ta, term.m.t);
    }
    for (const auto& term : b.terms()) {
        qb = std::min(qb, term.m.q);
        tb = std::min(tb, term.m.t);
    }
    const QtPoly ma = QtPoly::monomial(ca, qa, ta), mb = QtPoly::monomial(cb, qb, tb);
    const QtPoly pa = *a.divide_exact(ma), pb = *b.divide_exact(mb);
    const QtPoly shared = QtPoly::monomial(c, std::min(qa, qb), std::min(ta, tb));
    const detail::BPoly fa = pa.to_dense(), fb = pb.to_dense();
    auto h = detail::heu_gcd_primitive(fa, fb);
    detail::BPoly g = h ? std::move(*h) : detail::prs_gcd(fa, fb);
    return QtPoly::from_dense(g) * shared;
}

} // namespace qsf
