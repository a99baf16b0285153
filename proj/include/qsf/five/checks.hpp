#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include <qsf/five/tseries.hpp>

namespace qsf {

struct CheckReport {
    std::string name;
    std::map<std::string, std::string> params;
    int window = -1;
    bool pass = false;
    bool error = false; // aborted, e.g. a window ran out while building
    std::vector<Mismatch> mismatches;
    long long millis = 0;
    std::vector<std::string> notes;

    std::string status() const { return error ? "error" : pass ? "pass" : "fail"; }
    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

namespace detail {

// Collects the parts of one check. A part with nothing comparable fails it.
class Collector
{
public:
    Collector(std::string name, int N) : start_(std::chrono::steady_clock::now())
    {
        r_.name = std::move(name);
        r_.window = N;
    }

    CheckReport& report() { return r_; }

    void param(const std::string& k, const std::string& v) { r_.params[k] = v; }
    void note(std::string s) { r_.notes.push_back(std::move(s)); }

    bool series(const std::string& label, const OperatorSeries& a, const OperatorSeries& b)
    {
        const MismatchReport rep = series_equal(a, b);
        r_.mismatches.insert(r_.mismatches.end(), rep.mismatches.begin(), rep.mismatches.end());
        if (rep.vacuous) note(label + ": " + std::to_string(rep.vacuous) + " of " + std::to_string(rep.cells) + " cells outside the window");
        return part(label, rep.window, rep.ok());
    }

    bool op(const std::string& label, const GradedOperator& a, const GradedOperator& b, int u = 0, int v = 0)
    {
        const std::size_t before = r_.mismatches.size();
        const int w = compare_operators(a, b, u, v, r_.mismatches);
        return part(label, w, r_.mismatches.size() == before);
    }

    void fail(const std::string& label)
    {
        failed_ = true;
        note(label);
    }

    CheckReport finish()
    {
        r_.pass = !failed_ && r_.mismatches.empty();
        r_.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
        return std::move(r_);
    }

private:
    CheckReport r_;
    bool failed_ = false;
    std::chrono::steady_clock::time_point start_;

    bool part(const std::string& label, int window, bool ok)
    {
        if (window < 0) {
            fail(label + ": empty window");
            return false;
        }
        r_.window = std::min(r_.window, window);
        if (!ok) note(label + ": mismatch");
        return ok;
    }
};

inline std::string pair_str(int a, int b) { return std::to_string(a) + "," + std::to_string(b); }

inline OperatorSeries single(int N, int V, int i, int j, const GradedOperator& op)
{
    OperatorSeries s(N, V);
    s.set(i, j, op);
    return s;
}

} // namespace detail

/// nabla^{-1} h_k^perp nabla h_l^perp = sum_r (-1)^{k-r} Delta_{h_r} h_{k+l}^perp Delta_{e_{k-r}}
/// for all k + l <= max_sum. Mismatches carry k and l as the u and v exponents.
inline CheckReport verify_conj6(Workspace& ws, int max_sum)
{
    detail::Collector c("conj6", ws.N());
    c.param("max_k_plus_l", std::to_string(max_sum));
    const int N = ws.N();
    for (int k = 0; k <= max_sum; ++k) {
        for (int l = 0; k + l <= max_sum; ++l) {
            const GradedOperator lhs = ws.nabla(true) * ws.h_perp(k) * ws.nabla(false) * ws.h_perp(l);
            GradedOperator rhs(N);
            for (int r = 0; r <= k; ++r) {
                const GradedOperator term = ws.delta(sym_h(r, N), false) * ws.h_perp(k + l) * ws.delta(sym_e(k - r, N), false);
                rhs = (k - r) % 2 ? rhs - term : rhs + term;
            }
            c.op("k=" + std::to_string(k) + " l=" + std::to_string(l), lhs, rhs, k, l);
        }
    }
    return c.finish();
}

/// T_{m,n} T_{m',n'} = T_{m',n'} T_{m+m',n+n'} T_{m,n} for m n' - m' n = 1.
inline CheckReport verify_five_term(TBuilder& tb, int m, int n, int m2, int n2, Setup setup)
{
    if (m * n2 - m2 * n != 1) throw std::invalid_argument("five-term relation needs m n' - m' n = 1");
    detail::Collector c("five-term", tb.workspace().N());
    c.param("pair", detail::pair_str(m, n) + ":" + detail::pair_str(m2, n2));
    c.param("setup", std::to_string(static_cast<int>(setup)));
    const TSeries& a = tb.build(m, n, setup);
    const TSeries& b = tb.build(m2, n2, setup);
    const TSeries& ab = tb.build(m + m2, n + n2, setup);
    for (const TSeries* t : {&a, &b, &ab}) {
        std::string w;
        for (const auto& s : t->trace.word) w += (w.empty() ? "" : " ") + s;
        c.note("T_{" + detail::pair_str(t->trace.target.first, t->trace.target.second) + "} from T_{" +
               detail::pair_str(t->trace.base.first, t->trace.base.second) + "}" + (w.empty() ? "" : " by " + w) +
               ", window " + std::to_string(t->trace.window));
    }
    c.series("five-term", a.series * b.series, b.series * ab.series * a.series);
    return c.finish();
}

/// Delta_v^{-1} tau_u Delta_v tau_u^{-1} = nabla^{-1} tau_{uv} nabla = S^{-1}(Delta'_{uv}), and
/// T_{0,1}^{-1} T_{1,0} T_{0,1} T_{1,0}^{-1} = N^{-1}(T_{1,0}) = S^{-1}(T_{0,1}).
inline CheckReport verify_generating(TBuilder& tb)
{
    Workspace& ws = tb.workspace();
    detail::Collector c("generating", ws.N());
    const auto tau = ws.tau_series(false), tau_inv = ws.tau_series(true);
    const auto left = ws.delta_series(DeltaKind::inverse) * tau * ws.delta_series(DeltaKind::plain) * tau_inv;
    const auto middle = ws.n_conj(tau, true);
    const auto dp = ws.delta_series(DeltaKind::prime);
    const auto right = ws.s_inverse(dp);
    c.series("left = middle", left, middle);
    c.series("middle = right", middle, right);
    const OperatorSeries t10 = tb.generator(1, 0, Setup::one), t01 = tb.generator(0, 1, Setup::one);
    c.series("commutator form", t01.inverse() * t10 * t01 * t10.inverse(), ws.n_conj(t10, true));
    return c.finish();
}

/// W_{i,j}: coefficients of Delta_v^{-1} tau_u Delta_v tau_u^{-1}. Checks vanishing off the
/// diagonal (both triangles, through both bracketings) and the two diagonal formulas.
inline CheckReport verify_w_props(Workspace& ws, int max_index = 4, int max_diag = 3)
{
    detail::Collector c("w-props", ws.N());
    const int N = ws.N(), V = ws.V();
    const int top = std::min(max_index, V);
    c.param("max_index", std::to_string(top));
    const auto tau = ws.tau_series(false), tau_inv = ws.tau_series(true);
    const auto dinv = ws.delta_series(DeltaKind::inverse), dv = ws.delta_series(DeltaKind::plain);
    const auto first = dinv * tau * dv;   // v-exponent <= u-exponent
    const auto second = tau * dv * tau_inv; // u-exponent <= v-exponent
    const auto w = first * tau_inv;
    const GradedOperator zero(N);
    for (int i = 0; i <= top; ++i) {
        for (int j = 0; j <= top; ++j) {
            const std::string cell = "(" + detail::pair_str(i, j) + ")";
            if (i != j) c.op("W" + cell + " = 0", w.coeff(i, j), zero, i, j);
            if (j > i) c.op("first bracketing" + cell + " = 0", first.coeff(i, j), zero, i, j);
            if (i > j) c.op("second bracketing" + cell + " = 0", second.coeff(i, j), zero, i, j);
        }
    }
    bool literal_holds = true;
    std::string literal_fails;
    for (int i = 0; i <= std::min(max_diag, V); ++i) {
        const GradedOperator wii = w.coeff(i, i);
        c.op("W(" + detail::pair_str(i, i) + ") = nabla^-1 h_i^perp nabla", wii, ws.nabla(true) * ws.h_perp(i) * ws.nabla(false), i, i);
        const GradedOperator s = ws.s_inverse(ws.delta(sym_e(i, N), true), "S^-1 Delta'_{e_" + std::to_string(i) + "}");
        c.op("W(" + detail::pair_str(i, i) + ") = (-1)^i S^-1(Delta'_{e_i})", wii, i % 2 ? -s : s, i, i);
        std::vector<Mismatch> scratch;
        compare_operators(wii, s, i, i, scratch);
        if (!scratch.empty()) {
            literal_holds = false;
            literal_fails += (literal_fails.empty() ? "" : ",") + std::to_string(i);
        }
    }
    if (!literal_holds) {
        c.note("W(i,i) = S^-1(Delta'_{e_i}) without the sign (-1)^i fails for i = " + literal_fails);
    }
    return c.finish();
}

/// For F homogeneous of degree d: Delta_v^{-1} F^perp Delta_v is a polynomial in v of degree
/// <= d with top coefficient nabla^{-1} F^perp nabla, and tau_u Delta_F tau_u^{-1} is a
/// polynomial in u of degree <= d with top coefficient S^{-1}(Delta'_F).
inline CheckReport verify_polynomiality(Workspace& ws, const SymFunc<QtRat>& f, const std::string& label)
{
    detail::Collector c("polynomiality", ws.N());
    c.param("F", label);
    const int N = ws.N(), V = ws.V();
    const int d = f.max_degree();
    for (const auto& [l, x] : f.terms()) {
        if (l.size() != d) throw std::invalid_argument("polynomiality needs a homogeneous F");
    }
    if (d < 0) throw std::invalid_argument("polynomiality needs F nonzero");
    c.param("degree", std::to_string(d));
    const auto fp = detail::single(N, V, 0, 0, ws.skew(f));
    const auto a = ws.delta_series(DeltaKind::inverse) * fp * ws.delta_series(DeltaKind::plain);
    const auto df = detail::single(N, V, 0, 0, ws.delta(f, false));
    const auto b = ws.tau_series(false) * df * ws.tau_series(true);
    const GradedOperator zero(N);
    for (int j = d + 1; j <= V; ++j) {
        c.op("v^" + std::to_string(j) + " vanishes", a.coeff(0, j), zero, 0, j);
        c.op("u^" + std::to_string(j) + " vanishes", b.coeff(j, 0), zero, j, 0);
    }
    if (d <= V) {
        c.op("v^d coefficient", a.coeff(0, d), ws.nabla(true) * ws.skew(f) * ws.nabla(false), 0, d);
        c.op("u^d coefficient", b.coeff(d, 0), ws.s_inverse(ws.delta(f, true), "S^-1 Delta'_F"), d, 0);
    } else {
        c.fail("degree of F exceeds the series order");
    }
    return c.finish();
}

/// N^{-1}(T_{0,1}) = T_{0,1}, S^{-1}(T_{1,0}) = pExp[u/M] T_{1,0}, and
/// [R_{k,0}, R_{0,1}] = R_{1,1} R_{k-1,0} for 1 <= k <= kmax (setup 1).
inline CheckReport verify_glue_and_commutators(TBuilder& tb, int kmax)
{
    Workspace& ws = tb.workspace();
    const int N = ws.N(), V = ws.V();
    detail::Collector c("glue-commutators", N);
    c.param("kmax", std::to_string(kmax));
    const OperatorSeries t10 = tb.generator(1, 0, Setup::one), t01 = tb.generator(0, 1, Setup::one);
    c.series("N^-1(T_{0,1}) = T_{0,1}", ws.n_conj(t01, true), t01);
    OperatorSeries pe(N, V);
    for (int k = 0; k <= V; ++k) {
        // h_k[u/M] = u^k h_k[1/M]
        const SymFunc<QtRat> hk = plethysm(to_basis(SymFunc<QtRat>::element(Basis::homogeneous, k ? Partition{k} : Partition{}, k), Basis::powersum),
                                           Alphabet::unit(QtRat::M().inverse()), Windows{k, 0, 0})
                                      .component(0);
        pe.set(k, 0, hk.coeff(Partition{}) * GradedOperator::identity(N));
    }
    c.series("S^-1(T_{1,0}) = pExp[u/M] T_{1,0}", ws.s_inverse(t10, "S^-1 T_{1,0}"), pe * t10);
    const OperatorSeries& t11 = tb.build(1, 1, Setup::one).series;
    const GradedOperator r01 = t01.coeff(0, 1), r11 = t11.coeff(1, 1);
    for (int k = 1; k <= std::min(kmax, V); ++k) {
        const GradedOperator rk = t10.coeff(k, 0);
        c.op("[R_{" + std::to_string(k) + ",0}, R_{0,1}] = R_{1,1} R_{" + std::to_string(k - 1) + ",0}", rk * r01 - r01 * rk,
             r11 * t10.coeff(k - 1, 0), k, 1);
    }
    return c.finish();
}

/// Star adjoints of the setup-1 generators against the setup-2 generators, then the
/// five-term relation for (1,0), (0,1) in setup 2.
inline CheckReport verify_setup2_duality(TBuilder& tb)
{
    Workspace& ws = tb.workspace();
    detail::Collector c("setup2-duality", ws.N());
    for (const auto& [m, n] : {std::pair{1, 0}, std::pair{0, 1}}) {
        const OperatorSeries one = tb.generator(n, m, Setup::one);
        const OperatorSeries two = tb.generator(m, n, Setup::two);
        c.series("star-adjoint of setup 1 T_{" + detail::pair_str(n, m) + "}", ws.adjoint(one, Pairing::star).swap_uv(), two);
    }
    const CheckReport ft = verify_five_term(tb, 1, 0, 0, 1, Setup::two);
    c.report().mismatches.insert(c.report().mismatches.end(), ft.mismatches.begin(), ft.mismatches.end());
    if (!ft.pass) c.fail("five-term (1,0),(0,1) in setup 2 fails");
    c.report().window = std::min(c.report().window, ft.window);
    return c.finish();
}

/// S^{-1}(D_n) = -D_{n-1}, tau_u D_n tau_u^{-1} = D_n - u D_{n-1}, S^{-1}(D_a D_b) = D_{a-1} D_{b-1}.
inline CheckReport verify_dn_calculus(Workspace& ws, int nmin = -2, int nmax = 3, int abmax = 2)
{
    const int N = ws.N(), V = ws.V();
    detail::Collector c("dn-calculus", N);
    c.param("n", std::to_string(nmin) + ".." + std::to_string(nmax));
    c.param("a,b", "0.." + std::to_string(abmax));
    for (int n = nmin; n <= nmax; ++n) {
        const std::string tag = std::to_string(n);
        try {
            c.op("S^-1(D_" + tag + ") = -D_" + std::to_string(n - 1), ws.s_inverse(ws.d_op(n), "S^-1 D_" + tag), -ws.d_op(n - 1));
        } catch (const WindowError& e) {
            c.fail(e.what());
        }
        OperatorSeries rhs = detail::single(N, V, 0, 0, ws.d_op(n));
        rhs.set(1, 0, -ws.d_op(n - 1));
        c.series("tau_u D_" + tag + " tau_u^-1", ws.tau_series(false) * detail::single(N, V, 0, 0, ws.d_op(n)) * ws.tau_series(true), rhs);
    }
    for (int a = 0; a <= abmax; ++a) {
        for (int b = 0; b <= abmax; ++b) {
            const std::string tag = "D_" + std::to_string(a) + " D_" + std::to_string(b);
            try {
                c.op("S^-1(" + tag + ")", ws.s_inverse(ws.d_op(a) * ws.d_op(b), "S^-1 " + tag), ws.d_op(a - 1) * ws.d_op(b - 1));
            } catch (const WindowError& e) {
                c.fail(e.what());
            }
        }
    }
    return c.finish();
}

/// Normalization, q <-> t with conjugation, and the axioms, degree by degree.
inline CheckReport verify_macdonald(Workspace& ws)
{
    const int N = ws.N();
    detail::Collector c("macdonald", N);
    for (int d = 0; d <= N; ++d) {
        const auto& t = ws.store().table(d);
        const auto& parts = partitions_of(d);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Partition& mu = parts[i];
            const std::size_t ic = partition_index(mu.conjugate());
            auto bad = [&](const std::string& what, const std::string& lhs, const std::string& rhs) {
                c.report().mismatches.push_back({0, 0, mu, lhs, rhs});
                c.note(to_string(mu) + ": " + what);
            };
            if (!t.to_schur(i, 0).is_one()) bad("normalization", format(t.to_schur(i, 0)), "1");
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (t.to_schur(i, j).swap_qt() != t.to_schur(ic, j)) {
                    bad("q,t symmetry at s[" + to_string(parts[j]) + "]", format(t.to_schur(i, j).swap_qt()), format(t.to_schur(ic, j)));
                }
            }
            // H~_mu[X(1-q)] lies in the span of s_lambda, lambda >= mu; with t, lambda >= mu'.
            for (const auto& [c1, base] : {std::pair{QtRat(1) - QtRat::q(), mu}, std::pair{QtRat(1) - QtRat::t(), mu.conjugate()}}) {
                SymFunc<QtRat> h(Basis::schur, d);
                for (std::size_t j = 0; j < parts.size(); ++j) h.add(parts[j], t.to_schur(i, j));
                const auto img = to_basis(plethysm(h, Alphabet::X(c1), Windows{d, 0, 0}).component(0), Basis::schur);
                for (const auto& [lambda, x] : img.terms()) {
                    if (!dominance_leq(base, lambda)) bad("triangularity at s[" + to_string(lambda) + "]", format(x), "0");
                }
            }
        }
    }
    return c.finish();
}

} // namespace qsf
