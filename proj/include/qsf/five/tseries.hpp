#pragma once

// The series T_{m,n} = sum_k u^{mk} v^{nk} R_{mk,nk} for both choices of
// generators.
//
// Setup 1 starts from T_{1,0} = tau_u and T_{0,1} = Delta'_v and reaches
// every coprime (m, n) through N^{-1}: (a, b) -> (a, a + b) and
// S^{-1}: (a, b) -> (a + b, b). T_{1,1} is taken as N^{-1}(T_{1,0}), so the
// sign of nabla enters every series above the generators.
//
// Setup 2 is the image of setup 1 under the adjoint for the star pairing,
// which reverses products; exchanging u and v restores the order, so
// T2_{m,n} = swap(T1_{n,m}^*).

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include <qsf/op/workspace.hpp>

namespace qsf {

enum class Setup { one = 1, two = 2 };

struct TBuildTrace {
    std::pair<int, int> target;
    std::pair<int, int> base;
    std::vector<std::string> word; // moves applied to the base, in order
    int window = -1;               // every nonzero coefficient is exact on degrees 0..window
    int exhausted = 0;             // coefficients left with no valid degree
};

struct TSeries {
    OperatorSeries series;
    TBuildTrace trace;
};

/// Euclid word for a coprime pair: the base and the moves leading from it.
inline TBuildTrace euclid_word(int m, int n)
{
    if (m < 0 || n < 0 || std::gcd(m, n) != 1) {
        throw std::invalid_argument("T_{" + std::to_string(m) + "," + std::to_string(n) + "}: indices must be coprime and nonnegative");
    }
    TBuildTrace t;
    t.target = {m, n};
    std::vector<std::string> rev;
    while (!((m == 1 && n == 0) || (m == 0 && n == 1))) {
        if (m == 1 && n == 1) {
            rev.push_back("N^-1");
            n = 0;
        } else if (m >= n) {
            rev.push_back("S^-1");
            m -= n;
        } else {
            rev.push_back("N^-1");
            n -= m;
        }
    }
    t.base = {m, n};
    t.word.assign(rev.rbegin(), rev.rend());
    return t;
}

inline int series_window(const OperatorSeries& s, int* exhausted = nullptr)
{
    int w = s.max_degree();
    int dead = 0;
    for (const auto& [k, op] : s.coeffs()) {
        if (op.window() < 0) {
            ++dead;
            continue;
        }
        w = std::min(w, op.window());
    }
    if (exhausted) *exhausted = dead;
    return w;
}

class TBuilder
{
public:
    explicit TBuilder(Workspace& ws) : ws_(ws) {}

    Workspace& workspace() { return ws_; }

    /// R_{k,0} and R_{0,k} as series.
    OperatorSeries generator(int m, int n, Setup setup)
    {
        const int N = ws_.N(), V = ws_.V();
        OperatorSeries s(N, V);
        const bool u_dir = (m == 1 && n == 0);
        if (!u_dir && !(m == 0 && n == 1)) throw std::invalid_argument("generator must be (1,0) or (0,1)");
        for (int k = 0; k <= V; ++k) {
            const QtRat sign(k % 2 ? -1 : 1);
            GradedOperator op;
            if (setup == Setup::one) {
                if (u_dir) {
                    op = ws_.h_perp(k);
                } else {
                    op = ws_.conventions().signed_r0k ? sign * ws_.delta(sym_e(k, N), true) : ws_.delta(sym_e(k, N), true);
                }
            } else {
                op = u_dir ? sign * ws_.delta(sym_e(k, N), true) : sign * ws_.mult_e_over_m(k);
            }
            if (u_dir) {
                s.set(k, 0, op);
            } else {
                s.set(0, k, op);
            }
        }
        return s;
    }

    const TSeries& build(int m, int n, Setup setup)
    {
        const Key key{m, n, static_cast<int>(setup)};
        {
            std::lock_guard lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        TSeries r = setup == Setup::one ? build_one(m, n) : build_two(m, n);
        std::lock_guard lock(mu_);
        return memo_.emplace(key, std::move(r)).first->second;
    }

private:
    using Key = std::tuple<int, int, int>;
    Workspace& ws_;
    std::recursive_mutex mu_;
    std::map<Key, TSeries> memo_;

    TSeries build_one(int m, int n)
    {
        TSeries r;
        r.trace = euclid_word(m, n);
        auto [a, b] = r.trace.base;
        OperatorSeries s = generator(a, b, Setup::one);
        for (const auto& move : r.trace.word) {
            const std::string step = move + " T_{" + std::to_string(a) + "," + std::to_string(b) + "}";
            if (move == "N^-1") {
                s = ws_.n_conj(s, true);
                b += a;
            } else {
                s = ws_.s_inverse(s, step);
                a += b;
                if (series_window(s) < 0) throw WindowError(step + ": window exhausted");
            }
        }
        r.series = std::move(s);
        r.trace.window = series_window(r.series, &r.trace.exhausted);
        return r;
    }

    TSeries build_two(int m, int n)
    {
        const TSeries& one = build(n, m, Setup::one);
        TSeries r;
        r.trace = one.trace;
        r.trace.target = {m, n};
        r.trace.word.push_back("star-adjoint, swap u v");
        if ((m == 1 && n == 0) || (m == 0 && n == 1)) {
            r.trace.base = {m, n};
            r.trace.word.clear();
            r.series = generator(m, n, Setup::two);
        } else {
            r.series = ws_.adjoint(one.series, Pairing::star).swap_uv();
        }
        r.trace.window = series_window(r.series, &r.trace.exhausted);
        return r;
    }
};

} // namespace qsf
