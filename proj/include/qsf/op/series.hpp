#pragma once

#include <functional>
#include <climits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <qsf/op/graded.hpp>
#include <qsf/sym/symfunc.hpp>

namespace qsf {

/// Element of End(V)[[u, v]] with both exponents at most V. Absent
/// coefficients are the zero operator, valid everywhere.
class OperatorSeries
{
public:
    using Key = std::pair<int, int>; // (u-exponent, v-exponent)

    OperatorSeries() = default;
    OperatorSeries(int N, int V) : N_(N), V_(V) {}

    static OperatorSeries identity(int N, int V)
    {
        OperatorSeries s(N, V);
        s.set(0, 0, GradedOperator::identity(N));
        return s;
    }

    int max_degree() const { return N_; }
    int order() const { return V_; }
    const std::map<Key, GradedOperator>& coeffs() const { return c_; }

    void set(int i, int j, GradedOperator op)
    {
        if (i < 0 || j < 0 || i > V_ || j > V_) return;
        if (op.is_zero() && op.window() == N_) {
            c_.erase({i, j});
        } else {
            c_[{i, j}] = std::move(op);
        }
    }

    GradedOperator coeff(int i, int j) const
    {
        auto it = c_.find({i, j});
        return it == c_.end() ? GradedOperator(N_) : it->second;
    }

    friend bool operator==(const OperatorSeries&, const OperatorSeries&) = default;

    void add(int i, int j, const GradedOperator& op)
    {
        if (i > V_ || j > V_) return;
        auto it = c_.find({i, j});
        set(i, j, it == c_.end() ? op : it->second + op);
    }

    friend OperatorSeries operator+(OperatorSeries a, const OperatorSeries& b)
    {
        for (const auto& [k, op] : b.c_) a.add(k.first, k.second, op);
        return a;
    }
    friend OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b)
    {
        OperatorSeries r(a);
        for (const auto& [k, op] : b.c_) r.add(k.first, k.second, -op);
        return r;
    }

    /// Cauchy product; exponents above V are dropped.
    friend OperatorSeries operator*(const OperatorSeries& a, const OperatorSeries& b)
    {
        OperatorSeries r(a.N_, std::min(a.V_, b.V_));
        for (const auto& [ka, oa] : a.c_) {
            for (const auto& [kb, ob] : b.c_) {
                const int i = ka.first + kb.first, j = ka.second + kb.second;
                if (i > r.V_ || j > r.V_) continue;
                r.add(i, j, oa * ob);
            }
        }
        return r;
    }

    /// Coefficientwise map with exponent re-indexing; targets above V are dropped.
    OperatorSeries transform(const std::function<GradedOperator(const GradedOperator&)>& f,
                             const std::function<Key(Key)>& reindex) const
    {
        OperatorSeries r(N_, V_);
        for (const auto& [k, op] : c_) {
            const Key nk = reindex(k);
            if (nk.first > V_ || nk.second > V_) continue;
            r.add(nk.first, nk.second, f(op));
        }
        return r;
    }

    /// Coefficientwise map without re-indexing.
    OperatorSeries map(const std::function<GradedOperator(const GradedOperator&)>& f) const
    {
        OperatorSeries r(N_, V_);
        for (const auto& [k, op] : c_) r.add(k.first, k.second, f(op));
        return r;
    }

    OperatorSeries swap_uv() const
    {
        return transform([](const GradedOperator& op) { return op; }, [](Key k) { return Key{k.second, k.first}; });
    }

    /// Inverse of a series whose constant term is the identity: sum_k (1 - T)^k.
    OperatorSeries inverse() const
    {
        const GradedOperator c0 = coeff(0, 0);
        if (!(c0.blocks() == GradedOperator::identity(N_).blocks())) {
            throw std::invalid_argument("series inverse needs identity constant term");
        }
        OperatorSeries x = *this;
        x.c_.erase({0, 0});
        x = OperatorSeries(N_, V_) - x; // -(T - 1)
        OperatorSeries result = identity(N_, V_);
        OperatorSeries power = identity(N_, V_);
        for (int k = 1; k <= 2 * V_; ++k) {
            power = power * x;
            if (power.c_.empty()) break;
            result = result + power;
        }
        for (int d = 0; d <= N_; ++d) result.c_[{0, 0}].set_valid(d, c0.valid(d));
        return result;
    }

    /// Restriction to exponents (i, j) with i, j <= V'.
    OperatorSeries truncated_to(int V) const
    {
        OperatorSeries r(N_, V);
        for (const auto& [k, op] : c_) r.set(k.first, k.second, op);
        return r;
    }

private:
    int N_ = 0, V_ = 0;
    std::map<Key, GradedOperator> c_;
};

struct Mismatch {
    int u_exp = 0;
    int v_exp = 0;
    Partition partition;
    std::string lhs;
    std::string rhs;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct MismatchReport {
    std::vector<Mismatch> mismatches;
    int window = -1;  // every cell with a valid degree is checked on source degrees 0..window
    int cells = 0;    // coefficient cells compared
    int vacuous = 0;  // cells with no degree valid on both sides
    bool ok() const { return mismatches.empty(); }
};

namespace detail {

inline std::string format_column(const std::map<int, std::vector<QtRat>>& col, int N)
{
    SymFunc<QtRat> f(Basis::htilde, N);
    for (const auto& [d, v] : col) {
        const auto& parts = partitions_of(d);
        for (std::size_t i = 0; i < v.size(); ++i) f.add(parts[i], v[i]);
    }
    return format(f);
}

} // namespace detail

/// Compares two operators on the source degrees valid in both (and <= max_degree).
/// Returns the largest w with 0..w all compared, -1 when degree 0 is not comparable.
inline int compare_operators(const GradedOperator& a, const GradedOperator& b, int u, int v,
                             std::vector<Mismatch>& out, int max_degree = INT_MAX)
{
    const int N = a.max_degree();
    int window = -1;
    bool prefix = true;
    for (int d = 0; d <= std::min(N, max_degree); ++d) {
        if (!a.valid(d) || !b.valid(d)) {
            prefix = false;
            continue;
        }
        if (prefix) window = d;
        if (a.same_column_block(b, d)) continue;
        for (const auto& lambda : partitions_of(d)) {
            const auto ca = a.column(lambda), cb = b.column(lambda);
            if (ca != cb) out.push_back({u, v, lambda, detail::format_column(ca, N), detail::format_column(cb, N)});
        }
    }
    return window;
}

inline MismatchReport series_equal(const OperatorSeries& a, const OperatorSeries& b, int max_degree = INT_MAX)
{
    MismatchReport rep;
    std::set<OperatorSeries::Key> keys;
    for (const auto& [k, op] : a.coeffs()) keys.insert(k);
    for (const auto& [k, op] : b.coeffs()) keys.insert(k);
    const int V = std::min(a.order(), b.order());
    int window = std::min(a.max_degree(), max_degree);
    for (const auto& k : keys) {
        if (k.first > V || k.second > V) continue;
        const int w = compare_operators(a.coeff(k.first, k.second), b.coeff(k.first, k.second), k.first, k.second,
                                        rep.mismatches, max_degree);
        ++rep.cells;
        if (w < 0) {
            ++rep.vacuous;
        } else {
            window = std::min(window, w);
        }
    }
    rep.window = rep.vacuous == rep.cells && rep.cells > 0 ? -1 : window;
    return rep;
}

} // namespace qsf
