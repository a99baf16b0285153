#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <qsf/linalg/matrix.hpp>
#include <qsf/qt/rat.hpp>
#include <qsf/sym/partition.hpp>

namespace qsf {

struct WindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear map on the space of symmetric functions of degree <= N, stored as
/// blocks (target degree, source degree) -> matrix whose column j is the image
/// of the j-th basis element of the source degree.
///
/// valid[d] says the block column for source degree d is the complete, exact
/// image: nothing was lost to truncation, here or in any factor it was built from.
class GradedOperator
{
public:
    using Key = std::pair<int, int>; // (target degree, source degree)

    GradedOperator() = default;
    explicit GradedOperator(int N) : N_(N), valid_(static_cast<std::size_t>(N + 1), true) {}

    static GradedOperator identity(int N)
    {
        GradedOperator r(N);
        for (int d = 0; d <= N; ++d) r.blocks_.emplace(Key{d, d}, QMatrix::identity(partitions_of(d).size()));
        return r;
    }

    static GradedOperator diagonal(int N, const std::function<QtRat(const Partition&)>& f)
    {
        GradedOperator r(N);
        for (int d = 0; d <= N; ++d) {
            const auto& parts = partitions_of(d);
            QMatrix m(parts.size(), parts.size());
            for (std::size_t i = 0; i < parts.size(); ++i) m(i, i) = f(parts[i]);
            r.set_block(d, d, std::move(m));
        }
        return r;
    }

    int max_degree() const { return N_; }
    const std::map<Key, QMatrix>& blocks() const { return blocks_; }
    bool is_zero() const { return blocks_.empty(); }

    const QMatrix* block(int target, int source) const
    {
        auto it = blocks_.find({target, source});
        return it == blocks_.end() ? nullptr : &it->second;
    }

    void set_block(int target, int source, QMatrix m)
    {
        if (target < 0 || target > N_ || source < 0 || source > N_) throw std::out_of_range("block degree out of range");
        if (m.is_zero()) {
            blocks_.erase({target, source});
        } else {
            blocks_[{target, source}] = std::move(m);
        }
    }

    void add_block(int target, int source, const QMatrix& m)
    {
        auto it = blocks_.find({target, source});
        if (it == blocks_.end()) {
            set_block(target, source, m);
        } else {
            it->second = it->second + m;
            if (it->second.is_zero()) blocks_.erase(it);
        }
    }

    void drop_rows_above(int top)
    {
        for (auto it = blocks_.begin(); it != blocks_.end();) {
            it = it->first.first > top ? blocks_.erase(it) : std::next(it);
        }
    }

    void drop_columns_above(int top)
    {
        for (auto it = blocks_.begin(); it != blocks_.end();) {
            it = it->first.second > top ? blocks_.erase(it) : std::next(it);
        }
    }

    bool valid(int d) const { return d >= 0 && d <= N_ && valid_[d]; }
    const std::vector<bool>& validity() const { return valid_; }
    void set_valid(int d, bool v) { valid_.at(d) = v; }
    void set_all_valid(bool v) { std::fill(valid_.begin(), valid_.end(), v); }

    // Largest w with every source degree 0..w valid; -1 when degree 0 is not.
    int window() const
    {
        int w = -1;
        while (w + 1 <= N_ && valid_[w + 1]) ++w;
        return w;
    }

    // Target minus source degree over nonzero blocks, optionally only from sources <= up_to.
    std::set<int> shift_profile(int up_to = INT_MAX) const
    {
        std::set<int> s;
        for (const auto& [k, m] : blocks_) {
            if (k.second <= up_to) s.insert(k.first - k.second);
        }
        return s;
    }
    int max_raise() const
    {
        const auto s = shift_profile();
        return s.empty() ? 0 : std::max(0, *s.rbegin());
    }

    GradedOperator operator-() const
    {
        GradedOperator r(*this);
        for (auto& [k, m] : r.blocks_) m = QtRat(-1) * m;
        return r;
    }

    friend GradedOperator operator+(GradedOperator a, const GradedOperator& b)
    {
        a.check_compatible(b);
        for (const auto& [k, m] : b.blocks_) a.add_block(k.first, k.second, m);
        for (int d = 0; d <= a.N_; ++d) a.valid_[d] = a.valid_[d] && b.valid_[d];
        return a;
    }
    friend GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) { return a + (-b); }

    friend GradedOperator operator*(const QtRat& s, GradedOperator a)
    {
        if (s.is_zero()) {
            a.blocks_.clear();
            return a;
        }
        for (auto& [k, m] : a.blocks_) m = s * m;
        return a;
    }

    /// Composition A after B, ignoring validity.
    static GradedOperator compose_raw(const GradedOperator& a, const GradedOperator& b)
    {
        a.check_compatible(b);
        GradedOperator r(a.N_);
        for (const auto& [kb, mb] : b.blocks_) {
            const int e = kb.first, d = kb.second;
            for (int f = 0; f <= a.N_; ++f) {
                const QMatrix* ma = a.block(f, e);
                if (ma) r.add_block(f, d, *ma * mb);
            }
        }
        return r;
    }

    /// Composition A after B. Column d is valid when B's column d is, and A's
    /// columns are valid at every degree B sends d into.
    friend GradedOperator operator*(const GradedOperator& a, const GradedOperator& b)
    {
        GradedOperator r = compose_raw(a, b);
        for (int d = 0; d <= r.N_; ++d) {
            bool ok = b.valid_[d];
            for (int e = 0; ok && e <= r.N_; ++e) {
                if (b.block(e, d) && !a.valid_[e]) ok = false;
            }
            r.valid_[d] = ok;
        }
        return r;
    }

    /// Entry (target, source) conjugated by diagonal scalings: L -> D_left L D_right.
    GradedOperator scaled(const std::function<QtRat(const Partition&)>& left,
                          const std::function<QtRat(const Partition&)>& right) const
    {
        GradedOperator r(*this);
        for (auto& [k, m] : r.blocks_) {
            const auto& tp = partitions_of(k.first);
            const auto& sp = partitions_of(k.second);
            std::vector<QtRat> lv(tp.size()), rv(sp.size());
            for (std::size_t i = 0; i < tp.size(); ++i) lv[i] = left(tp[i]);
            for (std::size_t j = 0; j < sp.size(); ++j) rv[j] = right(sp[j]);
            for (std::size_t i = 0; i < tp.size(); ++i) {
                for (std::size_t j = 0; j < sp.size(); ++j) {
                    if (!m(i, j).is_zero()) m(i, j) = lv[i] * m(i, j) * rv[j];
                }
            }
        }
        return r;
    }

    /// Image of the basis element lambda: target degree -> coordinates.
    std::map<int, std::vector<QtRat>> column(const Partition& lambda) const
    {
        const int d = lambda.size();
        const std::size_t j = partition_index(lambda);
        std::map<int, std::vector<QtRat>> out;
        for (const auto& [k, m] : blocks_) {
            if (k.second != d) continue;
            std::vector<QtRat> v(m.rows());
            bool any = false;
            for (std::size_t i = 0; i < m.rows(); ++i) {
                v[i] = m(i, j);
                any = any || !v[i].is_zero();
            }
            if (any) out.emplace(k.first, std::move(v));
        }
        return out;
    }

    /// Blocks equal (values only; validity not compared) on source degree d.
    bool same_column_block(const GradedOperator& o, int d) const
    {
        for (int e = 0; e <= N_; ++e) {
            const QMatrix* a = block(e, d);
            const QMatrix* b = o.block(e, d);
            if (!a && !b) continue;
            if (!a || !b || !(*a == *b)) return false;
        }
        return true;
    }

    /// Same values on all valid columns of both, and same validity.
    friend bool operator==(const GradedOperator& a, const GradedOperator& b)
    {
        return a.N_ == b.N_ && a.valid_ == b.valid_ && a.blocks_ == b.blocks_;
    }

private:
    int N_ = 0;
    std::vector<bool> valid_;
    std::map<Key, QMatrix> blocks_;

    void check_compatible(const GradedOperator& b) const
    {
        if (N_ != b.N_) throw std::invalid_argument("operators with different truncations");
    }
};

} // namespace qsf
