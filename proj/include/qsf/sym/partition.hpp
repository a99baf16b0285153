#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace qsf {

class Partition
{
public:
    Partition() = default;
    Partition(std::initializer_list<int> parts) : parts_(parts) { check(); }
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) { check(); }

    const std::vector<int>& parts() const { return parts_; }
    std::size_t length() const { return parts_.size(); }
    bool empty() const { return parts_.empty(); }
    int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    auto begin() const { return parts_.begin(); }
    auto end() const { return parts_.end(); }

    int size() const
    {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }

    Partition conjugate() const
    {
        std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
        for (int p : parts_) {
            for (int j = 0; j < p; ++j) ++c[j];
        }
        return Partition(std::move(c));
    }

    // n(lambda) = sum (i - 1) lambda_i.
    int n_stat() const
    {
        int s = 0;
        for (std::size_t i = 0; i < parts_.size(); ++i) s += static_cast<int>(i) * parts_[i];
        return s;
    }

    // Multiplicity m_k for k = 1..largest part (index 0 unused).
    std::vector<int> multiplicities() const
    {
        std::vector<int> m(parts_.empty() ? 1 : parts_[0] + 1, 0);
        for (int p : parts_) ++m[p];
        return m;
    }

    // z_lambda = prod k^{m_k} m_k!
    mpz_class z() const
    {
        mpz_class r = 1;
        const auto m = multiplicities();
        for (std::size_t k = 1; k < m.size(); ++k) {
            for (int j = 1; j <= m[k]; ++j) r *= mpz_class(static_cast<long>(k * j));
        }
        return r;
    }

    // Union of parts (the index of p_lambda * p_mu).
    Partition join(const Partition& o) const
    {
        std::vector<int> r(parts_);
        r.insert(r.end(), o.parts_.begin(), o.parts_.end());
        std::sort(r.begin(), r.end(), std::greater<>());
        return Partition(std::move(r));
    }

    // Global order: by size, then reverse lexicographic (so (d) comes first).
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b)
    {
        const int sa = a.size(), sb = b.size();
        if (sa != sb) return sa <=> sb;
        const auto c = std::lexicographical_compare_three_way(a.parts_.begin(), a.parts_.end(), b.parts_.begin(),
                                                              b.parts_.end());
        return 0 <=> c;
    }
    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

private:
    std::vector<int> parts_;

    void check() const
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }
};

inline std::string to_string(const Partition& p)
{
    if (p.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i) s += ',';
        s += std::to_string(p[i]);
    }
    return s;
}

inline Partition parse_partition(std::string_view s)
{
    if (s == "-" || s.empty()) return {};
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = std::min(s.find(',', pos), s.size());
        const std::string tok(s.substr(pos, next - pos));
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("bad partition '" + std::string(s) + "'");
        }
        parts.push_back(std::stoi(tok));
        pos = next + 1;
    }
    return Partition(std::move(parts));
}

namespace detail {

inline void partitions_rec(int rest, int cap, std::vector<int>& cur, std::vector<Partition>& out)
{
    if (rest == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(rest, cap); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(rest - p, p, cur, out);
        cur.pop_back();
    }
}

struct PartitionTable {
    static constexpr int max_degree = 20;
    std::vector<std::vector<Partition>> lists;
    std::map<Partition, std::size_t> index;

    PartitionTable()
    {
        for (int d = 0; d <= max_degree; ++d) {
            std::vector<Partition> out;
            std::vector<int> cur;
            partitions_rec(d, d, cur, out);
            for (std::size_t i = 0; i < out.size(); ++i) index.emplace(out[i], i);
            lists.push_back(std::move(out));
        }
    }
};

inline const PartitionTable& partition_table()
{
    static const PartitionTable table;
    return table;
}

} // namespace detail

/// All partitions of d in reverse lexicographic order.
inline const std::vector<Partition>& partitions_of(int d)
{
    if (d < 0 || d > detail::PartitionTable::max_degree) throw std::out_of_range("partitions_of: degree out of range");
    return detail::partition_table().lists[d];
}

/// Position of lambda within partitions_of(|lambda|).
inline std::size_t partition_index(const Partition& lambda)
{
    const auto& idx = detail::partition_table().index;
    auto it = idx.find(lambda);
    if (it == idx.end()) throw std::out_of_range("partition_index: degree out of range");
    return it->second;
}

inline bool dominance_leq(const Partition& a, const Partition& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("dominance_leq: partitions of different sizes");
    int sa = 0, sb = 0;
    const std::size_t n = std::max(a.length(), b.length());
    for (std::size_t i = 0; i < n; ++i) {
        sa += a[i];
        sb += b[i];
        if (sa > sb) return false;
    }
    return true;
}

} // namespace qsf
