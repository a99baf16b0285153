#pragma once

// Transition matrices between the classical bases and the power sums, one
// set per degree, built on first use.

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <qsf/linalg/matrix.hpp>
#include <qsf/qt/rat.hpp>
#include <qsf/sym/partition.hpp>

namespace qsf {

enum class Basis { monomial, elementary, homogeneous, powersum, schur, htilde };

inline std::string_view basis_name(Basis b)
{
    switch (b) {
    case Basis::monomial: return "monomial";
    case Basis::elementary: return "elementary";
    case Basis::homogeneous: return "homogeneous";
    case Basis::powersum: return "powersum";
    case Basis::schur: return "schur";
    case Basis::htilde: return "htilde";
    }
    return "?";
}

// Letter used when printing basis elements, e.g. s[2,1].
inline char basis_letter(Basis b)
{
    switch (b) {
    case Basis::monomial: return 'm';
    case Basis::elementary: return 'e';
    case Basis::homogeneous: return 'h';
    case Basis::powersum: return 'p';
    case Basis::schur: return 's';
    case Basis::htilde: return 'H';
    }
    return '?';
}

inline Basis parse_basis(std::string_view s)
{
    for (Basis b : {Basis::monomial, Basis::elementary, Basis::homogeneous, Basis::powersum, Basis::schur,
                    Basis::htilde}) {
        if (s == basis_name(b) || (s.size() == 1 && s[0] == basis_letter(b))) return b;
    }
    throw std::invalid_argument("unknown basis '" + std::string(s) + "'");
}

using QMatrix = Matrix<QtRat>;

namespace detail {

// Irreducible character chi^lambda at class rho by Murnaghan-Nakayama on beta-sets.
class CharacterTable
{
public:
    long operator()(const Partition& lambda, const Partition& rho) { return chi(beta_set(lambda), rho.parts(), 0); }

private:
    std::map<std::pair<std::set<int>, std::size_t>, long> memo_;
    std::vector<int> rho_;

    static std::set<int> beta_set(const Partition& lambda)
    {
        std::set<int> b;
        const int l = static_cast<int>(lambda.length());
        for (int i = 0; i < l; ++i) b.insert(lambda[i] + l - 1 - i);
        return b;
    }

    // beta is normalized to drop leading zeros so equal shapes share memo keys.
    static std::set<int> normalize(const std::set<int>& beta)
    {
        int shift = 0;
        while (beta.count(shift)) ++shift;
        if (shift == 0) return beta;
        std::set<int> r;
        for (int x : beta) {
            if (x >= shift) r.insert(x - shift);
        }
        return r;
    }

    long chi(const std::set<int>& beta, const std::vector<int>& rho, std::size_t pos)
    {
        if (pos == rho.size()) return 1;
        if (rho_ != rho) {
            rho_ = rho;
            memo_.clear();
        }
        const auto key = std::make_pair(beta, pos);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const int k = rho[pos];
        long total = 0;
        for (int x : beta) {
            const int y = x - k;
            if (y < 0 || beta.count(y)) continue;
            int between = 0;
            for (int z : beta) {
                if (z > y && z < x) ++between;
            }
            std::set<int> next(beta);
            next.erase(x);
            next.insert(y);
            const long sub = chi(normalize(next), rho, pos + 1);
            total += (between % 2 ? -sub : sub);
        }
        memo_.emplace(key, total);
        return total;
    }
};

struct BasisMatrices {
    QMatrix to_p;   // row i: basis element i expanded in p
    QMatrix from_p; // inverse of to_p
};

inline QtRat inv_z(const Partition& rho) { return QtRat::fraction(1, rho.z()); }

inline BasisMatrices build_basis_matrices(Basis b, int d)
{
    const auto& parts = partitions_of(d);
    const std::size_t n = parts.size();
    QMatrix to_p(n, n);
    switch (b) {
    case Basis::powersum:
        to_p = QMatrix::identity(n);
        break;
    case Basis::schur: {
        CharacterTable chi;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const long c = chi(parts[i], parts[j]);
                if (c != 0) to_p(i, j) = QtRat(c) * inv_z(parts[j]);
            }
        }
        break;
    }
    case Basis::homogeneous:
    case Basis::elementary:
    case Basis::monomial: {
        // h_lambda (or e_lambda) as a product of one-part pieces, in p.
        const bool elem = b == Basis::elementary;
        auto one_part = [elem](int k) {
            std::map<Partition, QtRat> r;
            for (const auto& rho : partitions_of(k)) {
                QtRat c = inv_z(rho);
                if (elem && (k - static_cast<int>(rho.length())) % 2) c = -c;
                r.emplace(rho, c);
            }
            return r;
        };
        for (std::size_t i = 0; i < n; ++i) {
            std::map<Partition, QtRat> acc{{Partition{}, QtRat(1)}};
            for (int part : parts[i]) {
                std::map<Partition, QtRat> next;
                for (const auto& [a, ca] : acc) {
                    for (const auto& [c, cc] : one_part(part)) next[a.join(c)] += ca * cc;
                }
                acc = std::move(next);
            }
            for (const auto& [rho, c] : acc) to_p(i, partition_index(rho)) = c;
        }
        if (b == Basis::monomial) {
            // m is dual to h: H Z M^T = I, so M = (H^{-1})^T Z^{-1}.
            QMatrix m = to_p.inverse().transpose();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!m(i, j).is_zero()) m(i, j) = m(i, j) * inv_z(parts[j]);
                }
            }
            to_p = std::move(m);
        }
        break;
    }
    case Basis::htilde:
        throw std::invalid_argument("htilde transition matrices live in the Macdonald tables");
    }
    return {to_p, b == Basis::powersum ? to_p : to_p.inverse()};
}

class BasisCache
{
public:
    const BasisMatrices& get(Basis b, int d)
    {
        std::lock_guard lock(mu_);
        auto& slot = cache_[{b, d}];
        if (!slot) slot = std::make_unique<BasisMatrices>(build_basis_matrices(b, d));
        return *slot;
    }

private:
    std::mutex mu_;
    std::map<std::pair<Basis, int>, std::unique_ptr<BasisMatrices>> cache_;
};

inline BasisCache& basis_cache()
{
    static BasisCache cache;
    return cache;
}

} // namespace detail

/// Rows: basis elements of degree d; columns: power sums; both in partition order.
inline const QMatrix& to_powersum_matrix(Basis b, int d) { return detail::basis_cache().get(b, d).to_p; }
inline const QMatrix& from_powersum_matrix(Basis b, int d) { return detail::basis_cache().get(b, d).from_p; }

/// Character chi^lambda(rho).
inline long character(const Partition& lambda, const Partition& rho)
{
    detail::CharacterTable chi;
    return chi(lambda, rho);
}

} // namespace qsf
