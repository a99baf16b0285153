#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <qsf/qt/io.hpp>
#include <qsf/qt/uvpoly.hpp>
#include <qsf/sym/bases.hpp>
#include <qsf/sym/partition.hpp>

namespace qsf {

// What the symmetric-function code needs from a coefficient ring beyond + - *.
template <class R>
struct CoeffOps;

template <>
struct CoeffOps<QtRat> {
    static QtRat from(const QtRat& c) { return c; }
    static QtRat monomial(const QtRat& c, int ue, int ve, int /*order*/)
    {
        if (ue != 0 || ve != 0) throw std::invalid_argument("scalar coefficients cannot carry u or v");
        return c;
    }
    static std::string format(const QtRat& c) { return qsf::format(c); }
};

template <>
struct CoeffOps<UVPoly> {
    static UVPoly from(const QtRat& c) { return UVPoly(c); }
    static UVPoly monomial(const QtRat& c, int ue, int ve, int order) { return UVPoly::monomial(c, ue, ve, order); }
    static std::string format(const UVPoly& c) { return qsf::format(c); }
};

/// Symmetric function of degree at most N in a tagged basis.
template <class R = QtRat>
class SymFunc
{
public:
    using Coeffs = std::map<Partition, R>;

    SymFunc() = default;
    SymFunc(Basis b, int N) : basis_(b), N_(N) {}

    static SymFunc one(Basis b, int N) { return element(b, Partition{}, N); }
    static SymFunc element(Basis b, const Partition& lambda, int N, const R& c = CoeffOps<R>::from(QtRat(1)))
    {
        SymFunc f(b, N);
        f.add(lambda, c);
        return f;
    }

    Basis basis() const { return basis_; }
    int truncation() const { return N_; }
    // Set when some term was dropped (degree above N, or mixed truncations met).
    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }
    const Coeffs& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    R coeff(const Partition& lambda) const
    {
        auto it = c_.find(lambda);
        return it == c_.end() ? R{} : it->second;
    }

    void add(const Partition& lambda, const R& c)
    {
        if (c.is_zero()) return;
        if (lambda.size() > N_) {
            truncated_ = true;
            return;
        }
        auto [it, inserted] = c_.emplace(lambda, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }

    // Largest degree with a nonzero term; -1 for zero.
    int max_degree() const { return c_.empty() ? -1 : c_.rbegin()->first.size(); }

    SymFunc degree_part(int d) const
    {
        SymFunc r(basis_, N_);
        for (const auto& [l, c] : c_) {
            if (l.size() == d) r.c_.emplace(l, c);
        }
        return r;
    }

    SymFunc& operator+=(const SymFunc& b)
    {
        combine(b);
        for (const auto& [l, c] : b.c_) add(l, c);
        return *this;
    }
    SymFunc& operator-=(const SymFunc& b)
    {
        combine(b);
        for (const auto& [l, c] : b.c_) add(l, -c);
        return *this;
    }
    friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
    friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
    SymFunc operator-() const
    {
        SymFunc r(*this);
        for (auto& [l, c] : r.c_) c = -c;
        return r;
    }

    friend SymFunc operator*(const R& s, const SymFunc& f)
    {
        SymFunc r(f.basis_, f.N_);
        r.truncated_ = f.truncated_;
        for (const auto& [l, c] : f.c_) r.add(l, s * c);
        return r;
    }

    // Equality of values; the truncation flag is bookkeeping and not compared.
    friend bool operator==(const SymFunc& a, const SymFunc& b)
    {
        return a.basis_ == b.basis_ && a.N_ == b.N_ && a.c_ == b.c_;
    }

private:
    Basis basis_ = Basis::powersum;
    int N_ = 0;
    bool truncated_ = false;
    Coeffs c_;

    void combine(const SymFunc& b)
    {
        if (b.basis_ != basis_) throw std::invalid_argument("adding symmetric functions in different bases");
        if (b.N_ != N_) {
            N_ = std::min(N_, b.N_);
            truncated_ = true;
            for (auto it = c_.begin(); it != c_.end();) {
                it = it->first.size() > N_ ? c_.erase(it) : std::next(it);
            }
        }
        truncated_ = truncated_ || b.truncated_;
    }
};

/// "s[3] + (q + t)*s[2,1]"; unit coefficients are omitted.
template <class R>
std::string format(const SymFunc<R>& f)
{
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const char letter = basis_letter(f.basis());
    for (const auto& [l, c] : f.terms()) {
        const std::string elem =
            std::string(1, letter) + "[" + (l.empty() ? std::string() : to_string(l)) + "]";
        const std::string cs = CoeffOps<R>::format(c);
        if (!first) os << " + ";
        first = false;
        if (cs == "1") {
            os << elem;
        } else if (cs == "-1") {
            os << '-' << elem;
        } else {
            os << '(' << cs << ")*" << elem;
        }
    }
    std::string s = os.str();
    // "a + -s[1]" reads better as "a - s[1]".
    for (std::size_t pos; (pos = s.find(" + -")) != std::string::npos;) s.replace(pos, 4, " - ");
    return s;
}

namespace detail {

template <class R>
std::vector<R> row_times(const std::vector<R>& v, const QMatrix& m)
{
    std::vector<R> out(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_zero()) out[j] += m(i, j) * v[i];
        }
    }
    return out;
}

} // namespace detail

/// Re-expresses F in a classical basis.
template <class R>
SymFunc<R> to_basis(const SymFunc<R>& f, Basis target)
{
    if (f.basis() == Basis::htilde || target == Basis::htilde) {
        throw std::invalid_argument("htilde conversions need a Macdonald table");
    }
    if (f.basis() == target) return f;
    SymFunc<R> r(target, f.truncation());
    if (f.truncated()) r.mark_truncated();
    for (int d = 0; d <= f.max_degree(); ++d) {
        const auto& parts = partitions_of(d);
        std::vector<R> v(parts.size());
        bool any = false;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            v[i] = f.coeff(parts[i]);
            any = any || !v[i].is_zero();
        }
        if (!any) continue;
        if (f.basis() != Basis::powersum) v = detail::row_times(v, to_powersum_matrix(f.basis(), d));
        if (target != Basis::powersum) v = detail::row_times(v, from_powersum_matrix(target, d));
        for (std::size_t i = 0; i < parts.size(); ++i) r.add(parts[i], v[i]);
    }
    return r;
}

/// Product truncated at the smaller of the two truncations, in F's basis.
template <class R>
SymFunc<R> multiply(const SymFunc<R>& f, const SymFunc<R>& g)
{
    const SymFunc<R> a = to_basis(f, Basis::powersum), b = to_basis(g, Basis::powersum);
    SymFunc<R> r(Basis::powersum, std::min(f.truncation(), g.truncation()));
    if (f.truncation() != g.truncation() || f.truncated() || g.truncated()) r.mark_truncated();
    for (const auto& [la, ca] : a.terms()) {
        for (const auto& [lb, cb] : b.terms()) {
            if (la.size() + lb.size() > r.truncation()) {
                r.mark_truncated();
                continue;
            }
            r.add(la.join(lb), ca * cb);
        }
    }
    return to_basis(r, f.basis());
}

/// Hall inner product.
template <class R>
R hall_pair(const SymFunc<R>& f, const SymFunc<R>& g)
{
    const SymFunc<R> a = to_basis(f, Basis::powersum), b = to_basis(g, Basis::powersum);
    R r{};
    for (const auto& [l, c] : a.terms()) {
        auto it = b.terms().find(l);
        if (it != b.terms().end()) r += CoeffOps<R>::from(QtRat(l.z())) * (c * it->second);
    }
    return r;
}

namespace detail {

// p_mu^perp p_lambda = prod_k k^{m_k(mu)} m_k(lambda)! / (m_k(lambda) - m_k(mu))! p_{lambda - mu}.
inline bool skew_powersum(const Partition& mu, const Partition& lambda, Integer& coeff, Partition& rest)
{
    const auto mm = mu.multiplicities();
    auto ml = lambda.multiplicities();
    coeff = 1;
    for (std::size_t k = 1; k < mm.size(); ++k) {
        if (mm[k] == 0) continue;
        if (k >= ml.size() || ml[k] < mm[k]) return false;
        for (int j = 0; j < mm[k]; ++j) coeff *= Integer(static_cast<long>(k) * (ml[k] - j));
        ml[k] -= mm[k];
    }
    std::vector<int> parts;
    for (std::size_t k = ml.size(); k-- > 1;) {
        for (int j = 0; j < ml[k]; ++j) parts.push_back(static_cast<int>(k));
    }
    rest = Partition(std::move(parts));
    return true;
}

} // namespace detail

/// F^perp G, the Hall adjoint of multiplication by F, in G's basis.
template <class R>
SymFunc<R> skew_apply(const SymFunc<R>& f, const SymFunc<R>& g)
{
    const SymFunc<R> a = to_basis(f, Basis::powersum), b = to_basis(g, Basis::powersum);
    SymFunc<R> r(Basis::powersum, g.truncation());
    if (g.truncated()) r.mark_truncated();
    Integer c;
    Partition rest;
    for (const auto& [mu, cm] : a.terms()) {
        for (const auto& [lambda, cl] : b.terms()) {
            if (!detail::skew_powersum(mu, lambda, c, rest)) continue;
            r.add(rest, CoeffOps<R>::from(QtRat(c)) * (cm * cl));
        }
    }
    return to_basis(r, g.basis());
}

// Common elements, as SymFunc<QtRat> in the power-sum basis unless stated.
inline SymFunc<QtRat> sym_h(int n, int N) { return to_basis(SymFunc<QtRat>::element(Basis::homogeneous, n ? Partition{n} : Partition{}, N), Basis::powersum); }
inline SymFunc<QtRat> sym_e(int n, int N) { return to_basis(SymFunc<QtRat>::element(Basis::elementary, n ? Partition{n} : Partition{}, N), Basis::powersum); }

} // namespace qsf
