#pragma once

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <vector>

#include <qsf/sym/symfunc.hpp>

namespace qsf {

enum class Letter { X, unit };

struct AlphabetTerm {
    QtRat coeff;
    int u = 0;
    int v = 0;
    int z = 0;
    Letter letter = Letter::X;
};

/// Formal sum of scalar multiples of X and of unit letters, each carrying
/// powers of u, v and z.
class Alphabet
{
public:
    Alphabet() = default;
    Alphabet(std::initializer_list<AlphabetTerm> terms)
    {
        for (const auto& t : terms) add(t);
    }

    static Alphabet X(const QtRat& c = QtRat(1)) { return Alphabet{{c, 0, 0, 0, Letter::X}}; }
    static Alphabet unit(const QtRat& c, int u = 0, int v = 0, int z = 0) { return Alphabet{{c, u, v, z, Letter::unit}}; }

    void add(const AlphabetTerm& t)
    {
        if (t.coeff.is_zero()) return;
        if (t.u < 0 || t.v < 0) throw std::invalid_argument("alphabet: negative u or v exponent");
        terms_.push_back(t);
    }

    const std::vector<AlphabetTerm>& terms() const { return terms_; }

    friend Alphabet operator+(Alphabet a, const Alphabet& b)
    {
        for (const auto& t : b.terms_) a.add(t);
        return a;
    }
    friend Alphabet operator-(Alphabet a, const Alphabet& b)
    {
        for (auto t : b.terms_) {
            t.coeff = -t.coeff;
            a.add(t);
        }
        return a;
    }

private:
    std::vector<AlphabetTerm> terms_;
};

struct Windows {
    int N = 0;                  // symmetric-function degree
    int V = UVPoly::unbounded;  // u and v exponents
    int z = 0;                  // z exponents kept: -z..z
};

/// Laurent polynomial in z with symmetric-function coefficients (power-sum basis).
template <class R = QtRat>
class ZGradedSym
{
public:
    ZGradedSym() = default;
    explicit ZGradedSym(Windows w) : w_(w) {}

    const Windows& windows() const { return w_; }
    const std::map<int, SymFunc<R>>& components() const { return comps_; }
    bool truncated() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }

    SymFunc<R> component(int z) const
    {
        auto it = comps_.find(z);
        return it == comps_.end() ? SymFunc<R>(Basis::powersum, w_.N) : it->second;
    }

    void add(int z, const Partition& lambda, const R& c)
    {
        if (c.is_zero()) return;
        auto it = comps_.try_emplace(z, Basis::powersum, w_.N).first;
        it->second.add(lambda, c);
        if (it->second.truncated()) truncated_ = true;
        if (it->second.is_zero()) comps_.erase(it);
    }

    ZGradedSym& operator+=(const ZGradedSym& b)
    {
        for (const auto& [z, f] : b.comps_) {
            for (const auto& [l, c] : f.terms()) add(z, l, c);
        }
        truncated_ = truncated_ || b.truncated_;
        return *this;
    }

    friend ZGradedSym operator*(const ZGradedSym& a, const ZGradedSym& b)
    {
        ZGradedSym r(a.w_);
        r.truncated_ = a.truncated_ || b.truncated_;
        for (const auto& [za, fa] : a.comps_) {
            for (const auto& [zb, fb] : b.comps_) {
                for (const auto& [la, ca] : fa.terms()) {
                    for (const auto& [lb, cb] : fb.terms()) {
                        if (la.size() + lb.size() > r.w_.N) {
                            r.truncated_ = true;
                            continue;
                        }
                        r.add(za + zb, la.join(lb), ca * cb);
                    }
                }
            }
        }
        return r;
    }

    // Drops components outside the z window, flagging any loss.
    void clip_z()
    {
        for (auto it = comps_.begin(); it != comps_.end();) {
            if (std::abs(it->first) > w_.z) {
                truncated_ = true;
                it = comps_.erase(it);
            } else {
                ++it;
            }
        }
    }

private:
    Windows w_;
    std::map<int, SymFunc<R>> comps_;
    bool truncated_ = false;
};

namespace detail {

template <class R>
ZGradedSym<R> powersum_of_alphabet(int n, const Alphabet& a, const Windows& w)
{
    ZGradedSym<R> r(w);
    const Partition pn{n};
    for (const auto& t : a.terms()) {
        const R c = CoeffOps<R>::monomial(t.coeff.power_twist(static_cast<unsigned>(n)), n * t.u, n * t.v, w.V);
        r.add(n * t.z, t.letter == Letter::X ? pn : Partition{}, c);
    }
    return r;
}

} // namespace detail

/// F[A]. Intermediate products are exact in z; the z window is applied at the end.
template <class R>
ZGradedSym<R> plethysm(const SymFunc<R>& f, const Alphabet& a, Windows w)
{
    const SymFunc<R> fp = to_basis(f, Basis::powersum);
    std::map<int, ZGradedSym<R>> pn;
    std::map<Partition, ZGradedSym<R>> memo;
    Windows exact = w;
    exact.z = 1 << 20;
    auto pn_of = [&](int n) -> const ZGradedSym<R>& {
        auto it = pn.find(n);
        if (it == pn.end()) it = pn.emplace(n, detail::powersum_of_alphabet<R>(n, a, exact)).first;
        return it->second;
    };
    // p_lambda[A] = p_{lambda_1}[A] * p_{rest}[A], memoized on the suffix.
    auto power_product = [&](auto&& self, const Partition& lambda) -> const ZGradedSym<R>& {
        auto it = memo.find(lambda);
        if (it != memo.end()) return it->second;
        ZGradedSym<R> r(exact);
        if (lambda.empty()) {
            r.add(0, Partition{}, CoeffOps<R>::from(QtRat(1)));
        } else {
            const std::vector<int> rest(lambda.begin() + 1, lambda.end());
            r = pn_of(lambda[0]) * self(self, Partition(rest));
        }
        return memo.emplace(lambda, std::move(r)).first->second;
    };
    ZGradedSym<R> out(exact);
    if (f.truncated()) out.mark_truncated();
    for (const auto& [lambda, c] : fp.terms()) {
        const auto& pl = power_product(power_product, lambda);
        for (const auto& [z, g] : pl.components()) {
            for (const auto& [mu, cg] : g.terms()) out.add(z, mu, c * cg);
        }
        if (pl.truncated()) out.mark_truncated();
    }
    ZGradedSym<R> clipped(w);
    for (const auto& [z, g] : out.components()) {
        for (const auto& [mu, cg] : g.terms()) clipped.add(z, mu, cg);
    }
    if (out.truncated()) clipped.mark_truncated();
    clipped.clip_z();
    return clipped;
}

struct NonTruncatable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// sum_{n <= cutoff} h_n[A]. Every term of A must carry positive weight
/// (an X, or a power of u, v or z), so that the dropped tail only contains
/// monomials of weight above the cutoff.
template <class R>
ZGradedSym<R> pexp(const Alphabet& a, int cutoff, Windows w)
{
    for (const auto& t : a.terms()) {
        if (t.letter == Letter::unit && t.u == 0 && t.v == 0 && t.z == 0) {
            throw NonTruncatable("pExp of an alphabet with a constant term does not truncate");
        }
    }
    ZGradedSym<R> r(w);
    for (int n = 0; n <= cutoff; ++n) {
        const SymFunc<R> hn = to_basis(
            SymFunc<R>::element(Basis::homogeneous, n ? Partition{n} : Partition{}, n), Basis::powersum);
        r += plethysm(hn, a, w);
    }
    return r;
}

} // namespace qsf
