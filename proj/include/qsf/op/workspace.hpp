#pragma once

// Operators on the truncated space, in the modified Macdonald basis.

#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <qsf/mac/cache.hpp>
#include <qsf/mac/cells.hpp>
#include <qsf/op/series.hpp>
#include <qsf/sym/dn.hpp>

namespace qsf {

/// Sign conventions; the defaults are the correct ones. The alternatives
/// exist so tests can show that the identities depend on them.
struct Conventions {
    bool signed_nabla = true; // nabla eigenvalue carries (-1)^|lambda|
    bool signed_r0k = true;   // setup 1: R_{0,k} = (-1)^k Delta'_{e_k}
};

enum class Pairing { hall, star };

enum class DeltaKind { plain, prime, inverse }; // Delta_v, Delta'_v, Delta_v^{-1}

class Workspace
{
public:
    Workspace(MacdonaldStore& store, int N, int V, Conventions conv = {})
        : store_(store), N_(N), V_(V), conv_(conv)
    {
        if (N < 0 || N > MacdonaldStore::max_degree) throw std::out_of_range("degree bound out of range");
    }

    int N() const { return N_; }
    int V() const { return V_; }
    const Conventions& conventions() const { return conv_; }
    MacdonaldStore& store() { return store_; }

    // ---- change of basis -------------------------------------------------

    SymFunc<QtRat> htilde_in_p(const Partition& lambda)
    {
        const int d = lambda.size();
        const auto& t = store_.table(d);
        const auto& parts = partitions_of(d);
        const std::size_t i = partition_index(lambda);
        SymFunc<QtRat> f(Basis::powersum, N_);
        for (std::size_t j = 0; j < parts.size(); ++j) f.add(parts[j], t.to_p(i, j));
        return f;
    }

    SymFunc<QtRat> to_htilde(const SymFunc<QtRat>& f)
    {
        if (f.basis() == Basis::htilde) return f;
        const SymFunc<QtRat> fp = to_basis(f, Basis::powersum);
        SymFunc<QtRat> r(Basis::htilde, f.truncation());
        for (int d = 0; d <= fp.max_degree(); ++d) {
            const auto& parts = partitions_of(d);
            const auto& t = store_.table(d);
            for (std::size_t i = 0; i < parts.size(); ++i) {
                const QtRat c = fp.coeff(parts[i]);
                if (c.is_zero()) continue;
                for (std::size_t j = 0; j < parts.size(); ++j) {
                    if (!t.from_p(i, j).is_zero()) r.add(parts[j], c * t.from_p(i, j));
                }
            }
        }
        return r;
    }

    SymFunc<QtRat> from_htilde(const SymFunc<QtRat>& f, Basis target)
    {
        if (f.basis() != Basis::htilde) return to_basis(f, target);
        if (target == Basis::htilde) return f;
        SymFunc<QtRat> r(Basis::powersum, f.truncation());
        for (const auto& [lambda, c] : f.terms()) {
            const auto& t = store_.table(lambda.size());
            const auto& parts = partitions_of(lambda.size());
            const std::size_t i = partition_index(lambda);
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (!t.to_p(i, j).is_zero()) r.add(parts[j], c * t.to_p(i, j));
            }
        }
        return to_basis(r, target);
    }

    /// Applies op to f and returns the result in f's basis.
    SymFunc<QtRat> apply(const GradedOperator& op, const SymFunc<QtRat>& f)
    {
        const SymFunc<QtRat> fh = to_htilde(f);
        SymFunc<QtRat> r(Basis::htilde, N_);
        for (const auto& [lambda, c] : fh.terms()) {
            for (const auto& [e, v] : op.column(lambda)) {
                const auto& parts = partitions_of(e);
                for (std::size_t i = 0; i < v.size(); ++i) r.add(parts[i], c * v[i]);
            }
        }
        return from_htilde(r, f.basis());
    }

    // ---- building operators ----------------------------------------------

    /// Operator from its action on power sums; image(rho) must be in p.
    /// Column d is marked valid when valid_at(d) holds.
    template <class Image, class Valid>
    GradedOperator from_powersum_action(Image image, Valid valid_at)
    {
        GradedOperator op(N_);
        for (int d = 0; d <= N_; ++d) {
            const auto& src = partitions_of(d);
            std::map<int, QMatrix> mp; // target degree -> matrix in p coordinates
            for (std::size_t j = 0; j < src.size(); ++j) {
                const SymFunc<QtRat> g = image(SymFunc<QtRat>::element(Basis::powersum, src[j], N_));
                for (const auto& [sigma, c] : g.terms()) {
                    const int e = sigma.size();
                    auto it = mp.try_emplace(e, partitions_of(e).size(), src.size()).first;
                    it->second(partition_index(sigma), j) = c;
                }
            }
            const QMatrix in = store_.table(d).to_p.transpose();
            for (auto& [e, m] : mp) {
                op.set_block(e, d, store_.table(e).from_p.transpose() * m * in);
            }
            op.set_valid(d, valid_at(d));
        }
        return op;
    }

    const GradedOperator& skew(const SymFunc<QtRat>& f)
    {
        const SymFunc<QtRat> fp = to_basis(f, Basis::powersum);
        return cached("skew " + format(fp), [&] {
            return from_powersum_action([&](const SymFunc<QtRat>& g) { return skew_apply(fp, g); },
                                        [](int) { return true; });
        });
    }

    /// Multiplication by a polynomial f; column d is complete when d + deg f <= N.
    const GradedOperator& mult(const SymFunc<QtRat>& f)
    {
        const SymFunc<QtRat> fp = to_basis(f, Basis::powersum);
        return cached("mult " + format(fp), [&] {
            const int top = fp.max_degree();
            return from_powersum_action([&](const SymFunc<QtRat>& g) { return multiply(g, fp); },
                                        [&](int d) { return d + top <= N_; });
        });
    }

    const GradedOperator& h_perp(int k) { return skew(sym_h(k, N_)); }
    const GradedOperator& e_perp(int k) { return skew(sym_e(k, N_)); }

    /// Multiplication by e_k[X/M].
    const GradedOperator& mult_e_over_m(int k)
    {
        const auto ek = plethysm(sym_e(k, N_), Alphabet::X(QtRat::M().inverse()), Windows{N_, 0, 0});
        return mult(ek.component(0));
    }

    QtRat delta_eigenvalue(const SymFunc<QtRat>& f, const Partition& lambda, bool prime)
    {
        const CellStats s = cell_stats(lambda);
        Alphabet a;
        for (const auto& term : s.b_poly.terms()) {
            a.add({QtRat(QtPoly::monomial(term.c, term.m.q, term.m.t)), 0, 0, 0, Letter::unit});
        }
        if (prime) a.add({-QtRat::M().inverse(), 0, 0, 0, Letter::unit});
        return plethysm(f, a, Windows{f.truncation(), 0, 0}).component(0).coeff({});
    }

    /// Delta_F (or Delta'_F): diagonal with eigenvalue F[B] (or F[B - 1/M]).
    const GradedOperator& delta(const SymFunc<QtRat>& f, bool prime)
    {
        const SymFunc<QtRat> fp = to_basis(f, Basis::powersum);
        return cached(std::string(prime ? "delta' " : "delta ") + format(fp), [&] {
            return GradedOperator::diagonal(N_, [&](const Partition& l) { return delta_eigenvalue(fp, l, prime); });
        });
    }

    QtRat nabla_eigenvalue(const Partition& lambda) const
    {
        const CellStats s = cell_stats(lambda);
        QtRat ev(QtPoly::monomial(1, s.nprime_stat, s.n_stat));
        if (conv_.signed_nabla && lambda.size() % 2) ev = -ev;
        return ev;
    }

    const GradedOperator& nabla(bool inverse)
    {
        return cached(inverse ? "nabla^-1" : "nabla", [&] {
            return GradedOperator::diagonal(N_, [&](const Partition& l) {
                return inverse ? nabla_eigenvalue(l).inverse() : nabla_eigenvalue(l);
            });
        });
    }

    /// D_n; column d is complete when d + n <= N.
    const GradedOperator& d_op(int n)
    {
        if (n < -N_ || n > N_) throw std::out_of_range("D_n index outside the z window");
        return cached("D " + std::to_string(n), [&] {
            return from_powersum_action([&](const SymFunc<QtRat>& g) { return apply_d(n, g); },
                                        [&](int d) { return d + n <= N_; });
        });
    }

    /// tau F = F[X + 1] and its inverse F[X - 1].
    const GradedOperator& tau(bool inverse)
    {
        return cached(inverse ? "tau^-1" : "tau", [&] {
            const QtRat shift(inverse ? -1 : 1);
            return from_powersum_action([&](const SymFunc<QtRat>& g) { return translate(g, shift); },
                                        [](int) { return true; });
        });
    }

    /// tau* = multiplication by pExp[-X/M] (inverse: pExp[X/M]). The
    /// truncation always cuts these off, so no column is complete.
    const GradedOperator& tau_star(bool inverse)
    {
        return cached(inverse ? "tau*^-1" : "tau*", [&] {
            const QtRat c = inverse ? QtRat::M().inverse() : -QtRat::M().inverse();
            const SymFunc<QtRat> e = pexp<QtRat>(Alphabet::X(c), N_, Windows{N_, 0, 0}).component(0);
            return from_powersum_action([&](const SymFunc<QtRat>& g) { return multiply(g, e); },
                                        [](int) { return false; });
        });
    }

    /// tau* tau and (tau* tau)^{-1} on the truncation.
    GradedOperator tau_star_tau(bool inverse)
    {
        if (inverse) return GradedOperator::compose_raw(tau(true), tau_star(true));
        return GradedOperator::compose_raw(tau_star(false), tau(false));
    }

    // ---- conjugations ----------------------------------------------------

    /// N(L) = nabla L nabla^{-1}; inverse direction nabla^{-1} L nabla.
    GradedOperator n_conj(const GradedOperator& l, bool inverse) const
    {
        auto ev = [this](const Partition& p) { return nabla_eigenvalue(p); };
        auto inv = [this](const Partition& p) { return nabla_eigenvalue(p).inverse(); };
        return inverse ? l.scaled(inv, ev) : l.scaled(ev, inv);
    }

    /// S^{-1}(L) = (tau* tau) L (tau* tau)^{-1}.
    ///
    /// L' = tau L tau^{-1} is formed with validity tracking; let c be its
    /// window and s its largest degree drop there. Only columns up to c of L'
    /// are used. Conjugating by tau* then gives exact output rows up to c - s:
    /// what is missing sits in degrees above c, and L' cannot bring it lower
    /// than c + 1 - s. A column is complete once its largest raise fits under
    /// that row bound. Degree drop and raise are read from the blocks actually
    /// present, so operators are assumed to shift degrees uniformly and the
    /// conjugate is assumed to raise no further than L' does.
    GradedOperator s_inverse(const GradedOperator& l, const std::string& step = "S^-1")
    {
        const GradedOperator lp = tau(false) * l * tau(true);
        const int c = lp.window();
        if (c < 0) throw WindowError(step + ": operator has no valid degrees");
        int drop = 0;
        for (int s : lp.shift_profile(c)) drop = std::max(drop, -s);
        // A drop as large as the window itself may be hiding a larger one.
        if (drop > 0 && drop >= c) throw WindowError(step + ": degree drop not bounded within the window");
        const int top = c - drop;
        if (top < 0) throw WindowError(step + ": window exhausted (valid up to " + std::to_string(c) + ", degree drop " + std::to_string(drop) + ")");
        GradedOperator lc = lp;
        lc.drop_columns_above(c);
        GradedOperator k = GradedOperator::compose_raw(GradedOperator::compose_raw(tau_star(false), lc), tau_star(true));
        k.drop_rows_above(top);
        // Rows above top are gone, so the observed shifts can miss a raise;
        // L' itself bounds it.
        const auto prof = k.shift_profile();
        const auto lprof = lc.shift_profile();
        int raise = prof.empty() ? INT_MIN / 2 : *prof.rbegin();
        if (!lprof.empty()) raise = std::max(raise, *lprof.rbegin());
        for (int w = 0; w <= N_; ++w) k.set_valid(w, w + raise <= top);
        if (k.window() < 0) throw WindowError(step + ": empty window");
        return k;
    }

    // ---- adjoints ----------------------------------------------------------

    /// Gram matrix of the H~ basis in degree d.
    const QMatrix& gram(int d, Pairing p, bool inverse)
    {
        const std::string key = std::string(p == Pairing::hall ? "hall" : "star") + (inverse ? "^-1 " : " ") + std::to_string(d);
        std::lock_guard lock(mu_);
        auto it = grams_.find(key);
        if (it != grams_.end()) return *it->second;
        QMatrix g = inverse ? gram(d, p, false).inverse() : gram_raw(d, p);
        return *grams_.emplace(key, std::make_unique<QMatrix>(std::move(g))).first->second;
    }

    /// L* with <L F, G> = <F, L* G>. Column e of L* needs every column d of L
    /// that reaches degree e, so it is valid only when those exist and are valid.
    GradedOperator adjoint(const GradedOperator& l, Pairing p)
    {
        GradedOperator r(N_);
        for (const auto& [k, m] : l.blocks()) {
            const int e = k.first, d = k.second;
            r.set_block(d, e, gram(d, p, true) * m.transpose() * gram(e, p, false));
        }
        const auto prof = l.shift_profile();
        for (int e = 0; e <= N_; ++e) {
            bool ok = true;
            for (int s : prof) {
                const int d = e - s;
                if (d < 0) continue;
                if (d > N_ || !l.valid(d)) ok = false;
            }
            r.set_valid(e, ok);
        }
        return r;
    }

    // ---- series -------------------------------------------------------------

    /// tau_u = sum u^k h_k^perp; inverse sum u^k (-1)^k e_k^perp.
    OperatorSeries tau_series(bool inverse)
    {
        OperatorSeries s(N_, V_);
        for (int k = 0; k <= V_; ++k) {
            if (inverse) {
                s.set(k, 0, QtRat(k % 2 ? -1 : 1) * e_perp(k));
            } else {
                s.set(k, 0, h_perp(k));
            }
        }
        return s;
    }

    /// Delta_v = sum (-v)^k Delta_{e_k}, Delta'_v = sum (-v)^k Delta'_{e_k},
    /// Delta_v^{-1} = sum v^k Delta_{h_k}.
    OperatorSeries delta_series(DeltaKind kind)
    {
        OperatorSeries s(N_, V_);
        for (int k = 0; k <= V_; ++k) {
            if (kind == DeltaKind::inverse) {
                s.set(0, k, delta(sym_h(k, N_), false));
            } else {
                s.set(0, k, QtRat(k % 2 ? -1 : 1) * delta(sym_e(k, N_), kind == DeltaKind::prime));
            }
        }
        return s;
    }

    /// Coefficients whose window runs out become zero with no valid degree.
    OperatorSeries s_inverse(const OperatorSeries& s, const std::string& step = "S^-1")
    {
        return s.transform([&](const GradedOperator& op) {
                               try {
                                   return s_inverse(op, step);
                               } catch (const WindowError&) {
                                   GradedOperator none(N_);
                                   none.set_all_valid(false);
                                   return none;
                               }
                           },
                           [](OperatorSeries::Key k) { return OperatorSeries::Key{k.first + k.second, k.second}; });
    }

    /// N^{-1} moves (i, j) to (i, i + j); N moves it back.
    OperatorSeries n_conj(const OperatorSeries& s, bool inverse) const
    {
        return s.transform([&](const GradedOperator& op) { return n_conj(op, inverse); },
                           [inverse](OperatorSeries::Key k) {
                               return inverse ? OperatorSeries::Key{k.first, k.first + k.second}
                                              : OperatorSeries::Key{k.first, k.second - k.first};
                           });
    }

    OperatorSeries adjoint(const OperatorSeries& s, Pairing p)
    {
        return s.map([&](const GradedOperator& op) { return adjoint(op, p); });
    }

private:
    MacdonaldStore& store_;
    int N_, V_;
    Conventions conv_;
    std::recursive_mutex mu_;
    std::map<std::string, std::unique_ptr<GradedOperator>> ops_;
    std::map<std::string, std::unique_ptr<QMatrix>> grams_;

    template <class Build>
    const GradedOperator& cached(const std::string& key, Build build)
    {
        std::lock_guard lock(mu_);
        auto it = ops_.find(key);
        if (it != ops_.end()) return *it->second;
        auto op = std::make_unique<GradedOperator>(build());
        return *ops_.emplace(key, std::move(op)).first->second;
    }

    QMatrix gram_raw(int d, Pairing p)
    {
        const auto& parts = partitions_of(d);
        const auto& t = store_.table(d);
        std::vector<QtRat> w(parts.size());
        for (std::size_t r = 0; r < parts.size(); ++r) {
            QtRat x(parts[r].z());
            if (p == Pairing::star) {
                for (int part : parts[r]) {
                    x = x * -((QtRat(1) - QtRat::q().pow(part)) * (QtRat(1) - QtRat::t().pow(part)));
                }
            }
            w[r] = x;
        }
        QMatrix g(parts.size(), parts.size());
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i; j < parts.size(); ++j) {
                QtRat s;
                for (std::size_t r = 0; r < parts.size(); ++r) {
                    if (!t.to_p(i, r).is_zero() && !t.to_p(j, r).is_zero()) s += t.to_p(i, r) * w[r] * t.to_p(j, r);
                }
                g(i, j) = s;
                g(j, i) = s;
            }
        }
        return g;
    }
};

} // namespace qsf
