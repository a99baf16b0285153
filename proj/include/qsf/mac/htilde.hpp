#pragma once

// Modified Macdonald polynomials, one degree at a time.
//
// D_0 acts on H~_mu by 1 - M B_mu, and these eigenvalues are distinct for
// distinct mu. Plethysm by X(1 - q) makes D_0 upper triangular on the Schur
// basis (in the reverse-lexicographic order), because H~_mu[X(1 - q)] only
// involves s_lambda with lambda dominating mu. Each eigenvector then comes
// out of a single back substitution.

#include <stdexcept>
#include <string>

#include <qsf/linalg/matrix.hpp>
#include <qsf/mac/cells.hpp>
#include <qsf/sym/dn.hpp>

namespace qsf {

struct MacdonaldTable {
    int degree = 0;
    QMatrix to_schur;   // row lambda: H~_lambda in s
    QMatrix from_schur; // row mu: s_mu in H~
    QMatrix to_p;       // row lambda: H~_lambda in p
    QMatrix from_p;     // row rho: p_rho in H~
};

inline QtRat one_minus_m_b(const Partition& mu)
{
    return QtRat(1) - QtRat::M() * QtRat(cell_stats(mu).b_poly);
}

/// Completes a table from its Schur rows.
inline MacdonaldTable finish_table(int d, QMatrix to_schur)
{
    MacdonaldTable t;
    t.degree = d;
    t.from_schur = to_schur.inverse();
    t.to_p = to_schur * to_powersum_matrix(Basis::schur, d);
    t.from_p = from_powersum_matrix(Basis::schur, d) * t.from_schur;
    t.to_schur = std::move(to_schur);
    return t;
}

inline MacdonaldTable compute_htilde_table(int d)
{
    const auto& parts = partitions_of(d);
    const std::size_t n = parts.size();

    // phi_rho: p_rho[X(1 - q)] = phi_rho p_rho.
    std::vector<QtRat> phi(n);
    for (std::size_t j = 0; j < n; ++j) {
        QtRat f(1);
        for (int part : parts[j]) f = f * (QtRat(1) - QtRat::q().pow(part));
        phi[j] = f;
    }

    // Column rho of D_0 in p, conjugated by phi.
    QMatrix dp(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const SymFunc<QtRat> img = apply_d(0, SymFunc<QtRat>::element(Basis::powersum, parts[j], d));
        for (const auto& [sigma, c] : img.terms()) {
            const std::size_t i = partition_index(sigma);
            dp(i, j) = phi[i] * c / phi[j];
        }
    }
    // To the Schur basis: column coordinates b = C a with C(lambda, rho) = chi^lambda(rho).
    const QMatrix C = from_powersum_matrix(Basis::schur, d).transpose();
    const QMatrix Cinv = to_powersum_matrix(Basis::schur, d).transpose();
    const QMatrix ds = C * dp * Cinv;

    for (std::size_t i = 0; i < n; ++i) {
        if (ds(i, i) != one_minus_m_b(parts[i])) {
            throw std::logic_error("D_0 diagonal mismatch at " + to_string(parts[i]));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (!ds(i, j).is_zero()) throw std::logic_error("conjugated D_0 is not triangular in degree " + std::to_string(d));
        }
    }

    QMatrix to_schur(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        std::vector<QtRat> v(n);
        v[m] = QtRat(1);
        for (std::size_t i = m; i-- > 0;) {
            QtRat s;
            for (std::size_t k = i + 1; k <= m; ++k) {
                if (!ds(i, k).is_zero() && !v[k].is_zero()) s += ds(i, k) * v[k];
            }
            if (!s.is_zero()) v[i] = s / (ds(m, m) - ds(i, i));
        }
        // Undo the plethysm: to p, divide by phi, back to s.
        std::vector<QtRat> a(n), b(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!Cinv(r, k).is_zero() && !v[k].is_zero()) a[r] += Cinv(r, k) * v[k];
            }
            a[r] = a[r] / phi[r];
        }
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < n; ++k) {
                if (!C(r, k).is_zero() && !a[k].is_zero()) b[r] += C(r, k) * a[k];
            }
        }
        const QtRat norm = b[0].inverse();
        for (std::size_t r = 0; r < n; ++r) to_schur(m, r) = b[r] * norm;
    }
    return finish_table(d, std::move(to_schur));
}

} // namespace qsf
