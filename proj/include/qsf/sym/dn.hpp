#pragma once

// Vertex-type operators acting on power-sum expansions.

#include <qsf/sym/plethysm.hpp>

namespace qsf {

/// D_n F = F[X + M/z] pExp[-Xz] at z^n, for F in any classical basis; result in p.
inline SymFunc<QtRat> apply_d(int n, const SymFunc<QtRat>& f)
{
    const int N = f.truncation();
    const Windows w{N, 0, N};
    const auto shifted = plethysm(f, Alphabet::X() + Alphabet::unit(QtRat::M(), 0, 0, -1), w);
    SymFunc<QtRat> r(Basis::powersum, N);
    for (const auto& [z, g] : shifted.components()) {
        const int k = n - z; // degree taken from pExp[-Xz]
        if (k < 0 || k > N) continue;
        const SymFunc<QtRat> ek = sym_e(k, N);
        r += multiply(g, k % 2 ? -ek : ek);
    }
    return r;
}

/// F[X + c] for a scalar c; result in p.
inline SymFunc<QtRat> translate(const SymFunc<QtRat>& f, const QtRat& c)
{
    return plethysm(f, Alphabet::X() + Alphabet::unit(c), Windows{f.truncation(), 0, 0}).component(0);
}

} // namespace qsf
