#include <algorithm>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <qsf/sym/plethysm.hpp>

using namespace qsf;

namespace {

using SF = SymFunc<QtRat>;
constexpr int N = 6;

SF el(Basis b, Partition l, const QtRat& c = QtRat(1)) { return SF::element(b, l, N, c); }

const Basis classical[] = {Basis::monomial, Basis::elementary, Basis::homogeneous, Basis::powersum, Basis::schur};

SF random_sf(std::mt19937& rng, Basis b, int maxdeg)
{
    SF f(b, N);
    std::uniform_int_distribution<int> deg(0, maxdeg), coeff(-3, 3);
    for (int i = 0; i < 4; ++i) {
        const auto& ps = partitions_of(deg(rng));
        std::uniform_int_distribution<std::size_t> pick(0, ps.size() - 1);
        QtRat c(coeff(rng));
        if (i % 2) c = c * QtRat::q() + QtRat::t();
        f.add(ps[pick(rng)], c);
    }
    return f;
}

// Kostka numbers by counting semistandard tableaux directly.
int kostka(const Partition& shape, const std::vector<int>& content)
{
    std::vector<std::vector<int>> rows(shape.length());
    for (std::size_t i = 0; i < shape.length(); ++i) rows[i].assign(shape[i], 0);
    std::vector<std::pair<int, int>> cells;
    for (std::size_t i = 0; i < shape.length(); ++i) {
        for (int j = 0; j < shape[i]; ++j) cells.emplace_back(static_cast<int>(i), j);
    }
    std::vector<int> left(content);
    int count = 0;
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == cells.size()) {
            ++count;
            return;
        }
        const auto [r, c] = cells[k];
        for (int v = 1; v <= static_cast<int>(content.size()); ++v) {
            if (left[v - 1] == 0) continue;
            if (c > 0 && rows[r][c - 1] > v) continue;
            if (r > 0 && rows[r - 1][c] >= v) continue;
            rows[r][c] = v;
            --left[v - 1];
            self(self, k + 1);
            ++left[v - 1];
        }
    };
    rec(rec, 0);
    return count;
}

} // namespace

TEST(Partition, Enumeration)
{
    ASSERT_EQ(partitions_of(0).size(), 1U);
    EXPECT_TRUE(partitions_of(0)[0].empty());
    const std::vector<Partition> four{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
    EXPECT_EQ(partitions_of(4), four);
    // Brute force: sorted multisets of positive integers summing to 8.
    std::set<std::vector<int>> seen;
    for (int mask = 0; mask < (1 << 7); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < 7; ++i) {
            if (mask & (1 << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        std::sort(parts.rbegin(), parts.rend());
        seen.insert(parts);
    }
    EXPECT_EQ(partitions_of(8).size(), seen.size());
    EXPECT_EQ(partitions_of(8).size(), 22U);
}

TEST(Partition, DominanceAndStatistics)
{
    EXPECT_TRUE(dominance_leq({1, 1, 1}, {3}));
    EXPECT_FALSE(dominance_leq({3}, {1, 1, 1}));
    EXPECT_TRUE(dominance_leq({2, 2}, {3, 1}));
    EXPECT_FALSE(dominance_leq({3, 1}, {2, 2}));
    EXPECT_THROW(dominance_leq({2}, {1}), std::invalid_argument);
    const Partition l{3, 1, 1};
    EXPECT_EQ(l.conjugate(), (Partition{3, 1, 1}));
    EXPECT_EQ((Partition{4, 2}).conjugate(), (Partition{2, 2, 1, 1}));
    EXPECT_EQ((Partition{2, 1}).n_stat(), 1);
    EXPECT_EQ((Partition{3}).conjugate().n_stat(), 3);
    EXPECT_EQ((Partition{2, 2, 1}).z(), 8);
    EXPECT_EQ(to_string(Partition{}), "-");
    EXPECT_EQ(parse_partition("2,1"), (Partition{2, 1}));
    EXPECT_THROW(parse_partition("1,2"), std::invalid_argument);
    // Reverse lexicographic order refines dominance.
    for (int d = 1; d <= 7; ++d) {
        const auto& ps = partitions_of(d);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = i + 1; j < ps.size(); ++j) EXPECT_FALSE(dominance_leq(ps[i], ps[j]) && !(ps[i] == ps[j]));
        }
    }
}

TEST(SymFunc, BaseChangeExamples)
{
    const SF h2 = to_basis(el(Basis::homogeneous, {2}), Basis::powersum);
    SF expect(Basis::powersum, N);
    expect.add({2}, QtRat::fraction(1, 2));
    expect.add({1, 1}, QtRat::fraction(1, 2));
    EXPECT_EQ(h2, expect);
    EXPECT_EQ(to_basis(el(Basis::schur, {1, 1}), Basis::monomial), el(Basis::monomial, {1, 1}));
    EXPECT_EQ(to_basis(el(Basis::homogeneous, {2, 1}), Basis::schur), el(Basis::schur, {3}) + el(Basis::schur, {2, 1}));
}

TEST(SymFunc, SchurMatchesKostkaOracle)
{
    // h_mu = sum_lambda K_{lambda mu} s_lambda.
    for (int d = 1; d <= 5; ++d) {
        for (const auto& mu : partitions_of(d)) {
            const SF hs = to_basis(el(Basis::homogeneous, mu), Basis::schur);
            for (const auto& lambda : partitions_of(d)) {
                EXPECT_EQ(hs.coeff(lambda), QtRat(kostka(lambda, mu.parts()))) << to_string(lambda) << " " << to_string(mu);
            }
        }
    }
}

TEST(SymFunc, RoundTrips)
{
    std::mt19937 rng(1);
    for (Basis b1 : classical) {
        const SF f = random_sf(rng, b1, N);
        for (Basis b2 : classical) {
            const SF g = to_basis(f, b2);
            EXPECT_EQ(to_basis(g, b1), f);
            for (Basis b3 : classical) EXPECT_EQ(to_basis(g, b3), to_basis(f, b3));
        }
    }
}

TEST(SymFunc, MultiplyExamples)
{
    EXPECT_EQ(multiply(el(Basis::powersum, {1}), el(Basis::powersum, {1})), el(Basis::powersum, {1, 1}));
    std::mt19937 rng(2);
    const SF f = random_sf(rng, Basis::schur, 4);
    EXPECT_EQ(multiply(SF::one(Basis::schur, N), f), f);
    const SF e1 = el(Basis::elementary, {1});
    EXPECT_EQ(to_basis(multiply(e1, e1), Basis::monomial), el(Basis::monomial, {2}) + el(Basis::monomial, {1, 1}, 2));
    // Truncation at N.
    const SF big = multiply(el(Basis::powersum, {4}), el(Basis::powersum, {3}));
    EXPECT_TRUE(big.is_zero());
    EXPECT_TRUE(big.truncated());
}

TEST(SymFunc, HallPairing)
{
    EXPECT_EQ(hall_pair(el(Basis::powersum, {2}), el(Basis::powersum, {2})), QtRat(2));
    EXPECT_EQ(hall_pair(el(Basis::powersum, {2}), el(Basis::powersum, {1, 1})), QtRat(0));
    EXPECT_EQ(hall_pair(el(Basis::homogeneous, {2}), el(Basis::monomial, {2})), QtRat(1));
    for (int d = 0; d <= 5; ++d) {
        for (const auto& l : partitions_of(d)) {
            for (const auto& m : partitions_of(d)) {
                EXPECT_EQ(hall_pair(el(Basis::homogeneous, l), el(Basis::monomial, m)), QtRat(l == m ? 1 : 0));
                EXPECT_EQ(hall_pair(el(Basis::schur, l), el(Basis::schur, m)), QtRat(l == m ? 1 : 0));
            }
        }
    }
}

TEST(SymFunc, Skewing)
{
    std::mt19937 rng(4);
    const SF g = random_sf(rng, Basis::schur, 4);
    EXPECT_EQ(skew_apply(SF::one(Basis::homogeneous, N), g), g);
    EXPECT_EQ(skew_apply(el(Basis::homogeneous, {1}), el(Basis::powersum, {1})), SF::one(Basis::powersum, N));
    EXPECT_EQ(skew_apply(el(Basis::homogeneous, {1}), el(Basis::homogeneous, {2})), el(Basis::homogeneous, {1}));
    // Adjointness against multiplication.
    for (int i = 0; i < 10; ++i) {
        const SF f = random_sf(rng, Basis::homogeneous, 2);
        const SF a = random_sf(rng, Basis::schur, 4);
        const SF h = random_sf(rng, Basis::monomial, 2);
        EXPECT_EQ(hall_pair(skew_apply(f, a), h), hall_pair(a, multiply(f, h)));
    }
}

TEST(SymFunc, Format)
{
    SF f(Basis::schur, N);
    f.add({3}, QtRat(1));
    f.add({2, 1}, QtRat::q() + QtRat::t());
    f.add({1, 1, 1}, QtRat::q() * QtRat::t());
    EXPECT_EQ(format(f), "s[3] + (q + t)*s[2,1] + (q*t)*s[1,1,1]");
    EXPECT_EQ(format(-el(Basis::schur, {1})), "-s[1]");
}

TEST(Plethysm, Examples)
{
    const Windows w{N, 4, N};
    using SU = SymFunc<UVPoly>;
    // p2[X + u] = p2 + u^2
    const auto r = plethysm(SU::element(Basis::powersum, {2}, N), Alphabet::X() + Alphabet::unit(QtRat(1), 1), w);
    SU expect(Basis::powersum, N);
    expect.add({2}, UVPoly(QtRat(1)));
    expect.add({}, UVPoly::monomial(QtRat(1), 2, 0, 4));
    EXPECT_EQ(r.component(0), expect);

    // e2[-X] = h2
    const auto e2m = plethysm(to_basis(el(Basis::elementary, {2}), Basis::powersum), Alphabet::X(QtRat(-1)), Windows{N, 0, N});
    EXPECT_EQ(to_basis(e2m.component(0), Basis::homogeneous), el(Basis::homogeneous, {2}));

    // h2[X(1-t)] = ((1-t)^2 p11 + (1-t^2) p2) / 2
    const QtRat one(1), t = QtRat::t();
    const auto h2 = plethysm(el(Basis::homogeneous, {2}), Alphabet::X(one - t), Windows{N, 0, N});
    SF e(Basis::powersum, N);
    e.add({1, 1}, (one - t) * (one - t) * QtRat::fraction(1, 2));
    e.add({2}, (one - t * t) * QtRat::fraction(1, 2));
    EXPECT_EQ(h2.component(0), e);

    // F[X] = F.
    std::mt19937 rng(9);
    const SF f = random_sf(rng, Basis::schur, 5);
    EXPECT_EQ(to_basis(plethysm(f, Alphabet::X(), Windows{N, 0, N}).component(0), Basis::schur), f);
}

TEST(Plethysm, Homomorphism)
{
    std::mt19937 rng(10);
    const QtRat q = QtRat::q(), t = QtRat::t();
    const Alphabet a = Alphabet::X(QtRat(1) - q) + Alphabet::unit(t) + Alphabet::unit(QtRat(-1) / QtRat::M());
    const Windows w{N, 0, N};
    for (int i = 0; i < 4; ++i) {
        const SF f = random_sf(rng, Basis::schur, 3), g = to_basis(random_sf(rng, Basis::elementary, 3), Basis::schur);
        const auto fa = plethysm(f, a, w), ga = plethysm(g, a, w);
        EXPECT_EQ(plethysm(multiply(f, g), a, w).component(0), (fa * ga).component(0));
        EXPECT_EQ(plethysm(f + g, a, w).component(0), to_basis(fa.component(0) + ga.component(0), Basis::powersum));
    }
    // p_n[A] term by term.
    const auto p3 = plethysm(el(Basis::powersum, {3}), a, w).component(0);
    SF e(Basis::powersum, N);
    e.add({3}, QtRat(1) - q * q * q);
    e.add({}, t * t * t - QtRat(1) / QtRat::M().power_twist(3));
    EXPECT_EQ(p3, e);
}

TEST(Plethysm, ZGradingAndWindows)
{
    // p2[X + M z^-1] has z^-2 component M(q^2,t^2).
    const Windows w{N, 0, 1};
    const auto r = plethysm(el(Basis::powersum, {2}), Alphabet::X() + Alphabet::unit(QtRat::M(), 0, 0, -1), w);
    EXPECT_TRUE(r.truncated());
    EXPECT_EQ(r.components().size(), 1U);
    const auto r2 = plethysm(el(Basis::powersum, {2}), Alphabet::X() + Alphabet::unit(QtRat::M(), 0, 0, -1), Windows{N, 0, 2});
    EXPECT_FALSE(r2.truncated());
    EXPECT_EQ(r2.component(-2).coeff({}), QtRat::M().power_twist(2));
}

TEST(Pexp, Examples)
{
    using SU = SymFunc<UVPoly>;
    const Windows w{N, 4, N};
    // pExp[-uz] = 1 - uz
    const auto a = pexp<UVPoly>(Alphabet::unit(QtRat(-1), 1, 0, 1), 4, w);
    EXPECT_EQ(a.components().size(), 2U);
    EXPECT_EQ(a.component(0).coeff({}), UVPoly(QtRat(1)));
    EXPECT_EQ(a.component(1).coeff({}), UVPoly::monomial(QtRat(-1), 1, 0, 4));
    // pExp[X] to degree 2 = 1 + h1 + h2
    const auto b = pexp<QtRat>(Alphabet::X(), 2, Windows{N, 0, 0});
    EXPECT_EQ(to_basis(b.component(0), Basis::homogeneous), SF::one(Basis::homogeneous, N) + el(Basis::homogeneous, {1}) + el(Basis::homogeneous, {2}));
    // pExp[-Xz] at z^n = (-1)^n e_n
    const auto c = pexp<QtRat>(Alphabet{{QtRat(-1), 0, 0, 1, Letter::X}}, N, Windows{N, 0, N});
    for (int n = 0; n <= N; ++n) {
        const SF en = n ? el(Basis::elementary, {n}, QtRat(n % 2 ? -1 : 1)) : SF::one(Basis::elementary, N);
        EXPECT_EQ(to_basis(c.component(n), Basis::elementary), en);
    }
    EXPECT_THROW(pexp<QtRat>(Alphabet::unit(QtRat(2)), 3, Windows{N, 0, 0}), NonTruncatable);
}

TEST(Pexp, Multiplicative)
{
    const Windows w{N, 0, 0};
    const Alphabet a = Alphabet::X(QtRat::q()), b = Alphabet::X(QtRat(-1) / QtRat::M());
    const auto lhs = pexp<QtRat>(a + b, N, w);
    const auto rhs = pexp<QtRat>(a, N, w) * pexp<QtRat>(b, N, w);
    EXPECT_EQ(lhs.component(0), rhs.component(0));
}
