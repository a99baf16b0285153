#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include <qsf/mac/cache.hpp>
#include <qsf/mac/cells.hpp>

#include "oracles.hpp"

using namespace qsf;
using namespace qsf::oracle;


TEST(Cells, Statistics)
{
    const CellStats s = cell_stats(Partition{2, 1});
    EXPECT_EQ(format(s.b_poly), "1 + q + t");
    EXPECT_EQ(s.n_stat, 1);
    EXPECT_EQ(s.nprime_stat, 1);
    const CellStats r = cell_stats(Partition{3, 1});
    EXPECT_EQ(r.n_stat, 1);
    EXPECT_EQ(r.nprime_stat, 3);
    EXPECT_EQ(format(cell_stats(Partition{}).b_poly), "0");
}

TEST(Macdonald, SmallExpansions)
{
    const auto& t2 = compute_htilde_table(2);
    EXPECT_EQ(format(t2.to_schur(0, 0)), "1");
    EXPECT_EQ(format(t2.to_schur(0, 1)), "q");
    EXPECT_EQ(format(t2.to_schur(1, 1)), "t");
    const auto t3 = compute_htilde_table(3);
    const std::size_t i = partition_index(Partition{2, 1});
    EXPECT_EQ(format(t3.to_schur(i, 0)), "1");
    EXPECT_EQ(format(t3.to_schur(i, 1)), "q + t");
    EXPECT_EQ(format(t3.to_schur(i, 2)), "q*t");
}

TEST(Macdonald, AxiomOracle)
{
    for (int d = 0; d <= 5; ++d) {
        const auto t = compute_htilde_table(d);
        const auto& parts = partitions_of(d);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto want = axiom_oracle(parts[i]);
            for (std::size_t j = 0; j < parts.size(); ++j) {
                EXPECT_EQ(t.to_schur(i, j), want[j]) << to_string(parts[i]) << " at s" << to_string(parts[j]);
            }
        }
    }
}

TEST(Macdonald, StructuralProperties)
{
    for (int d = 0; d <= 6; ++d) {
        const auto t = compute_htilde_table(d);
        const auto& parts = partitions_of(d);
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const std::size_t ic = partition_index(parts[i].conjugate());
            EXPECT_TRUE(t.to_schur(i, 0).is_one());
            for (std::size_t j = 0; j < parts.size(); ++j) {
                const QtRat& c = t.to_schur(i, j);
                EXPECT_EQ(c.swap_qt(), t.to_schur(ic, j)) << to_string(parts[i]);
                ASSERT_TRUE(c.is_polynomial());
                for (const auto& term : c.num().terms()) EXPECT_GT(term.c, 0);
                // q = t = 1 gives h_1^d, whose Schur coefficients count standard tableaux.
                EXPECT_EQ(c.num().evaluate(1, 1), count_syt(parts[j]));
            }
        }
        EXPECT_EQ(t.to_schur * t.from_schur, QMatrix::identity(parts.size()));
    }
}

TEST(Cache, RoundTripAndTamper)
{
    const auto t = compute_htilde_table(4);
    const std::string text = serialize_table(t);
    const auto back = parse_table(text, 4, "mem");
    EXPECT_EQ(back.to_schur, t.to_schur);
    EXPECT_EQ(serialize_table(back), text);

    auto lines = split_lines(text);
    EXPECT_EQ(lines[0], "QSF1 degree=4 basis=schur order=revlex");
    EXPECT_EQ(lines[1], "4 : 4 : 1");

    std::string bad = text;
    bad.replace(bad.find("4 : 4 : 1"), 9, "4 : 4 : 2");
    EXPECT_THROW(parse_table(bad, 4, "mem"), CacheError);
    std::string junk = text;
    junk.replace(junk.find("4 : 3,1 : q"), 11, "4 : 3,1 : q+");
    try {
        parse_table(junk, 4, "mem");
        FAIL();
    } catch (const CacheError& e) {
        EXPECT_EQ(e.line, 3u);
    }
}

TEST(Cache, BuildVerifyClear)
{
    const auto dir = std::filesystem::temp_directory_path() / ("qsf_mac_test_" + std::to_string(std::random_device{}()));
    cache_build(dir, 4);
    EXPECT_EQ(cache_verify(dir, 4), 5);
    {
        MacdonaldStore store(dir);
        EXPECT_EQ(store.table(4).to_schur, compute_htilde_table(4).to_schur);
    }
    const auto path = dir / cache_file_name(3);
    auto text = *read_file(path);
    text.replace(text.find("q*t"), 3, "q*t^2");
    write_file_atomic(path, text);
    try {
        cache_verify(dir, 4);
        FAIL();
    } catch (const CacheError& e) {
        EXPECT_EQ(e.file, path.string());
        EXPECT_GT(e.line, 1u);
    }
    EXPECT_EQ(cache_clear(dir), 5);
    EXPECT_EQ(cache_clear(dir), 0);
    EXPECT_THROW(cache_verify(dir, 2), CacheError);
    std::filesystem::remove_all(dir);
}
