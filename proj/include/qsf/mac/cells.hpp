#pragma once

#include <qsf/qt/poly.hpp>
#include <qsf/sym/partition.hpp>

namespace qsf {

struct CellStats {
    Partition partition;
    QtPoly b_poly;   // sum of q^c t^r over cells (c column, r row, from 0)
    int n_stat = 0;  // sum of row indices
    int nprime_stat = 0; // sum of column indices
};

inline CellStats cell_stats(const Partition& lambda)
{
    CellStats s{lambda, {}, 0, 0};
    std::vector<QtPoly::Term> terms;
    for (std::size_t r = 0; r < lambda.length(); ++r) {
        for (int c = 0; c < lambda[r]; ++c) {
            terms.push_back({{static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(r)}, 1});
            s.n_stat += static_cast<int>(r);
            s.nprime_stat += c;
        }
    }
    s.b_poly = QtPoly::from_terms(std::move(terms));
    return s;
}

} // namespace qsf
