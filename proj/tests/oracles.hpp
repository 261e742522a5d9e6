#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's normal-form or homology code.

#include "perverse/matrix.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<mpq_class>>;

inline Dense dense(const perverse::linalg::IntMatrix& m)
{
    Dense d(m.rows(), std::vector<mpq_class>(m.cols(), 0));
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& [r, v] : m.col(c)) d[r][c] = v;
    return d;
}

/** Plain Gaussian elimination over Q. */
inline std::size_t rank(Dense a)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            mpq_class f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const perverse::linalg::IntMatrix& m) { return rank(dense(m)); }

/** Betti numbers over Q of a complex given only by its differentials and ranks
 *  (diff[k] leaves degree k; cohomological or homological does not matter). */
inline std::vector<std::size_t> betti(const std::vector<std::size_t>& ranks,
                                      const std::vector<perverse::linalg::IntMatrix>& out_of,
                                      const std::vector<perverse::linalg::IntMatrix>& into)
{
    std::vector<std::size_t> b;
    for (std::size_t k = 0; k < ranks.size(); ++k) {
        std::size_t r_out = out_of[k].rows() && out_of[k].cols() ? oracle::rank(out_of[k]) : 0;
        std::size_t r_in = into[k].rows() && into[k].cols() ? oracle::rank(into[k]) : 0;
        b.push_back(ranks[k] - r_out - r_in);
    }
    return b;
}

inline mpz_class det(std::vector<std::vector<mpz_class>> m)
{
    Dense q(m.size(), std::vector<mpq_class>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) q[i][j] = m[i][j];
    mpq_class d = 1;
    std::size_t n = q.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && q[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(q[p], q[c]);
            d = -d;
        }
        d *= q[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            mpq_class f = q[i][c] / q[c][c];
            for (std::size_t j = c; j < n; ++j) q[i][j] -= f * q[c][j];
        }
    }
    return d.get_num();
}

/** Determinantal divisors d_k = gcd of all k x k minors (small matrices only). */
inline std::vector<mpz_class> determinantal_divisors(const std::vector<std::vector<mpz_class>>& a)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<mpz_class> out;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        mpz_class g = 0;
        std::vector<bool> rsel(rows, false), csel(cols, false);
        std::fill(rsel.begin(), rsel.begin() + static_cast<long>(k), true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + static_cast<long>(k), true);
            do {
                std::vector<std::vector<mpz_class>> m;
                for (std::size_t i = 0; i < rows; ++i) {
                    if (!rsel[i]) continue;
                    std::vector<mpz_class> row;
                    for (std::size_t j = 0; j < cols; ++j)
                        if (csel[j]) row.push_back(a[i][j]);
                    m.push_back(row);
                }
                mpz_class d = det(m);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
        out.push_back(g);
    }
    return out;
}

inline perverse::linalg::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi,
                                                 double density = 1.0)
{
    std::uniform_int_distribution<int> val(lo, hi);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    perverse::linalg::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (keep(rng) < density) m.set(r, c, val(rng));
    return m;
}

} // namespace oracle
