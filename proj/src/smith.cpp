#include "perverse/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace perverse::linalg {

namespace {

using Dense = std::vector<std::vector<Integer>>;

void swap_rows(Dense& a, std::size_t i, std::size_t j) { std::swap(a[i], a[j]); }

void swap_cols(Dense& a, std::size_t i, std::size_t j)
{
    for (auto& row : a) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(Dense& a, std::size_t i, std::size_t j, const Integer& q)
{
    for (std::size_t c = 0; c < a[i].size(); ++c)
        if (a[j][c] != 0) a[i][c] += q * a[j][c];
}

// col_i += q * col_j
void add_col(Dense& a, std::size_t i, std::size_t j, const Integer& q)
{
    for (auto& row : a)
        if (row[j] != 0) row[i] += q * row[j];
}

Dense identity_dense(std::size_t n)
{
    Dense d(n, std::vector<Integer>(n, 0));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
    return d;
}

/**
 * In-place Smith reduction. U tracks row operations (U*A0 = rows of A),
 * V tracks column operations (A0*V). Either may be null.
 */
void smith_dense(Dense& a, Dense* u, Dense* v)
{
    std::size_t m = a.size();
    std::size_t n = m ? a[0].size() : 0;
    std::size_t t = 0;
    auto row_op = [&](std::size_t i, std::size_t j, const Integer& q) {
        add_row(a, i, j, q);
        if (u) add_row(*u, i, j, q);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Integer& q) {
        add_col(a, i, j, q);
        if (v) add_col(*v, i, j, q);
    };
    auto rswap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        swap_rows(a, i, j);
        if (u) swap_rows(*u, i, j);
    };
    auto cswap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        swap_cols(a, i, j);
        if (v) swap_cols(*v, i, j);
    };

    while (t < std::min(m, n)) {
        // smallest nonzero in the trailing block
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        rswap(t, pi);
        cswap(t, pj);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                Integer q = a[i][t] / a[t][t];
                if (q != 0) row_op(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                Integer q = a[t][j] / a[t][t];
                if (q != 0) col_op(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) { bi = i; bj = t; }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) { bi = t; bj = j; }
                rswap(t, bi);
                cswap(t, bj);
                continue;
            }
            // divisibility of the remaining block
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) { bad = i; break; }
            if (bad == m) break;
            row_op(t, bad, Integer(1));
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            if (u)
                for (auto& x : (*u)[t]) x = -x;
        }
        ++t;
    }
}

IntMatrix from_dense_checked(const Dense& d, std::size_t cols)
{
    return IntMatrix::from_dense(d, cols);
}

/**
 * Eliminates +-1 pivots from a sparse matrix. Returns the number of
 * eliminated pivots and leaves the non-unit remainder as a dense block.
 */
std::size_t eliminate_units(const IntMatrix& a, Dense& rest)
{
    std::size_t m = a.rows(), n = a.cols();
    std::vector<SparseColumn<Integer>> cols = a.columns();
    std::vector<std::vector<std::size_t>> row_cols(m);
    for (std::size_t c = 0; c < n; ++c)
        for (const auto& e : cols[c]) row_cols[e.first].push_back(c);
    std::vector<char> col_alive(n, 1), row_alive(m, 1);
    std::size_t eliminated = 0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    bool progress = true;
    while (progress) {
        progress = false;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return cols[x].size() < cols[y].size(); });
        for (std::size_t c : order) {
            if (!col_alive[c] || cols[c].empty()) continue;
            // unit entry whose row is sparsest
            std::size_t best_row = m, best_len = 0;
            for (const auto& [r, v] : cols[c]) {
                if (abs(v) != 1) continue;
                std::size_t len = row_cols[r].size();
                if (best_row == m || len < best_len) {
                    best_row = r;
                    best_len = len;
                }
            }
            if (best_row == m) continue;
            std::size_t r = best_row;
            Integer pv = column_entry(cols[c], r);
            std::vector<std::size_t> touched = std::move(row_cols[r]);
            row_cols[r].clear();
            std::sort(touched.begin(), touched.end());
            touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
            for (std::size_t c2 : touched) {
                if (c2 == c || !col_alive[c2]) continue;
                Integer x = column_entry(cols[c2], r);
                if (x == 0) continue;
                axpy(cols[c2], Integer(-x * pv), cols[c]);
                // fill-in can only appear in rows of the pivot column
                for (const auto& e : cols[c])
                    if (e.first != r) row_cols[e.first].push_back(c2);
            }
            // deduplicate lazily grown row lists
            for (const auto& e : cols[c]) {
                auto& lst = row_cols[e.first];
                if (lst.size() > 64) {
                    std::sort(lst.begin(), lst.end());
                    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
                }
            }
            col_alive[c] = 0;
            row_alive[r] = 0;
            cols[c].clear();
            ++eliminated;
            progress = true;
        }
    }

    std::vector<std::size_t> rows_left, cols_left;
    std::vector<char> row_used(m, 0);
    for (std::size_t c = 0; c < n; ++c)
        if (col_alive[c] && !cols[c].empty()) {
            cols_left.push_back(c);
            for (const auto& e : cols[c]) row_used[e.first] = 1;
        }
    std::vector<std::size_t> row_pos(m, 0);
    for (std::size_t r = 0; r < m; ++r)
        if (row_used[r]) {
            row_pos[r] = rows_left.size();
            rows_left.push_back(r);
        }
    rest.assign(rows_left.size(), std::vector<Integer>(cols_left.size(), 0));
    for (std::size_t j = 0; j < cols_left.size(); ++j)
        for (const auto& [r, v] : cols[cols_left[j]]) rest[row_pos[r]][j] = v;
    return eliminated;
}

std::size_t dense_rank(Dense a)
{
    // fraction-free elimination
    std::size_t m = a.size(), n = m ? a[0].size() : 0, rk = 0;
    for (std::size_t c = 0; c < n && rk < m; ++c) {
        std::size_t p = rk;
        while (p < m && a[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(a[p], a[rk]);
        for (std::size_t i = rk + 1; i < m; ++i) {
            if (a[i][c] == 0) continue;
            Integer f = a[i][c], g = a[rk][c];
            Integer h = gcd(f, g);
            f /= h;
            g /= h;
            for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] * g - a[rk][j] * f;
        }
        ++rk;
    }
    return rk;
}

/** Pivot structure from integral column reduction. */
template <class T>
struct PivotColumn {
    SparseColumn<T> col;
    SparseColumn<T> transform;
};

template <class T>
struct Reduction {
    std::map<std::size_t, PivotColumn<T>> pivots;  // keyed by lowest nonzero row
    std::vector<SparseColumn<T>> kernel;          // transforms of zero columns
};

bool exact_divides(const Integer& a, const Integer& b) { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
bool exact_divides(const Rational&, const Rational&) { return true; }

void gcdext(Integer& g, Integer& s, Integer& t, const Integer& a, const Integer& b)
{
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}
void gcdext(Rational&, Rational&, Rational&, const Rational&, const Rational&)
{
    throw LinalgError("gcdext over Q is never needed");
}

template <class T>
Reduction<T> column_reduce(const Matrix<T>& a, bool track)
{
    Reduction<T> red;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        SparseColumn<T> col = a.col(c);
        SparseColumn<T> tr;
        if (track) tr.emplace_back(c, T(1));
        while (true) {
            if (col.empty()) {
                if (track) red.kernel.push_back(std::move(tr));
                break;
            }
            std::size_t r = col.back().first;
            auto it = red.pivots.find(r);
            if (it == red.pivots.end()) {
                red.pivots.emplace(r, PivotColumn<T>{std::move(col), std::move(tr)});
                break;
            }
            auto& p = it->second;
            const T pa = p.col.back().second;
            const T b = col.back().second;
            if (exact_divides(pa, b)) {
                T q = b / pa;
                axpy(col, T(-q), p.col);
                if (track) axpy(tr, T(-q), p.transform);
                continue;
            }
            T g, s, t;
            gcdext(g, s, t, pa, b);
            T ag = pa / g, bg = b / g;
            SparseColumn<T> npiv, ntr;
            axpy(npiv, s, p.col);
            axpy(npiv, t, col);
            SparseColumn<T> ncol;
            axpy(ncol, ag, col);
            axpy(ncol, T(-bg), p.col);
            if (track) {
                axpy(ntr, s, p.transform);
                axpy(ntr, t, tr);
                SparseColumn<T> nt2;
                axpy(nt2, ag, tr);
                axpy(nt2, T(-bg), p.transform);
                tr = std::move(nt2);
            }
            p.col = std::move(npiv);
            if (track) p.transform = std::move(ntr);
            col = std::move(ncol);
        }
    }
    return red;
}

IntMatrix hnf_from_columns(std::size_t rows, std::vector<SparseColumn<Integer>> cols)
{
    // columns already have distinct lowest rows
    std::sort(cols.begin(), cols.end(), [](const auto& x, const auto& y) { return x.back().first < y.back().first; });
    for (auto& c : cols)
        if (c.back().second < 0)
            for (auto& e : c) e.second = -e.second;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        for (std::size_t jj = k; jj-- > 0;) {
            std::size_t pr = cols[jj].back().first;
            const Integer& piv = cols[jj].back().second;
            Integer x = column_entry(cols[k], pr);
            if (x == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), piv.get_mpz_t());
            if (q != 0) axpy(cols[k], Integer(-q), cols[jj]);
        }
    }
    return IntMatrix::from_columns(rows, std::move(cols));
}

template <class T>
Matrix<T> solve_generic(const Matrix<T>& b, const Matrix<T>& y)
{
    if (b.rows() != y.rows()) throw LinalgError("solve_in_lattice: row mismatch");
    Reduction<T> red = column_reduce(b, true);
    std::vector<SparseColumn<T>> out(y.cols());
    for (std::size_t c = 0; c < y.cols(); ++c) {
        SparseColumn<T> res = y.col(c);
        SparseColumn<T> x;
        while (!res.empty()) {
            std::size_t r = res.back().first;
            auto it = red.pivots.find(r);
            if (it == red.pivots.end()) throw LinalgError("solve_in_lattice: column " + std::to_string(c) + " not in span");
            const T& pa = it->second.col.back().second;
            const T& v = res.back().second;
            if (!exact_divides(pa, v))
                throw LinalgError("solve_in_lattice: column " + std::to_string(c) + " not in lattice");
            T q = v / pa;
            axpy(res, T(-q), it->second.col);
            axpy(x, q, it->second.transform);
        }
        out[c] = std::move(x);
    }
    return Matrix<T>::from_columns(b.cols(), std::move(out));
}

IntMatrix row_integral(const RatMatrix& a) { return clear_column_denominators(a.transpose()).transpose(); }

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a)
{
    Dense d = a.to_dense();
    Dense u = identity_dense(a.rows());
    Dense v = identity_dense(a.cols());
    smith_dense(d, &u, &v);
    return {from_dense_checked(u, a.rows()), from_dense_checked(d, a.cols()), from_dense_checked(v, a.cols())};
}

std::vector<Integer> smith_invariants(const IntMatrix& a)
{
    Dense rest;
    std::size_t units = eliminate_units(a, rest);
    smith_dense(rest, nullptr, nullptr);
    std::vector<Integer> out(units, Integer(1));
    for (std::size_t i = 0; i < rest.size() && i < (rest.empty() ? 0 : rest[0].size()); ++i)
        if (rest[i][i] != 0) out.push_back(rest[i][i]);
    return out;
}

Integer determinant(const IntMatrix& a)
{
    if (a.rows() != a.cols()) throw LinalgError("determinant of a non-square matrix");
    Dense d = a.to_dense();
    std::size_t n = d.size();
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && d[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(d[p], d[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                d[i][j] = d[i][j] * d[k][k] - d[i][k] * d[k][j];
                mpz_divexact(d[i][j].get_mpz_t(), d[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = d[k][k];
    }
    return n == 0 ? Integer(1) : Integer(sign * d[n - 1][n - 1]);
}

std::size_t rank(const IntMatrix& a)
{
    Dense rest;
    std::size_t units = eliminate_units(a, rest);
    return units + dense_rank(std::move(rest));
}

std::size_t rank(const RatMatrix& a) { return rank(row_integral(a)); }

IntMatrix hermite_normal_form(const IntMatrix& a)
{
    Reduction<Integer> red = column_reduce(a, false);
    std::vector<SparseColumn<Integer>> cols;
    for (auto& [r, p] : red.pivots) cols.push_back(std::move(p.col));
    return hnf_from_columns(a.rows(), std::move(cols));
}

IntMatrix kernel_basis(const IntMatrix& a)
{
    // columns that are already zero give unit kernel vectors directly
    std::vector<std::size_t> nonzero;
    std::vector<SparseColumn<Integer>> units;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        if (a.col(c).empty()) units.push_back({{c, Integer(1)}});
        else nonzero.push_back(c);
    }
    Reduction<Integer> red = column_reduce(a.select_columns(nonzero), true);
    std::vector<SparseColumn<Integer>> cols = std::move(units);
    for (auto& k : red.kernel) {
        SparseColumn<Integer> lifted;
        for (auto& [i, v] : k) lifted.emplace_back(nonzero[i], std::move(v));
        cols.push_back(std::move(lifted));
    }
    IntMatrix basis = IntMatrix::from_columns(a.cols(), std::move(cols));
    return hermite_normal_form(basis);
}

RatMatrix kernel_basis(const RatMatrix& a) { return to_rational(kernel_basis(row_integral(a))); }

IntMatrix solve_in_lattice(const IntMatrix& b, const IntMatrix& y) { return solve_generic(b, y); }

RatMatrix solve_in_lattice(const RatMatrix& b, const RatMatrix& y) { return solve_generic(b, y); }

IntMatrix unimodular_inverse(const IntMatrix& u)
{
    if (u.rows() != u.cols()) throw LinalgError("inverse of a non-square matrix");
    return solve_in_lattice(u, IntMatrix::identity(u.rows()));
}

} // namespace perverse::linalg
