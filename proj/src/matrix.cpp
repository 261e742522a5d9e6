#include "perverse/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace perverse::linalg {

std::string to_string(Ring r) { return r == Ring::Z ? "Z" : "Q"; }

template <class T>
void axpy(SparseColumn<T>& dst, const T& a, const SparseColumn<T>& src)
{
    if (src.empty() || a == 0) return;
    SparseColumn<T> out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(std::move(dst[i++]));
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, a * src[j].second);
            ++j;
        } else {
            T v = dst[i].second + a * src[j].second;
            if (v != 0) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

template <class T>
T column_entry(const SparseColumn<T>& c, std::size_t row)
{
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return T(0);
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i].emplace_back(i, T(1));
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_dense(const std::vector<std::vector<T>>& rows, std::size_t ncols)
{
    std::size_t nc = rows.empty() ? ncols : rows.front().size();
    Matrix m(rows.size(), nc);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != nc) throw LinalgError("from_dense: ragged rows");
        for (std::size_t c = 0; c < nc; ++c)
            if (rows[r][c] != 0) m.cols_[c].emplace_back(r, rows[r][c]);
    }
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_columns(std::size_t rows, std::vector<Column> cols)
{
    Matrix m;
    m.rows_ = rows;
    for (auto& c : cols) {
        std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        Column merged;
        for (auto& e : c) {
            if (e.first >= rows) throw LinalgError("from_columns: row index out of range");
            if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
            else merged.push_back(std::move(e));
        }
        std::erase_if(merged, [](const auto& e) { return e.second == 0; });
        m.cols_.push_back(std::move(merged));
    }
    return m;
}

template <class T>
std::size_t Matrix<T>::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

template <class T>
T Matrix<T>::get(std::size_t r, std::size_t c) const
{
    return column_entry(cols_.at(c), r);
}

template <class T>
void Matrix<T>::set(std::size_t r, std::size_t c, const T& v)
{
    if (r >= rows_ || c >= cols_.size()) throw LinalgError("set: index out of range");
    auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& e, std::size_t x) { return e.first < x; });
    if (it != col.end() && it->first == r) {
        if (v == 0) col.erase(it);
        else it->second = v;
    } else if (v != 0) {
        col.insert(it, {r, v});
    }
}

template <class T>
void Matrix<T>::add(std::size_t r, std::size_t c, const T& v)
{
    set(r, c, get(r, c) + v);
}

template <class T>
void Matrix<T>::append_column(Column c)
{
    for (const auto& e : c)
        if (e.first >= rows_) throw LinalgError("append_column: row out of range");
    cols_.push_back(std::move(c));
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::to_dense() const
{
    std::vector<std::vector<T>> d(rows_, std::vector<T>(cols_.size(), T(0)));
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& [r, v] : cols_[c]) d[r][c] = v;
    return d;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const
{
    Matrix t(cols_.size(), rows_);
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& [r, v] : cols_[c]) t.cols_[r].emplace_back(c, v);
    return t;
}

template <class T>
Matrix<T> Matrix<T>::select_columns(const std::vector<std::size_t>& idx) const
{
    Matrix m(rows_, 0);
    for (auto c : idx) m.cols_.push_back(cols_.at(c));
    return m;
}

template <class T>
Matrix<T> Matrix<T>::select_rows(const std::vector<std::size_t>& idx) const
{
    std::vector<std::ptrdiff_t> where(rows_, -1);
    for (std::size_t i = 0; i < idx.size(); ++i) where.at(idx[i]) = static_cast<std::ptrdiff_t>(i);
    std::vector<Column> out(cols_.size());
    for (std::size_t c = 0; c < cols_.size(); ++c)
        for (const auto& [r, v] : cols_[c])
            if (where[r] >= 0) out[c].emplace_back(static_cast<std::size_t>(where[r]), v);
    return from_columns(idx.size(), std::move(out));
}

template <class T>
bool Matrix<T>::is_zero() const
{
    return std::all_of(cols_.begin(), cols_.end(), [](const auto& c) { return c.empty(); });
}

template <class T>
Matrix<T> Matrix<T>::operator*(const Matrix& b) const
{
    if (cols() != b.rows()) throw LinalgError("matrix product: dimension mismatch");
    Matrix out(rows_, b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c)
        for (const auto& [k, v] : b.cols_[c]) axpy(out.cols_[c], v, cols_[k]);
    return out;
}

template <class T>
Matrix<T> Matrix<T>::operator+(const Matrix& b) const
{
    if (rows_ != b.rows_ || cols() != b.cols()) throw LinalgError("matrix sum: dimension mismatch");
    Matrix out = *this;
    for (std::size_t c = 0; c < cols(); ++c) axpy(out.cols_[c], T(1), b.cols_[c]);
    return out;
}

template <class T>
Matrix<T> Matrix<T>::operator-() const
{
    Matrix out = *this;
    for (auto& c : out.cols_)
        for (auto& e : c) e.second = -e.second;
    return out;
}

template class Matrix<Integer>;
template class Matrix<Rational>;
template void axpy<Integer>(SparseColumn<Integer>&, const Integer&, const SparseColumn<Integer>&);
template void axpy<Rational>(SparseColumn<Rational>&, const Rational&, const SparseColumn<Rational>&);
template Integer column_entry<Integer>(const SparseColumn<Integer>&, std::size_t);
template Rational column_entry<Rational>(const SparseColumn<Rational>&, std::size_t);

RatMatrix to_rational(const IntMatrix& a)
{
    std::vector<SparseColumn<Rational>> cols(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (const auto& [r, v] : a.col(c)) cols[c].emplace_back(r, Rational(v));
    return RatMatrix::from_columns(a.rows(), std::move(cols));
}

IntMatrix clear_column_denominators(const RatMatrix& a)
{
    std::vector<SparseColumn<Integer>> cols(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        Integer l = 1;
        for (const auto& [r, v] : a.col(c)) l = lcm(l, Integer(v.get_den()));
        for (const auto& [r, v] : a.col(c)) cols[c].emplace_back(r, Integer(v.get_num() * (l / v.get_den())));
    }
    return IntMatrix::from_columns(a.rows(), std::move(cols));
}

IntMatrix to_integer(const RatMatrix& a)
{
    std::vector<SparseColumn<Integer>> cols(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (const auto& [r, v] : a.col(c)) {
            if (v.get_den() != 1) throw LinalgError("to_integer: non-integral entry");
            cols[c].emplace_back(r, Integer(v.get_num()));
        }
    return IntMatrix::from_columns(a.rows(), std::move(cols));
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw LinalgError("hstack: row mismatch");
    IntMatrix out = a;
    for (std::size_t c = 0; c < b.cols(); ++c) out.append_column(b.col(c));
    return out;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.cols()) throw LinalgError("vstack: column mismatch");
    std::vector<SparseColumn<Integer>> cols(a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        cols[c] = a.col(c);
        for (const auto& [r, v] : b.col(c)) cols[c].emplace_back(r + a.rows(), v);
    }
    return IntMatrix::from_columns(a.rows() + b.rows(), std::move(cols));
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b)
{
    std::vector<SparseColumn<Integer>> cols;
    for (std::size_t c = 0; c < a.cols(); ++c) cols.push_back(a.col(c));
    for (std::size_t c = 0; c < b.cols(); ++c) {
        SparseColumn<Integer> col;
        for (const auto& [r, v] : b.col(c)) col.emplace_back(r + a.rows(), v);
        cols.push_back(std::move(col));
    }
    return IntMatrix::from_columns(a.rows() + b.rows(), std::move(cols));
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    auto d = m.to_dense();
    os << '[';
    for (std::size_t r = 0; r < d.size(); ++r) {
        if (r) os << ", ";
        os << '[';
        for (std::size_t c = 0; c < d[r].size(); ++c) os << (c ? "," : "") << d[r][c];
        os << ']';
    }
    os << ']';
    return os.str();
}

} // namespace perverse::linalg
