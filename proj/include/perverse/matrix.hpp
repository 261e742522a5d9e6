#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace perverse::linalg {

using Integer = mpz_class;
using Rational = mpq_class;

enum class Ring { Z, Q };

std::string to_string(Ring r);

class LinalgError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Sparse column: (row, value) pairs sorted by row, no explicit zeros. */
template <class T>
using SparseColumn = std::vector<std::pair<std::size_t, T>>;

/** dst += a * src */
template <class T>
void axpy(SparseColumn<T>& dst, const T& a, const SparseColumn<T>& src);

template <class T>
T column_entry(const SparseColumn<T>& c, std::size_t row);

/** Column-major sparse matrix over Integer or Rational. */
template <class T>
class Matrix {
public:
    using Column = SparseColumn<T>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols, Column{}) {}

    static Matrix identity(std::size_t n);
    static Matrix from_dense(const std::vector<std::vector<T>>& rows, std::size_t ncols = 0);
    /** Columns must have row indices below `rows`. */
    static Matrix from_columns(std::size_t rows, std::vector<Column> cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    std::size_t nnz() const;

    T get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const T& v);
    void add(std::size_t r, std::size_t c, const T& v);

    const Column& col(std::size_t c) const { return cols_[c]; }
    Column& col_mut(std::size_t c) { return cols_[c]; }
    const std::vector<Column>& columns() const { return cols_; }
    void append_column(Column c);

    std::vector<std::vector<T>> to_dense() const;
    Matrix transpose() const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;
    Matrix select_rows(const std::vector<std::size_t>& idx) const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    Matrix operator*(const Matrix& b) const;
    Matrix operator+(const Matrix& b) const;
    Matrix operator-() const;
    Matrix operator-(const Matrix& b) const { return *this + (-b); }

private:
    std::size_t rows_ = 0;
    std::vector<Column> cols_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& a);
/** Scales each column by the lcm of its denominators. */
IntMatrix clear_column_denominators(const RatMatrix& a);
/** Throws unless every entry is integral. */
IntMatrix to_integer(const RatMatrix& a);

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

std::string to_string(const IntMatrix& m);

// ---- normal forms ----

struct SmithDecomposition {
    IntMatrix U, S, V;
};

/** U*A*V = S with U, V unimodular and S diagonal d1 | d2 | ... */
SmithDecomposition smith_normal_form(const IntMatrix& a);
/** Nonzero invariant factors (all positive), in divisibility order. */
std::vector<Integer> smith_invariants(const IntMatrix& a);
/** Determinant of a square matrix (fraction-free elimination). */
Integer determinant(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);
std::size_t rank(const RatMatrix& a);

/** Canonical column Hermite normal form of the lattice spanned by the columns. */
IntMatrix hermite_normal_form(const IntMatrix& a);

/** Kernel lattice basis, column HNF. */
IntMatrix kernel_basis(const IntMatrix& a);
/** Kernel over Q; columns are the primitive integral kernel basis. */
RatMatrix kernel_basis(const RatMatrix& a);

/** X with B*X = Y; throws LinalgError if some column of Y is outside the lattice. */
IntMatrix solve_in_lattice(const IntMatrix& b, const IntMatrix& y);
RatMatrix solve_in_lattice(const RatMatrix& b, const RatMatrix& y);
/** Inverse of a unimodular matrix. */
IntMatrix unimodular_inverse(const IntMatrix& u);

} // namespace perverse::linalg
