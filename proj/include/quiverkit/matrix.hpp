#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "quiverkit/field.hpp"

namespace qk {

struct dim_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense matrix over a FieldSpec, row-major, entries always in canonical form.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(FieldSpec field, size_t rows, size_t cols)
        : rows_(rows), cols_(cols), field_(std::move(field)), e_(rows * cols) {}

    static Matrix identity(const FieldSpec& f, size_t n);
    static Matrix zero(const FieldSpec& f, size_t rows, size_t cols) { return Matrix(f, rows, cols); }
    /// Builds from integer literals, canonicalized into the field.
    static Matrix from_int(const FieldSpec& f, const std::vector<std::vector<long>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && e_ == o.e_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const;
    bool is_identity() const;

    Matrix add(const Matrix& o) const;
    Matrix sub(const Matrix& o) const;
    Matrix mul(const Matrix& o) const;
    Matrix neg() const;
    Matrix scale(const Scalar& c) const;
    Matrix transpose() const;
    Matrix pow(size_t k) const;
    Scalar trace() const;

    Matrix column(size_t j) const;
    /// Columns [j0, j1) as a new matrix.
    Matrix columns(size_t j0, size_t j1) const;
    /// Rows selected by index list.
    Matrix select_rows(const std::vector<size_t>& idx) const;

    static Matrix hstack(const std::vector<Matrix>& parts);
    static Matrix vstack(const std::vector<Matrix>& parts);

private:
    size_t rows_, cols_;
    FieldSpec field_;
    std::vector<Scalar> e_;
};

/// Reduced row echelon form; returns (rref, pivot column indices).
std::pair<Matrix, std::vector<size_t>> rref(const Matrix& m);
size_t rank(const Matrix& m);

/// Columns form a basis of {x : m x = 0}; shape cols(m) x nullity.
Matrix kernel_basis(const Matrix& m);

/// Solves a X = b for all columns of b; absent iff some column lies outside the column span.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

std::optional<Matrix> inverse(const Matrix& m);

/// Kronecker product: (a tensor b)(v tensor w) = (a v) tensor (b w).
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Assembles a grid of blocks; shapes must be consistent along rows and columns.
Matrix block_matrix(const std::vector<std::vector<Matrix>>& grid);
Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Canonical basis of the column span: rref the transpose, keep nonzero rows,
/// return them as columns. Canonical given the input span.
Matrix column_space_basis(const Matrix& m);

/// A subspace of k^n with its canonical (rref-pivoted) basis.
struct Subspace {
    Matrix basis;                 // n x w, columns are the canonical basis
    std::vector<size_t> pivots;   // pivot coordinate of each basis column, increasing

    size_t ambient_dim() const { return basis.rows(); }
    size_t dim() const { return basis.cols(); }
};

Subspace subspace_from_columns(const Matrix& span_columns);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
bool subspace_contains(const Subspace& s, const Matrix& vectors);
bool subspace_equal(const Subspace& a, const Subspace& b);

/// Projection k^n -> k^(n-w) with kernel exactly the subspace, plus a section
/// with projection * section = id. Both canonical for the canonical basis.
struct QuotientMap {
    Matrix projection;  // (n-w) x n
    Matrix section;     // n x (n-w)
};
QuotientMap quotient_map(const Subspace& s);

/// Exact characteristic polynomial, division-free (Samuelson-Berkowitz).
/// Returned monic, coefficient of X^i at index i.
std::vector<Scalar> char_poly(const Matrix& m);

/// Minimal polynomial of m via Krylov on the full matrix space.
std::vector<Scalar> min_poly(const Matrix& m);

/// Roots of a polynomial that lie in the base field. Exhaustive over F_p
/// (p <= 257), rational-root search over the rationals (divisors found by
/// trial division; throws field_error when the search bound is exceeded).
std::vector<Scalar> field_roots(const FieldSpec& f, const std::vector<Scalar>& poly);

}  // namespace qk
