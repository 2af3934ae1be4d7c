#ifndef SUBDIV_MATRIX_HPP
#define SUBDIV_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "subdiv/rational.hpp"

namespace subdiv {

/**
 * Dense matrix over the rationals, stored row-major.
 *
 * This is the workhorse for every exact computation in the library: boundary
 * maps, inclusions, Gram matrices, orthogonal complements and pencils.
 * Boundary and incidence matrices are stored in the same type (their entries
 * just happen to be integers).
 */
class RationalMatrix
{
    public:
        RationalMatrix() = default;
        RationalMatrix(std::size_t rows, std::size_t cols);
        RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

        static RationalMatrix identity(std::size_t n);
        static RationalMatrix diagonal(std::span<const Rational> diag);
        static RationalMatrix column_vector(std::span<const Rational> v);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

        Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        std::vector<Rational> row(std::size_t i) const;
        std::vector<Rational> column(std::size_t j) const;
        void set_column(std::size_t j, std::span<const Rational> v);

        RationalMatrix transpose() const;
        RationalMatrix select_rows(std::span<const std::size_t> idx) const;
        RationalMatrix select_cols(std::span<const std::size_t> idx) const;

        bool is_zero() const;
        bool is_symmetric() const;

        Eigen::MatrixXd to_eigen() const;

        RationalMatrix& operator+=(const RationalMatrix& other);
        RationalMatrix& operator-=(const RationalMatrix& other);
        RationalMatrix& operator*=(const Rational& s);

        friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Rational> data_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, RationalMatrix a);
std::vector<Rational> operator*(const RationalMatrix& a, std::span<const Rational> v);

/// [a | b]; either side may have zero columns.
RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);
/// [a ; b]; either side may have zero rows.
RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b);
/// Block-diagonal assembly.
RationalMatrix block_diagonal(std::span<const RationalMatrix> blocks);

struct RowEchelon
{
    RationalMatrix reduced;             // reduced row echelon form
    std::vector<std::size_t> pivots;    // pivot column of each nonzero row
};

RowEchelon rref(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);

/// Basis of the right null space, one vector per column.
RationalMatrix kernel(const RationalMatrix& a);

/// Indices of a maximal linearly independent set of columns, greedy left to right.
std::vector<std::size_t> independent_columns(const RationalMatrix& a);
/// Indices of a maximal linearly independent set of rows, greedy top to bottom.
std::vector<std::size_t> independent_rows(const RationalMatrix& a);

/// Determinant by fraction-free (Bareiss) elimination on an integer-scaled copy.
Rational determinant(const RationalMatrix& a);

/// Solves a x = b for square nonsingular a; throws Error(Singular) otherwise.
RationalMatrix solve(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix inverse(const RationalMatrix& a);

bool in_column_span(const RationalMatrix& a, std::span<const Rational> v);
bool same_column_span(const RationalMatrix& a, const RationalMatrix& b);

/**
 * Exact LDL^T of a symmetric matrix without pivoting.  Returns true iff every
 * pivot is strictly positive, i.e. the matrix is positive definite.
 */
bool is_positive_definite(const RationalMatrix& a);

/// x^T g y for column vectors given as spans.
Rational bilinear(std::span<const Rational> x, const RationalMatrix& g, std::span<const Rational> y);
Rational dot(std::span<const Rational> x, std::span<const Rational> y);

}   // namespace subdiv

#endif
