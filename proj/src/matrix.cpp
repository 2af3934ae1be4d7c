#include "subdiv/matrix.hpp"

#include <algorithm>
#include <utility>

#include "subdiv/error.hpp"

namespace subdiv {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows)
    {
        if (r.size() != cols_)
            throw Error(ErrorCode::DimOutOfRange, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n)
{
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> diag)
{
    RationalMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

RationalMatrix RationalMatrix::column_vector(std::span<const Rational> v)
{
    RationalMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i)
        m(i, 0) = v[i];
    return m;
}

std::vector<Rational> RationalMatrix::row(std::size_t i) const
{
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Rational> RationalMatrix::column(std::size_t j) const
{
    std::vector<Rational> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

void RationalMatrix::set_column(std::size_t j, std::span<const Rational> v)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, j) = v[i];
}

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::select_rows(std::span<const std::size_t> idx) const
{
    RationalMatrix m(idx.size(), cols_);
    for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t j = 0; j < cols_; ++j)
            m(r, j) = (*this)(idx[r], j);
    return m;
}

RationalMatrix RationalMatrix::select_cols(std::span<const std::size_t> idx) const
{
    RationalMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t c = 0; c < idx.size(); ++c)
            m(i, c) = (*this)(i, idx[c]);
    return m;
}

bool RationalMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool RationalMatrix::is_symmetric() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

Eigen::MatrixXd RationalMatrix::to_eigen() const
{
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double((*this)(i, j));
    return m;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorCode::DimOutOfRange, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorCode::DimOutOfRange, "matrix difference shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s)
{
    for (auto& x : data_)
        x *= s;
    return *this;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
RationalMatrix operator-(RationalMatrix a) { return a *= Rational(-1); }
RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::DimOutOfRange, "matrix product shape mismatch");
    RationalMatrix c(a.rows(), b.cols());
    Rational t;
    // Chain-level matrices are mostly zeros; skip them in the inner loop.
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k)
        {
            const Rational& aik = a(i, k);
            if (sgn(aik) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
            {
                const Rational& bkj = b(k, j);
                if (sgn(bkj) == 0)
                    continue;
                t = aik * bkj;
                c(i, j) += t;
            }
        }
    return c;
}

std::vector<Rational> operator*(const RationalMatrix& a, std::span<const Rational> v)
{
    if (a.cols() != v.size())
        throw Error(ErrorCode::DimOutOfRange, "matrix-vector shape mismatch");
    std::vector<Rational> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(a(i, j)) != 0 && sgn(v[j]) != 0)
                out[i] += a(i, j) * v[j];
    return out;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() == 0 && a.rows() == 0)
        return b;
    if (b.cols() == 0 && b.rows() == 0)
        return a;
    if (a.rows() != b.rows())
        throw Error(ErrorCode::DimOutOfRange, "hstack row mismatch");
    RationalMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
    {
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() == 0 && a.rows() == 0)
        return b;
    if (b.cols() == 0 && b.rows() == 0)
        return a;
    if (a.cols() != b.cols())
        throw Error(ErrorCode::DimOutOfRange, "vstack column mismatch");
    RationalMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
        for (std::size_t i = 0; i < a.rows(); ++i)
            m(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            m(a.rows() + i, j) = b(i, j);
    }
    return m;
}

RationalMatrix block_diagonal(std::span<const RationalMatrix> blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks)
    {
        r += b.rows();
        c += b.cols();
    }
    RationalMatrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                m(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

RowEchelon rref(const RationalMatrix& a)
{
    RowEchelon out{a, {}};
    RationalMatrix& m = out.reduced;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Rational t;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && sgn(m(p, c)) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m(p, j), m(r, j));
        const Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (i == r || sgn(m(i, c)) == 0)
                continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(m(r, j)) != 0)
                {
                    t = f * m(r, j);
                    m(i, j) -= t;
                }
        }
        out.pivots.push_back(c);
        ++r;
    }
    return out;
}

std::size_t rank(const RationalMatrix& a)
{
    if (a.empty())
        return 0;
    return rref(a).pivots.size();
}

RationalMatrix kernel(const RationalMatrix& a)
{
    const std::size_t n = a.cols();
    if (a.rows() == 0)
        return RationalMatrix::identity(n);
    const RowEchelon e = rref(a);
    std::vector<bool> is_pivot(n, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j])
            free.push_back(j);

    RationalMatrix k(n, free.size());
    for (std::size_t f = 0; f < free.size(); ++f)
    {
        k(free[f], f) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            k(e.pivots[r], f) = -e.reduced(r, free[f]);
    }
    return k;
}

std::vector<std::size_t> independent_columns(const RationalMatrix& a)
{
    if (a.empty())
        return {};
    return rref(a).pivots;
}

std::vector<std::size_t> independent_rows(const RationalMatrix& a)
{
    return independent_columns(a.transpose());
}

namespace {

Integer lcm_of_denominators(const RationalMatrix& a, std::size_t row)
{
    Integer l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(row, j).get_den_mpz_t());
    return l;
}

}   // namespace

Rational determinant(const RationalMatrix& a)
{
    if (a.rows() != a.cols())
        throw Error(ErrorCode::DimOutOfRange, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0)
        return 1;

    // Scale each row to integers, then run Bareiss on Z.
    std::vector<Integer> m(n * n);
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        const Integer l = lcm_of_denominators(a, i);
        scale *= l;
        for (std::size_t j = 0; j < n; ++j)
        {
            Rational x = a(i, j) * l;
            m[i * n + j] = x.get_num();
        }
    }

    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (m[k * n + k] == 0)
        {
            std::size_t p = k + 1;
            while (p < n && m[p * n + k] == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m[k * n + j], m[p * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
        {
            for (std::size_t j = k + 1; j < n; ++j)
            {
                Integer t = m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j];
                mpz_divexact(m[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k * n + k];
    }
    Rational det(m[n * n - 1]);
    if (sign < 0)
        det = -det;
    return det / scale;
}

RationalMatrix solve(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw Error(ErrorCode::DimOutOfRange, "solve shape mismatch");
    const std::size_t n = a.rows();
    const RowEchelon e = rref(hstack(a, b));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
        throw Error(ErrorCode::Singular, "singular system");
    RationalMatrix x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x(i, j) = e.reduced(i, n + j);
    return x;
}

RationalMatrix inverse(const RationalMatrix& a)
{
    return solve(a, RationalMatrix::identity(a.rows()));
}

bool in_column_span(const RationalMatrix& a, std::span<const Rational> v)
{
    if (a.cols() == 0)
        return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
    return rank(hstack(a, RationalMatrix::column_vector(v))) == rank(a);
}

bool same_column_span(const RationalMatrix& a, const RationalMatrix& b)
{
    const std::size_t ra = a.cols() == 0 ? 0 : rank(a);
    const std::size_t rb = b.cols() == 0 ? 0 : rank(b);
    if (ra != rb)
        return false;
    if (ra == 0)
        return true;
    return rank(hstack(a, b)) == ra;
}

bool is_positive_definite(const RationalMatrix& a)
{
    if (!a.is_symmetric())
        return false;
    const std::size_t n = a.rows();
    RationalMatrix m = a;
    Rational t;
    for (std::size_t k = 0; k < n; ++k)
    {
        const Rational pivot = m(k, k);
        if (sgn(pivot) <= 0)
            return false;
        for (std::size_t i = k + 1; i < n; ++i)
        {
            if (sgn(m(i, k)) == 0)
                continue;
            const Rational f = m(i, k) / pivot;
            for (std::size_t j = k + 1; j < n; ++j)
                if (sgn(m(k, j)) != 0)
                {
                    t = f * m(k, j);
                    m(i, j) -= t;
                }
        }
    }
    return true;
}

Rational dot(std::span<const Rational> x, std::span<const Rational> y)
{
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0 && sgn(y[i]) != 0)
            s += x[i] * y[i];
    return s;
}

Rational bilinear(std::span<const Rational> x, const RationalMatrix& g, std::span<const Rational> y)
{
    const auto gy = g * y;
    return dot(x, gy);
}

}   // namespace subdiv
