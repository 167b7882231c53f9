#include "cubetile/int_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace cubetile {

std::int64_t to_int64(const Integer& value)
{
    if (!value.fits_slong_p()) {
        throw OverflowError("integer " + value.get_str() + " does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(value.get_si());
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_nonneg(const Integer& a, const Integer& m)
{
    Integer r;
    Integer am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0))
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("IntMatrix: ragged initializer");
        }
        for (long v : r) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> diag)
{
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("IntMatrix: ragged rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = static_cast<long>(rows[r][c]);
        }
    }
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::swap((*this)(a, c), (*this)(b, c));
    }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        std::swap((*this)(r, a), (*this)(r, b));
    }
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        (*this)(dst, c) += factor * (*this)(src, c);
    }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor)
{
    if (factor == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, dst) += factor * (*this)(r, src);
    }
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t c = 0; c < cols_; ++c) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const
{
    IntMatrix s(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r) {
        for (std::size_t c = 0; c < col_idx.size(); ++c) {
            s(r, c) = (*this)(row_idx[r], col_idx[c]);
        }
    }
    return s;
}

IntMatrix IntMatrix::vstack(const IntMatrix& below) const
{
    if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0) {
        throw std::invalid_argument("vstack: column count mismatch");
    }
    IntMatrix out(rows_ + below.rows_, rows_ != 0 ? cols_ : below.cols_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return out;
}

bool IntMatrix::is_upper_triangular() const
{
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < std::min(r, cols_); ++c) {
            if ((*this)(r, c) != 0) return false;
        }
    }
    return true;
}

bool IntMatrix::is_diagonal() const
{
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (r != c && (*this)(r, c) != 0) return false;
        }
    }
    return true;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

Integer IntMatrix::determinant() const
{
    if (!is_square()) {
        throw std::invalid_argument("determinant of non-square matrix");
    }
    const std::size_t n = rows_;
    if (n == 0) return Integer(1);
    IntMatrix a = *this;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return Integer(0);
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix IntMatrix::adjugate() const
{
    if (!is_square()) {
        throw std::invalid_argument("adjugate of non-square matrix");
    }
    const std::size_t n = rows_;
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ri.clear();
            ci.clear();
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) ri.push_back(k);
                if (k != j) ci.push_back(k);
            }
            Integer minor = submatrix(ri, ci).determinant();
            // adj(j, i) is the (i, j) cofactor.
            adj(j, i) = ((i + j) % 2 == 0) ? minor : Integer(-minor);
        }
    }
    return adj;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_int64_rows() const
{
    std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out[r][c] = to_int64((*this)(r, c));
        }
    }
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_) {
        throw std::invalid_argument("matrix product: dimension mismatch");
    }
    IntMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

IntMatrix operator*(const Integer& s, const IntMatrix& m)
{
    IntMatrix out = m;
    for (auto& v : out.data_) v *= s;
    return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("matrix sum: dimension mismatch");
    }
    IntMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r) os << ',';
        os << '[';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) os << ',';
            os << m(r, c);
        }
        os << ']';
    }
    return os << ']';
}

std::string to_string(const IntMatrix& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

}  // namespace cubetile
