#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cubetile {

/// Arbitrary-precision integer used by all exact matrix algebra.
using Integer = mpz_class;

/// Thrown when a value does not fit the requested fixed-width type.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

std::int64_t to_int64(const Integer& value);
Integer gcd(const Integer& a, const Integer& b);
/// Floor division (rounds toward negative infinity).
Integer floor_div(const Integer& a, const Integer& b);
/// Residue in [0, |m|).
Integer mod_nonneg(const Integer& a, const Integer& m);

/// Dense rows x cols matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::span<const Integer> diag);
    static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    // Elementary operations.
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    IntMatrix transpose() const;
    IntMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
    /// Stack `below` underneath this matrix (same column count).
    IntMatrix vstack(const IntMatrix& below) const;

    bool is_upper_triangular() const;
    bool is_diagonal() const;
    bool is_zero() const;

    /// Exact determinant (fraction-free Bareiss elimination).
    Integer determinant() const;
    /// Classical adjugate: adj(M) * M = det(M) * I.
    IntMatrix adjugate() const;

    std::vector<std::vector<std::int64_t>> to_int64_rows() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const Integer& s, const IntMatrix& m);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);
std::string to_string(const IntMatrix& m);

}  // namespace cubetile
