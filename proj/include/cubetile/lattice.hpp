#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cubetile/int_matrix.hpp"

namespace cubetile {

/// Full-rank sublattice of Z^n held by its Hermite basis in 64-bit form.
class Lattice {
public:
    Lattice() = default;
    /// Any generating rows of rank n; throws SingularMatrixError otherwise.
    explicit Lattice(const IntMatrix& generators);

    std::size_t dim() const { return n_; }
    std::int64_t at(std::size_t r, std::size_t c) const { return h_[r * n_ + c]; }
    IntMatrix basis() const;
    Integer determinant() const;

    bool contains(std::span<const std::int64_t> v) const;

    friend bool operator==(const Lattice&, const Lattice&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> h_;
};

}  // namespace cubetile
