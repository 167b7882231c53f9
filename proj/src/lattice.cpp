#include "cubetile/lattice.hpp"

#include "cubetile/normal_form.hpp"

namespace cubetile {

Lattice::Lattice(const IntMatrix& generators)
{
    const auto res = hnf(generators);
    n_ = generators.cols();
    if (res.rank() != n_) {
        throw SingularMatrixError("lattice generators have rank " + std::to_string(res.rank()) + " < " +
                                  std::to_string(n_));
    }
    h_.resize(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < n_; ++c) h_[r * n_ + c] = to_int64(res.H(r, c));
    }
}

IntMatrix Lattice::basis() const
{
    IntMatrix m(n_, n_);
    for (std::size_t r = 0; r < n_; ++r) {
        for (std::size_t c = 0; c < n_; ++c) m(r, c) = static_cast<long>(at(r, c));
    }
    return m;
}

Integer Lattice::determinant() const
{
    Integer d = 1;
    for (std::size_t i = 0; i < n_; ++i) d *= static_cast<long>(at(i, i));
    return d;
}

bool Lattice::contains(std::span<const std::int64_t> v) const
{
    if (v.size() != n_) {
        throw std::invalid_argument("lattice membership: dimension mismatch");
    }
    // Forward substitution against the upper-triangular basis.
    std::vector<__int128> r(v.begin(), v.end());
    constexpr __int128 limit = static_cast<__int128>(1) << 100;
    for (std::size_t j = 0; j < n_; ++j) {
        const std::int64_t d = at(j, j);
        if (r[j] % d != 0) return false;
        const __int128 x = r[j] / d;
        if (x == 0) continue;
        for (std::size_t k = j + 1; k < n_; ++k) {
            r[k] -= x * at(j, k);
            if (r[k] > limit || r[k] < -limit) {
                throw OverflowError("lattice membership: intermediate value too large");
            }
        }
    }
    return true;
}

}  // namespace cubetile
