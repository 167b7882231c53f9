#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cubetile/int_matrix.hpp"

namespace cubetile {

/// Row-style Hermite normal form: U * M = H.
///
/// H is in row echelon form (upper triangular when M is square and
/// nonsingular). Pivots are positive and every entry above a pivot d lies
/// in [0, d). U is square and unimodular.
struct HnfResult {
    IntMatrix H;
    IntMatrix U;
    /// Column index of the pivot of each nonzero row of H, in order.
    std::vector<std::size_t> pivot_cols;
    std::size_t rank() const { return pivot_cols.size(); }
};

/// Smith normal form: U * M * V = D with d_1 | d_2 | ... and d_i >= 0.
struct SnfDecomposition {
    IntMatrix D;
    IntMatrix U;
    IntMatrix V;
    std::vector<Integer> diagonal() const;
};

class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when no bidiagonal reduced matrix exists in a Gamma-class.
class NoBidiagonalFormError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

HnfResult hnf(const IntMatrix& m);

/// Pivot: minimal nonzero |entry| of the active block, ties by lowest (row, col).
SnfDecomposition snf(const IntMatrix& m);

/// Invariant factors of a square matrix (the SNF diagonal).
std::vector<Integer> invariant_factors(const IntMatrix& m);

/// q * M^{-1} computed as q * adj(M) / det(M). Returns nullopt when some entry
/// is not integral; throws SingularMatrixError when det(M) = 0.
std::optional<IntMatrix> q_inverse(const IntMatrix& m, const Integer& q);

/// A = U B V for unimodular U, V, decided by Smith normal forms.
bool gamma_equivalent(const IntMatrix& a, const IntMatrix& b);

/// Reduced bidiagonal representative of the Gamma-class of M, where
/// |det M| = (2e+1)^n. Diagonal entries are 2e+1, the superdiagonal lies in
/// [-e, e], everything else is zero.
///
/// Superdiagonals are scanned lexicographically with values ordered
/// 0, 1, -1, 2, -2, ... and the first one with the invariant factors of M is
/// returned. Some classes have no bidiagonal member (for example 2e+1 = 9,
/// n = 3 with invariant factors (1, 27, 27)); those raise
/// NoBidiagonalFormError.
IntMatrix bidiagonal_reduction(const IntMatrix& m, long e);

/// Reduced upper-triangular representative (diagonal 2e+1, off-diagonal
/// entries in [-e, e]) of the Gamma-class of M. Uses bidiagonal_reduction
/// when possible and otherwise the lexicographically first reduced matrix
/// with the same invariant factors, scanning at most `max_matrices`
/// candidates.
IntMatrix triangular_reduction(const IntMatrix& m, long e, std::size_t max_matrices = 1'000'000);

/// Bring every off-diagonal entry of an upper-triangular matrix with
/// diagonal d into [-(d-1)/2, (d-1)/2] using row operations (row i minus a
/// multiple of row j, j > i). The row span is unchanged.
IntMatrix reduce_upper_triangular(IntMatrix m);

}  // namespace cubetile
