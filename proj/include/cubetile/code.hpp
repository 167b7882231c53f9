#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubetile/int_matrix.hpp"
#include "cubetile/lattice.hpp"

namespace cubetile {

/// A point of Z_q^n, coordinates in [0, q).
using Word = std::vector<std::int64_t>;

/// Raised when a search or enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// (n, e, q) with q = (2e+1) t.
struct Params {
    std::size_t n = 1;
    std::int64_t e = 0;
    std::int64_t q = 1;

    /// Throws std::invalid_argument unless n >= 1, e >= 0 and (2e+1) | q.
    static Params make(std::size_t n, std::int64_t e, std::int64_t q);

    std::int64_t side() const { return 2 * e + 1; }
    std::int64_t t() const { return q / side(); }
    bool trivial() const { return t() == 1; }
    /// q^n as a checked 64-bit value.
    std::int64_t cells() const;
};

std::int64_t ipow(std::int64_t base, std::size_t exp);

std::int64_t circular_distance(std::int64_t a, std::int64_t b, std::int64_t q);
std::int64_t chebyshev_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, std::int64_t q);
/// Distance to the origin.
std::int64_t chebyshev_norm(std::span<const std::int64_t> x, std::int64_t q);

Word reduce_word(std::span<const std::int64_t> x, std::int64_t q);

/// Explicit q-ary code: a sorted set of distinct words.
class Code {
public:
    Code() = default;
    /// Coordinates are reduced mod q; duplicates are merged.
    Code(std::int64_t q, std::size_t n, std::vector<Word> words);

    std::int64_t q() const { return q_; }
    std::size_t dim() const { return n_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<Word>& words() const { return words_; }

    bool contains(std::span<const std::int64_t> w) const;
    /// Index in words(), or size() when absent.
    std::size_t index_of(std::span<const std::int64_t> w) const;

    friend bool operator==(const Code& a, const Code& b) { return a.q_ == b.q_ && a.n_ == b.n_ && a.words_ == b.words_; }
    /// Lexicographic on the sorted codeword list.
    friend bool operator<(const Code& a, const Code& b);

private:
    std::uint64_t key(std::span<const std::int64_t> w) const;

    std::int64_t q_ = 1;
    std::size_t n_ = 0;
    std::vector<Word> words_;
    std::vector<std::uint64_t> keys_;
};

/// Code given by a basis of its Construction-A lattice.
class LinearCode {
public:
    LinearCode() = default;
    /// Rows of `gen` must be a lattice basis: q * gen^{-1} integral.
    LinearCode(std::int64_t q, IntMatrix gen);

    /// Lattice spanned by `rows` together with q Z^n.
    static LinearCode from_generators(std::int64_t q, const IntMatrix& rows);
    static LinearCode from_generators(std::int64_t q, std::size_t n, const std::vector<Word>& rows);

    std::int64_t q() const { return q_; }
    std::size_t dim() const { return gen_.rows(); }
    const IntMatrix& generator() const { return gen_; }
    /// Hermite basis of the lattice (canonical).
    IntMatrix hermite() const { return lattice_.basis(); }
    const Lattice& lattice() const { return lattice_; }

    /// q^n / det(gen).
    Integer size() const;
    bool contains(std::span<const std::int64_t> w) const { return lattice_.contains(w); }
    /// All codewords; refuses when more than max_words would be produced.
    Code expand(std::size_t max_words = 5'000'000) const;

    /// Same codeword set.
    friend bool operator==(const LinearCode& a, const LinearCode& b) { return a.q_ == b.q_ && a.lattice_ == b.lattice_; }

private:
    std::int64_t q_ = 1;
    IntMatrix gen_;
    Lattice lattice_;
};

/// Divisor chain d_1 | d_2 | ... | d_n of a finite abelian group.
struct AbelianType {
    std::vector<Integer> divisors;

    Integer order() const;
    bool is_cyclic() const;
    /// Chain without leading ones.
    std::vector<Integer> nontrivial() const;
    /// "Z2 x Z18", "Z9"; the trivial group prints as "Z1".
    std::string to_string() const;

    friend bool operator==(const AbelianType&, const AbelianType&) = default;
    friend bool operator<(const AbelianType& a, const AbelianType& b) { return a.divisors < b.divisors; }
};

AbelianType group_structure(const LinearCode& code);

std::int64_t minimum_distance(const Code& code);
/// Minimum circular norm over nonzero codewords, found by growing boxes.
std::int64_t minimum_distance(const LinearCode& code);
std::int64_t packing_radius(const Code& code);
/// Largest distance from a point of Z_q^n to the code (multi-source BFS).
std::int64_t covering_radius(const Code& code, std::size_t max_cells = 10'000'000);

struct PerfectnessReport {
    bool perfect = false;
    std::int64_t e = 0;
    std::int64_t dist = 0;
    Integer size = 0;
    std::optional<std::int64_t> covering = std::nullopt;
    /// A point farther than e from every codeword, when not perfect.
    std::optional<Word> uncovered = std::nullopt;
    std::string reason;
};

/// Sphere-packing test: dist >= 2e+1 and #C (2e+1)^n = q^n. When that fails
/// and q^n <= max_cells, the covering radius and an uncovered point are
/// reported as well.
PerfectnessReport is_perfect(const Code& code, std::size_t max_cells = 1'000'000);
PerfectnessReport is_perfect(const LinearCode& code);
/// Perfection decided only by comparing packing and covering radii.
bool is_perfect_by_covering(const Code& code, std::size_t max_cells = 10'000'000);

/// Error-correcting map of a perfect code.
class ErrorCorrector {
public:
    explicit ErrorCorrector(const Code& code);
    std::int64_t radius() const { return e_; }
    const Word& operator()(std::span<const std::int64_t> x) const;

private:
    const Code* code_;
    std::int64_t e_;
};

Word error_correcting(const Code& code, std::span<const std::int64_t> x);

/// Indices i (0-based) with C + (2e+1) e_i contained in C.
std::vector<std::size_t> code_type(const Code& code, std::int64_t e);
std::vector<std::size_t> code_type(const LinearCode& code, std::int64_t e);
bool is_standard(const Code& code, std::int64_t e);
/// Largest type index; throws std::domain_error for non-standard codes.
std::size_t tau(const Code& code, std::int64_t e);
std::size_t tau(const LinearCode& code, std::int64_t e);

/// Linear presentation when the code is a subgroup of Z_q^n.
std::optional<LinearCode> as_linear(const Code& code);

/// Signed coordinate permutation: y[perm[i]] = (negate[i] ? -x[i] : x[i]).
struct Isometry {
    std::vector<std::size_t> perm;
    std::vector<bool> negate;

    static Isometry identity(std::size_t n);
    static Isometry permutation(std::vector<std::size_t> perm);
    std::size_t dim() const { return perm.size(); }
    Word apply(std::span<const std::int64_t> x, std::int64_t q) const;
    /// (this * other)(x) = this(other(x)).
    Isometry compose(const Isometry& other) const;
    Isometry inverse() const;
    bool is_identity() const;

    friend bool operator==(const Isometry&, const Isometry&) = default;
};

/// All 2^n n! signed permutations.
std::vector<Isometry> all_isometries(std::size_t n);

/// Throws std::domain_error for q <= 3.
Code apply_isometry(const Isometry& g, const Code& code);
LinearCode apply_isometry(const Isometry& g, const LinearCode& code);
/// Distinct images under all isometries, sorted.
std::vector<Code> isometry_orbit(const Code& code);

}  // namespace cubetile
