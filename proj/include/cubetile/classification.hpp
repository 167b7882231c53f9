#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubetile/code.hpp"
#include "cubetile/constructions.hpp"

namespace cubetile {

/// perm[i] is the (0-based) coordinate chosen at step i.
struct PermutationRecord {
    std::vector<std::size_t> perm;
    /// Section after each step; filled on request.
    std::vector<LinearSection> sections;
};

/// tau of C, then tau of successive sections, each on the coordinates that
/// remain. Throws std::logic_error if some step has no type.
PermutationRecord associated_permutation(const LinearCode& code, std::int64_t e, bool keep_sections = false);
/// Coordinate permutation theta with theta(perm[i]) = n-1-i.
Isometry ordering_permutation(const LinearCode& code, std::int64_t e);
bool is_ordered(const LinearCode& code, std::int64_t e);

struct PerfectMatrixCertificate {
    IntMatrix A;  ///< upper triangular, diagonal t
    IntMatrix B;  ///< upper triangular, diagonal 1
};

struct PerfectMatrixCheck {
    bool perfect = false;
    std::optional<PerfectMatrixCertificate> certificate;
    /// First failing condition, empty when perfect.
    std::string failure;
};

/// Upper triangular with diagonal 2e+1 and t M_i in span(M_{i+1}, ..., M_n) + q Z^n.
PerfectMatrixCheck is_perfect_matrix(const IntMatrix& m, std::int64_t e, std::int64_t q);

/// Off-diagonal entries brought into [-(d-1)/2, (d-1)/2] by row operations.
IntMatrix reduce_matrix(const IntMatrix& m);

/// Reduced perfect generator matrix of an ordered linear perfect code.
/// Throws std::domain_error when the Hermite diagonal is not constant 2e+1.
IntMatrix perfect_generator_matrix(const LinearCode& code, std::int64_t e);

/// (2e+1)^{n-1} | t.
bool is_maximal(const Params& p);
/// t^{n-1} | 2e+1.
bool is_cyclic_pair(const Params& p);

struct ReportedCode {
    Code code;
    std::optional<LinearCode> linear;
    std::optional<std::int64_t> parameter;
    std::optional<IntMatrix> matrix;
    std::optional<AbelianType> structure;
};

struct ClassEntry {
    std::vector<std::size_t> members;  ///< indices into ClassReport::codes
    std::size_t representative = 0;    ///< member with the smallest codeword set
    std::optional<AbelianType> structure;
    std::optional<IntMatrix> canonical_matrix;
};

struct ClassReport {
    Params params;
    std::vector<ReportedCode> codes;
    std::optional<std::vector<ClassEntry>> isometry_classes;
    std::optional<std::vector<ClassEntry>> isomorphism_classes;
    std::vector<std::pair<std::string, Integer>> counts;

    Integer count(const std::string& name) const;
};

/// gcd(2e+1, t).
std::int64_t d1_of(std::int64_t e, std::int64_t q);

/// The d1 type-2 codes LC_q(e, k), with isometry classes from orbits and
/// isomorphism classes from group structure.
ClassReport enumerate_2d(std::int64_t e, std::int64_t q);
/// Z_{t/h2} x Z_{t h2}, h2 = d1 / gcd(d1, k).
AbelianType structure_2d(std::int64_t e, std::int64_t q, std::int64_t k);

/// Codes spanned by all reduced matrices with diagonal 2e+1; requires a
/// maximal pair. Isomorphism classes are Gamma-classes of the matrices.
ClassReport enumerate_ordered_maximal(const Params& p, std::size_t max_matrices = 1'000'000,
                                      std::size_t max_words = 2'000'000);

/// Isometry orbits and (for linear members) isomorphism classes of an
/// explicit list of codes, e.g. an oracle census.
ClassReport classify_codes(const Params& p, std::vector<Code> codes);

struct AdmissibleResult {
    std::vector<AbelianType> structures;
    /// False when only a constructible subset is known.
    bool complete = false;
    std::string regime;
};

AdmissibleResult admissible_structures(const Params& p);

/// Chains d_1 | ... | d_n with the given product (and d_n | bound when bound > 0).
std::vector<AbelianType> divisor_chains(std::size_t n, std::int64_t product, std::int64_t bound = 0);

/// Product over p | 2e+1 of the number of partitions of n v_p(2e+1) into
/// parts of size at most n.
Integer count_isomorphism_classes_maximal(std::size_t n, std::int64_t e);

/// (2e+1)^2 (2 (2e+1)^{t-1} - 1).
Integer count_all_2d(std::int64_t e, std::int64_t q);

struct ExistenceReport {
    bool perfect_code_exists = false;
    bool nontrivial_q_ary_exists = false;
    bool noncartesian_linear_2d_exists = false;
    bool cyclic_2d_exists = false;
};

bool perfect_code_exists(std::int64_t e, std::int64_t q);
bool nontrivial_q_ary_exists(std::int64_t q);
bool noncartesian_linear_2d_exists(std::int64_t q);
bool cyclic_2d_exists(std::int64_t q);
ExistenceReport existence_predicates(std::int64_t e, std::int64_t q);

}  // namespace cubetile
