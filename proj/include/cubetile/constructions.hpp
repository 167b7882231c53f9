#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cubetile/code.hpp"

namespace cubetile {

/// h : Z_t -> Z_q, indexed by k in [0, t).
struct HeightFunction {
    std::int64_t t = 1;
    std::vector<std::int64_t> values;

    std::int64_t operator()(std::int64_t k) const;
};

/// (2e+1) Z_q^n.
LinearCode cartesian_code(const Params& p);

/// {(h(k) + (2e+1)s, a + (2e+1)k)}; n must be 2.
Code horizontal(std::int64_t a, const HeightFunction& h, const Params& p);
/// {(a + (2e+1)k, h(k) + (2e+1)s)}; n must be 2.
Code vertical(std::int64_t a, const HeightFunction& h, const Params& p);

/// Upper-triangular generator [[2e+1, k h1], [0, 2e+1]] with
/// h1 = (2e+1) / gcd(2e+1, t) and k reduced mod gcd(2e+1, t).
IntMatrix lc_generator(std::int64_t e, std::int64_t q, std::int64_t k);
/// Lower-triangular generator [[(2e+1) h2, 0], [(2e+1) k', h1 d2]] of the same code.
IntMatrix lc_alternative_generator(std::int64_t e, std::int64_t q, std::int64_t k);
LinearCode lc_code(std::int64_t e, std::int64_t q, std::int64_t k);

/// Both operands must be perfect with the same radius and modulus.
Code cartesian_product(const Code& a, const Code& b);
/// Block-diagonal generator.
LinearCode cartesian_product(const LinearCode& a, const LinearCode& b);

/// {x in Z_q^n : t x in C}, sorted. Scans Z_q^n.
std::vector<Word> t_inverse(const LinearCode& code, std::int64_t t, std::size_t max_cells = 1'000'000);

/// Lattice of C x {0} + (x, 2e+1) Z, requires t x in C.
LinearCode linear_construction(const LinearCode& code, std::span<const std::int64_t> x, std::int64_t e);

/// Cyclic code generated by ((2e+1)/t^{n-1}, ..., (2e+1)/t, 2e+1);
/// requires t^{n-1} | 2e+1.
LinearCode cyclic_family(const Params& p);

/// {(c, h(c) + (2e+1)k)}; C must be perfect with radius e and h total on C.
Code nonlinear_construction(const Code& code, const std::map<Word, std::int64_t>& h, std::int64_t e);

/// Section on H_I with the kept coordinates listed (0-based, increasing).
struct Section {
    Code code;
    std::vector<std::size_t> coords;
};

struct LinearSection {
    LinearCode code;
    std::vector<std::size_t> coords;
};

/// Projection of the codewords c with |c_i| <= e for every i in I.
/// Requires C perfect with radius e.
Section section(const Code& code, std::span<const std::size_t> I, std::int64_t e);
/// Projection of the generators; requires C of type i for every i in I.
LinearSection section_linear(const LinearCode& code, std::span<const std::size_t> I, std::int64_t e);

}  // namespace cubetile
