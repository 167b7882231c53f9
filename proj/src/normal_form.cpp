#include "cubetile/normal_form.hpp"

#include <algorithm>
#include <string>

namespace cubetile {

std::vector<Integer> SnfDecomposition::diagonal() const
{
    std::vector<Integer> out;
    const std::size_t k = std::min(D.rows(), D.cols());
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(D(i, i));
    return out;
}

HnfResult hnf(const IntMatrix& m)
{
    HnfResult res{m, IntMatrix::identity(m.rows()), {}};
    IntMatrix& h = res.H;
    IntMatrix& u = res.U;
    const std::size_t rows = h.rows();
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < rows; ++c) {
        bool has_pivot = false;
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c)))) best = i;
            }
            if (best == rows) break;
            has_pivot = true;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool cleared = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Integer f = -floor_div(h(i, c), h(r, c));
                h.add_row_multiple(i, r, f);
                u.add_row_multiple(i, r, f);
                if (h(i, c) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (!has_pivot) continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer f = -floor_div(h(i, c), h(r, c));
            h.add_row_multiple(i, r, f);
            u.add_row_multiple(i, r, f);
        }
        res.pivot_cols.push_back(c);
        ++r;
    }
    return res;
}

SnfDecomposition snf(const IntMatrix& m)
{
    SnfDecomposition res{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& a = res.D;
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    const std::size_t k = std::min(rows, cols);
    for (std::size_t s = 0; s < k; ++s) {
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = s; i < rows; ++i) {
                for (std::size_t j = s; j < cols; ++j) {
                    if (a(i, j) == 0) continue;
                    if (pi == rows || abs(a(i, j)) < abs(a(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == rows) return res;  // remaining block is zero
            a.swap_rows(s, pi);
            res.U.swap_rows(s, pi);
            a.swap_cols(s, pj);
            res.V.swap_cols(s, pj);

            bool dirty = false;
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (a(i, s) == 0) continue;
                Integer f = -floor_div(a(i, s), a(s, s));
                a.add_row_multiple(i, s, f);
                res.U.add_row_multiple(i, s, f);
                if (a(i, s) != 0) dirty = true;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (a(s, j) == 0) continue;
                Integer f = -floor_div(a(s, j), a(s, s));
                a.add_col_multiple(j, s, f);
                res.V.add_col_multiple(j, s, f);
                if (a(s, j) != 0) dirty = true;
            }
            if (dirty) continue;

            // Pivot must divide the rest of the active block.
            std::size_t bad_row = rows;
            for (std::size_t i = s + 1; i < rows && bad_row == rows; ++i) {
                for (std::size_t j = s + 1; j < cols; ++j) {
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(s, s).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
                }
            }
            if (bad_row == rows) break;
            a.add_row_multiple(s, bad_row, Integer(1));
            res.U.add_row_multiple(s, bad_row, Integer(1));
        }
        if (a(s, s) < 0) {
            a.negate_row(s);
            res.U.negate_row(s);
        }
    }
    return res;
}

std::vector<Integer> invariant_factors(const IntMatrix& m)
{
    return snf(m).diagonal();
}

std::optional<IntMatrix> q_inverse(const IntMatrix& m, const Integer& q)
{
    if (!m.is_square()) {
        throw std::invalid_argument("q_inverse: matrix must be square");
    }
    const Integer det = m.determinant();
    if (det == 0) {
        throw SingularMatrixError("q_inverse: singular matrix " + to_string(m));
    }
    IntMatrix out = m.adjugate();
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            Integer num = q * out(i, j);
            if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) {
                return std::nullopt;
            }
            mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), det.get_mpz_t());
            out(i, j) = num;
        }
    }
    return out;
}

bool gamma_equivalent(const IntMatrix& a, const IntMatrix& b)
{
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw std::invalid_argument("gamma_equivalent: matrices must be square of equal size");
    }
    return invariant_factors(a) == invariant_factors(b);
}

namespace {

// Values of [-e, e] in the order 0, 1, -1, 2, -2, ...
std::vector<long> symmetric_values(long e)
{
    std::vector<long> v{0};
    for (long k = 1; k <= e; ++k) {
        v.push_back(k);
        v.push_back(-k);
    }
    return v;
}

void check_determinant(const IntMatrix& m, long e, const char* who)
{
    if (!m.is_square()) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    }
    Integer side = 2 * e + 1;
    Integer expected;
    mpz_pow_ui(expected.get_mpz_t(), side.get_mpz_t(), m.rows());
    if (abs(m.determinant()) != expected) {
        throw std::invalid_argument(std::string(who) + ": |det| must equal (2e+1)^n = " + expected.get_str());
    }
}

// Odometer over `slots` positions, each ranging over `values`; position 0 is
// the most significant. Calls visit(indices) until it returns true.
template <typename Visit>
bool odometer(std::size_t slots, std::size_t radix, std::size_t budget, const char* who, Visit&& visit)
{
    double total = 1.0;
    for (std::size_t i = 0; i < slots; ++i) total *= static_cast<double>(radix);
    std::vector<std::size_t> idx(slots, 0);
    std::size_t visited = 0;
    while (true) {
        if (visited++ >= budget) {
            throw std::length_error(std::string(who) + ": search budget of " + std::to_string(budget) +
                                    " matrices exhausted (space has " + std::to_string(total) + ")");
        }
        if (visit(idx)) return true;
        std::size_t pos = slots;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < radix) break;
            idx[pos] = 0;
            if (pos == 0) return false;
        }
        if (slots == 0) return false;
    }
}

}  // namespace

IntMatrix bidiagonal_reduction(const IntMatrix& m, long e)
{
    check_determinant(m, e, "bidiagonal_reduction");
    const std::size_t n = m.rows();
    const auto target = invariant_factors(m);
    const auto values = symmetric_values(e);
    IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) b(i, i) = 2 * e + 1;
    const bool found = odometer(n == 0 ? 0 : n - 1, values.size(), 10'000'000, "bidiagonal_reduction",
                                [&](const std::vector<std::size_t>& idx) {
                                    for (std::size_t i = 0; i < idx.size(); ++i) b(i, i + 1) = values[idx[i]];
                                    return invariant_factors(b) == target;
                                });
    if (!found) {
        throw NoBidiagonalFormError("no reduced bidiagonal matrix is Gamma-equivalent to " + to_string(m));
    }
    return b;
}

IntMatrix triangular_reduction(const IntMatrix& m, long e, std::size_t max_matrices)
{
    check_determinant(m, e, "triangular_reduction");
    try {
        return bidiagonal_reduction(m, e);
    } catch (const NoBidiagonalFormError&) {
    }
    const std::size_t n = m.rows();
    const auto target = invariant_factors(m);
    const auto values = symmetric_values(e);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    }
    IntMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) t(i, i) = 2 * e + 1;
    const bool found = odometer(slots.size(), values.size(), max_matrices, "triangular_reduction",
                                [&](const std::vector<std::size_t>& idx) {
                                    for (std::size_t s = 0; s < slots.size(); ++s) {
                                        t(slots[s].first, slots[s].second) = values[idx[s]];
                                    }
                                    return invariant_factors(t) == target;
                                });
    if (!found) {
        // Would contradict the count of Gamma-classes in the reduced set.
        throw std::logic_error("triangular_reduction: no reduced triangular representative for " + to_string(m));
    }
    return t;
}

IntMatrix reduce_upper_triangular(IntMatrix m)
{
    if (!m.is_square() || !m.is_upper_triangular()) {
        throw std::invalid_argument("reduce_upper_triangular: expected a square upper-triangular matrix");
    }
    const std::size_t n = m.rows();
    for (std::size_t c = 1; c < n; ++c) {
        const Integer d = m(c, c);
        if (d <= 0) {
            throw std::invalid_argument("reduce_upper_triangular: diagonal must be positive");
        }
        const Integer half = (d - 1) / 2;
        for (std::size_t r = 0; r < c; ++r) {
            Integer f = floor_div(m(r, c) + half, d);
            m.add_row_multiple(r, c, Integer(-f));
        }
    }
    return m;
}

}  // namespace cubetile
