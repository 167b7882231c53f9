#include "cubetile/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "cubetile/normal_form.hpp"

namespace cubetile {

namespace {

void require_dim2(const Params& p, const char* who)
{
    if (p.n != 2) throw std::invalid_argument(std::string(who) + " needs n = 2");
}

Params params_with_t(std::int64_t e, std::int64_t q, const char* who)
{
    auto p = Params::make(2, e, q);
    if (p.t() < 2) throw std::invalid_argument(std::string(who) + ": t = q/(2e+1) must be at least 2");
    return p;
}

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

std::vector<std::size_t> checked_index_set(std::span<const std::size_t> I, std::size_t n)
{
    std::vector<std::size_t> s(I.begin(), I.end());
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("section: repeated index");
    if (!s.empty() && s.back() >= n) throw std::invalid_argument("section: index out of range");
    return s;
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& I, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::binary_search(I.begin(), I.end(), i)) out.push_back(i);
    }
    return out;
}

std::int64_t perfect_radius(const Code& c, const char* who)
{
    const auto rep = is_perfect(c);
    if (!rep.perfect) throw std::domain_error(std::string(who) + ": operand is not perfect (" + rep.reason + ")");
    return rep.e;
}

}  // namespace

std::int64_t HeightFunction::operator()(std::int64_t k) const
{
    if (static_cast<std::int64_t>(values.size()) != t) {
        throw std::invalid_argument("height function must have exactly t values");
    }
    return values[static_cast<std::size_t>(mod(k, t))];
}

LinearCode cartesian_code(const Params& p)
{
    return LinearCode(p.q, Integer(static_cast<long>(p.side())) * IntMatrix::identity(p.n));
}

Code horizontal(std::int64_t a, const HeightFunction& h, const Params& p)
{
    require_dim2(p, "horizontal construction");
    if (h.t != p.t()) throw std::invalid_argument("height function domain must be Z_t");
    std::vector<Word> words;
    for (std::int64_t k = 0; k < p.t(); ++k) {
        for (std::int64_t s = 0; s < p.t(); ++s) words.push_back({h(k) + p.side() * s, a + p.side() * k});
    }
    return Code(p.q, 2, std::move(words));
}

Code vertical(std::int64_t a, const HeightFunction& h, const Params& p)
{
    require_dim2(p, "vertical construction");
    if (h.t != p.t()) throw std::invalid_argument("height function domain must be Z_t");
    std::vector<Word> words;
    for (std::int64_t k = 0; k < p.t(); ++k) {
        for (std::int64_t s = 0; s < p.t(); ++s) words.push_back({a + p.side() * k, h(k) + p.side() * s});
    }
    return Code(p.q, 2, std::move(words));
}

IntMatrix lc_generator(std::int64_t e, std::int64_t q, std::int64_t k)
{
    const auto p = params_with_t(e, q, "lc_code");
    const std::int64_t m = p.side();
    const std::int64_t d1 = std::gcd(m, p.t());
    const std::int64_t h1 = m / d1;
    IntMatrix g(2, 2);
    g(0, 0) = static_cast<long>(m);
    g(0, 1) = static_cast<long>(mod(k, d1) * h1);
    g(1, 1) = static_cast<long>(m);
    return g;
}

IntMatrix lc_alternative_generator(std::int64_t e, std::int64_t q, std::int64_t k)
{
    const auto p = params_with_t(e, q, "lc_code");
    const std::int64_t m = p.side();
    const std::int64_t d1 = std::gcd(m, p.t());
    const std::int64_t h1 = m / d1;
    k = mod(k, d1);
    const std::int64_t d2 = std::gcd(d1, k);
    const std::int64_t h2 = d1 / d2;
    const std::int64_t k1 = k / d2;
    std::int64_t kp = 0;
    if (h2 > 1) {
        while (mod(k1 * kp, h2) != 1) ++kp;
    }
    IntMatrix g(2, 2);
    g(0, 0) = static_cast<long>(m * h2);
    g(1, 0) = static_cast<long>(m * kp);
    g(1, 1) = static_cast<long>(h1 * d2);
    return g;
}

LinearCode lc_code(std::int64_t e, std::int64_t q, std::int64_t k)
{
    return LinearCode(q, lc_generator(e, q, k));
}

Code cartesian_product(const Code& a, const Code& b)
{
    if (a.q() != b.q()) throw std::invalid_argument("cartesian product: moduli differ");
    if (perfect_radius(a, "cartesian product") != perfect_radius(b, "cartesian product")) {
        throw std::invalid_argument("cartesian product: packing radii differ");
    }
    std::vector<Word> words;
    words.reserve(a.size() * b.size());
    for (const auto& x : a.words()) {
        for (const auto& y : b.words()) {
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            words.push_back(std::move(w));
        }
    }
    return Code(a.q(), a.dim() + b.dim(), std::move(words));
}

LinearCode cartesian_product(const LinearCode& a, const LinearCode& b)
{
    if (a.q() != b.q()) throw std::invalid_argument("cartesian product: moduli differ");
    const auto ra = is_perfect(a);
    const auto rb = is_perfect(b);
    if (!ra.perfect || !rb.perfect) throw std::domain_error("cartesian product: operand is not perfect");
    if (ra.e != rb.e) throw std::invalid_argument("cartesian product: packing radii differ");
    const std::size_t n1 = a.dim(), n2 = b.dim();
    IntMatrix g(n1 + n2, n1 + n2);
    for (std::size_t r = 0; r < n1; ++r) {
        for (std::size_t c = 0; c < n1; ++c) g(r, c) = a.generator()(r, c);
    }
    for (std::size_t r = 0; r < n2; ++r) {
        for (std::size_t c = 0; c < n2; ++c) g(n1 + r, n1 + c) = b.generator()(r, c);
    }
    return LinearCode(a.q(), std::move(g));
}

std::vector<Word> t_inverse(const LinearCode& code, std::int64_t t, std::size_t max_cells)
{
    const std::size_t n = code.dim();
    const std::int64_t q = code.q();
    const std::int64_t cells = ipow(q, n);
    if (static_cast<std::uint64_t>(cells) > max_cells) {
        throw BudgetExceeded("t_inverse scans " + std::to_string(cells) + " points, limit " +
                             std::to_string(max_cells));
    }
    std::vector<Word> out;
    Word x(n, 0), tx(n);
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        for (std::size_t i = 0; i < n; ++i) tx[i] = (t % q) * x[i] % q;
        if (code.contains(tx)) out.push_back(x);
        for (std::size_t i = n; i-- > 0;) {
            if (++x[i] < q) break;
            x[i] = 0;
        }
    }
    return out;
}

LinearCode linear_construction(const LinearCode& code, std::span<const std::int64_t> x, std::int64_t e)
{
    const std::size_t n = code.dim();
    const std::int64_t q = code.q();
    const auto p = Params::make(n, e, q);
    if (x.size() != n) throw std::invalid_argument("linear construction: x has the wrong length");
    Word tx(n);
    for (std::size_t i = 0; i < n; ++i) tx[i] = mod(p.t() % q * mod(x[i], q), q);
    if (!code.contains(tx)) throw std::domain_error("linear construction: t x is not a codeword");
    IntMatrix rows(n + 1, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) rows(r, c) = code.generator()(r, c);
    }
    for (std::size_t c = 0; c < n; ++c) rows(n, c) = static_cast<long>(x[c]);
    rows(n, n) = static_cast<long>(p.side());
    return LinearCode::from_generators(q, rows);
}

LinearCode cyclic_family(const Params& p)
{
    const std::int64_t t = p.t();
    if (t < 2) throw std::invalid_argument("cyclic family needs t >= 2");
    const std::int64_t tn1 = ipow(t, p.n - 1);
    if (p.side() % tn1 != 0) {
        throw std::domain_error("no cyclic perfect code: t^(n-1) = " + std::to_string(tn1) + " does not divide 2e+1 = " +
                                std::to_string(p.side()));
    }
    IntMatrix g(1, p.n);
    for (std::size_t i = 0; i < p.n; ++i) g(0, i) = static_cast<long>(p.side() / ipow(t, p.n - 1 - i));
    return LinearCode::from_generators(p.q, g);
}

Code nonlinear_construction(const Code& code, const std::map<Word, std::int64_t>& h, std::int64_t e)
{
    if (perfect_radius(code, "non-linear construction") != e) {
        throw std::invalid_argument("non-linear construction: code radius differs from e");
    }
    const auto p = Params::make(code.dim() + 1, e, code.q());
    std::vector<Word> words;
    words.reserve(code.size() * static_cast<std::size_t>(p.t()));
    for (const auto& c : code.words()) {
        auto it = h.find(c);
        if (it == h.end()) throw std::invalid_argument("height function is not defined on every codeword");
        for (std::int64_t k = 0; k < p.t(); ++k) {
            Word w = c;
            w.push_back(it->second + p.side() * k);
            words.push_back(std::move(w));
        }
    }
    return Code(code.q(), code.dim() + 1, std::move(words));
}

Section section(const Code& code, std::span<const std::size_t> I, std::int64_t e)
{
    if (perfect_radius(code, "section") != e) throw std::invalid_argument("section: code radius differs from e");
    const auto idx = checked_index_set(I, code.dim());
    const auto keep = complement(idx, code.dim());
    std::vector<Word> words;
    for (const auto& c : code.words()) {
        const bool near = std::all_of(idx.begin(), idx.end(),
                                      [&](std::size_t i) { return circular_distance(c[i], 0, code.q()) <= e; });
        if (!near) continue;
        Word w;
        for (auto k : keep) w.push_back(c[k]);
        words.push_back(std::move(w));
    }
    return Section{Code(code.q(), keep.size(), std::move(words)), keep};
}

LinearSection section_linear(const LinearCode& code, std::span<const std::size_t> I, std::int64_t e)
{
    const std::size_t n = code.dim();
    const auto idx = checked_index_set(I, n);
    if (idx.size() == n) throw std::invalid_argument("section onto the zero subgroup");
    const auto types = code_type(code, e);
    for (auto i : idx) {
        if (!std::binary_search(types.begin(), types.end(), i)) {
            throw std::domain_error("linear section: code is not of type " + std::to_string(i + 1));
        }
    }
    const auto keep = complement(idx, n);
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    return LinearSection{LinearCode::from_generators(code.q(), code.generator().submatrix(rows, keep)), keep};
}

}  // namespace cubetile
