#include "cubetile/code.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cubetile/normal_form.hpp"

namespace cubetile {

Params Params::make(std::size_t n, std::int64_t e, std::int64_t q)
{
    if (n == 0) throw std::invalid_argument("dimension n must be at least 1");
    if (e < 0) throw std::invalid_argument("packing radius e must be nonnegative");
    if (q < 1) throw std::invalid_argument("modulus q must be positive");
    if (q % (2 * e + 1) != 0) {
        throw std::invalid_argument("q = " + std::to_string(q) + " is not a multiple of 2e+1 = " +
                                    std::to_string(2 * e + 1));
    }
    return Params{n, e, q};
}

std::int64_t Params::cells() const
{
    return ipow(q, n);
}

std::int64_t ipow(std::int64_t base, std::size_t exp)
{
    std::int64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r)) {
            throw OverflowError(std::to_string(base) + "^" + std::to_string(exp) + " does not fit in 64 bits");
        }
    }
    return r;
}

std::int64_t circular_distance(std::int64_t a, std::int64_t b, std::int64_t q)
{
    std::int64_t d = (a - b) % q;
    if (d < 0) d += q;
    return std::min(d, q - d);
}

std::int64_t chebyshev_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y, std::int64_t q)
{
    if (x.size() != y.size()) throw std::invalid_argument("distance between words of different length");
    std::int64_t m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, circular_distance(x[i], y[i], q));
    return m;
}

std::int64_t chebyshev_norm(std::span<const std::int64_t> x, std::int64_t q)
{
    std::int64_t m = 0;
    for (auto v : x) m = std::max(m, circular_distance(v, 0, q));
    return m;
}

Word reduce_word(std::span<const std::int64_t> x, std::int64_t q)
{
    Word w(x.begin(), x.end());
    for (auto& v : w) {
        v %= q;
        if (v < 0) v += q;
    }
    return w;
}

// ---------------------------------------------------------------- Code

Code::Code(std::int64_t q, std::size_t n, std::vector<Word> words) : q_(q), n_(n), words_(std::move(words))
{
    if (q < 1) throw std::invalid_argument("modulus q must be positive");
    (void)ipow(q, n);  // keys must fit
    for (auto& w : words_) {
        if (w.size() != n) throw std::invalid_argument("codeword of length " + std::to_string(w.size()) +
                                                       " in a code of length " + std::to_string(n));
        w = reduce_word(w, q);
    }
    std::sort(words_.begin(), words_.end());
    words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
    keys_.reserve(words_.size());
    for (const auto& w : words_) keys_.push_back(key(w));
}

std::uint64_t Code::key(std::span<const std::int64_t> w) const
{
    std::uint64_t k = 0;
    for (auto v : w) {
        v %= q_;
        if (v < 0) v += q_;
        k = k * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(v);
    }
    return k;
}

std::size_t Code::index_of(std::span<const std::int64_t> w) const
{
    if (w.size() != n_) return size();
    const auto k = key(w);
    auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
    if (it == keys_.end() || *it != k) return size();
    return static_cast<std::size_t>(it - keys_.begin());
}

bool Code::contains(std::span<const std::int64_t> w) const
{
    return index_of(w) != size();
}

bool operator<(const Code& a, const Code& b)
{
    if (a.q_ != b.q_) return a.q_ < b.q_;
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.words_ < b.words_;
}

// ---------------------------------------------------------- LinearCode

LinearCode::LinearCode(std::int64_t q, IntMatrix gen) : q_(q), gen_(std::move(gen))
{
    if (q < 1) throw std::invalid_argument("modulus q must be positive");
    if (!gen_.is_square() || gen_.rows() == 0) {
        throw std::invalid_argument("generator matrix must be square and nonempty");
    }
    if (!q_inverse(gen_, Integer(static_cast<long>(q)))) {
        throw std::invalid_argument("rows of " + to_string(gen_) + " are not a lattice basis containing " +
                                    std::to_string(q) + "Z^n");
    }
    lattice_ = Lattice(gen_);
}

LinearCode LinearCode::from_generators(std::int64_t q, const IntMatrix& rows)
{
    const std::size_t n = rows.cols();
    if (n == 0) throw std::invalid_argument("generators must have at least one column");
    IntMatrix stacked = rows.vstack(Integer(static_cast<long>(q)) * IntMatrix::identity(n));
    auto res = hnf(stacked);
    std::vector<std::size_t> idx(n), cols(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::iota(cols.begin(), cols.end(), 0);
    return LinearCode(q, res.H.submatrix(idx, cols));
}

LinearCode LinearCode::from_generators(std::int64_t q, std::size_t n, const std::vector<Word>& rows)
{
    IntMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n) throw std::invalid_argument("generator of wrong length");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(rows[r][c]);
    }
    return from_generators(q, m);
}

Integer LinearCode::size() const
{
    Integer qn;
    Integer qq = static_cast<long>(q_);
    mpz_pow_ui(qn.get_mpz_t(), qq.get_mpz_t(), dim());
    return qn / lattice_.determinant();
}

Code LinearCode::expand(std::size_t max_words) const
{
    const std::size_t n = dim();
    const Integer total = size();
    if (total > Integer(static_cast<unsigned long>(max_words))) {
        throw BudgetExceeded("expanding " + total.get_str() + " codewords exceeds the limit of " +
                             std::to_string(max_words));
    }
    // Codewords are x * H mod q with 0 <= x_j < q / H_jj, each hit once.
    std::vector<std::int64_t> bound(n);
    for (std::size_t j = 0; j < n; ++j) bound[j] = q_ / lattice_.at(j, j);
    const std::size_t count = static_cast<std::size_t>(total.get_ui());
    std::vector<Word> words;
    words.reserve(count);
    std::vector<std::int64_t> x(n, 0);
    Word w(n);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::fill(w.begin(), w.end(), 0);
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j] == 0) continue;
            for (std::size_t k = j; k < n; ++k) w[k] = (w[k] + x[j] * lattice_.at(j, k)) % q_;
        }
        words.push_back(reduce_word(w, q_));
        for (std::size_t j = n; j-- > 0;) {
            if (++x[j] < bound[j]) break;
            x[j] = 0;
        }
    }
    return Code(q_, n, std::move(words));
}

// ---------------------------------------------------------- AbelianType

Integer AbelianType::order() const
{
    Integer r = 1;
    for (const auto& d : divisors) r *= d;
    return r;
}

bool AbelianType::is_cyclic() const
{
    return nontrivial().size() <= 1;
}

std::vector<Integer> AbelianType::nontrivial() const
{
    std::vector<Integer> out;
    for (const auto& d : divisors) {
        if (d != 1) out.push_back(d);
    }
    return out;
}

std::string AbelianType::to_string() const
{
    const auto nt = nontrivial();
    if (nt.empty()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < nt.size(); ++i) {
        if (i) s += " x ";
        s += "Z" + nt[i].get_str();
    }
    return s;
}

AbelianType group_structure(const LinearCode& code)
{
    auto a = q_inverse(code.generator(), Integer(static_cast<long>(code.q())));
    return AbelianType{invariant_factors(*a)};
}

// ------------------------------------------------------------- metrics

std::int64_t minimum_distance(const Code& code)
{
    if (code.size() < 2) throw std::invalid_argument("minimum distance needs at least two codewords");
    const auto& w = code.words();
    std::int64_t best = code.q();
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            best = std::min(best, chebyshev_distance(w[i], w[j], code.q()));
            if (best == 1) return 1;
        }
    }
    return best;
}

std::int64_t minimum_distance(const LinearCode& code)
{
    if (code.size() < 2) throw std::invalid_argument("minimum distance needs at least two codewords");
    const std::size_t n = code.dim();
    const std::int64_t q = code.q();
    constexpr double shell_budget = 2e7;
    std::vector<std::int64_t> v(n);
    for (std::int64_t r = 1; r <= q / 2; ++r) {
        if (std::pow(2.0 * static_cast<double>(r) + 1.0, static_cast<double>(n)) > shell_budget) {
            // Box too large: fall back to scanning the codewords.
            const Code c = code.expand();
            std::int64_t best = q;
            for (const auto& w : c.words()) {
                const auto nrm = chebyshev_norm(w, q);
                if (nrm != 0) best = std::min(best, nrm);
            }
            return best;
        }
        // Shell max|v_i| = r; the first nonzero entry is taken positive.
        std::fill(v.begin(), v.end(), -r);
        while (true) {
            std::int64_t m = 0;
            std::size_t first = n;
            for (std::size_t i = 0; i < n; ++i) {
                m = std::max(m, v[i] < 0 ? -v[i] : v[i]);
                if (first == n && v[i] != 0) first = i;
            }
            if (m == r && first < n && v[first] > 0 && code.contains(v)) return r;
            std::size_t pos = n;
            while (pos > 0) {
                --pos;
                if (++v[pos] <= r) break;
                v[pos] = -r;
            }
            if (pos == 0 && v[0] == -r) break;
        }
    }
    // Only the zero codeword has norm above q/2 representatives.
    throw std::logic_error("minimum_distance: no nonzero codeword found");
}

std::int64_t packing_radius(const Code& code)
{
    return (minimum_distance(code) - 1) / 2;
}

namespace {

struct BfsResult {
    std::int64_t radius;
    std::uint64_t farthest;
};

BfsResult bfs_cover(const Code& code, std::size_t max_cells)
{
    const std::size_t n = code.dim();
    const std::int64_t q = code.q();
    const std::int64_t total = ipow(q, n);
    if (static_cast<std::uint64_t>(total) > max_cells) {
        throw BudgetExceeded("covering scan over " + std::to_string(total) + " cells exceeds --max-cells " +
                             std::to_string(max_cells));
    }
    if (code.size() == 0) throw std::invalid_argument("covering radius of the empty code");
    std::vector<std::int32_t> dist(static_cast<std::size_t>(total), -1);
    std::vector<std::uint64_t> frontier;
    for (const auto& w : code.words()) {
        std::uint64_t k = 0;
        for (auto v : w) k = k * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(v);
        dist[k] = 0;
        frontier.push_back(k);
    }
    // King-move offsets.
    std::vector<std::vector<int>> moves;
    std::vector<int> mv(n, -1);
    while (true) {
        if (std::any_of(mv.begin(), mv.end(), [](int d) { return d != 0; })) moves.push_back(mv);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++mv[pos] <= 1) break;
            mv[pos] = -1;
        }
        if (pos == 0 && mv[0] == -1) break;
    }
    std::vector<std::int64_t> coord(n);
    std::int32_t level = 0;
    std::uint64_t last = frontier.front();
    std::vector<std::uint64_t> next;
    while (!frontier.empty()) {
        next.clear();
        for (auto k : frontier) {
            std::uint64_t rem = k;
            for (std::size_t i = n; i-- > 0;) {
                coord[i] = static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(q));
                rem /= static_cast<std::uint64_t>(q);
            }
            for (const auto& m : moves) {
                std::uint64_t nk = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::int64_t c = coord[i] + m[i];
                    if (c < 0) c += q;
                    if (c >= q) c -= q;
                    nk = nk * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c);
                }
                if (dist[nk] < 0) {
                    dist[nk] = level + 1;
                    next.push_back(nk);
                }
            }
        }
        if (next.empty()) break;
        ++level;
        last = next.front();
        frontier.swap(next);
    }
    return {level, last};
}

Word decode_key(std::uint64_t k, std::size_t n, std::int64_t q)
{
    Word w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = static_cast<std::int64_t>(k % static_cast<std::uint64_t>(q));
        k /= static_cast<std::uint64_t>(q);
    }
    return w;
}

Integer pow_int(std::int64_t base, std::size_t exp)
{
    Integer r;
    Integer b = static_cast<long>(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

PerfectnessReport single_word_report(std::int64_t q)
{
    PerfectnessReport rep;
    rep.size = 1;
    if (q % 2 == 1) {
        rep.perfect = true;
        rep.e = (q - 1) / 2;
        rep.reason = "single codeword; one ball of side q covers the torus";
    } else {
        rep.reason = "single codeword with even q; no odd cube tiles the torus";
    }
    return rep;
}

}  // namespace

std::int64_t covering_radius(const Code& code, std::size_t max_cells)
{
    return bfs_cover(code, max_cells).radius;
}

PerfectnessReport is_perfect(const Code& code, std::size_t max_cells)
{
    if (code.size() == 0) throw std::invalid_argument("perfection of the empty code");
    if (code.size() == 1) return single_word_report(code.q());
    PerfectnessReport rep;
    rep.size = static_cast<unsigned long>(code.size());
    rep.dist = minimum_distance(code);
    rep.e = (rep.dist - 1) / 2;
    if (rep.size * pow_int(2 * rep.e + 1, code.dim()) == pow_int(code.q(), code.dim())) {
        rep.perfect = true;
        rep.reason = "dist >= 2e+1 and #C (2e+1)^n = q^n";
        return rep;
    }
    rep.reason = "#C (2e+1)^n != q^n";
    if (static_cast<std::uint64_t>(ipow(code.q(), code.dim())) <= max_cells) {
        const auto b = bfs_cover(code, max_cells);
        rep.covering = b.radius;
        if (b.radius > rep.e) rep.uncovered = decode_key(b.farthest, code.dim(), code.q());
    }
    return rep;
}

PerfectnessReport is_perfect(const LinearCode& code)
{
    const Integer size = code.size();
    if (size == 1) return single_word_report(code.q());
    PerfectnessReport rep;
    rep.size = size;
    rep.dist = minimum_distance(code);
    rep.e = (rep.dist - 1) / 2;
    rep.perfect = size * pow_int(2 * rep.e + 1, code.dim()) == pow_int(code.q(), code.dim());
    rep.reason = rep.perfect ? "dist >= 2e+1 and #C (2e+1)^n = q^n" : "#C (2e+1)^n != q^n";
    return rep;
}

bool is_perfect_by_covering(const Code& code, std::size_t max_cells)
{
    if (code.size() == 1) return code.q() % 2 == 1;
    return packing_radius(code) == covering_radius(code, max_cells);
}

// ------------------------------------------------------ error correcting

ErrorCorrector::ErrorCorrector(const Code& code) : code_(&code), e_(0)
{
    const auto rep = is_perfect(code);
    if (!rep.perfect) throw std::domain_error("error-correcting map requires a perfect code: " + rep.reason);
    e_ = rep.e;
}

const Word& ErrorCorrector::operator()(std::span<const std::int64_t> x) const
{
    const std::size_t n = code_->dim();
    if (x.size() != n) throw std::invalid_argument("word length does not match the code");
    std::vector<std::int64_t> off(n, -e_);
    Word y(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + off[i];
        const auto idx = code_->index_of(y);
        if (idx != code_->size()) return code_->words()[idx];
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++off[pos] <= e_) break;
            off[pos] = -e_;
        }
        if (pos == 0 && off[0] == -e_) break;
    }
    throw std::logic_error("perfect code leaves a point uncovered");
}

Word error_correcting(const Code& code, std::span<const std::int64_t> x)
{
    return ErrorCorrector(code)(x);
}

// ---------------------------------------------------------------- types

std::vector<std::size_t> code_type(const Code& code, std::int64_t e)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < code.dim(); ++i) {
        bool ok = true;
        Word y;
        for (const auto& w : code.words()) {
            y = w;
            y[i] += 2 * e + 1;
            if (!code.contains(y)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> code_type(const LinearCode& code, std::int64_t e)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < code.dim(); ++i) {
        Word v(code.dim(), 0);
        v[i] = 2 * e + 1;
        if (code.contains(v)) out.push_back(i);
    }
    return out;
}

bool is_standard(const Code& code, std::int64_t e)
{
    return !code_type(code, e).empty();
}

std::size_t tau(const Code& code, std::int64_t e)
{
    const auto types = code_type(code, e);
    if (types.empty()) throw std::domain_error("tau is undefined for a non-standard code");
    return types.back();
}

std::size_t tau(const LinearCode& code, std::int64_t e)
{
    const auto types = code_type(code, e);
    if (types.empty()) throw std::domain_error("tau is undefined for a non-standard code");
    return types.back();
}

std::optional<LinearCode> as_linear(const Code& code)
{
    const std::size_t n = code.dim();
    if (!code.contains(Word(n, 0))) return std::nullopt;
    IntMatrix basis = Integer(static_cast<long>(code.q())) * IntMatrix::identity(n);
    LinearCode span(code.q(), basis);
    const Integer target = static_cast<unsigned long>(code.size());
    for (const auto& w : code.words()) {
        if (span.contains(w)) continue;
        IntMatrix row(1, n);
        for (std::size_t c = 0; c < n; ++c) row(0, c) = static_cast<long>(w[c]);
        span = LinearCode::from_generators(code.q(), span.hermite().vstack(row));
        if (span.size() > target) return std::nullopt;
    }
    if (span.size() != target) return std::nullopt;
    return span;
}

// ------------------------------------------------------------ isometries

Isometry Isometry::identity(std::size_t n)
{
    Isometry g;
    g.perm.resize(n);
    std::iota(g.perm.begin(), g.perm.end(), 0);
    g.negate.assign(n, false);
    return g;
}

Isometry Isometry::permutation(std::vector<std::size_t> perm)
{
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }
    Isometry g;
    g.negate.assign(perm.size(), false);
    g.perm = std::move(perm);
    return g;
}

Word Isometry::apply(std::span<const std::int64_t> x, std::int64_t q) const
{
    if (x.size() != perm.size()) throw std::invalid_argument("isometry dimension mismatch");
    Word y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t v = negate[i] ? -x[i] : x[i];
        v %= q;
        if (v < 0) v += q;
        y[perm[i]] = v;
    }
    return y;
}

Isometry Isometry::compose(const Isometry& other) const
{
    if (dim() != other.dim()) throw std::invalid_argument("isometry dimension mismatch");
    Isometry g;
    g.perm.resize(dim());
    g.negate.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        g.perm[i] = perm[other.perm[i]];
        g.negate[i] = negate[other.perm[i]] != other.negate[i];
    }
    return g;
}

Isometry Isometry::inverse() const
{
    Isometry g;
    g.perm.resize(dim());
    g.negate.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        g.perm[perm[i]] = i;
        g.negate[perm[i]] = negate[i];
    }
    return g;
}

bool Isometry::is_identity() const
{
    for (std::size_t i = 0; i < dim(); ++i) {
        if (perm[i] != i || negate[i]) return false;
    }
    return true;
}

std::vector<Isometry> all_isometries(std::size_t n)
{
    std::vector<Isometry> out;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            Isometry g;
            g.perm = p;
            g.negate.resize(n);
            for (std::size_t i = 0; i < n; ++i) g.negate[i] = (mask >> i) & 1U;
            out.push_back(std::move(g));
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

void require_isometry_modulus(std::int64_t q)
{
    if (q <= 3) {
        throw std::domain_error("isometries are only modelled as signed permutations for q > 3");
    }
}

}  // namespace

Code apply_isometry(const Isometry& g, const Code& code)
{
    require_isometry_modulus(code.q());
    std::vector<Word> out;
    out.reserve(code.size());
    for (const auto& w : code.words()) out.push_back(g.apply(w, code.q()));
    return Code(code.q(), code.dim(), std::move(out));
}

LinearCode apply_isometry(const Isometry& g, const LinearCode& code)
{
    require_isometry_modulus(code.q());
    const std::size_t n = code.dim();
    if (g.dim() != n) throw std::invalid_argument("isometry dimension mismatch");
    const IntMatrix& m = code.generator();
    IntMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t i = 0; i < n; ++i) out(r, g.perm[i]) = g.negate[i] ? Integer(-m(r, i)) : m(r, i);
    }
    return LinearCode(code.q(), std::move(out));
}

std::vector<Code> isometry_orbit(const Code& code)
{
    require_isometry_modulus(code.q());
    std::vector<Code> out;
    for (const auto& g : all_isometries(code.dim())) out.push_back(apply_isometry(g, code));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace cubetile
