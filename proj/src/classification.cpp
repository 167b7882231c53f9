#include "cubetile/classification.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cubetile/normal_form.hpp"

namespace cubetile {

namespace {

std::int64_t checked_pow_or_neg(std::int64_t base, std::size_t exp)
{
    try {
        return ipow(base, exp);
    } catch (const OverflowError&) {
        return -1;
    }
}

std::vector<std::pair<std::int64_t, std::size_t>> factorize(std::int64_t m)
{
    std::vector<std::pair<std::int64_t, std::size_t>> out;
    for (std::int64_t p = 2; p * p <= m; ++p) {
        std::size_t v = 0;
        while (m % p == 0) {
            m /= p;
            ++v;
        }
        if (v) out.emplace_back(p, v);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

std::int64_t divisor_count(std::int64_t m)
{
    std::int64_t c = 1;
    for (const auto& [p, v] : factorize(m)) c *= static_cast<std::int64_t>(v) + 1;
    return c;
}

std::vector<std::int64_t> divisors(std::int64_t m)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            if (d != m / d) out.push_back(m / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Groups indices by union-find roots, ordered by smallest member.
std::vector<std::vector<std::size_t>> components(std::vector<std::size_t>& parent)
{
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < parent.size(); ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t pick_representative(const std::vector<ReportedCode>& codes, const std::vector<std::size_t>& members)
{
    std::size_t best = members.front();
    for (auto m : members) {
        const auto& a = codes[m];
        const auto& b = codes[best];
        bool smaller;
        if (a.code.size() > 0 && b.code.size() > 0) {
            smaller = a.code < b.code;
        } else {
            smaller = a.matrix && b.matrix && to_string(*a.matrix) < to_string(*b.matrix);
        }
        if (smaller) best = m;
    }
    return best;
}

/// Isomorphism classes keyed by group structure of the linear members.
std::vector<ClassEntry> classes_by_structure(const std::vector<ReportedCode>& codes)
{
    std::map<AbelianType, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (codes[i].structure) groups[*codes[i].structure].push_back(i);
    }
    std::vector<ClassEntry> out;
    for (auto& [type, members] : groups) {
        ClassEntry c;
        c.members = members;
        c.representative = pick_representative(codes, members);
        c.structure = type;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ClassEntry& a, const ClassEntry& b) { return a.members < b.members; });
    return out;
}

Params params_2d(std::int64_t e, std::int64_t q)
{
    auto p = Params::make(2, e, q);
    if (p.t() < 2) throw std::invalid_argument("t = q/(2e+1) must be at least 2");
    return p;
}

AbelianType padded(std::vector<Integer> factors, std::size_t n)
{
    IntMatrix d = IntMatrix::diagonal(factors);
    auto inv = invariant_factors(d);
    std::vector<Integer> nt;
    for (auto& v : inv) {
        if (v != 1) nt.push_back(v);
    }
    std::sort(nt.begin(), nt.end());
    std::vector<Integer> out(n - std::min(n, nt.size()), Integer(1));
    out.insert(out.end(), nt.begin(), nt.end());
    return AbelianType{out};
}

void chains_rec(std::size_t left, std::int64_t product, std::int64_t prev, std::int64_t bound,
                std::vector<Integer>& cur, std::vector<AbelianType>& out)
{
    if (left == 0) {
        if (product == 1) out.push_back(AbelianType{cur});
        return;
    }
    for (auto d : divisors(product)) {
        if (d % prev != 0) continue;
        // The remaining left-1 factors are multiples of d.
        const std::int64_t rest = product / d;
        const std::int64_t need = checked_pow_or_neg(d, left - 1);
        if (need < 0 || rest % need != 0) continue;
        if (left == 1 && bound > 0 && bound % d != 0) continue;
        cur.emplace_back(static_cast<long>(d));
        chains_rec(left - 1, rest, d, bound, cur, out);
        cur.pop_back();
    }
}

}  // namespace

// ------------------------------------------------------------ permutations

PermutationRecord associated_permutation(const LinearCode& code, std::int64_t e, bool keep_sections)
{
    const std::size_t n = code.dim();
    PermutationRecord rec;
    LinearCode current = code;
    std::vector<std::size_t> coords(n);
    std::iota(coords.begin(), coords.end(), 0);
    for (std::size_t step = 0; step < n; ++step) {
        const auto types = code_type(current, e);
        if (types.empty()) {
            throw std::logic_error("associated permutation: section at step " + std::to_string(step + 1) +
                                   " has no type; the code is not a linear perfect code with radius " +
                                   std::to_string(e));
        }
        const std::size_t local = types.back();
        rec.perm.push_back(coords[local]);
        if (step + 1 == n) break;
        const std::size_t I[] = {local};
        auto sec = section_linear(current, I, e);
        std::vector<std::size_t> mapped;
        for (auto k : sec.coords) mapped.push_back(coords[k]);
        coords = mapped;
        current = sec.code;
        if (keep_sections) rec.sections.push_back(LinearSection{current, coords});
    }
    return rec;
}

Isometry ordering_permutation(const LinearCode& code, std::int64_t e)
{
    const auto rec = associated_permutation(code, e);
    const std::size_t n = rec.perm.size();
    std::vector<std::size_t> theta(n);
    for (std::size_t i = 0; i < n; ++i) theta[rec.perm[i]] = n - 1 - i;
    return Isometry::permutation(theta);
}

bool is_ordered(const LinearCode& code, std::int64_t e)
{
    const auto rec = associated_permutation(code, e);
    for (std::size_t i = 0; i < rec.perm.size(); ++i) {
        if (rec.perm[i] != rec.perm.size() - 1 - i) return false;
    }
    return true;
}

// -------------------------------------------------------- perfect matrices

PerfectMatrixCheck is_perfect_matrix(const IntMatrix& m, std::int64_t e, std::int64_t q)
{
    const auto p = Params::make(std::max<std::size_t>(m.rows(), 1), e, q);
    if (!m.is_square()) throw std::invalid_argument("perfect matrix test needs a square matrix");
    PerfectMatrixCheck out;
    const std::size_t n = m.rows();
    if (!m.is_upper_triangular()) {
        out.failure = "not upper triangular";
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (m(i, i) != static_cast<long>(p.side())) {
            out.failure = "diagonal entry " + std::to_string(i + 1) + " is not 2e+1";
            return out;
        }
    }
    const Integer t = static_cast<long>(p.t());
    const Integer qq = static_cast<long>(q);
    IntMatrix A(n, n), B(n, n);
    for (std::size_t i = n; i-- > 0;) {
        A(i, i) = t;
        // Solve t M_i = sum_{j>i} alpha_j M_j + q beta over the integers.
        const std::size_t lower = n - 1 - i;
        IntMatrix s(lower + n, n);
        for (std::size_t r = 0; r < lower; ++r) {
            for (std::size_t c = 0; c < n; ++c) s(r, c) = m(i + 1 + r, c);
        }
        for (std::size_t c = 0; c < n; ++c) s(lower + c, c) = qq;
        const auto h = hnf(s);
        std::vector<Integer> y(n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            Integer acc = t * m(i, j);
            for (std::size_t k = 0; k < j; ++k) acc -= y[k] * h.H(k, j);
            if (!mpz_divisible_p(acc.get_mpz_t(), h.H(j, j).get_mpz_t())) {
                ok = false;
                break;
            }
            y[j] = acc / h.H(j, j);
        }
        if (!ok) {
            out.failure = "t*M_" + std::to_string(i + 1) + " is not in the span of the rows below modulo q";
            return out;
        }
        std::vector<Integer> x(lower + n, Integer(0));
        for (std::size_t k = 0; k < n; ++k) {
            if (y[k] == 0) continue;
            for (std::size_t r = 0; r < lower + n; ++r) x[r] += y[k] * h.U(k, r);
        }
        for (std::size_t r = 0; r < lower; ++r) A(i, i + 1 + r) = -x[r];
        for (std::size_t c = 0; c < n; ++c) B(i, c) = x[lower + c];
    }
    if (A * m != qq * B) throw std::logic_error("perfect matrix certificate failed to verify");
    out.perfect = true;
    out.certificate = PerfectMatrixCertificate{std::move(A), std::move(B)};
    return out;
}

IntMatrix reduce_matrix(const IntMatrix& m)
{
    return reduce_upper_triangular(m);
}

IntMatrix perfect_generator_matrix(const LinearCode& code, std::int64_t e)
{
    const IntMatrix h = code.hermite();
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (h(i, i) != static_cast<long>(2 * e + 1)) {
            throw std::domain_error("Hermite diagonal is not constant 2e+1; the code is not ordered "
                                    "(apply ordering_permutation first)");
        }
    }
    return reduce_upper_triangular(h);
}

bool is_maximal(const Params& p)
{
    const std::int64_t m = checked_pow_or_neg(p.side(), p.n - 1);
    return m > 0 && p.t() % m == 0;
}

bool is_cyclic_pair(const Params& p)
{
    const std::int64_t m = checked_pow_or_neg(p.t(), p.n - 1);
    return m > 0 && p.side() % m == 0;
}

// -------------------------------------------------------------- reports

Integer ClassReport::count(const std::string& name) const
{
    for (const auto& [k, v] : counts) {
        if (k == name) return v;
    }
    throw std::out_of_range("no count named " + name);
}

std::int64_t d1_of(std::int64_t e, std::int64_t q)
{
    const auto p = Params::make(2, e, q);
    return std::gcd(p.side(), p.t());
}

AbelianType structure_2d(std::int64_t e, std::int64_t q, std::int64_t k)
{
    const auto p = params_2d(e, q);
    const std::int64_t d1 = std::gcd(p.side(), p.t());
    const std::int64_t h2 = d1 / std::gcd(d1, k);
    return AbelianType{{Integer(static_cast<long>(p.t() / h2)), Integer(static_cast<long>(p.t() * h2))}};
}

ClassReport enumerate_2d(std::int64_t e, std::int64_t q)
{
    const auto p = params_2d(e, q);
    const std::int64_t d1 = std::gcd(p.side(), p.t());
    ClassReport rep;
    rep.params = p;
    for (std::int64_t k = 0; k < d1; ++k) {
        ReportedCode rc;
        rc.linear = lc_code(e, q, k);
        rc.code = rc.linear->expand();
        rc.parameter = k;
        rc.matrix = rc.linear->generator();
        rc.structure = group_structure(*rc.linear);
        rep.codes.push_back(std::move(rc));
    }
    std::vector<std::size_t> parent(rep.codes.size());
    std::iota(parent.begin(), parent.end(), 0);
    if (rep.codes.size() > 1) {
        std::map<Code, std::size_t> index;
        for (std::size_t i = 0; i < rep.codes.size(); ++i) index.emplace(rep.codes[i].code, i);
        for (std::size_t i = 0; i < rep.codes.size(); ++i) {
            for (const auto& img : isometry_orbit(rep.codes[i].code)) {
                auto it = index.find(img);
                if (it == index.end()) continue;
                std::size_t a = i, b = it->second;
                while (parent[a] != a) a = parent[a];
                while (parent[b] != b) b = parent[b];
                parent[std::max(a, b)] = std::min(a, b);
            }
        }
    }
    std::vector<ClassEntry> iso;
    for (auto& members : components(parent)) {
        ClassEntry c;
        c.members = members;
        c.representative = pick_representative(rep.codes, members);
        iso.push_back(std::move(c));
    }
    rep.isometry_classes = std::move(iso);
    rep.isomorphism_classes = classes_by_structure(rep.codes);
    rep.counts = {
        {"codes", Integer(static_cast<long>(rep.codes.size()))},
        {"isometry_classes", Integer(static_cast<unsigned long>(rep.isometry_classes->size()))},
        {"isomorphism_classes", Integer(static_cast<unsigned long>(rep.isomorphism_classes->size()))},
        {"predicted_codes", Integer(static_cast<long>(d1))},
        {"predicted_isometry_classes", Integer(static_cast<long>((d1 + 1) / 2))},
        {"predicted_isomorphism_classes", Integer(static_cast<long>(divisor_count(d1)))},
    };
    return rep;
}

ClassReport enumerate_ordered_maximal(const Params& p, std::size_t max_matrices, std::size_t max_words)
{
    if (!is_maximal(p)) {
        throw std::domain_error("(2e+1)^(n-1) does not divide t; the pair is not maximal");
    }
    const std::size_t n = p.n;
    const std::size_t slots = n * (n - 1) / 2;
    const std::int64_t total = checked_pow_or_neg(p.side(), slots);
    if (total < 0 || static_cast<std::uint64_t>(total) > max_matrices) {
        throw BudgetExceeded("enumerating (2e+1)^(n(n-1)/2) = " + std::to_string(p.side()) + "^" +
                             std::to_string(slots) + " matrices exceeds --max-matrices " +
                             std::to_string(max_matrices));
    }
    ClassReport rep;
    rep.params = p;
    IntMatrix m = Integer(static_cast<long>(p.side())) * IntMatrix::identity(n);
    std::vector<std::pair<std::size_t, std::size_t>> pos;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pos.emplace_back(i, j);
    }
    std::vector<std::int64_t> val(slots, -p.e);
    std::size_t perfect_count = 0;
    std::set<std::string> lattices;
    std::map<std::vector<Integer>, std::vector<std::size_t>> gamma;
    for (std::int64_t idx = 0; idx < total; ++idx) {
        for (std::size_t s = 0; s < slots; ++s) m(pos[s].first, pos[s].second) = static_cast<long>(val[s]);
        const auto check = is_perfect_matrix(m, p.e, p.q);
        if (check.perfect) {
            ++perfect_count;
            ReportedCode rc;
            rc.linear = LinearCode(p.q, m);
            if (rc.linear->size() <= Integer(static_cast<unsigned long>(max_words))) rc.code = rc.linear->expand(max_words);
            rc.matrix = m;
            rc.structure = group_structure(*rc.linear);
            lattices.insert(to_string(rc.linear->hermite()));
            gamma[invariant_factors(m)].push_back(rep.codes.size());
            rep.codes.push_back(std::move(rc));
        }
        for (std::size_t s = slots; s-- > 0;) {
            if (++val[s] <= p.e) break;
            val[s] = -p.e;
        }
    }
    std::vector<ClassEntry> classes;
    for (auto& [snf_diag, members] : gamma) {
        ClassEntry c;
        c.members = members;
        c.representative = pick_representative(rep.codes, members);
        c.structure = rep.codes[members.front()].structure;
        c.canonical_matrix = triangular_reduction(*rep.codes[members.front()].matrix, p.e, max_matrices);
        classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(),
              [](const ClassEntry& a, const ClassEntry& b) { return a.members < b.members; });
    rep.isomorphism_classes = std::move(classes);
    rep.counts = {
        {"matrices", Integer(static_cast<long>(total))},
        {"perfect_matrices", Integer(static_cast<unsigned long>(perfect_count))},
        {"distinct_codes", Integer(static_cast<unsigned long>(lattices.size()))},
        {"isomorphism_classes", Integer(static_cast<unsigned long>(rep.isomorphism_classes->size()))},
        {"predicted_isomorphism_classes", count_isomorphism_classes_maximal(n, p.e)},
    };
    return rep;
}

ClassReport classify_codes(const Params& p, std::vector<Code> codes)
{
    ClassReport rep;
    rep.params = p;
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::size_t linear = 0;
    for (auto& c : codes) {
        ReportedCode rc;
        rc.linear = as_linear(c);
        if (rc.linear) {
            ++linear;
            rc.structure = group_structure(*rc.linear);
            rc.matrix = rc.linear->hermite();
        }
        rc.code = std::move(c);
        rep.codes.push_back(std::move(rc));
    }
    if (p.q > 3) {
        std::map<Code, std::size_t> index;
        for (std::size_t i = 0; i < rep.codes.size(); ++i) index.emplace(rep.codes[i].code, i);
        std::vector<bool> seen(rep.codes.size(), false);
        std::vector<ClassEntry> iso;
        for (std::size_t i = 0; i < rep.codes.size(); ++i) {
            if (seen[i]) continue;
            ClassEntry c;
            for (const auto& img : isometry_orbit(rep.codes[i].code)) {
                auto it = index.find(img);
                if (it == index.end()) continue;
                seen[it->second] = true;
                c.members.push_back(it->second);
            }
            std::sort(c.members.begin(), c.members.end());
            c.representative = pick_representative(rep.codes, c.members);
            iso.push_back(std::move(c));
        }
        rep.isometry_classes = std::move(iso);
    }
    rep.isomorphism_classes = classes_by_structure(rep.codes);
    rep.counts = {
        {"codes", Integer(static_cast<unsigned long>(rep.codes.size()))},
        {"linear_codes", Integer(static_cast<unsigned long>(linear))},
        {"isomorphism_classes", Integer(static_cast<unsigned long>(rep.isomorphism_classes->size()))},
    };
    if (rep.isometry_classes) {
        rep.counts.emplace_back("isometry_classes", Integer(static_cast<unsigned long>(rep.isometry_classes->size())));
    }
    return rep;
}

// ---------------------------------------------------------- admissibility

std::vector<AbelianType> divisor_chains(std::size_t n, std::int64_t product, std::int64_t bound)
{
    std::vector<AbelianType> out;
    std::vector<Integer> cur;
    if (n == 0) return out;
    chains_rec(n, product, 1, bound, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

AdmissibleResult admissible_structures(const Params& p)
{
    const std::int64_t t = p.t();
    if (t < 2) throw std::invalid_argument("admissible structures need t >= 2");
    const std::int64_t tn = ipow(t, p.n);
    AdmissibleResult out;
    out.complete = true;
    if (p.n == 1) {
        out.regime = "dimension 1";
        out.structures = {AbelianType{{Integer(static_cast<long>(t))}}};
    } else if (p.n == 2) {
        out.regime = "dimension 2";
        const std::int64_t d1 = std::gcd(p.side(), t);
        for (auto d : divisors(d1)) {
            out.structures.push_back(AbelianType{{Integer(static_cast<long>(t / d)), Integer(static_cast<long>(t * d))}});
        }
    } else if (is_maximal(p)) {
        out.regime = "maximal";
        out.structures = divisor_chains(p.n, tn, p.q);
    } else if (is_cyclic_pair(p)) {
        out.regime = "cyclic";
        out.structures = divisor_chains(p.n, tn);
    } else {
        // Products of one- and two-dimensional linear codes.
        out.regime = "lower bound";
        out.complete = false;
        const std::int64_t d1 = std::gcd(p.side(), t);
        const auto ds = divisors(d1);
        std::set<AbelianType> found;
        for (std::size_t pairs = 0; 2 * pairs <= p.n; ++pairs) {
            // Multisets of size `pairs` from ds, as non-decreasing index vectors.
            std::vector<std::size_t> pick(pairs, 0);
            while (true) {
                std::vector<Integer> factors;
                for (auto i : pick) {
                    factors.emplace_back(static_cast<long>(t / ds[i]));
                    factors.emplace_back(static_cast<long>(t * ds[i]));
                }
                for (std::size_t k = 2 * pairs; k < p.n; ++k) factors.emplace_back(static_cast<long>(t));
                found.insert(padded(factors, p.n));
                std::size_t j = pairs;
                while (j > 0 && pick[j - 1] + 1 == ds.size()) --j;
                if (j == 0) break;
                ++pick[j - 1];
                for (std::size_t k = j; k < pairs; ++k) pick[k] = pick[j - 1];
            }
        }
        out.structures.assign(found.begin(), found.end());
    }
    std::sort(out.structures.begin(), out.structures.end());
    return out;
}

// ----------------------------------------------------------------- counts

Integer count_isomorphism_classes_maximal(std::size_t n, std::int64_t e)
{
    if (n == 0) throw std::invalid_argument("n must be at least 1");
    if (e < 0) throw std::invalid_argument("e must be nonnegative");
    Integer total = 1;
    for (const auto& [prime, v] : factorize(2 * e + 1)) {
        const std::size_t target = n * v;
        // Partitions of `target` into parts of size at most n.
        std::vector<Integer> ways(target + 1, Integer(0));
        ways[0] = 1;
        for (std::size_t part = 1; part <= n; ++part) {
            for (std::size_t s = part; s <= target; ++s) ways[s] += ways[s - part];
        }
        total *= ways[target];
    }
    return total;
}

Integer count_all_2d(std::int64_t e, std::int64_t q)
{
    const auto p = params_2d(e, q);
    Integer m = static_cast<long>(p.side());
    Integer pw;
    mpz_pow_ui(pw.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p.t() - 1));
    return m * m * (2 * pw - 1);
}

// -------------------------------------------------------------- existence

bool perfect_code_exists(std::int64_t e, std::int64_t q)
{
    return e >= 0 && q > 0 && q % (2 * e + 1) == 0 && q / (2 * e + 1) > 1;
}

bool nontrivial_q_ary_exists(std::int64_t q)
{
    if (q < 2) return false;
    const auto f = factorize(q);
    const bool prime = f.size() == 1 && f.front().second == 1;
    const bool power_of_two = f.size() == 1 && f.front().first == 2;
    return !prime && !power_of_two;
}

bool noncartesian_linear_2d_exists(std::int64_t q)
{
    for (const auto& [p, v] : factorize(q)) {
        if (p % 2 == 1 && v >= 2) return true;
    }
    return false;
}

bool cyclic_2d_exists(std::int64_t q)
{
    if (q % 2 == 0) return false;
    return noncartesian_linear_2d_exists(q);
}

ExistenceReport existence_predicates(std::int64_t e, std::int64_t q)
{
    return ExistenceReport{perfect_code_exists(e, q), nontrivial_q_ary_exists(q), noncartesian_linear_2d_exists(q),
                           cyclic_2d_exists(q)};
}

}  // namespace cubetile
