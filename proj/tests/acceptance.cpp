// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "cubetile/classification.hpp"
#include "cubetile/constructions.hpp"
#include "cubetile/normal_form.hpp"
#include "cubetile/oracle.hpp"
#include "oracles.hpp"

using namespace cubetile;

namespace {

/// Collects failed expectations for one criterion.
class Ledger {
public:
    void expect(bool ok, const std::string& what)
    {
        ++checks_;
        if (!ok && failures_.size() < 8) failures_.push_back(what);
        failed_ += !ok;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const
    {
        std::ostringstream os;
        os << checks_ << " checks";
        if (failed_) {
            os << ", " << failed_ << " failed:";
            for (const auto& f : failures_) os << " [" << f << "]";
        }
        return os.str();
    }

private:
    std::size_t checks_ = 0;
    std::size_t failed_ = 0;
    std::vector<std::string> failures_;
};

template <class T>
std::string str(const T& v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<std::int64_t> chain_of(const AbelianType& a)
{
    std::vector<std::int64_t> out;
    for (const auto& d : a.divisors) out.push_back(to_int64(d));
    return out;
}

std::int64_t sigma0(std::int64_t n)
{
    std::int64_t c = 0;
    for (std::int64_t d = 1; d <= n; ++d) c += n % d == 0;
    return c;
}

std::int64_t min_nonzero_norm(const std::vector<Word>& words, std::int64_t q)
{
    std::int64_t best = q;
    const Word zero(words.front().size(), 0);
    for (const auto& w : words) {
        if (w != zero) best = std::min(best, oracle::cdist(w, zero, q));
    }
    return best;
}

/// Perfection by reference means: tiling scan when affordable, otherwise
/// pairwise distance plus the sphere-packing count.
bool reference_perfect(const Code& c, std::int64_t e)
{
    const std::int64_t q = c.q();
    const std::size_t n = c.dim();
    std::int64_t cells = 1, ball = 1;
    for (std::size_t i = 0; i < n; ++i) {
        cells *= q;
        ball *= 2 * e + 1;
    }
    if (static_cast<double>(cells) * static_cast<double>(c.size()) <= 4e6) return oracle::tiles(c.words(), n, e, q);
    return static_cast<std::int64_t>(c.size()) * ball == cells && oracle::pair_min_distance(c.words(), q) >= 2 * e + 1;
}

using Criterion = std::function<void(Ledger&)>;

// ------------------------------------------------------------------- 1

void criterion_named_codes(Ledger& L)
{
    const auto cart = LinearCode(9, IntMatrix{{3, 0}, {0, 3}});
    const auto rc = is_perfect(cart);
    L.expect(rc.perfect && rc.e == 1, "3 Z_9^2 perfect with e = 1");
    L.expect(oracle::tiles(cart.expand().words(), 2, 1, 9), "3 Z_9^2 tiles");

    const auto fig3 = LinearCode::from_generators(9, 2, {{2, 3}});
    const auto r3 = is_perfect(fig3);
    L.expect(r3.perfect && r3.e == 1, "<(2,3)> perfect with e = 1");
    L.expect(oracle::tiles(fig3.expand().words(), 2, 1, 9), "<(2,3)> tiles");
    L.expect(code_type(fig3, 1) == std::vector<std::size_t>{0}, "<(2,3)> is type 1 only");
    L.expect(oracle::types(fig3.expand().words(), 1, 9) == std::vector<std::size_t>{0}, "<(2,3)> reference types");
    L.expect(group_structure(fig3).is_cyclic() && chain_of(group_structure(fig3)) == std::vector<std::int64_t>{1, 9},
             "<(2,3)> is Z9");
    L.expect(oracle::is_cyclic_group(oracle::span({{2, 3}}, 2, 9), 9), "<(2,3)> reference cyclic");

    const auto fig4 = LinearCode::from_generators(18, 2, {{0, 9}, {1, 3}});
    const auto r4 = is_perfect(fig4);
    L.expect(r4.perfect && r4.e == 1, "<(0,9),(1,3)> perfect with e = 1");
    L.expect(oracle::tiles(fig4.expand().words(), 2, 1, 18), "<(0,9),(1,3)> tiles");
    L.expect(group_structure(fig4).to_string() == "Z2 x Z18", "<(0,9),(1,3)> is Z2 x Z18");
    L.expect(oracle::torsion_profile(oracle::span({{0, 9}, {1, 3}}, 2, 18), 18) ==
                 oracle::torsion_profile(std::vector<std::int64_t>{2, 18}),
             "<(0,9),(1,3)> reference torsion");

    const Code ns(10, 3, {{0, 0, 0}, {5, 0, 0}, {1, 0, 5}, {6, 0, 5}, {1, 5, 0}, {6, 5, 1}, {1, 5, 5}, {6, 5, 6}});
    const auto rn = is_perfect(ns);
    L.expect(rn.perfect && rn.e == 2, "Z_10^3 code perfect with e = 2");
    L.expect(oracle::tiles(ns.words(), 3, 2, 10), "Z_10^3 code tiles");
    L.expect(!is_standard(ns, 2) && oracle::types(ns.words(), 2, 10).empty(), "Z_10^3 code non-standard");
}

// ------------------------------------------------------------------- 2

void criterion_partition_example(Ledger& L)
{
    const IntMatrix rows{{1, 3, 0, 0}, {0, 0, 1, 3}, {3, 0, 1, 0}, {0, 0, 3, 0}};
    const auto c = LinearCode::from_generators(81, rows);
    L.expect(c.size() == 531441, "size 27^4, got " + c.size().get_str());
    const auto rep = is_perfect(c);
    L.expect(rep.perfect && rep.e == 1 && rep.dist == 3, "perfect (4,1,81): " + rep.reason);
    // Reference: minimum nonzero norm over the expanded code.
    const Code words = c.expand();
    L.expect(words.size() == 531441, "expanded size");
    L.expect(min_nonzero_norm(words.words(), 81) == 3, "reference minimum norm 3");

    const auto perm = associated_permutation(c, 1).perm;
    L.expect(perm == std::vector<std::size_t>{2, 3, 0, 1}, "permutation (3,4,1,2)");
    const auto theta = ordering_permutation(c, 1);
    L.expect(theta.perm == std::vector<std::size_t>{1, 0, 3, 2}, "theta = (1 2)(3 4)");
    const auto ordered = apply_isometry(theta, c);
    L.expect(is_ordered(ordered, 1), "theta(C) ordered");
    const auto pm = perfect_generator_matrix(ordered, 1);
    L.expect(is_perfect_matrix(pm, 1, 81).perfect, "theta(C) has a perfect generator matrix");
    L.expect(LinearCode::from_generators(81, pm) == ordered, "perfect matrix spans theta(C)");
}

// ------------------------------------------------------------------- 3

void criterion_census(Ledger& L)
{
    for (auto [e, q, expect] : {std::tuple<std::int64_t, std::int64_t, std::size_t>{1, 6, 45}, {1, 9, 153}}) {
        const auto census = oracle_all_perfect(Params::make(2, e, q));
        const std::string tag = "(" + str(e) + "," + str(q) + ")";
        L.expect(census.size() == expect, tag + " census size " + str(census.size()));
        L.expect(count_all_2d(e, q) == static_cast<unsigned long>(expect), tag + " closed form");
        bool standard = true, tiled = true;
        std::set<std::vector<Word>> sets;
        for (const auto& c : census) {
            standard = standard && !oracle::types(c.words(), e, q).empty() && is_standard(c, e);
            tiled = tiled && oracle::tiles(c.words(), 2, e, q);
            sets.insert(c.words());
        }
        L.expect(standard, tag + " all standard");
        L.expect(tiled, tag + " all tile");
        L.expect(sets == oracle::horizontal_vertical_family(e, q), tag + " equals C1/C2 family");
        // Library constructions produce the same family.
        std::set<std::vector<Word>> built;
        const auto p = Params::make(2, e, q);
        std::vector<std::int64_t> h(static_cast<std::size_t>(p.t()), 0);
        while (true) {
            for (std::int64_t a = 0; a < q; ++a) {
                built.insert(horizontal(a, HeightFunction{p.t(), h}, p).words());
                built.insert(vertical(a, HeightFunction{p.t(), h}, p).words());
            }
            std::size_t i = 0;
            while (i < h.size() && ++h[i] == q) h[i++] = 0;
            if (i == h.size()) break;
        }
        L.expect(built == sets, tag + " horizontal/vertical constructions equal census");
    }
}

// ------------------------------------------------------------------- 4

void criterion_2d_parametrisation(Ledger& L)
{
    for (auto [e, q] : {std::pair<std::int64_t, std::int64_t>{1, 6}, {1, 9}, {2, 25}, {4, 81}, {7, 225}}) {
        const std::int64_t m = 2 * e + 1, t = q / m, d1 = std::gcd(m, t);
        const std::string tag = "(" + str(e) + "," + str(q) + ") d1=" + str(d1);

        // Reference: every Hermite lattice [[a, b], [0, c]] with ac = m^2,
        // 0 <= b < c, periodic mod q, perfect and of type 2.
        std::vector<std::vector<Word>> ref;
        for (std::int64_t a = 1; a <= m * m; ++a) {
            if ((m * m) % a) continue;
            const std::int64_t c = m * m / a;
            if (q % a || q % c) continue;
            for (std::int64_t b = 0; b < c; ++b) {
                // q e_1 must lie in the lattice: q/a * (a, b) = (q, qb/a) needs c | qb/a.
                if ((q / a * b) % c) continue;
                const auto words = oracle::sorted(oracle::span({{a, b}, {0, c}}, 2, q));
                if (static_cast<std::int64_t>(words.size()) != t * t) continue;
                if (min_nonzero_norm(words, q) < m) continue;
                const auto ty = oracle::types(words, e, q);
                if (std::find(ty.begin(), ty.end(), 1) == ty.end()) continue;
                ref.push_back(words);
            }
        }
        L.expect(static_cast<std::int64_t>(ref.size()) == d1, tag + " reference count " + str(ref.size()));

        const auto rep = enumerate_2d(e, q);
        L.expect(static_cast<std::int64_t>(rep.codes.size()) == d1, tag + " enumerate_2d count");
        std::set<std::vector<Word>> lib;
        for (const auto& rc : rep.codes) lib.insert(rc.code.words());
        L.expect(lib == std::set<std::vector<Word>>(ref.begin(), ref.end()), tag + " enumerate_2d equals reference");
        L.expect(static_cast<std::int64_t>(rep.isometry_classes->size()) == (d1 + 1) / 2, tag + " isometry classes");
        L.expect(static_cast<std::int64_t>(rep.isomorphism_classes->size()) == sigma0(d1), tag + " isomorphism classes");

        // Reference classes: signed permutations on word sets, torsion profiles.
        std::vector<std::size_t> iso_root(ref.size());
        std::iota(iso_root.begin(), iso_root.end(), 0);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            for (int mask = 0; mask < 8; ++mask) {
                std::set<Word> img;
                for (const auto& w : ref[i]) {
                    Word x = (mask & 4) ? Word{w[1], w[0]} : w;
                    if (mask & 1) x[0] = oracle::md(-x[0], q);
                    if (mask & 2) x[1] = oracle::md(-x[1], q);
                    img.insert(x);
                }
                const auto it = std::find(ref.begin(), ref.end(), oracle::sorted(img));
                if (it != ref.end()) {
                    const auto j = static_cast<std::size_t>(it - ref.begin());
                    iso_root[std::max(i, j)] = std::min(iso_root[std::max(i, j)], std::min(i, j));
                }
            }
        }
        std::set<std::size_t> roots;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            std::size_t r = i;
            while (iso_root[r] != r) r = iso_root[r];
            roots.insert(r);
        }
        L.expect(static_cast<std::int64_t>(roots.size()) == (d1 + 1) / 2, tag + " reference isometry classes");
        std::set<std::vector<std::size_t>> profiles;
        for (const auto& w : ref) profiles.insert(oracle::torsion_profile(std::set<Word>(w.begin(), w.end()), q));
        L.expect(static_cast<std::int64_t>(profiles.size()) == sigma0(d1), tag + " reference isomorphism classes");

        // Census linear members equal LC codes and their swaps.
        if (q * q <= 10'000 && count_all_2d(e, q) <= 100'000) {
            std::set<std::vector<Word>> census_linear, lc_family;
            for (const auto& c : oracle_all_perfect(Params::make(2, e, q))) {
                if (as_linear(c)) census_linear.insert(c.words());
            }
            for (std::int64_t k = 0; k < d1; ++k) {
                const auto l = lc_code(e, q, k);
                lc_family.insert(l.expand().words());
                lc_family.insert(apply_isometry(Isometry::permutation({1, 0}), l).expand().words());
            }
            L.expect(census_linear == lc_family, tag + " census linear members are LC codes up to swap");
        }
    }
}

// ------------------------------------------------------------------- 5

void criterion_maximality(Ledger& L)
{
    const auto p = Params::make(3, 1, 27);
    const auto rep = enumerate_ordered_maximal(p);
    L.expect(rep.count("matrices") == 27, "27 reduced matrices");
    L.expect(rep.count("perfect_matrices") == 27, "all 27 perfect");
    L.expect(rep.count("distinct_codes") == 27, "27 distinct codes");
    L.expect(rep.isomorphism_classes->size() == 3, "3 isomorphism classes");
    L.expect(count_isomorphism_classes_maximal(3, 1) == 3, "generating function count 3");

    // Reference over the same 27 matrices.
    std::set<std::vector<Word>> codes;
    std::set<std::vector<long long>> smith;
    std::size_t perfect = 0;
    for (long a = -1; a <= 1; ++a) {
        for (long b = -1; b <= 1; ++b) {
            for (long c = -1; c <= 1; ++c) {
                const oracle::Rows rows{{3, a, b}, {0, 3, c}, {0, 0, 3}};
                // t M_i in the span of the lower rows mod 27.
                bool ok = true;
                for (std::size_t i = 0; i < 2; ++i) {
                    const oracle::Rows lower(rows.begin() + static_cast<long>(i) + 1, rows.end());
                    const auto s = oracle::span(lower, 3, 27);
                    oracle::W tm;
                    for (auto v : rows[i]) tm.push_back(oracle::md(9 * v, 27));
                    ok = ok && s.count(tm);
                }
                perfect += ok;
                const auto words = oracle::sorted(oracle::span(rows, 3, 27));
                L.expect(words.size() == 729 && min_nonzero_norm(words, 27) >= 3, "reference perfect code");
                codes.insert(words);
                smith.insert(oracle::invariant_factors({{3, a, b}, {0, 3, c}, {0, 0, 3}}));
            }
        }
    }
    L.expect(perfect == 27, "reference perfect matrices " + str(perfect));
    L.expect(codes.size() == 27, "reference distinct codes");
    L.expect(smith.size() == 3, "reference Smith classes " + str(smith.size()));

    // Non-maximal pair (2,1,15): some reduced matrix fails.
    std::size_t failing = 0, ref_failing = 0;
    for (long a = -1; a <= 1; ++a) {
        const bool lib = is_perfect_matrix(IntMatrix{{3, a}, {0, 3}}, 1, 15).perfect;
        const auto s = oracle::span({{0, 3}}, 2, 15);
        const bool ref = s.count({oracle::md(15, 15), oracle::md(5 * a, 15)}) > 0;
        failing += !lib;
        ref_failing += !ref;
        L.expect(lib == ref, "(2,1,15) matrix agrees with scan");
    }
    L.expect(failing >= 1 && failing == ref_failing, "(2,1,15) has a failing matrix");
}

// ------------------------------------------------------------------- 6

void criterion_admissibility(Ledger& L)
{
    const auto p = Params::make(3, 1, 27);
    const auto adm = admissible_structures(p);
    std::set<std::vector<std::int64_t>> admissible;
    for (const auto& a : adm.structures) admissible.insert(chain_of(a));
    const std::set<std::vector<std::int64_t>> expected{{9, 9, 9}, {3, 9, 27}, {1, 27, 27}};
    L.expect(adm.complete, "admissible set is complete");
    L.expect(admissible == expected, "admissible set");

    std::set<std::vector<std::int64_t>> observed;
    for (const auto& rc : enumerate_ordered_maximal(p).codes) {
        const auto s = chain_of(group_structure(*rc.linear));
        observed.insert(s);
        const auto words = rc.linear->expand().words();
        L.expect(oracle::torsion_profile(std::set<Word>(words.begin(), words.end()), 27) ==
                     oracle::torsion_profile(s),
                 "structure agrees with torsion");
        const auto d = invariant_factors(rc.linear->generator());
        std::vector<std::int64_t> dual;
        for (auto it = d.rbegin(); it != d.rend(); ++it) dual.push_back(27 / to_int64(*it));
        L.expect(dual == s, "Smith duality for " + to_string(rc.linear->generator()));
    }
    L.expect(observed == expected, "observed structures equal admissible set");
}

// ------------------------------------------------------------------- 7

/// Generator of a cyclic perfect code, by scanning Z_q^n.
bool cyclic_code_exists(std::size_t n, std::int64_t e, std::int64_t q)
{
    const std::int64_t m = 2 * e + 1, t = q / m;
    std::int64_t order = 1;
    for (std::size_t i = 0; i < n; ++i) {
        order *= t;
        if (order > q) return false;
    }
    for (const auto& c : oracle::all_points(n, q)) {
        std::int64_t g = q;
        for (auto v : c) g = std::gcd(g, v);
        if (q / g != order) continue;
        oracle::W x(n, 0);
        bool ok = true;
        for (std::int64_t k = 1; k < order && ok; ++k) {
            for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] + c[i]) % q;
            ok = oracle::cdist(x, oracle::W(n, 0), q) >= m;
        }
        if (ok) return true;
    }
    return false;
}

void criterion_cyclic(Ledger& L)
{
    std::size_t cases = 0, existing = 0;
    for (std::size_t n = 1; n <= 14; ++n) {
        for (std::int64_t q = 2;; ++q) {
            double cells = 1;
            for (std::size_t i = 0; i < n; ++i) cells *= static_cast<double>(q);
            if (cells > 1e4) break;
            for (std::int64_t e = 0; 2 * e + 1 <= q; ++e) {
                if (q % (2 * e + 1)) continue;
                const auto p = Params::make(n, e, q);
                if (p.t() < 2) continue;
                ++cases;
                const std::string tag = "(" + str(n) + "," + str(e) + "," + str(q) + ")";
                bool divides = true;
                {
                    std::int64_t tn1 = 1;
                    for (std::size_t i = 1; i < n && divides; ++i) {
                        tn1 *= p.t();
                        divides = tn1 <= p.side() && p.side() % tn1 == 0;
                    }
                }
                const bool ref = cyclic_code_exists(n, e, q);
                const bool lib = find_cyclic_perfect(p, 10'000).has_value();
                L.expect(ref == divides, tag + " reference existence vs divisibility");
                L.expect(lib == divides, tag + " library search vs divisibility");
                L.expect(is_cyclic_pair(p) == divides, tag + " is_cyclic_pair");
                if (!divides) {
                    bool threw = false;
                    try {
                        (void)cyclic_family(p);
                    } catch (const std::domain_error&) {
                        threw = true;
                    }
                    L.expect(threw, tag + " cyclic_family refuses");
                    continue;
                }
                ++existing;
                const auto c = cyclic_family(p);
                const auto rep = is_perfect(c);
                L.expect(rep.perfect && rep.e == e, tag + " cyclic_family perfect");
                L.expect(group_structure(c).is_cyclic(), tag + " cyclic_family cyclic");
                const auto words = c.expand().words();
                L.expect(static_cast<std::int64_t>(words.size()) == ipow(p.t(), n), tag + " size t^n");
                if (words.size() > 1) L.expect(min_nonzero_norm(words, q) >= 2 * e + 1, tag + " reference distance");
            }
        }
    }
    L.expect(cases > 100 && existing > 0, "sweep covered " + str(cases) + " parameter sets");
}

// ------------------------------------------------------------------- 8

struct Sample {
    Code code;
    std::optional<LinearCode> linear;
    std::int64_t e;
};

/// Random perfect code of dimension n for (e, q), n in {1, 2}.
Sample random_base(std::size_t n, std::int64_t e, std::int64_t q, std::mt19937_64& rng)
{
    const auto p = Params::make(n, e, q);
    std::uniform_int_distribution<std::int64_t> coord(0, q - 1);
    if (n == 1) {
        const std::int64_t a = coord(rng);
        std::vector<Word> w;
        for (std::int64_t k = 0; k < p.t(); ++k) w.push_back({a + k * p.side()});
        const Code c(q, 1, w);
        return {c, as_linear(c), e};
    }
    const std::int64_t d1 = std::gcd(p.side(), p.t());
    switch (rng() % 3) {
    case 0: {
        const auto l = lc_code(e, q, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d1)));
        return {l.expand(), l, e};
    }
    case 1: {
        const auto l = apply_isometry(Isometry::permutation({1, 0}),
                                      lc_code(e, q, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d1))));
        return {l.expand(), l, e};
    }
    default: {
        HeightFunction h{p.t(), {}};
        for (std::int64_t k = 0; k < p.t(); ++k) h.values.push_back(coord(rng));
        const Code c = rng() % 2 ? horizontal(coord(rng), h, p) : vertical(coord(rng), h, p);
        return {c, as_linear(c), e};
    }
    }
}

void criterion_closure(Ledger& L)
{
    std::mt19937_64 rng(20240611);
    const std::vector<std::pair<std::int64_t, std::int64_t>> pairs{{1, 6}, {1, 9}, {2, 10}, {1, 12}, {1, 18}, {2, 25}};
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::size_t cases = 0;
    std::map<std::string, std::size_t> per_kind;

    for (int round = 0; round < 150; ++round) {
        const auto [e, q] = pairs[pick(rng)];
        const std::string tag = "round " + str(round) + " (e,q)=(" + str(e) + "," + str(q) + ")";
        const std::int64_t t = q / (2 * e + 1);

        // Cartesian product of two random bases.
        {
            const auto a = random_base(1 + rng() % 2, e, q, rng);
            const auto b = random_base(1, e, q, rng);
            const Code prod = cartesian_product(a.code, b.code);
            const auto rep = is_perfect(prod);
            L.expect(rep.perfect && rep.e == e && prod.dim() == a.code.dim() + 1, tag + " product perfect");
            L.expect(reference_perfect(prod, e), tag + " product reference");
            if (a.linear && b.linear) {
                L.expect(cartesian_product(*a.linear, *b.linear).expand() == prod, tag + " linear product");
            }
            ++cases;
            ++per_kind["product"];
        }
        // Linear construction from a random linear base and x in t^{-1} C.
        {
            Sample a = random_base(1 + rng() % 2, e, q, rng);
            while (!a.linear) a = random_base(a.code.dim(), e, q, rng);
            const auto xs = t_inverse(*a.linear, t);
            const auto& x = xs[rng() % xs.size()];
            const auto l = linear_construction(*a.linear, x, e);
            const auto rep = is_perfect(l);
            L.expect(rep.perfect && rep.e == e && l.dim() == a.code.dim() + 1, tag + " linear construction perfect");
            const Code words = l.expand();
            L.expect(static_cast<std::int64_t>(words.size()) == ipow(t, l.dim()), tag + " linear construction size");
            L.expect(reference_perfect(words, e), tag + " linear construction reference");
            std::vector<Word> slice;
            for (const auto& w : words.words()) {
                if (w.back() == 0) slice.emplace_back(w.begin(), w.end() - 1);
            }
            L.expect(Code(q, a.code.dim(), slice) == a.code, tag + " linear construction embeds C");
            ++cases;
            ++per_kind["linear"];
        }
        // Non-linear construction with random heights.
        {
            const auto a = random_base(1 + rng() % 2, e, q, rng);
            std::map<Word, std::int64_t> h;
            for (const auto& w : a.code.words()) h[w] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
            const Code c = nonlinear_construction(a.code, h, e);
            const auto rep = is_perfect(c);
            L.expect(rep.perfect && rep.e == e, tag + " non-linear perfect");
            L.expect(reference_perfect(c, e), tag + " non-linear reference");
            const auto ty = oracle::types(c.words(), e, q);
            L.expect(std::find(ty.begin(), ty.end(), c.dim() - 1) != ty.end(), tag + " non-linear type n+1");
            ++cases;
            ++per_kind["nonlinear"];
        }
        // Sections of a random 3-dimensional perfect code.
        {
            const auto a = random_base(2, e, q, rng);
            Code c;
            std::optional<LinearCode> lin;
            if (rng() % 2 && a.linear) {
                const auto xs = t_inverse(*a.linear, t);
                lin = linear_construction(*a.linear, xs[rng() % xs.size()], e);
                c = lin->expand();
            } else {
                std::map<Word, std::int64_t> h;
                for (const auto& w : a.code.words()) h[w] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
                c = nonlinear_construction(a.code, h, e);
                lin = as_linear(c);
            }
            std::vector<std::size_t> idx;
            while (idx.empty()) {
                idx.clear();
                for (std::size_t i = 0; i < 3; ++i) {
                    if (rng() % 2) idx.push_back(i);
                }
                if (idx.size() == 3) idx.clear();
            }
            const auto s = section(c, idx, e);
            const auto rep = is_perfect(s.code);
            L.expect(rep.perfect && (s.code.size() == 1 || rep.e == e) && s.code.dim() == 3 - idx.size(),
                     tag + " section perfect");
            L.expect(reference_perfect(s.code, e), tag + " section reference");
            if (lin) {
                const auto ty = code_type(*lin, e);
                const bool all = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) {
                    return std::find(ty.begin(), ty.end(), i) != ty.end();
                });
                if (all) {
                    const auto ls = section_linear(*lin, idx, e);
                    // pi_I(C): drop the coordinates in I from every codeword.
                    std::set<Word> proj;
                    for (const auto& w : c.words()) {
                        Word x;
                        for (auto k : ls.coords) x.push_back(w[k]);
                        proj.insert(x);
                    }
                    L.expect(ls.code.expand().words() == oracle::sorted(proj), tag + " linear section is projection");
                    L.expect(ls.code.expand() == s.code, tag + " linear section equals section");
                    ++per_kind["linear-section"];
                }
            }
            ++cases;
            ++per_kind["section"];
        }
    }
    L.expect(cases >= 500, "ran " + str(cases) + " cases");
    L.expect(per_kind["linear-section"] > 0, "some linear sections exercised");
}

// ------------------------------------------------------------------- 9

IntMatrix to_int(const oracle::M& m)
{
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : m) rows.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(rows);
}

void criterion_normal_forms(Ledger& L)
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> entry(-50, 50);
    std::uniform_int_distribution<std::size_t> size(1, 6);
    for (int trial = 0; trial < 1200; ++trial) {
        const std::size_t n = size(rng);
        oracle::M m(n, std::vector<long long>(n));
        for (auto& row : m) {
            for (auto& v : row) v = entry(rng);
        }
        const IntMatrix im = to_int(m);
        const std::string tag = "trial " + str(trial) + " " + to_string(im);

        const auto h = hnf(im);
        L.expect(h.U * im == h.H, tag + " UM = H");
        L.expect(abs(h.U.determinant()) == 1, tag + " U unimodular");
        bool canonical = true;
        std::size_t prev = 0;
        for (std::size_t r = 0; r < h.rank(); ++r) {
            const std::size_t pc = h.pivot_cols[r];
            canonical = canonical && (r == 0 || pc > prev) && h.H(r, pc) > 0;
            for (std::size_t c = 0; c < pc; ++c) canonical = canonical && h.H(r, c) == 0;
            for (std::size_t above = 0; above < r; ++above) {
                canonical = canonical && h.H(above, pc) >= 0 && h.H(above, pc) < h.H(r, pc);
            }
            prev = pc;
        }
        for (std::size_t r = h.rank(); r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) canonical = canonical && h.H(r, c) == 0;
        }
        L.expect(canonical, tag + " H canonical echelon");
        L.expect(abs(h.H.determinant()) == abs(im.determinant()), tag + " det H");

        const auto s = snf(im);
        L.expect(s.U * im * s.V == s.D, tag + " UMV = D");
        L.expect(abs(s.U.determinant()) == 1 && abs(s.V.determinant()) == 1, tag + " U, V unimodular");
        L.expect(s.D.is_diagonal(), tag + " D diagonal");
        const auto d = s.diagonal();
        bool chain = true;
        for (std::size_t i = 0; i < n; ++i) {
            chain = chain && d[i] >= 0;
            if (i + 1 < n) chain = chain && (d[i + 1] == 0 || (d[i] != 0 && d[i + 1] % d[i] == 0));
        }
        L.expect(chain, tag + " divisor chain");

        const IntMatrix mixed = to_int(oracle::random_unimodular(n, rng)) * im * to_int(oracle::random_unimodular(n, rng));
        L.expect(snf(mixed).diagonal() == d, tag + " SNF invariant under unimodular mixing");

        if (n <= 4) {
            const auto ref = oracle::invariant_factors(m);
            bool same = true;
            for (std::size_t i = 0; i < n; ++i) same = same && d[i] == Integer(static_cast<long>(ref[i]));
            L.expect(same, tag + " SNF equals determinantal-divisor quotients");
        }
    }
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"C1 named example codes", criterion_named_codes},
        {"C2 (4,1,81) generator example", criterion_partition_example},
        {"C3 2D census vs closed form", criterion_census},
        {"C4 2D parametrisation", criterion_2d_parametrisation},
        {"C5 maximality", criterion_maximality},
        {"C6 admissible structures", criterion_admissibility},
        {"C7 cyclic characterisation", criterion_cyclic},
        {"C8 construction closure", criterion_closure},
        {"C9 normal-form kernel", criterion_normal_forms},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Ledger L;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(L);
        } catch (const std::exception& ex) {
            L.expect(false, std::string("exception: ") + ex.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (L.ok() ? "PASS " : "FAIL ") << name << " (" << L.summary() << ", " << timing << ")"
                  << std::endl;
        failed += !L.ok();
    }
    return failed ? 1 : 0;
}
