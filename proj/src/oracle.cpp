#include "cubetile/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace cubetile {

namespace {

class ExactCover {
public:
    ExactCover(const Params& p) : p_(p), cells_(static_cast<std::size_t>(p.cells())), covered_(cells_, 0)
    {
        const std::size_t n = p.n;
        stride_.assign(n, 1);
        for (std::size_t i = n - 1; i-- > 0;) stride_[i] = stride_[i + 1] * static_cast<std::size_t>(p.q);
        std::vector<std::int64_t> off(n, -p.e);
        while (true) {
            offsets_.push_back(off);
            std::size_t pos = n;
            while (pos > 0) {
                --pos;
                if (++off[pos] <= p.e) break;
                off[pos] = -p.e;
            }
            if (pos == 0 && off[0] == -p.e) break;
        }
    }

    std::vector<Code> run()
    {
        search(0);
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

private:
    Word decode(std::size_t k) const
    {
        Word w(p_.n);
        for (std::size_t i = 0; i < p_.n; ++i) {
            w[i] = static_cast<std::int64_t>(k / stride_[i]);
            k %= stride_[i];
        }
        return w;
    }

    void ball(const Word& centre, std::vector<std::size_t>& out) const
    {
        out.clear();
        for (const auto& off : offsets_) {
            std::size_t k = 0;
            for (std::size_t i = 0; i < p_.n; ++i) {
                std::int64_t v = (centre[i] + off[i]) % p_.q;
                if (v < 0) v += p_.q;
                k += static_cast<std::size_t>(v) * stride_[i];
            }
            out.push_back(k);
        }
    }

    void search(std::size_t from)
    {
        while (from < cells_ && covered_[from]) ++from;
        if (from == cells_) {
            found_.emplace_back(p_.q, p_.n, centres_);
            return;
        }
        // Every ball containing the first uncovered cell has its centre
        // within distance e of it.
        const Word cell = decode(from);
        std::vector<std::size_t> members;
        for (const auto& off : offsets_) {
            Word centre(p_.n);
            for (std::size_t i = 0; i < p_.n; ++i) centre[i] = cell[i] + off[i];
            centre = reduce_word(centre, p_.q);
            ball(centre, members);
            if (std::any_of(members.begin(), members.end(), [&](std::size_t k) { return covered_[k] != 0; })) {
                continue;
            }
            for (auto k : members) covered_[k] = 1;
            centres_.push_back(centre);
            search(from + 1);
            centres_.pop_back();
            for (auto k : members) covered_[k] = 0;
        }
    }

    Params p_;
    std::size_t cells_;
    std::vector<char> covered_;
    std::vector<std::size_t> stride_;
    std::vector<std::vector<std::int64_t>> offsets_;
    std::vector<Word> centres_;
    std::vector<Code> found_;
};

void check_budget(const Params& p, std::size_t max_cells, const char* who)
{
    std::int64_t cells = 0;
    try {
        cells = p.cells();
    } catch (const OverflowError&) {
        cells = -1;
    }
    if (cells < 0 || static_cast<std::uint64_t>(cells) > max_cells) {
        throw BudgetExceeded(std::string(who) + ": q^n = " + std::to_string(p.q) + "^" + std::to_string(p.n) +
                             " cells exceeds the limit of " + std::to_string(max_cells));
    }
}

}  // namespace

std::vector<Code> oracle_all_perfect(const Params& p, std::size_t max_cells)
{
    check_budget(p, max_cells, "oracle_all_perfect");
    if (p.side() > p.q) return {};
    return ExactCover(p).run();
}

std::optional<Word> find_cyclic_perfect(const Params& p, std::size_t max_cells)
{
    check_budget(p, max_cells, "find_cyclic_perfect");
    const std::int64_t q = p.q;
    const std::size_t n = p.n;
    std::int64_t target = 0;
    try {
        target = ipow(p.t(), n);
    } catch (const OverflowError&) {
        return std::nullopt;
    }
    if (target > q) return std::nullopt;  // element orders divide q
    const std::int64_t cells = p.cells();
    Word c(n, 0), m(n);
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        std::int64_t rem = idx;
        std::int64_t g = q;
        for (std::size_t i = n; i-- > 0;) {
            c[i] = rem % q;
            rem /= q;
            g = std::gcd(g, c[i]);
        }
        if (q / g != target) continue;
        bool ok = true;
        std::fill(m.begin(), m.end(), 0);
        for (std::int64_t k = 1; k < target && ok; ++k) {
            for (std::size_t i = 0; i < n; ++i) m[i] = (m[i] + c[i]) % q;
            if (chebyshev_norm(m, q) < p.side()) ok = false;
        }
        if (ok) return c;
    }
    return std::nullopt;
}

}  // namespace cubetile
