#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cubetile/code.hpp"

namespace cubetile {

/// Every perfect (n, e, q) code, found by exact cover of Z_q^n with balls of
/// radius e. Refuses with BudgetExceeded when q^n > max_cells. Sorted.
std::vector<Code> oracle_all_perfect(const Params& p, std::size_t max_cells = 10'000);

/// A word c of order t^n whose multiples are pairwise at distance >= 2e+1,
/// found by scanning Z_q^n. Such a c generates a cyclic perfect code.
std::optional<Word> find_cyclic_perfect(const Params& p, std::size_t max_cells = 10'000);

}  // namespace cubetile
