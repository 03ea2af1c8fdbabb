#pragma once

#include "prefswap/rational.hpp"

#include <optional>
#include <vector>

namespace prefswap::detail {

// Finds xi >= 0 with sum_j xi_j * columns[j] == target, or reports that no
// such combination exists. Exact rational phase-1 simplex with Bland's rule,
// so it terminates on every input and never suffers rounding.
std::optional<std::vector<Rational>> nonnegative_combination(
    const std::vector<std::vector<long long>>& columns,
    const std::vector<long long>& target);

}  // namespace prefswap::detail
