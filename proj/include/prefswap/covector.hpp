#pragma once

#include "prefswap/model.hpp"
#include "prefswap/rounding.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace prefswap {

// Enumerates the elementary scale steps (criterion i, level k) -> (level k+1)
// in lexicographic order: all steps of criterion 0 first, then criterion 1,
// and so on. A criterion with fewer than two levels contributes no slots.
class SlotIndex {
public:
    SlotIndex() = default;
    explicit SlotIndex(const ReferenceScale& scale);

    std::size_t count() const { return slots_.size(); }
    std::size_t criterion_count() const { return first_.empty() ? 0 : first_.size() - 1; }
    std::size_t first(std::size_t criterion) const { return first_[criterion]; }
    std::size_t slots_on(std::size_t criterion) const { return first_[criterion + 1] - first_[criterion]; }
    // (criterion, level index k) of slot s; the slot spans [v_k, v_{k+1}].
    std::pair<std::size_t, std::size_t> slot(std::size_t s) const { return slots_[s]; }

private:
    std::vector<std::pair<std::size_t, std::size_t>> slots_;
    std::vector<std::size_t> first_;  // criterion -> first slot, plus end sentinel
};

// Integer weight per scale step. The covector of a single comparison has
// entries in {-1, 0, +1}; sums of covectors may grow beyond that.
struct Covector {
    std::vector<long long> coeffs;

    Covector() = default;
    explicit Covector(std::size_t slots) : coeffs(slots, 0) {}

    std::size_t size() const { return coeffs.size(); }
    bool is_zero() const;
    bool operator==(const Covector& other) const = default;
    Covector& operator+=(const Covector& other);
    friend Covector operator+(Covector a, const Covector& b) { return a += b; }
};

// Covector of "x at least as good as y" for alternatives whose non-wildcard
// values all lie on the reference scale. Slot (i,k) gets +1 when the
// comparison walks up across it (x_i above, y_i below), -1 when it walks
// down, 0 otherwise. Wildcard pairs contribute 0 on their criterion.
// Throws ValidationError on off-scale values or one-sided wildcards.
Covector covector_of(const Alternative& x, const Alternative& y,
                     const ReferenceScale& scale, const SlotIndex& slots);

// Covector of an arbitrary bounded query, computed directly from the raw
// values: slot (i,k) gets +1 when [v_k, v_{k+1}] lies inside [y_i, x_i] and
// -1 when it meets the open interval (x_i, y_i). Equals covector_of applied
// to the rounded query. Throws UnboundedQueryError on unbounded input.
Covector covector_of_query(const Query& query, const ReferenceScale& scale, const SlotIndex& slots);

// One-hot covector of the elementary scale step at `slot`.
Covector unit_step_covector(const SlotIndex& slots, std::size_t slot);

// +1 on the (single) slot of pos_criterion, -1 on the slot of neg_criterion.
// Both criteria must carry exactly one slot.
Covector swap_target(const SlotIndex& slots, std::size_t pos_criterion, std::size_t neg_criterion);

// Criterion roles read off a covector over binary scales: each criterion has
// at most one slot, so its coefficient is -1, 0 or +1. Criteria without
// slots count as neutral. Throws ValidationError when a criterion has more
// than one slot.
struct ArgumentPartition {
    std::vector<std::size_t> positive;  // arguments for x
    std::vector<std::size_t> negative;  // arguments for y
    std::vector<std::size_t> neutral;
};

ArgumentPartition argument_partition(const Covector& c, const ReferenceScale& scale, const SlotIndex& slots);

// One line per criterion with the slot spans and their signs, for debugging.
std::string dump_covector(const Covector& c, const Instance& instance,
                          const ReferenceScale& scale, const SlotIndex& slots);

}  // namespace prefswap
