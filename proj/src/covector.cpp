#include "prefswap/covector.hpp"

#include <algorithm>

namespace prefswap {

SlotIndex::SlotIndex(const ReferenceScale& scale) {
    first_.reserve(scale.criterion_count() + 1);
    for (std::size_t i = 0; i < scale.criterion_count(); ++i) {
        first_.push_back(slots_.size());
        std::size_t levels = scale.level_count(i);
        for (std::size_t k = 0; k + 1 < levels; ++k) slots_.emplace_back(i, k);
    }
    first_.push_back(slots_.size());
}

bool Covector::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](long long c) { return c == 0; });
}

Covector& Covector::operator+=(const Covector& other) {
    if (coeffs.size() != other.coeffs.size()) throw ValidationError("covector sizes differ");
    for (std::size_t s = 0; s < coeffs.size(); ++s) coeffs[s] += other.coeffs[s];
    return *this;
}

Covector covector_of(const Alternative& x, const Alternative& y,
                     const ReferenceScale& scale, const SlotIndex& slots) {
    if (x.size() != y.size() || x.size() != scale.criterion_count()) {
        throw ValidationError("alternative arity does not match the scale");
    }
    Covector c(slots.count());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& xv = x.values[i];
        const auto& yv = y.values[i];
        if (!xv != !yv) throw ValidationError("one-sided wildcard has no covector");
        if (!xv) continue;
        if (!scale.contains(i, *xv) || !scale.contains(i, *yv)) {
            throw ValidationError("covector_of needs values on the reference scale (criterion '" +
                                  std::to_string(i + 1) + "')");
        }
        const auto& levels = scale.levels[i];
        for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
            std::size_t s = slots.first(i) + k;
            if (*xv >= levels[k + 1] && levels[k] >= *yv) {
                c.coeffs[s] = 1;
            } else if (*yv >= levels[k + 1] && levels[k] >= *xv) {
                c.coeffs[s] = -1;
            }
        }
    }
    return c;
}

Covector covector_of_query(const Query& query, const ReferenceScale& scale, const SlotIndex& slots) {
    Boundedness b = classify_boundedness(query, scale);
    if (!b.bounded) throw UnboundedQueryError("covector of an unbounded query is undefined");

    Covector c(slots.count());
    for (std::size_t i = 0; i < query.x.size(); ++i) {
        const Rational& x = *query.x.values[i];
        const Rational& y = *query.y.values[i];
        const auto& levels = scale.levels[i];
        for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
            std::size_t s = slots.first(i) + k;
            if (levels[k] >= y && x >= levels[k + 1]) {
                c.coeffs[s] = 1;  // the step [v_k, v_{k+1}] sits inside [y, x]
            } else if (y > x && levels[k] < y && levels[k + 1] > x) {
                c.coeffs[s] = -1;  // the step meets the gap (x, y) the query must climb
            }
        }
    }
    return c;
}

Covector unit_step_covector(const SlotIndex& slots, std::size_t slot) {
    Covector c(slots.count());
    c.coeffs.at(slot) = 1;
    return c;
}

Covector swap_target(const SlotIndex& slots, std::size_t pos_criterion, std::size_t neg_criterion) {
    if (slots.slots_on(pos_criterion) != 1 || slots.slots_on(neg_criterion) != 1) {
        throw ValidationError("swap targets need criteria with exactly one scale step");
    }
    Covector c(slots.count());
    c.coeffs[slots.first(pos_criterion)] = 1;
    c.coeffs[slots.first(neg_criterion)] = -1;
    return c;
}

ArgumentPartition argument_partition(const Covector& c, const ReferenceScale& scale, const SlotIndex& slots) {
    if (c.size() != slots.count()) throw ValidationError("covector does not match the slot index");
    ArgumentPartition parts;
    for (std::size_t i = 0; i < scale.criterion_count(); ++i) {
        if (slots.slots_on(i) > 1) {
            throw ValidationError("argument partition needs binary scales (criterion " + std::to_string(i + 1) + ")");
        }
        long long coeff = slots.slots_on(i) == 1 ? c.coeffs[slots.first(i)] : 0;
        if (coeff > 0) {
            parts.positive.push_back(i);
        } else if (coeff < 0) {
            parts.negative.push_back(i);
        } else {
            parts.neutral.push_back(i);
        }
    }
    return parts;
}

std::string dump_covector(const Covector& c, const Instance& instance,
                          const ReferenceScale& scale, const SlotIndex& slots) {
    std::string out;
    for (std::size_t i = 0; i < scale.criterion_count(); ++i) {
        out += instance.criteria[i].name + ":";
        if (slots.slots_on(i) == 0) {
            out += " (no scale steps)";
        }
        for (std::size_t k = 0; k < slots.slots_on(i); ++k) {
            std::size_t s = slots.first(i) + k;
            const auto& levels = scale.levels[i];
            long long v = c.coeffs[s];
            out += " [" + instance.criteria[i].value_text(levels[k]) + " .. " +
                   instance.criteria[i].value_text(levels[k + 1]) + "]=" +
                   (v > 0 ? "+" : "") + std::to_string(v);
        }
        out += "\n";
    }
    return out;
}

}  // namespace prefswap
