#pragma once

#include "prefswap/explain.hpp"
#include "prefswap/instance_io.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport {

using namespace prefswap;

inline Instance office_instance() {
    return parse_instance_file(std::string(PREFSWAP_DATA_DIR) + "/office.json");
}

// Office criterion indices, in file order.
constexpr std::size_t kCommute = 0;
constexpr std::size_t kGym = 1;
constexpr std::size_t kSize = 2;
constexpr std::size_t kCost = 3;

inline Alternative plain_alt(const std::vector<long>& values) {
    Alternative a;
    a.values.reserve(values.size());
    for (long v : values) a.values.emplace_back(Rational(v));
    return a;
}

inline Alternative rat_alt(const std::vector<Rational>& values) {
    Alternative a;
    a.values.reserve(values.size());
    for (const auto& v : values) a.values.emplace_back(v);
    return a;
}

// Independent necessity decision working on the scale extended with the
// query's own values: no boundedness test and no rounding, just cone
// membership of the raw comparison.
inline bool extended_scale_necessary(const Instance& instance, const Query& query) {
    ReferenceScale base = build_reference_scales(instance);
    ReferenceScale ext = extend_with_query(base, query);
    SlotIndex slots(ext);
    ConeSystem system = ConeSystem::of(instance, ext, slots);
    Covector target = covector_of(query.x, query.y, ext, slots);
    return cone_membership(system, target).has_value();
}

// Structural soundness of an explanation: endpoints, step chaining, each
// step individually necessary, kinds consistent with dominance, and the
// step covectors summing to the query covector.
inline void require_valid_chain(const NecessityEngine& engine, const Query& query,
                                const Explanation& explanation) {
    auto fail = [](const std::string& what) { throw std::logic_error("invalid chain: " + what); };

    if (explanation.steps.empty()) {
        if (!(query.x == query.y)) fail("empty sequence for distinct endpoints");
        return;
    }
    if (!(explanation.steps.front().from == query.x)) fail("does not start at x");
    if (!(explanation.steps.back().to == query.y)) fail("does not end at y");
    for (std::size_t s = 0; s + 1 < explanation.steps.size(); ++s) {
        if (!(explanation.steps[s].to == explanation.steps[s + 1].from)) fail("broken linkage");
    }

    Covector sum(engine.slots().count());
    for (const auto& step : explanation.steps) {
        if (step.from == step.to) fail("degenerate step");
        Query edge{step.from, step.to};
        if (!engine.is_necessary(edge)) fail("step is not necessary");
        const bool dom = dominates(step.from, step.to);
        if (dom != (step.kind == StepKind::Dominance)) fail("step kind mismatch");
        sum += covector_of_query(edge, engine.scale(), engine.slots());
    }
    Covector whole = covector_of_query(query, engine.scale(), engine.slots());
    if (!(sum == whole)) fail("step covectors do not sum to the query covector");
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
    bool chance(int percent) { return below(100) < percent; }
};

// Small instance with numeric criteria, per-criterion value pools of at most
// three levels and up to four statements (optionally with wildcard pairs).
// Keeps the slot count at 8 or below.
inline Instance random_small_instance(Rng& rng) {
    Instance instance;
    const int n = 2 + rng.below(3);
    std::vector<std::vector<long>> pools(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        instance.criteria.push_back({"k" + std::to_string(i + 1), DomainKind::Numeric, {}});
        const int size = 1 + rng.below(3);
        std::vector<long> pool;
        long v = rng.below(3);
        for (int k = 0; k < size; ++k) {
            pool.push_back(v);
            v += 1 + rng.below(2);
        }
        pools[static_cast<std::size_t>(i)] = pool;
    }
    const int statements = 1 + rng.below(4);
    for (int s = 0; s < statements; ++s) {
        Alternative better, worse;
        for (int i = 0; i < n; ++i) {
            const auto& pool = pools[static_cast<std::size_t>(i)];
            if (rng.chance(20)) {
                better.values.emplace_back(std::nullopt);
                worse.values.emplace_back(std::nullopt);
            } else {
                better.values.emplace_back(Rational(pool[static_cast<std::size_t>(rng.below(static_cast<int>(pool.size())))]));
                worse.values.emplace_back(Rational(pool[static_cast<std::size_t>(rng.below(static_cast<int>(pool.size())))]));
            }
        }
        instance.statements.push_back({std::move(better), std::move(worse)});
        instance.statement_names.emplace_back("", "");
    }
    instance.validate();
    return instance;
}

// Query around the pools of an instance: on-scale values, gaps and escapes.
inline Query random_query(Rng& rng, const Instance& instance) {
    ReferenceScale scale = build_reference_scales(instance);
    Query q;
    for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
        const auto& levels = scale.levels[i];
        auto pick = [&]() -> Rational {
            if (levels.empty()) return Rational(rng.below(5));
            const int which = rng.below(100);
            if (which < 55) return levels[static_cast<std::size_t>(rng.below(static_cast<int>(levels.size())))];
            if (which < 70 && levels.size() >= 2) {
                const std::size_t k = static_cast<std::size_t>(rng.below(static_cast<int>(levels.size() - 1)));
                return (levels[k] + levels[k + 1]) / 2;  // inside a gap
            }
            if (which < 85) return levels.front() - 1;
            return levels.back() + 1;
        };
        q.x.values.emplace_back(pick());
        q.y.values.emplace_back(pick());
    }
    return q;
}

// Binary instance whose statements are all elementary compensations: the
// better side tops one criterion and bottoms another, wildcards elsewhere.
inline Instance random_binary_swap_instance(Rng& rng, int n, int max_statements) {
    Instance instance;
    std::vector<long> bottom(static_cast<std::size_t>(n)), top(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        bottom[static_cast<std::size_t>(i)] = rng.below(4);
        top[static_cast<std::size_t>(i)] = bottom[static_cast<std::size_t>(i)] + 1 + rng.below(3);
        instance.criteria.push_back({"k" + std::to_string(i + 1), DomainKind::Numeric, {}});
    }
    const int statements = 1 + rng.below(max_statements);
    for (int s = 0; s < statements; ++s) {
        const int i = rng.below(n);
        int j = rng.below(n - 1);
        if (j >= i) ++j;
        Alternative better, worse;
        for (int k = 0; k < n; ++k) {
            if (k == i) {
                better.values.emplace_back(Rational(top[static_cast<std::size_t>(k)]));
                worse.values.emplace_back(Rational(bottom[static_cast<std::size_t>(k)]));
            } else if (k == j) {
                better.values.emplace_back(Rational(bottom[static_cast<std::size_t>(k)]));
                worse.values.emplace_back(Rational(top[static_cast<std::size_t>(k)]));
            } else {
                better.values.emplace_back(std::nullopt);
                worse.values.emplace_back(std::nullopt);
            }
        }
        instance.statements.push_back({std::move(better), std::move(worse)});
        instance.statement_names.emplace_back("", "");
    }
    instance.validate();
    return instance;
}

// Query over a binary instance: mostly scale endpoints, sometimes the gap
// middle or a value just outside.
inline Query random_binary_query(Rng& rng, const Instance& instance) {
    ReferenceScale scale = build_reference_scales(instance);
    Query q;
    for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
        const auto& levels = scale.levels[i];
        auto pick = [&]() -> Rational {
            if (levels.empty()) return Rational(rng.below(3));
            const int which = rng.below(100);
            if (which < 40) return levels.front();
            if (which < 80) return levels.back();
            if (which < 88) return (levels.front() + levels.back()) / 2;
            if (which < 94) return levels.front() - 1;
            return levels.back() + 1;
        };
        q.x.values.emplace_back(pick());
        q.y.values.emplace_back(pick());
    }
    return q;
}

}  // namespace testsupport
