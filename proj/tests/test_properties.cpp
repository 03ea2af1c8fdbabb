#include <doctest.h>

#include <algorithm>

#include "support/helpers.hpp"

using namespace prefswap;
using namespace testsupport;

namespace {

Alternative sample_on_scale(Rng& rng, const ReferenceScale& scale) {
    Alternative a;
    for (std::size_t i = 0; i < scale.criterion_count(); ++i) {
        const auto& levels = scale.levels[i];
        if (levels.empty()) {
            a.values.emplace_back(Rational(0));
        } else {
            a.values.emplace_back(levels[static_cast<std::size_t>(rng.below(static_cast<int>(levels.size())))]);
        }
    }
    return a;
}

}  // namespace

TEST_CASE("comparisons compose along any intermediate alternative") {
    Rng rng(101);
    for (int round = 0; round < 200; ++round) {
        Instance instance = random_small_instance(rng);
        ReferenceScale scale = build_reference_scales(instance);
        Query q = random_query(rng, instance);
        ReferenceScale ext = extend_with_query(scale, q);
        SlotIndex slots(ext);
        Alternative a = sample_on_scale(rng, ext);
        Alternative b = sample_on_scale(rng, ext);
        Alternative c = sample_on_scale(rng, ext);
        Covector direct = covector_of(a, c, ext, slots);
        Covector via = covector_of(a, b, ext, slots) + covector_of(b, c, ext, slots);
        REQUIRE(direct == via);
    }
}

TEST_CASE("utility differences are read off the covector") {
    Rng rng(102);
    for (int round = 0; round < 150; ++round) {
        Instance instance = random_small_instance(rng);
        ReferenceScale scale = build_reference_scales(instance);
        Query q = random_query(rng, instance);
        ReferenceScale ext = extend_with_query(scale, q);
        SlotIndex slots(ext);

        // A random monotone additive model on the extended scale.
        std::vector<long long> w(slots.count());
        for (auto& inc : w) inc = rng.below(10);
        auto utility = [&](const Alternative& alt) {
            long long total = 0;
            for (std::size_t s = 0; s < slots.count(); ++s) {
                auto [i, k] = slots.slot(s);
                if (*alt.values[i] >= ext.levels[i][k + 1]) total += w[s];
            }
            return total;
        };

        Alternative a = sample_on_scale(rng, ext);
        Alternative b = sample_on_scale(rng, ext);
        Covector cov = covector_of(a, b, ext, slots);
        long long dot = 0;
        for (std::size_t s = 0; s < slots.count(); ++s) dot += cov.coeffs[s] * w[s];
        REQUIRE(utility(a) - utility(b) == dot);
    }
}

TEST_CASE("direct query covectors match rounding followed by projection") {
    Rng rng(103);
    int bounded_seen = 0;
    for (int round = 0; round < 400; ++round) {
        Instance instance = random_small_instance(rng);
        ReferenceScale scale = build_reference_scales(instance);
        SlotIndex slots(scale);
        Query q = random_query(rng, instance);
        if (!is_bounded(q, scale)) {
            CHECK_THROWS_AS(covector_of_query(q, scale, slots), UnboundedQueryError);
            continue;
        }
        ++bounded_seen;
        RoundedQuery r = round_query(q, scale);
        REQUIRE(covector_of_query(q, scale, slots) == covector_of(r.x_low, r.y_high, scale, slots));
    }
    CHECK(bounded_seen > 100);
}

TEST_CASE("rounding is idempotent and brackets the query") {
    Rng rng(104);
    int rounded_seen = 0;
    for (int round = 0; round < 300; ++round) {
        Instance instance = random_small_instance(rng);
        ReferenceScale scale = build_reference_scales(instance);
        Query q = random_query(rng, instance);
        if (!is_bounded(q, scale)) continue;
        ++rounded_seen;
        RoundedQuery r = round_query(q, scale);
        for (std::size_t i = 0; i < q.x.values.size(); ++i) {
            const auto& lo = r.x_low.values[i];
            const auto& hi = r.y_high.values[i];
            REQUIRE(lo.has_value() == hi.has_value());
            if (!lo.has_value()) {
                // settled: x already covers y with no level in between
                REQUIRE(*q.x.values[i] >= *q.y.values[i]);
                continue;
            }
            REQUIRE(*lo <= *q.x.values[i]);
            REQUIRE(*hi >= *q.y.values[i]);
            REQUIRE(scale.contains(i, *lo));
            REQUIRE(scale.contains(i, *hi));
        }

        // Rounding again moves nothing.
        if (!r.x_low.has_wildcard()) {
            RoundedQuery twice = round_query({r.x_low, r.y_high}, scale);
            REQUIRE(twice.x_low == r.x_low);
            REQUIRE(twice.y_high == r.y_high);
        }
    }
    CHECK(rounded_seen > 50);
}

TEST_CASE("necessity agrees with the augmented-scale formulation") {
    Rng rng(105);
    int necessary_seen = 0;
    for (int round = 0; round < 120; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        for (int k = 0; k < 3; ++k) {
            Query q = random_query(rng, instance);
            const bool direct = engine.is_necessary(q);
            const bool via_extension = extended_scale_necessary(instance, q);
            REQUIRE(direct == via_extension);
            if (direct) ++necessary_seen;
        }
    }
    CHECK(necessary_seen > 30);
}

TEST_CASE("dominating pairs are always necessary") {
    Rng rng(106);
    for (int round = 0; round < 100; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        Query q = random_query(rng, instance);
        // Force dominance by lifting x over y.
        for (std::size_t i = 0; i < q.x.values.size(); ++i) {
            if (*q.x.values[i] < *q.y.values[i]) q.x.values[i] = q.y.values[i];
        }
        REQUIRE(dominates(q.x, q.y));
        REQUIRE(engine.is_necessary(q));
    }
}

TEST_CASE("stated preferences are always necessary") {
    Rng rng(107);
    for (int round = 0; round < 60; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        for (const auto& st : instance.statements) {
            // Instantiate shared wildcards with a common value.
            Query q{st.better, st.worse};
            for (std::size_t i = 0; i < q.x.values.size(); ++i) {
                if (!q.x.values[i].has_value()) {
                    Rational v(rng.below(7));
                    q.x.values[i] = v;
                    q.y.values[i] = v;
                }
            }
            REQUIRE(engine.is_necessary(q));
        }
    }
}

TEST_CASE("necessity is transitive on sampled witnesses") {
    Rng rng(108);
    int chained = 0;
    for (int round = 0; round < 500 && chained < 40; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        ReferenceScale ext = extend_with_query(engine.scale(), random_query(rng, instance));
        Alternative a = sample_on_scale(rng, ext);
        Alternative b = sample_on_scale(rng, ext);
        // c is a weakened copy of b, so b over c always holds.
        Alternative c = b;
        for (auto& v : c.values) *v -= rng.below(3);
        REQUIRE(engine.is_necessary({b, c}));
        if (engine.is_necessary({a, b})) {
            REQUIRE(engine.is_necessary({a, c}));
            ++chained;
        }
    }
    CHECK(chained >= 40);
}

TEST_CASE("certificates drawn from random instances verify exactly") {
    Rng rng(109);
    int found = 0;
    for (int round = 0; round < 80; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        Query q = random_query(rng, instance);
        auto result = engine.check(q);
        if (!result.necessary) continue;
        ++found;
        REQUIRE(result.certificate.has_value());
        REQUIRE(result.covector.has_value());
        REQUIRE(verify_certificate(engine.system(), *result.covector, *result.certificate));
        Certificate::IntegerForm form = result.certificate->integer_form();
        REQUIRE(form.r >= 1);
        for (const auto& l : form.ell) REQUIRE(l >= 0);
        for (const auto& m : form.m) REQUIRE(m >= 0);
    }
    CHECK(found > 15);
}

TEST_CASE("brute-force witnesses and sampled counterexamples stay consistent") {
    Rng rng(110);
    int witnesses = 0, refutations = 0;
    for (int round = 0; round < 40; ++round) {
        Instance instance = random_small_instance(rng);
        NecessityEngine engine{instance};
        for (int k = 0; k < 2; ++k) {
            Query q = random_query(rng, instance);
            const bool necessary = engine.is_necessary(q);

            auto ce = sampling_falsifier(q, engine, 3000, 1000 + static_cast<std::uint64_t>(round * 2 + k));
            if (ce.has_value()) {
                REQUIRE_FALSE(necessary);
                REQUIRE(ce->x_utility < ce->y_utility);
                ++refutations;
            }

            if (is_bounded(q, engine.scale())) {
                Covector target = covector_of_query(q, engine.scale(), engine.slots());
                auto witness = ilp_oracle(target, engine.system(), 6);
                if (witness.has_value()) {
                    REQUIRE(necessary);
                    ++witnesses;
                }
            }
        }
    }
    CHECK(witnesses > 10);
    CHECK(refutations > 10);
}

TEST_CASE("binary compensation instances explain every necessary query") {
    Rng rng(111);
    int explained = 0, rejected = 0;
    for (int round = 0; round < 60; ++round) {
        Instance instance = random_binary_swap_instance(rng, 3 + rng.below(3), 6);
        NecessityEngine engine{instance};
        for (int k = 0; k < 6; ++k) {
            Query q = random_binary_query(rng, instance);
            auto matching = find_explanation(q, engine);
            REQUIRE(matching.has_value() == engine.is_necessary(q));
            if (!matching.has_value()) {
                ++rejected;
                continue;
            }
            ++explained;
            const std::size_t n = instance.criterion_count();
            for (SequencePolicy policy : {SequencePolicy::Shortest, SequencePolicy::Reference}) {
                std::vector<std::size_t> order = default_order(*matching);
                Explanation e = render_sequence(q, *matching, policy, order, engine);
                require_valid_chain(engine, q, e);
                REQUIRE(e.swap_count() == matching->pairs.size());
                REQUIRE(e.swap_count() <= n / 2);
                REQUIRE(e.length() <= n / 2 + 2);

                std::reverse(order.begin(), order.end());
                Explanation rev = render_sequence(q, *matching, policy, order, engine);
                require_valid_chain(engine, q, rev);
            }
        }
    }
    CHECK(explained > 40);
    CHECK(rejected > 40);
}

TEST_CASE("breadth-first search agrees with the matching decomposition on binary instances") {
    Rng rng(112);
    int found = 0;
    for (int round = 0; round < 25; ++round) {
        Instance instance = random_binary_swap_instance(rng, 3 + rng.below(2), 5);
        NecessityEngine engine{instance};
        for (int k = 0; k < 4; ++k) {
            Query q = random_binary_query(rng, instance);
            auto matching = find_explanation(q, engine);
            SearchResult r = shortest_explanation_search(q, engine);
            REQUIRE(r.status != SearchStatus::BudgetExceeded);
            REQUIRE((r.status == SearchStatus::Found) == matching.has_value());
            if (!matching.has_value()) continue;
            ++found;
            require_valid_chain(engine, q, *r.explanation);
            // The search can only improve on the rendered sequence.
            Explanation direct = render_sequence(q, *matching, SequencePolicy::Shortest,
                                                 default_order(*matching), engine);
            REQUIRE(r.explanation->length() <= direct.length());
        }
    }
    CHECK(found > 15);
}
