#include "prefswap/rounding.hpp"

#include <algorithm>
#include <set>

namespace prefswap {

namespace {

void require_plain(const Query& query) {
    if (query.x.size() != query.y.size()) throw ValidationError("query sides have different criterion counts");
    if (query.x.has_wildcard() || query.y.has_wildcard()) throw ValidationError("queries must not contain wildcards");
}

}  // namespace

Boundedness classify_boundedness(const Query& query, const ReferenceScale& scale) {
    require_plain(query);
    for (std::size_t i = 0; i < query.x.size(); ++i) {
        const Rational& x = *query.x.values[i];
        const Rational& y = *query.y.values[i];
        if (y <= x) continue;
        const auto& levels = scale.levels[i];
        if (levels.empty()) return {false, static_cast<int>(i), UnboundedReason::EmptyScale};
        if (y > levels.back() || x < levels.front()) {
            return {false, static_cast<int>(i), UnboundedReason::OutsideScale};
        }
    }
    return {};
}

bool is_bounded(const Query& query, const ReferenceScale& scale) {
    return classify_boundedness(query, scale).bounded;
}

RoundedQuery round_query(const Query& query, const ReferenceScale& scale) {
    Boundedness b = classify_boundedness(query, scale);
    if (!b.bounded) throw UnboundedQueryError("round_query called on an unbounded query");

    RoundedQuery rounded;
    rounded.x_low.values.resize(query.x.size());
    rounded.y_high.values.resize(query.x.size());
    for (std::size_t i = 0; i < query.x.size(); ++i) {
        const Rational& x = *query.x.values[i];
        const Rational& y = *query.y.values[i];
        const auto& levels = scale.levels[i];

        if (x >= y) {
            // Does any level fall inside [y, x]?
            auto it = std::lower_bound(levels.begin(), levels.end(), y);
            if (it == levels.end() || *it > x) continue;  // wildcard pair
        }
        // Round x down and y up onto the scale. Boundedness guarantees both
        // neighbours exist whenever y > x; when x >= y the level found above
        // serves as a bound in both directions.
        auto up = std::lower_bound(levels.begin(), levels.end(), y);
        auto down = std::upper_bound(levels.begin(), levels.end(), x);
        rounded.y_high.values[i] = *up;
        rounded.x_low.values[i] = *std::prev(down);
    }
    return rounded;
}

ArgumentStrength classify_argument_binary(const Rational& x_i, const Rational& y_i,
                                          const Rational& bottom, const Rational& top) {
    if (bottom >= top) throw ValidationError("binary scale needs bottom < top");
    if (x_i == y_i) return ArgumentStrength::Neutral;
    if (x_i > y_i) {
        if (x_i >= top && bottom >= y_i) return ArgumentStrength::StrongForX;
        return ArgumentStrength::WeakForX;
    }
    if (y_i > top || x_i < bottom) return ArgumentStrength::StrongForY;
    return ArgumentStrength::WeakForY;
}

ReferenceScale extend_with_query(const ReferenceScale& scale, const Query& query) {
    if (query.x.size() != scale.criterion_count() || query.y.size() != scale.criterion_count()) {
        throw ValidationError("query arity does not match the scale");
    }
    if (query.x.has_wildcard() || query.y.has_wildcard()) {
        throw ValidationError("queries must not contain wildcards");
    }
    ReferenceScale extended;
    extended.levels.resize(scale.criterion_count());
    for (std::size_t i = 0; i < scale.criterion_count(); ++i) {
        std::set<Rational> values(scale.levels[i].begin(), scale.levels[i].end());
        values.insert(*query.x.values[i]);
        values.insert(*query.y.values[i]);
        extended.levels[i].assign(values.begin(), values.end());
    }
    return extended;
}

}  // namespace prefswap
