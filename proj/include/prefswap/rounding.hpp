#pragma once

#include "prefswap/model.hpp"

#include <stdexcept>

namespace prefswap {

// A candidate preference question "is x necessarily at least as good as y?".
// Both sides must be fully specified; wildcards are rejected.
struct Query {
    Alternative x;
    Alternative y;
};

class UnboundedQueryError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Why a query escapes the reach of the preference statements.
enum class UnboundedReason {
    None,          // bounded
    OutsideScale,  // y_i climbs above the top level or x_i falls below the bottom one
    EmptyScale,    // y_i > x_i on a criterion no statement ever touched
};

struct Boundedness {
    bool bounded = true;
    int criterion = -1;  // first offending criterion when unbounded
    UnboundedReason reason = UnboundedReason::None;
};

// A query is unbounded when some criterion has y_i > x_i and the pair escapes
// the reference scale there: y_i above the highest level, x_i below the
// lowest, or no levels at all. Unbounded queries are never necessary, and
// their covector is undefined.
Boundedness classify_boundedness(const Query& query, const ReferenceScale& scale);
bool is_bounded(const Query& query, const ReferenceScale& scale);

// Componentwise projection of a bounded query onto the reference scale.
// Wildcard pairs mark criteria the query settles by itself (x_i >= y_i with
// no scale level in between).
struct RoundedQuery {
    Alternative x_low;   // x rounded down; dominated by x
    Alternative y_high;  // y rounded up; dominates y
};

// For each criterion: if x_i >= y_i and no level lies in [y_i, x_i], the pair
// becomes a wildcard. Otherwise x_i is rounded down to the nearest level and
// y_i up to the nearest level. Throws UnboundedQueryError on unbounded input
// and ValidationError on wildcards.
RoundedQuery round_query(const Query& query, const ReferenceScale& scale);

// Role of one criterion in a comparison when its scale has exactly two
// levels, bottom < top.
enum class ArgumentStrength {
    StrongForX,  // x_i >= top and y_i <= bottom: a full argument for x
    WeakForX,    // x_i > y_i but the pair does not span the whole scale
    Neutral,     // x_i == y_i
    WeakForY,    // y_i > x_i inside the scale
    StrongForY,  // y_i > x_i escaping the scale: x can never catch up
};

ArgumentStrength classify_argument_binary(const Rational& x_i, const Rational& y_i,
                                          const Rational& bottom, const Rational& top);

// Scale enriched with the query's own values on every criterion. Queries
// whose sides live on the extended scale need no rounding at all.
ReferenceScale extend_with_query(const ReferenceScale& scale, const Query& query);

}  // namespace prefswap
