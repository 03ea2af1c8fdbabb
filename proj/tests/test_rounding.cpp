#include "prefswap/rounding.hpp"

#include <doctest.h>

#include "support/helpers.hpp"

using namespace prefswap;
using namespace testsupport;

namespace {

struct OfficeFixture {
    Instance instance = office_instance();
    ReferenceScale scale = build_reference_scales(instance);
    // Running example: x beats y on Size and Cost, loses Commute and Gym.
    Query query{plain_alt({-45, 0, 450, -5000}), plain_alt({-15, 1, 180, -12500})};
};

}  // namespace

TEST_CASE("office query is bounded") {
    OfficeFixture f;
    Boundedness b = classify_boundedness(f.query, f.scale);
    CHECK(b.bounded);
    CHECK(b.criterion == -1);
    CHECK(b.reason == UnboundedReason::None);
    CHECK(is_bounded(f.query, f.scale));
}

TEST_CASE("a defect above the top level is unbounded") {
    OfficeFixture f;
    // y offers a cost above anything the statements ever mention.
    Query q{plain_alt({-15, 0, 400, -12000}), plain_alt({-15, 0, 400, -4000})};
    Boundedness b = classify_boundedness(q, f.scale);
    CHECK_FALSE(b.bounded);
    CHECK(b.criterion == static_cast<int>(kCost));
    CHECK(b.reason == UnboundedReason::OutsideScale);
}

TEST_CASE("a defect below the bottom level is unbounded") {
    OfficeFixture f;
    // x commutes worse than any stated level while y improves on it.
    Query q{plain_alt({-60, 1, 400, -5000}), plain_alt({-55, 1, 400, -5000})};
    Boundedness b = classify_boundedness(q, f.scale);
    CHECK_FALSE(b.bounded);
    CHECK(b.criterion == static_cast<int>(kCommute));
    CHECK(b.reason == UnboundedReason::OutsideScale);
}

TEST_CASE("a defect on an untouched criterion is flagged as empty scale") {
    Instance instance;
    instance.criteria = {{"a", DomainKind::Numeric, {}}, {"b", DomainKind::Numeric, {}}};
    instance.statements.push_back({Alternative{{Rational(2), std::nullopt}},
                                   Alternative{{Rational(0), std::nullopt}}});
    instance.statement_names.emplace_back("", "");
    ReferenceScale scale = build_reference_scales(instance);

    Query q{plain_alt({0, 0}), plain_alt({2, 1})};
    Boundedness b = classify_boundedness(q, scale);
    CHECK_FALSE(b.bounded);
    CHECK(b.criterion == 1);
    CHECK(b.reason == UnboundedReason::EmptyScale);

    // Same criterion but no defect there: bounded.
    Query ok{plain_alt({0, 5}), plain_alt({2, 5})};
    CHECK(classify_boundedness(ok, scale).bounded);
}

TEST_CASE("equal sides are always bounded") {
    OfficeFixture f;
    Query q{f.query.x, f.query.x};
    CHECK(is_bounded(q, f.scale));
}

TEST_CASE("boundedness rejects wildcards") {
    OfficeFixture f;
    Query q = f.query;
    q.x.values[0] = std::nullopt;
    CHECK_THROWS_AS(classify_boundedness(q, f.scale), ValidationError);
}

TEST_CASE("rounding the office query lands on the adjacent levels") {
    OfficeFixture f;
    RoundedQuery r = round_query(f.query, f.scale);
    CHECK(r.x_low == plain_alt({-50, 0, 400, -5000}));
    CHECK(r.y_high == plain_alt({-15, 1, 200, -12000}));
}

TEST_CASE("rounding marks settled criteria as wildcard pairs") {
    OfficeFixture f;
    // Size 300 vs 250: x already wins and no stated level separates them.
    Query q{plain_alt({-45, 0, 300, -5000}), plain_alt({-15, 1, 250, -12500})};
    RoundedQuery r = round_query(q, f.scale);
    CHECK_FALSE(r.x_low.values[kSize].has_value());
    CHECK_FALSE(r.y_high.values[kSize].has_value());
    CHECK(r.x_low.values[kCommute] == Rational(-50));
    CHECK(r.y_high.values[kCommute] == Rational(-15));
}

TEST_CASE("a defect inside a gap rounds outward across the gap") {
    OfficeFixture f;
    Query q{plain_alt({-15, 1, 250, -5000}), plain_alt({-15, 1, 350, -5000})};
    REQUIRE(is_bounded(q, f.scale));
    RoundedQuery r = round_query(q, f.scale);
    CHECK(r.x_low.values[kSize] == Rational(200));
    CHECK(r.y_high.values[kSize] == Rational(400));
}

TEST_CASE("queries on scale values round to themselves") {
    OfficeFixture f;
    Query q{*f.instance.find_alternative("e1"), *f.instance.find_alternative("e2")};
    RoundedQuery r = round_query(q, f.scale);
    CHECK(r.x_low == q.x);
    CHECK(r.y_high == q.y);
}

TEST_CASE("rounding is idempotent") {
    OfficeFixture f;
    RoundedQuery once = round_query(f.query, f.scale);
    // Re-round the non-wildcard positions: nothing may move again.
    Query again{once.x_low, once.y_high};
    REQUIRE_FALSE(again.x.has_wildcard());
    RoundedQuery twice = round_query(again, f.scale);
    CHECK(twice.x_low == once.x_low);
    CHECK(twice.y_high == once.y_high);
}

TEST_CASE("rounding refuses unbounded queries") {
    OfficeFixture f;
    Query q{plain_alt({-15, 0, 400, -12000}), plain_alt({-15, 0, 400, -4000})};
    CHECK_THROWS_AS(round_query(q, f.scale), UnboundedQueryError);
}

TEST_CASE("binary argument classification covers all five roles") {
    const Rational bottom(-50), top(-15);
    CHECK(classify_argument_binary(Rational(-15), Rational(-50), bottom, top) == ArgumentStrength::StrongForX);
    CHECK(classify_argument_binary(Rational(-10), Rational(-55), bottom, top) == ArgumentStrength::StrongForX);
    CHECK(classify_argument_binary(Rational(-20), Rational(-30), bottom, top) == ArgumentStrength::WeakForX);
    CHECK(classify_argument_binary(Rational(-30), Rational(-30), bottom, top) == ArgumentStrength::Neutral);
    CHECK(classify_argument_binary(Rational(-45), Rational(-15), bottom, top) == ArgumentStrength::WeakForY);
    CHECK(classify_argument_binary(Rational(-50), Rational(-10), bottom, top) == ArgumentStrength::StrongForY);
    CHECK(classify_argument_binary(Rational(-55), Rational(-45), bottom, top) == ArgumentStrength::StrongForY);
    CHECK_THROWS_AS(classify_argument_binary(Rational(0), Rational(0), top, bottom), ValidationError);
}

TEST_CASE("extend_with_query inserts the query values sorted") {
    OfficeFixture f;
    ReferenceScale ext = extend_with_query(f.scale, f.query);
    CHECK(ext.levels[kCommute] == std::vector<Rational>{Rational(-50), Rational(-45), Rational(-15)});
    CHECK(ext.levels[kGym] == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(ext.levels[kSize] == std::vector<Rational>{Rational(180), Rational(200), Rational(400), Rational(450)});
    CHECK(ext.levels[kCost] == std::vector<Rational>{Rational(-12500), Rational(-12000), Rational(-5000)});
}
