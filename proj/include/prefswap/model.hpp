#pragma once

#include "prefswap/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prefswap {

// Raised for structurally invalid instances (unknown criterion, value outside
// a label domain, wildcard mismatch between the two sides of a statement, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DomainKind { Numeric, Labels };

// One evaluation criterion. Label domains are given in ascending order and
// mapped to 0, 1, 2, ... so every value is handled as an exact rational.
struct Criterion {
    std::string name;
    DomainKind kind = DomainKind::Numeric;
    std::vector<std::string> labels;  // ascending, Labels only

    // Display form of a value on this criterion ("gym", "-45", "3/2").
    std::string value_text(const Rational& value) const;

    // Maps a label to its rank. Throws ValidationError on unknown labels.
    Rational label_value(const std::string& label) const;
};

// A vector of per-criterion values. An empty optional is the wildcard: the
// criterion is left unspecified and must match on both sides of a statement.
struct Alternative {
    std::vector<std::optional<Rational>> values;

    Alternative() = default;
    explicit Alternative(std::vector<std::optional<Rational>> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    bool has_wildcard() const;
    bool operator==(const Alternative& other) const = default;
};

// "better is at least as good as worse". Wildcard positions must coincide
// on both sides; the statement then quantifies over the shared value.
struct PreferenceStatement {
    Alternative better;
    Alternative worse;
};

struct Instance {
    std::vector<Criterion> criteria;
    std::vector<std::pair<std::string, Alternative>> alternatives;  // file order
    std::vector<PreferenceStatement> statements;
    std::vector<std::pair<std::string, std::string>> statement_names;  // parallel to statements; empty strings for inline sides

    std::size_t criterion_count() const { return criteria.size(); }
    int criterion_index(const std::string& name) const;  // -1 when absent
    const Alternative* find_alternative(const std::string& name) const;

    // Structural invariants: unique names, consistent arity, label values in
    // range, wildcard positions matching within each statement.
    void validate() const;

    std::string alternative_text(const Alternative& a) const;
    std::string statement_text(std::size_t index) const;
};

// Per-criterion sorted distinct values used by the preference statements.
struct ReferenceScale {
    std::vector<std::vector<Rational>> levels;  // ascending per criterion

    std::size_t criterion_count() const { return levels.size(); }
    std::size_t level_count(std::size_t i) const { return levels[i].size(); }
    bool contains(std::size_t i, const Rational& v) const;
    // Index of v in levels[i], or -1.
    int level_index(std::size_t i, const Rational& v) const;
};

// Collects the values referenced by the statements of the instance,
// criterion by criterion, sorted ascending without duplicates.
ReferenceScale build_reference_scales(const Instance& instance);

// Pareto dominance: x >= y on every criterion. Reflexive. Both alternatives
// must be fully specified; wildcards raise ValidationError.
bool dominates(const Alternative& x, const Alternative& y);

}  // namespace prefswap
