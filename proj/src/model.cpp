#include "prefswap/model.hpp"

#include <algorithm>
#include <set>

namespace prefswap {

std::string Criterion::value_text(const Rational& value) const {
    if (kind == DomainKind::Labels) {
        if (denominator(value) == 1 && value >= 0 && value < static_cast<long>(labels.size())) {
            return labels[static_cast<std::size_t>(numerator(value).convert_to<long>())];
        }
        return to_fraction_string(value);  // off-domain rank, shown raw
    }
    return to_fraction_string(value);
}

Rational Criterion::label_value(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw ValidationError("value '" + label + "' is not in the domain of criterion '" + name + "'");
    }
    return Rational(it - labels.begin());
}

bool Alternative::has_wildcard() const {
    return std::any_of(values.begin(), values.end(), [](const auto& v) { return !v.has_value(); });
}

int Instance::criterion_index(const std::string& name) const {
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (criteria[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

const Alternative* Instance::find_alternative(const std::string& name) const {
    for (const auto& [alt_name, alt] : alternatives) {
        if (alt_name == name) return &alt;
    }
    return nullptr;
}

void Instance::validate() const {
    if (criteria.empty()) throw ValidationError("instance declares no criteria");

    std::set<std::string> names;
    for (const auto& c : criteria) {
        if (c.name.empty()) throw ValidationError("criterion with empty name");
        if (!names.insert(c.name).second) throw ValidationError("duplicate criterion name '" + c.name + "'");
        if (c.kind == DomainKind::Labels) {
            if (c.labels.size() < 2) {
                throw ValidationError("criterion '" + c.name + "' needs at least two labels");
            }
            std::set<std::string> distinct(c.labels.begin(), c.labels.end());
            if (distinct.size() != c.labels.size()) {
                throw ValidationError("criterion '" + c.name + "' has duplicate labels");
            }
        }
    }

    const std::size_t n = criteria.size();
    auto check_alternative = [&](const Alternative& a, const std::string& what) {
        if (a.size() != n) {
            throw ValidationError(what + " has " + std::to_string(a.size()) + " values, expected " + std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!a.values[i]) continue;
            if (criteria[i].kind == DomainKind::Labels) {
                const Rational& v = *a.values[i];
                if (denominator(v) != 1 || v < 0 || v >= static_cast<long>(criteria[i].labels.size())) {
                    throw ValidationError(what + ": value outside the domain of criterion '" + criteria[i].name + "'");
                }
            }
        }
    };

    std::set<std::string> alt_names;
    for (const auto& [name, alt] : alternatives) {
        if (!alt_names.insert(name).second) throw ValidationError("duplicate alternative name '" + name + "'");
        check_alternative(alt, "alternative '" + name + "'");
    }
    for (std::size_t s = 0; s < statements.size(); ++s) {
        const auto& st = statements[s];
        check_alternative(st.better, "statement " + std::to_string(s + 1) + " (better side)");
        check_alternative(st.worse, "statement " + std::to_string(s + 1) + " (worse side)");
        for (std::size_t i = 0; i < n; ++i) {
            if (st.better.values[i].has_value() != st.worse.values[i].has_value()) {
                throw ValidationError("statement " + std::to_string(s + 1) +
                                      ": wildcard on criterion '" + criteria[i].name +
                                      "' must appear on both sides");
            }
        }
    }
}

std::string Instance::alternative_text(const Alternative& a) const {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += a.values[i] ? criteria[i].value_text(*a.values[i]) : "*";
    }
    return out + ")";
}

std::string Instance::statement_text(std::size_t index) const {
    const auto& st = statements[index];
    std::string better = statement_names[index].first.empty() ? alternative_text(st.better) : statement_names[index].first;
    std::string worse = statement_names[index].second.empty() ? alternative_text(st.worse) : statement_names[index].second;
    return better + " >= " + worse;
}

bool ReferenceScale::contains(std::size_t i, const Rational& v) const {
    return std::binary_search(levels[i].begin(), levels[i].end(), v);
}

int ReferenceScale::level_index(std::size_t i, const Rational& v) const {
    auto it = std::lower_bound(levels[i].begin(), levels[i].end(), v);
    if (it == levels[i].end() || *it != v) return -1;
    return static_cast<int>(it - levels[i].begin());
}

ReferenceScale build_reference_scales(const Instance& instance) {
    ReferenceScale scale;
    scale.levels.resize(instance.criterion_count());
    for (std::size_t i = 0; i < instance.criterion_count(); ++i) {
        std::set<Rational> values;
        for (const auto& st : instance.statements) {
            if (st.better.values[i]) values.insert(*st.better.values[i]);
            if (st.worse.values[i]) values.insert(*st.worse.values[i]);
        }
        scale.levels[i].assign(values.begin(), values.end());
    }
    return scale;
}

bool dominates(const Alternative& x, const Alternative& y) {
    if (x.size() != y.size()) throw ValidationError("alternatives with different criterion counts");
    if (x.has_wildcard() || y.has_wildcard()) throw ValidationError("dominance is undefined on wildcards");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (*x.values[i] < *y.values[i]) return false;
    }
    return true;
}

}  // namespace prefswap
