#include "prefswap/instance_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace prefswap {

namespace {

// Minimal DOM filled through the SAX interface so that numeric literals are
// converted straight from their source text to exact rationals. Going through
// double would silently round values such as -0.1.
struct ExactValue {
    enum class Kind { Null, Bool, Number, String, Array, Object };
    Kind kind = Kind::Null;
    bool boolean = false;
    Rational number;
    std::string text;
    std::vector<ExactValue> items;
    std::vector<std::pair<std::string, ExactValue>> members;

    bool is(Kind k) const { return kind == k; }
    const ExactValue* find(const std::string& key) const {
        for (const auto& [k, v] : members) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

class ExactDomBuilder {
public:
    using number_integer_t = nlohmann::json::number_integer_t;
    using number_unsigned_t = nlohmann::json::number_unsigned_t;
    using number_float_t = nlohmann::json::number_float_t;
    using string_t = nlohmann::json::string_t;
    using binary_t = nlohmann::json::binary_t;

    bool null() { return emit(ExactValue{}); }
    bool boolean(bool b) {
        ExactValue v;
        v.kind = ExactValue::Kind::Bool;
        v.boolean = b;
        return emit(std::move(v));
    }
    bool number_integer(number_integer_t i) { return emit_number(Rational(i)); }
    bool number_unsigned(number_unsigned_t u) { return emit_number(Rational(BigInt(u))); }
    bool number_float(number_float_t, const string_t& raw) { return emit_number(parse_rational(raw)); }
    bool string(string_t& s) {
        ExactValue v;
        v.kind = ExactValue::Kind::String;
        v.text = s;
        return emit(std::move(v));
    }
    bool binary(binary_t&) { throw ParseError("binary values are not part of the instance format"); }

    bool start_object(std::size_t) {
        push(ExactValue::Kind::Object);
        return true;
    }
    bool key(string_t& k) {
        pending_key_ = k;
        return true;
    }
    bool end_object() { return pop(); }
    bool start_array(std::size_t) {
        push(ExactValue::Kind::Array);
        return true;
    }
    bool end_array() { return pop(); }

    bool parse_error(std::size_t position, const std::string&, const nlohmann::detail::exception& ex) {
        throw ParseError("invalid JSON at byte " + std::to_string(position) + ": " + ex.what());
    }

    ExactValue take() { return std::move(root_); }

private:
    bool emit_number(Rational r) {
        ExactValue v;
        v.kind = ExactValue::Kind::Number;
        v.number = std::move(r);
        return emit(std::move(v));
    }

    void push(ExactValue::Kind kind) {
        ExactValue v;
        v.kind = kind;
        keys_.push_back(std::exchange(pending_key_, {}));
        stack_.push_back(std::move(v));
    }

    bool pop() {
        ExactValue v = std::move(stack_.back());
        stack_.pop_back();
        pending_key_ = std::move(keys_.back());
        keys_.pop_back();
        return emit(std::move(v));
    }

    bool emit(ExactValue v) {
        if (stack_.empty()) {
            root_ = std::move(v);
            return true;
        }
        ExactValue& top = stack_.back();
        if (top.kind == ExactValue::Kind::Object) {
            top.members.emplace_back(std::exchange(pending_key_, {}), std::move(v));
        } else {
            top.items.push_back(std::move(v));
        }
        return true;
    }

    ExactValue root_;
    std::vector<ExactValue> stack_;
    std::vector<std::string> keys_;
    std::string pending_key_;
};

ExactValue parse_exact_json(const std::string& text) {
    ExactDomBuilder builder;
    nlohmann::json::sax_parse(text, &builder);
    return builder.take();
}

Rational numeric_value(const ExactValue& v, const Criterion& c) {
    if (v.is(ExactValue::Kind::Number)) return v.number;
    if (v.is(ExactValue::Kind::String)) {
        if (c.kind == DomainKind::Labels) return c.label_value(v.text);
        try {
            return parse_rational(v.text);
        } catch (const std::invalid_argument&) {
            throw ValidationError("value '" + v.text + "' is not numeric (criterion '" + c.name + "')");
        }
    }
    throw ParseError("values must be numbers or strings (criterion '" + c.name + "')");
}

Alternative parse_value_array(const ExactValue& arr, const Instance& instance, const std::string& what) {
    if (!arr.is(ExactValue::Kind::Array)) throw ParseError(what + " must be an array of values");
    if (arr.items.size() != instance.criterion_count()) {
        throw ValidationError(what + " has " + std::to_string(arr.items.size()) + " values, expected " +
                              std::to_string(instance.criterion_count()));
    }
    Alternative alt;
    alt.values.reserve(arr.items.size());
    for (std::size_t i = 0; i < arr.items.size(); ++i) {
        const ExactValue& v = arr.items[i];
        if (v.is(ExactValue::Kind::String) && v.text == "*") {
            alt.values.emplace_back(std::nullopt);
        } else {
            alt.values.emplace_back(numeric_value(v, instance.criteria[i]));
        }
    }
    return alt;
}

// Resolves a statement side: name of a declared alternative or inline array.
std::pair<Alternative, std::string> parse_statement_side(const ExactValue& v, const Instance& instance,
                                                         const std::string& what) {
    if (v.is(ExactValue::Kind::String)) {
        const Alternative* alt = instance.find_alternative(v.text);
        if (!alt) throw ValidationError(what + " references unknown alternative '" + v.text + "'");
        return {*alt, v.text};
    }
    return {parse_value_array(v, instance, what), {}};
}

}  // namespace

Instance parse_instance(const std::string& text) {
    ExactValue doc = parse_exact_json(text);
    if (!doc.is(ExactValue::Kind::Object)) throw ParseError("instance document must be a JSON object");

    Instance instance;

    const ExactValue* criteria = doc.find("criteria");
    if (!criteria || !criteria->is(ExactValue::Kind::Array)) {
        throw ParseError("missing 'criteria' array");
    }
    for (const ExactValue& c : criteria->items) {
        if (!c.is(ExactValue::Kind::Object)) throw ParseError("each criterion must be an object");
        Criterion criterion;
        const ExactValue* name = c.find("name");
        if (!name || !name->is(ExactValue::Kind::String)) throw ParseError("criterion without a string 'name'");
        criterion.name = name->text;
        const ExactValue* domain = c.find("domain");
        if (!domain || !domain->is(ExactValue::Kind::Object)) {
            throw ParseError("criterion '" + criterion.name + "' without a 'domain' object");
        }
        const ExactValue* kind = domain->find("kind");
        if (!kind || !kind->is(ExactValue::Kind::String)) {
            throw ParseError("criterion '" + criterion.name + "': domain needs a 'kind'");
        }
        if (kind->text == "numeric") {
            criterion.kind = DomainKind::Numeric;
        } else if (kind->text == "labels") {
            criterion.kind = DomainKind::Labels;
            const ExactValue* labels = domain->find("ascending");
            if (!labels || !labels->is(ExactValue::Kind::Array)) {
                throw ParseError("criterion '" + criterion.name + "': label domain needs an 'ascending' array");
            }
            for (const ExactValue& l : labels->items) {
                if (!l.is(ExactValue::Kind::String)) {
                    throw ParseError("criterion '" + criterion.name + "': labels must be strings");
                }
                criterion.labels.push_back(l.text);
            }
        } else {
            throw ParseError("criterion '" + criterion.name + "': unknown domain kind '" + kind->text + "'");
        }
        instance.criteria.push_back(std::move(criterion));
    }

    if (const ExactValue* alternatives = doc.find("alternatives")) {
        if (!alternatives->is(ExactValue::Kind::Object)) throw ParseError("'alternatives' must be an object");
        for (const auto& [name, value] : alternatives->members) {
            instance.alternatives.emplace_back(name, parse_value_array(value, instance, "alternative '" + name + "'"));
        }
    }

    if (const ExactValue* statements = doc.find("statements")) {
        if (!statements->is(ExactValue::Kind::Array)) throw ParseError("'statements' must be an array");
        for (std::size_t s = 0; s < statements->items.size(); ++s) {
            const ExactValue& st = statements->items[s];
            if (!st.is(ExactValue::Kind::Object)) throw ParseError("each statement must be an object");
            const ExactValue* better = st.find("better");
            const ExactValue* worse = st.find("worse");
            if (!better || !worse) throw ParseError("statement " + std::to_string(s + 1) + " needs 'better' and 'worse'");
            auto [b, b_name] = parse_statement_side(*better, instance, "statement " + std::to_string(s + 1) + " (better)");
            auto [w, w_name] = parse_statement_side(*worse, instance, "statement " + std::to_string(s + 1) + " (worse)");
            instance.statements.push_back({std::move(b), std::move(w)});
            instance.statement_names.emplace_back(std::move(b_name), std::move(w_name));
        }
    }

    instance.validate();
    return instance;
}

Instance parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

namespace {

nlohmann::json value_json(const Criterion& c, const std::optional<Rational>& v) {
    if (!v) return "*";
    if (c.kind == DomainKind::Labels) return c.value_text(*v);
    if (denominator(*v) == 1) {
        const BigInt& num = numerator(*v);
        if (num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max()) {
            return num.convert_to<std::int64_t>();
        }
    }
    return to_fraction_string(*v);
}

nlohmann::json alternative_json(const Instance& instance, const Alternative& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < a.size(); ++i) arr.push_back(value_json(instance.criteria[i], a.values[i]));
    return arr;
}

}  // namespace

std::string dump_instance(const Instance& instance) {
    nlohmann::json doc;
    doc["criteria"] = nlohmann::json::array();
    for (const auto& c : instance.criteria) {
        nlohmann::json domain;
        if (c.kind == DomainKind::Numeric) {
            domain = {{"kind", "numeric"}};
        } else {
            domain = {{"kind", "labels"}, {"ascending", c.labels}};
        }
        doc["criteria"].push_back({{"name", c.name}, {"domain", domain}});
    }
    doc["alternatives"] = nlohmann::json::object();
    for (const auto& [name, alt] : instance.alternatives) {
        doc["alternatives"][name] = alternative_json(instance, alt);
    }
    doc["statements"] = nlohmann::json::array();
    for (std::size_t s = 0; s < instance.statements.size(); ++s) {
        nlohmann::json st;
        const auto& [b_name, w_name] = instance.statement_names[s];
        st["better"] = b_name.empty() ? alternative_json(instance, instance.statements[s].better) : nlohmann::json(b_name);
        st["worse"] = w_name.empty() ? alternative_json(instance, instance.statements[s].worse) : nlohmann::json(w_name);
        doc["statements"].push_back(std::move(st));
    }
    return doc.dump(2) + "\n";
}

Alternative parse_alternative_ref(const Instance& instance, const std::string& text) {
    if (const Alternative* named = instance.find_alternative(text)) return *named;
    // Inline form: comma-separated values in criterion order.
    std::vector<std::string> parts;
    std::string current;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    parts.push_back(current);
    if (parts.size() != instance.criterion_count()) {
        throw ParseError("'" + text + "' is neither a declared alternative nor " +
                         std::to_string(instance.criterion_count()) + " comma-separated values");
    }
    auto trim = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };
    Alternative alt;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::string part = trim(parts[i]);
        const Criterion& c = instance.criteria[i];
        if (part == "*") {
            alt.values.emplace_back(std::nullopt);
        } else if (c.kind == DomainKind::Labels) {
            alt.values.emplace_back(c.label_value(part));
        } else {
            try {
                alt.values.emplace_back(parse_rational(part));
            } catch (const std::invalid_argument&) {
                throw ParseError("value '" + part + "' is not numeric (criterion '" + c.name + "')");
            }
        }
    }
    return alt;
}

}  // namespace prefswap
