#include "prefswap/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace prefswap {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed integer");
    BigInt v{std::string(s)};
    return negative ? -v : v;
}

BigInt pow10(unsigned exp) {
    BigInt v = 1;
    for (unsigned i = 0; i < exp; ++i) v *= 10;
    return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty numeric value");

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(text.substr(0, slash));
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }

    bool negative = false;
    std::string_view rest = text;
    if (rest.front() == '+' || rest.front() == '-') {
        negative = rest.front() == '-';
        rest.remove_prefix(1);
    }

    std::string int_part, frac_part;
    long exponent = 0;
    std::size_t pos = 0;
    while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) int_part += rest[pos++];
    if (pos < rest.size() && rest[pos] == '.') {
        ++pos;
        while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) frac_part += rest[pos++];
    }
    if (pos < rest.size() && (rest[pos] == 'e' || rest[pos] == 'E')) {
        ++pos;
        std::string exp_text;
        if (pos < rest.size() && (rest[pos] == '+' || rest[pos] == '-')) exp_text += rest[pos++];
        while (pos < rest.size() && std::isdigit(static_cast<unsigned char>(rest[pos]))) exp_text += rest[pos++];
        if (exp_text.empty() || exp_text == "+" || exp_text == "-") {
            throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
        }
        exponent = std::stol(exp_text);
    }
    if (pos != rest.size() || (int_part.empty() && frac_part.empty())) {
        throw std::invalid_argument("malformed numeric value '" + std::string(text) + "'");
    }

    BigInt num(int_part.empty() ? "0" : int_part);
    num *= pow10(static_cast<unsigned>(frac_part.size()));
    if (!frac_part.empty()) num += BigInt(frac_part);
    BigInt den = pow10(static_cast<unsigned>(frac_part.size()));
    if (exponent > 0) num *= pow10(static_cast<unsigned>(exponent));
    if (exponent < 0) den *= pow10(static_cast<unsigned>(-exponent));
    if (negative) num = -num;
    return Rational(num, den);
}

std::string to_fraction_string(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace prefswap
