#pragma once

#include "prefswap/model.hpp"

#include <stdexcept>
#include <string>

namespace prefswap {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses an instance document:
//
//   {
//     "criteria": [
//       {"name": "Commute", "domain": {"kind": "numeric"}},
//       {"name": "Gym", "domain": {"kind": "labels", "ascending": ["no gym", "gym"]}}
//     ],
//     "alternatives": {"e1": [-15, "no gym"], ...},
//     "statements": [{"better": "e1", "worse": ["-50", "gym"]}]
//   }
//
// Numeric values are read exactly: JSON numbers keep their full decimal
// precision, and strings of the form "p/q" or "1.25" are accepted for
// numeric criteria. "*" is the wildcard. Statement sides are either names
// of declared alternatives or inline value arrays.
// Throws ParseError on malformed documents and ValidationError on
// structurally invalid instances.
Instance parse_instance(const std::string& text);
Instance parse_instance_file(const std::string& path);

// Normalized document for the instance. Integral values are emitted as JSON
// numbers, other rationals as "p/q" strings, labels by name, wildcards as
// "*". parse_instance(dump_instance(inst)) reproduces inst.
std::string dump_instance(const Instance& instance);

// Resolves a query side from the command line: either the name of a declared
// alternative or inline comma-separated values in criterion order
// ("-45,no gym,450,-5000"). Throws ParseError / ValidationError.
Alternative parse_alternative_ref(const Instance& instance, const std::string& text);

}  // namespace prefswap
