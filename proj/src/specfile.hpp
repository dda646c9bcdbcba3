#pragma once

#include "equation.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclescope {

class SpecFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw polynomial strings for the quadruple form
// p*x'' + p*q1*x' + q2*(x')^2 + r = 0.
struct Theorem3Data {
    std::string p, q1, q2, r;
};

// Parsed spec document. Coefficient strings stay verbatim so they survive a
// round trip byte for byte; expression parsing happens in build_equation.
struct SpecDocument {
    std::optional<long> n;
    std::vector<std::string> coefficients;
    std::optional<Theorem3Data> theorem3;
    std::optional<double> hopf_a;
};

// Reads TOML (subset: sections, key = string/number/array-of-strings,
// comments) or JSON, chosen by extension or a leading '{'.
SpecDocument load_spec_document(const std::string& path);
SpecDocument parse_spec_toml(const std::string& text);
SpecDocument parse_spec_json(const std::string& text);

// Parses the coefficient expressions and cross-checks the declared n.
// Throws SpecFileError or ParseError on malformed input.
EquationSpec build_equation(const SpecDocument& doc);

// Whole-word substitution of a single-letter parameter (the Hopf family's
// `a` and `b`) by a parenthesized numeric literal.
std::string substitute_parameter(const std::string& text, char name, double value);

} // namespace cyclescope
