#pragma once

#include "polynomial.hpp"
#include "rational.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace cyclescope {

// Single-variable expression trees over the grammar
//   rationals, x, + - * /, integer powers, exp(...), parentheses.
// Nodes are immutable and shared; factory functions below fold constants
// and strip identities so derivative trees stay small.

enum class ExprKind { Number, Variable, Add, Sub, Neg, Mul, Div, Pow, Exp };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    ExprKind kind;
    Rational number;     // Number only
    double number_d = 0; // cached double of `number`
    ExprPtr a, b;        // operands; Neg/Exp use `a` only
    int exponent = 0;    // Pow only
};

class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg), position(pos) {}
    std::size_t position;
};

ExprPtr ex_num(Rational v);
ExprPtr ex_num(long v);
ExprPtr ex_var();
ExprPtr ex_add(ExprPtr a, ExprPtr b);
ExprPtr ex_sub(ExprPtr a, ExprPtr b);
ExprPtr ex_neg(ExprPtr a);
ExprPtr ex_mul(ExprPtr a, ExprPtr b);
ExprPtr ex_div(ExprPtr a, ExprPtr b);
ExprPtr ex_pow(ExprPtr a, int k);
ExprPtr ex_exp(ExprPtr a);

// Throws ParseError with a byte offset into `text`.
ExprPtr parse_expression(const std::string& text);

// Infix rendering with minimal parentheses; parses back to an expression
// with the same values.
std::string print_expression(const ExprPtr& e);

// Throws EvalError on division by zero or 0^negative. Overflow is not an
// error: IEEE infinities propagate and callers guard for finiteness.
double eval(const ExprPtr& e, double x);

ExprPtr differentiate(const ExprPtr& e);

// Exact conversion when the tree is syntactically polynomial (division only
// by nonzero constants, nonnegative powers, no exp).
std::optional<Polynomial> to_polynomial(const ExprPtr& e);

inline bool is_zero_expr(const ExprPtr& e) {
    auto p = to_polynomial(e);
    return p && p->is_zero();
}

} // namespace cyclescope
