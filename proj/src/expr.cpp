#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace cyclescope {

namespace {

ExprPtr make(ExprKind k, ExprPtr a = nullptr, ExprPtr b = nullptr, int exponent = 0) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->a = std::move(a);
    e->b = std::move(b);
    e->exponent = exponent;
    return e;
}

bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Number; }
bool is_const(const ExprPtr& e, long v) {
    return e->kind == ExprKind::Number && e->number == v;
}

} // namespace

ExprPtr ex_num(Rational v) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Number;
    e->number_d = to_double(v);
    e->number = std::move(v);
    return e;
}

ExprPtr ex_num(long v) { return ex_num(Rational(v)); }

ExprPtr ex_var() {
    static const ExprPtr x = make(ExprKind::Variable);
    return x;
}

ExprPtr ex_add(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return ex_num(a->number + b->number);
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    return make(ExprKind::Add, std::move(a), std::move(b));
}

ExprPtr ex_sub(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return ex_num(a->number - b->number);
    if (is_const(b, 0)) return a;
    if (is_const(a, 0)) return ex_neg(std::move(b));
    return make(ExprKind::Sub, std::move(a), std::move(b));
}

ExprPtr ex_neg(ExprPtr a) {
    if (is_const(a)) return ex_num(-a->number);
    if (a->kind == ExprKind::Neg) return a->a;
    return make(ExprKind::Neg, std::move(a));
}

ExprPtr ex_mul(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return ex_num(a->number * b->number);
    if (is_const(a, 0) || is_const(b, 0)) return ex_num(0L);
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    return make(ExprKind::Mul, std::move(a), std::move(b));
}

ExprPtr ex_div(ExprPtr a, ExprPtr b) {
    if (is_const(b) && b->number != 0) {
        if (is_const(a)) return ex_num(a->number / b->number);
        if (b->number == 1) return a;
    }
    if (is_const(a, 0) && !is_const(b, 0)) return ex_num(0L);
    return make(ExprKind::Div, std::move(a), std::move(b));
}

ExprPtr ex_pow(ExprPtr a, int k) {
    if (k == 0) return ex_num(1L);
    if (k == 1) return a;
    if (is_const(a)) {
        if (k > 0) return ex_num(rational_pow(a->number, static_cast<unsigned>(k)));
        if (a->number != 0)
            return ex_num(Rational(1) / rational_pow(a->number, static_cast<unsigned>(-k)));
    }
    return make(ExprKind::Pow, std::move(a), nullptr, k);
}

ExprPtr ex_exp(ExprPtr a) {
    if (is_const(a, 0)) return ex_num(1L);
    return make(ExprKind::Exp, std::move(a));
}

double eval(const ExprPtr& e, double x) {
    switch (e->kind) {
        case ExprKind::Number: return e->number_d;
        case ExprKind::Variable: return x;
        case ExprKind::Add: return eval(e->a, x) + eval(e->b, x);
        case ExprKind::Sub: return eval(e->a, x) - eval(e->b, x);
        case ExprKind::Neg: return -eval(e->a, x);
        case ExprKind::Mul: return eval(e->a, x) * eval(e->b, x);
        case ExprKind::Div: {
            double den = eval(e->b, x);
            if (den == 0.0) {
                std::ostringstream os;
                os << "division by zero at x = " << x;
                throw EvalError(os.str());
            }
            return eval(e->a, x) / den;
        }
        case ExprKind::Pow: {
            double base = eval(e->a, x);
            int k = e->exponent;
            if (base == 0.0 && k < 0) {
                std::ostringstream os;
                os << "zero raised to negative power at x = " << x;
                throw EvalError(os.str());
            }
            double acc = 1.0, b = base;
            unsigned n = static_cast<unsigned>(k < 0 ? -k : k);
            while (n) {
                if (n & 1u) acc *= b;
                b *= b;
                n >>= 1u;
            }
            return k < 0 ? 1.0 / acc : acc;
        }
        case ExprKind::Exp: return std::exp(eval(e->a, x));
    }
    throw EvalError("corrupt expression node");
}

ExprPtr differentiate(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Number: return ex_num(0L);
        case ExprKind::Variable: return ex_num(1L);
        case ExprKind::Add: return ex_add(differentiate(e->a), differentiate(e->b));
        case ExprKind::Sub: return ex_sub(differentiate(e->a), differentiate(e->b));
        case ExprKind::Neg: return ex_neg(differentiate(e->a));
        case ExprKind::Mul:
            return ex_add(ex_mul(differentiate(e->a), e->b), ex_mul(e->a, differentiate(e->b)));
        case ExprKind::Div:
            return ex_div(ex_sub(ex_mul(differentiate(e->a), e->b), ex_mul(e->a, differentiate(e->b))),
                          ex_pow(e->b, 2));
        case ExprKind::Pow:
            return ex_mul(ex_mul(ex_num(static_cast<long>(e->exponent)), ex_pow(e->a, e->exponent - 1)),
                          differentiate(e->a));
        case ExprKind::Exp: return ex_mul(e, differentiate(e->a));
    }
    throw EvalError("corrupt expression node");
}

std::optional<Polynomial> to_polynomial(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Number: return Polynomial(e->number);
        case ExprKind::Variable: return Polynomial::variable();
        case ExprKind::Add: {
            auto pa = to_polynomial(e->a), pb = to_polynomial(e->b);
            if (pa && pb) return *pa + *pb;
            return std::nullopt;
        }
        case ExprKind::Sub: {
            auto pa = to_polynomial(e->a), pb = to_polynomial(e->b);
            if (pa && pb) return *pa - *pb;
            return std::nullopt;
        }
        case ExprKind::Neg: {
            auto pa = to_polynomial(e->a);
            if (pa) return -*pa;
            return std::nullopt;
        }
        case ExprKind::Mul: {
            auto pa = to_polynomial(e->a), pb = to_polynomial(e->b);
            if (pa && pb) return *pa * *pb;
            return std::nullopt;
        }
        case ExprKind::Div: {
            auto pa = to_polynomial(e->a), pb = to_polynomial(e->b);
            if (pa && pb && pb->is_constant() && pb->constant_value() != 0)
                return *pa * (Rational(1) / pb->constant_value());
            return std::nullopt;
        }
        case ExprKind::Pow: {
            auto pa = to_polynomial(e->a);
            if (pa && e->exponent >= 0) return pa->pow(static_cast<unsigned>(e->exponent));
            if (pa && pa->is_constant() && pa->constant_value() != 0)
                return Polynomial(Rational(1) /
                                  rational_pow(pa->constant_value(),
                                               static_cast<unsigned>(-e->exponent)));
            return std::nullopt;
        }
        case ExprKind::Exp: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (true) {
            if (eat('+'))
                e = ex_add(e, term());
            else if (eat('-'))
                e = ex_sub(e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (true) {
            if (eat('*'))
                e = ex_mul(e, unary());
            else if (eat('/'))
                e = ex_div(e, unary());
            else
                return e;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return ex_neg(unary());
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (!eat('^')) return base;
        int k = integer_exponent();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') fail("chained '^' needs parentheses");
        return ex_pow(base, k);
    }

    int integer_exponent() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = (s_[pos_++] == '-');
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("integer exponent expected after '^'");
        if (pos_ - start > 4) fail("exponent out of range");
        int v = std::stoi(s_.substr(start, pos_ - start));
        return neg ? -v : v;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return word();
        if (eat('(')) {
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    ExprPtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        // exponent suffix: 1e-3 / 2.5E+4
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_ + 1;
            if (mark < s_.size() && (s_[mark] == '+' || s_[mark] == '-')) ++mark;
            if (mark < s_.size() && std::isdigit(static_cast<unsigned char>(s_[mark]))) {
                pos_ = mark;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            }
        }
        try {
            return ex_num(rational_from_decimal(s_.substr(start, pos_ - start)));
        } catch (const std::invalid_argument& ex) {
            pos_ = start;
            fail(ex.what());
        }
    }

    ExprPtr word() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string w = s_.substr(start, pos_ - start);
        if (w == "x") return ex_var();
        if (w == "exp") {
            if (!eat('(')) fail("expected '(' after exp");
            ExprPtr e = expr();
            if (!eat(')')) fail("expected ')'");
            return ex_exp(e);
        }
        pos_ = start;
        fail("unknown identifier '" + w + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

int precedence(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const ExprPtr& e, std::ostream& os, int parent_prec) {
    int prec = precedence(e);
    bool parens = prec < parent_prec;
    if (e->kind == ExprKind::Number && e->number < 0) parens = parent_prec > 1;
    if (parens) os << "(";
    switch (e->kind) {
        case ExprKind::Number: os << e->number; break;
        case ExprKind::Variable: os << "x"; break;
        case ExprKind::Add:
            print_rec(e->a, os, 1);
            os << " + ";
            print_rec(e->b, os, 2);
            break;
        case ExprKind::Sub:
            print_rec(e->a, os, 1);
            os << " - ";
            print_rec(e->b, os, 2);
            break;
        case ExprKind::Neg:
            os << "-";
            print_rec(e->a, os, 4);
            break;
        case ExprKind::Mul:
            print_rec(e->a, os, 2);
            os << "*";
            print_rec(e->b, os, 3);
            break;
        case ExprKind::Div:
            print_rec(e->a, os, 2);
            os << "/";
            print_rec(e->b, os, 3);
            break;
        case ExprKind::Pow:
            print_rec(e->a, os, 5);
            os << "^" << e->exponent;
            break;
        case ExprKind::Exp:
            os << "exp(";
            print_rec(e->a, os, 0);
            os << ")";
            break;
    }
    if (parens) os << ")";
}

} // namespace

ExprPtr parse_expression(const std::string& text) {
    Parser p(text);
    return p.run();
}

std::string print_expression(const ExprPtr& e) {
    std::ostringstream os;
    print_rec(e, os, 0);
    return os.str();
}

} // namespace cyclescope
