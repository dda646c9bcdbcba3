#pragma once

#include "rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cyclescope {

// Dense univariate polynomial with exact rational coefficients.
// coeff(k) is the coefficient of x^k; trailing zeros are stripped so the
// zero polynomial has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Rational& c0) { c_.push_back(c0); normalize(); }
    explicit Polynomial(long c0) : Polynomial(Rational(c0)) {}

    static Polynomial variable();
    static Polynomial from_coeffs(std::vector<Rational> coeffs);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(int k) const;
    const Rational& leading() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_constant() const { return c_.size() <= 1; }
    Rational constant_value() const { return c_.empty() ? Rational(0) : c_[0]; }

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& s) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

    Polynomial pow(unsigned e) const;
    Polynomial derivative() const;
    Polynomial antiderivative() const;   // constant of integration 0

    Rational eval(const Rational& x) const;
    double eval(double x) const;

    // Renders as e.g. "x^3 - 4*x + 1/2"; used in reports and error messages.
    std::string to_string() const;

private:
    void normalize();
    std::vector<Rational> c_;
};

// Quotient and remainder of a by b (b nonzero): a = q*b + r, deg r < deg b.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);

Polynomial poly_gcd(Polynomial a, Polynomial b);      // monic unless zero
Polynomial square_free_part(const Polynomial& p);     // p / gcd(p, p')

struct RootEnclosure {
    Rational lo, hi;     // open interval (lo, hi) holding exactly one root
    double approx;       // midpoint in double precision
};

// Disjoint enclosures of all distinct real roots, sorted ascending.
// Each is refined until hi - lo <= width * max(1, |hi|).
std::vector<RootEnclosure> isolate_real_roots(const Polynomial& p, double width = 1e-12);

// Number of distinct real roots in (a, b); endpoints must not be roots.
int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b);
int count_real_roots(const Polynomial& p);

// Upper bound M such that all real roots lie in (-M, M).
Rational root_bound(const Polynomial& p);

enum class SignKind {
    IdenticallyZero,
    EverywherePositive,
    EverywhereNegative,
    NonnegWithZeros,
    NonposWithZeros,
    ChangesSign,
};

const char* sign_kind_name(SignKind k);

struct SignAnalysis {
    SignKind kind = SignKind::IdenticallyZero;
    std::vector<RootEnclosure> roots;   // distinct real roots (of the square-free part)
};

// Global sign classification over the whole real line, via Sturm sequences.
// Exact: sampling points are rational and chosen off the root set.
SignAnalysis analyze_sign(const Polynomial& p);

// True if x = 0 is the only real root of p (or p has no real roots at all).
// Decided exactly: strip the x^k factor, then count remaining real roots.
bool roots_only_at_origin(const Polynomial& p);

} // namespace cyclescope
