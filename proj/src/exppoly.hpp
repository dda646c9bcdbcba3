#pragma once

#include "expr.hpp"
#include "polynomial.hpp"

#include <optional>
#include <vector>

namespace cyclescope {

// Normal form for the subclass of expressions that reduce to
//
//     sum_i P_i(x) * exp(Q_i(x))  /  sum_j R_j(x) * exp(S_j(x))
//
// with polynomial P, Q, R, S. Everything the grammar can produce lands here
// except exp of a non-polynomial argument (e.g. exp(1/x)), which falls back
// to grid-based analysis at the call sites.
//
// Two payoffs: exact global sign classification (exp factors are positive,
// so single-term ratios reduce to a polynomial Sturm analysis), and exact
// tail asymptotics for the convergence/limsup style theorem conditions.

struct ExpTerm {
    Polynomial coef;
    Polynomial expo;
};

struct ExpSum {
    std::vector<ExpTerm> terms;   // canonical: distinct expos, no zero coefs
    bool is_zero() const { return terms.empty(); }
};

struct ExpRatio {
    ExpSum num;
    ExpSum den;   // never zero
};

std::optional<ExpRatio> to_exp_ratio(const ExprPtr& e);

// A polynomial with the same sign pattern as the expression away from poles,
// plus the pole candidates (real roots of `poles`). Requires the ratio to be
// a single term over a single term.
struct SignDecomposition {
    Polynomial signature;
    Polynomial poles;       // constant 1 when the denominator never vanishes
};

std::optional<SignDecomposition> sign_decompose(const ExprPtr& e);

// Asymptotic magnitude class of a function as x -> dir*infinity (dir = +1/-1):
//   ExpGrow:      ~ scale * |x|^power * e^{expo(x)},  expo -> +inf
//   ExpDecay:     -> 0 faster than any power
//   Power:        ~ scale * |x|^power   (power may be any real; 0 = finite
//                 nonzero limit; log_factor marks an extra ln|x|)
//   BoundedLimit: converges to an unknown finite value
//   Unknown:      analysis failed (dominant-term cancellation, etc.)
// `sign` is the eventual sign of the function itself (0 for identically zero
// tails or when unknown).
struct GrowthOrder {
    enum class Kind { ExpGrow, ExpDecay, Power, BoundedLimit, Log, Unknown };
    Kind kind = Kind::Unknown;
    int sign = 0;
    double power = 0.0;
    double scale = 1.0;
    bool log_factor = false;
    Polynomial expo;
};

GrowthOrder growth_order(const ExpRatio& r, int dir);
GrowthOrder growth_order(const ExprPtr& e, int dir);

// Growth of F(x) = int_0^x f as x -> dir*infinity, from the growth of f.
GrowthOrder integral_growth(const GrowthOrder& f, int dir);

// Growth of sqrt(f); f must be eventually positive (sign != +1 -> Unknown).
GrowthOrder sqrt_growth(const GrowthOrder& f);

enum class LimitClass { Finite, PlusInfinity, MinusInfinity, Unknown };

const char* limit_class_name(LimitClass c);

// Limit classification of a growth order (does the quantity diverge, and
// which way). BoundedLimit/ExpDecay -> Finite.
LimitClass limit_class(const GrowthOrder& g);

// Compares asymptotic magnitudes: +1 if a dominates b, -1 if b dominates a,
// 0 if same order (ratio tends to a nonzero constant), nullopt if unknown.
// Bounded classes are dominated by any diverging class; two bounded classes
// compare as same order.
std::optional<int> compare_growth(const GrowthOrder& a, const GrowthOrder& b, int dir);

} // namespace cyclescope
