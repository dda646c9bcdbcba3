#pragma once

#include "expr.hpp"
#include "polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyclescope {

enum class Verdict { Holds, Fails, Indeterminate };

const char* verdict_name(Verdict v);

// One coefficient function f_l(x). Polynomials get a double-Horner fast path
// since the vector field evaluates these inside the integrator hot loop.
class Coefficient {
public:
    Coefficient();
    explicit Coefficient(ExprPtr e);

    double operator()(double x) const;
    const ExprPtr& expr() const { return expr_; }
    const std::optional<Polynomial>& poly() const { return poly_; }
    bool identically_zero() const;

private:
    ExprPtr expr_;
    std::optional<Polynomial> poly_;
    std::vector<double> horner_;
};

struct HypothesisCheck {
    std::string label;
    Verdict verdict = Verdict::Indeterminate;
    std::string evidence;
};

struct ValidationReport {
    std::vector<HypothesisCheck> checks;
    const HypothesisCheck* find(const std::string& label) const;
    bool all_hold() const;
};

// The equation x'' + sum_{l=0}^n f_l(x) (x')^l = 0 as a phase-plane system
//   x' = y,  y' = -sum f_l(x) y^l,
// with f_0 = g. Trailing identically-zero coefficients are trimmed so f_n is
// nonzero whenever n > 0. Original coefficient strings are kept verbatim for
// serialization round-trips.
class EquationSpec {
public:
    explicit EquationSpec(std::vector<ExprPtr> coeffs);
    static EquationSpec parse_coefficients(const std::vector<std::string>& texts);

    int n() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Coefficient& f(int l) const { return coeffs_.at(static_cast<std::size_t>(l)); }
    const Coefficient& g() const { return coeffs_.front(); }
    const std::vector<std::string>& coefficient_texts() const { return texts_; }

    bool is_polynomial() const;

    void field(double x, double y, double& dx, double& dy) const;
    double divergence(double x, double y) const;

    // Hypothesis checks: A1 (g Lipschitz, via sup |g'| on the window),
    // A2 (coefficients continuous, poles detected exactly where possible),
    // B (x*g(x) > 0 for x != 0, exact via sign signature when decomposable).
    ValidationReport validate(double window = 100.0) const;

private:
    std::vector<Coefficient> coeffs_;
    std::vector<std::string> texts_;
};

// Sign classification of a coefficient expression over the whole line.
// Exact when the expression reduces to a polynomial sign signature (covers
// polynomials, rational functions and polynomial*exp(polynomial) products);
// otherwise a dense grid over [-window, window] combined with tail
// asymptotics, and kind is left empty when that evidence is inconclusive.
struct ExprSignReport {
    std::optional<SignKind> kind;
    bool exact = false;
    std::string evidence;
    std::vector<double> zeros;
    std::optional<Polynomial> signature;
};

ExprSignReport classify_expr_sign(const ExprPtr& e, double window = 100.0);

// True when the classification certifies f >= 0 everywhere or f <= 0
// everywhere (zeros allowed).
bool one_signed(const ExprSignReport& r);

} // namespace cyclescope
