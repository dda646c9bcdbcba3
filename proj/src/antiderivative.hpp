#pragma once

#include "expr.hpp"
#include "polynomial.hpp"

#include <functional>
#include <memory>

namespace cyclescope {

// Primitive F(x) = int_0^x f(s) ds with F(0) = 0.
//
// Polynomial integrands get the exact symbolic primitive. Everything else is
// integrated on demand by adaptive quadrature over a fixed ladder of anchor
// points (eighth-steps out to |x| = 16, then dyadic: 32, 64, ...). Anchor
// values chain from the origin and are memoized behind a shared mutex, so a
// call for F(x) only pays for the partial panel past the nearest anchor,
// repeated evaluations are cheap, and results do not depend on call order or
// thread interleaving.
//
// Copies share the memo; the handle is cheap to pass around.
class Antiderivative {
public:
    explicit Antiderivative(Polynomial p);
    explicit Antiderivative(std::function<double(double)> f, double abs_tol = 1e-10);

    // Polynomial expressions integrate exactly; the rest by quadrature.
    static Antiderivative of(const ExprPtr& e, double abs_tol = 1e-10);

    double operator()(double x) const;

    bool exact() const;
    const Polynomial* polynomial() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

// Adaptive Simpson integration of f over [a, b] to the given absolute
// tolerance. Exposed for reuse by the numeric tail estimators.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol);

} // namespace cyclescope
