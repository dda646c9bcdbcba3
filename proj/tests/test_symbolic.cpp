#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "antiderivative.hpp"
#include "equation.hpp"
#include "exppoly.hpp"
#include "expr.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace cyclescope;

namespace {

// Test-side quadrature oracle: composite Simpson with a fixed panel count,
// written independently of the library's adaptive routine.
double simpson_oracle(const std::function<double(double)>& f, double a, double b,
                      int panels = 20000) {
    double h = (b - a) / panels;
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

// Test-side root oracle, independent of Sturm sequences: the real roots of p
// are separated by the roots of p', found recursively; bisection inside each
// bracket then pins them down. Assumes p square-free (no shared roots with
// p'), which is what the tests feed it.
std::vector<double> oracle_roots(const Polynomial& p) {
    int deg = p.degree();
    if (deg <= 0) return {};
    std::vector<double> c;
    for (const auto& q : p.coeffs()) c.push_back(to_double(q));
    if (deg == 1) return {-c[0] / c[1]};

    double bound = 1.0;
    for (int i = 0; i < deg; ++i)
        bound = std::max(bound, std::abs(c[static_cast<std::size_t>(i)] / c.back()));
    bound += 1.0;

    std::vector<double> cuts = oracle_roots(p.derivative());
    cuts.insert(cuts.begin(), -bound);
    cuts.push_back(bound);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        double fa = p.eval(a), fb = p.eval(b);
        if (fa == 0.0 || !((fa < 0) != (fb < 0))) continue;
        for (int it = 0; it < 200; ++it) {
            double m = 0.5 * (a + b);
            double fm = p.eval(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm < 0) == (fa < 0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push_back(0.5 * (a + b));
    }
    return roots;
}

Polynomial P(std::initializer_list<long> coeffs_low_to_high) {
    std::vector<Rational> c;
    for (long v : coeffs_low_to_high) c.emplace_back(v);
    return Polynomial::from_coeffs(c);
}

ExprPtr random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 8);
    std::uniform_int_distribution<int> small(-4, 4);
    switch (pick(rng)) {
        case 0: return ex_num(small(rng));
        case 1: return ex_var();
        case 2: return ex_add(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 3: return ex_sub(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 4: return ex_mul(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 5: return ex_div(random_expr(rng, depth - 1), random_expr(rng, depth - 1));
        case 6: return ex_pow(random_expr(rng, depth - 1), 2 + pick(rng) % 3);
        case 7: return ex_neg(random_expr(rng, depth - 1));
        default: return ex_exp(random_expr(rng, depth - 2));
    }
}

} // namespace

TEST_CASE("rational decimal parsing") {
    CHECK(rational_from_decimal("123") == Rational(123));
    CHECK(rational_from_decimal("1.5") == Rational(3, 2));
    CHECK(rational_from_decimal("0.05") == Rational(1, 20));
    CHECK(rational_from_decimal("1.5e-1") == Rational(3, 20));
    CHECK(rational_from_decimal("2e3") == Rational(2000));
    CHECK_THROWS_AS(rational_from_decimal("1.2.3"), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic and division") {
    Polynomial x = Polynomial::variable();
    Polynomial a = (x - Polynomial(1L)) * (x + Polynomial(1L));
    CHECK(a == P({-1, 0, 1}));
    CHECK(a.degree() == 2);
    CHECK(a.eval(Rational(2)) == Rational(3));

    Polynomial num = P({1, 0, -4, 0, 1});
    Polynomial den = P({-1, 1});
    auto [q, r] = poly_divmod(num, den);
    CHECK(q * den + r == num);
    CHECK(r.degree() < den.degree());

    CHECK(P({0, 1}).derivative() == P({1}));
    CHECK(P({0, -4, 0, 1}).antiderivative().derivative() == P({0, -4, 0, 1}));
    CHECK(square_free_part(P({1, -2, 1})).degree() == 1);
}

TEST_CASE("sturm sign analysis on the quartic from the cubic-coefficient family") {
    // x^4 - 4x^2 + 1: roots at +-sqrt(2 +- sqrt(3)).
    Polynomial q2 = P({1, 0, -4, 0, 1});
    SignAnalysis sa = analyze_sign(q2);
    CHECK(sa.kind == SignKind::ChangesSign);
    REQUIRE(sa.roots.size() == 4);
    const double expected[4] = {-1.9318516525781366, -0.5176380902050415,
                                0.5176380902050415, 1.9318516525781366};
    for (int i = 0; i < 4; ++i)
        CHECK(sa.roots[static_cast<std::size_t>(i)].approx
              == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(count_real_roots(q2) == 4);
    CHECK(count_real_roots(q2, Rational(0), Rational(2)) == 2);
    CHECK(count_real_roots(q2) == static_cast<int>(oracle_roots(q2).size()));
}

TEST_CASE("sign classification catalogue") {
    CHECK(analyze_sign(P({1, 0, 1})).kind == SignKind::EverywherePositive);
    CHECK(analyze_sign(P({-1, 0, -1})).kind == SignKind::EverywhereNegative);
    CHECK(analyze_sign(P({-1, 0, 1})).kind == SignKind::ChangesSign);
    CHECK(analyze_sign(P({0, 0, 1})).kind == SignKind::NonnegWithZeros);
    CHECK(analyze_sign(P({1, -2, 1})).kind == SignKind::NonnegWithZeros);
    CHECK(analyze_sign(P({0, 0, -1})).kind == SignKind::NonposWithZeros);
    CHECK(analyze_sign(Polynomial()).kind == SignKind::IdenticallyZero);
    CHECK(roots_only_at_origin(P({0, 0, 1})));
    CHECK(roots_only_at_origin(P({0, 1})));
    CHECK_FALSE(roots_only_at_origin(P({0, -1, 0, 1})));
}

TEST_CASE("random polynomials: sturm count vs bisection oracle") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Rational> c;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) c.emplace_back(coeff(rng));
        Polynomial p = Polynomial::from_coeffs(c);
        if (p.degree() < 1) continue;
        Polynomial sf = square_free_part(p);
        // The oracle cannot see multiplicity, so compare distinct roots.
        CHECK(count_real_roots(sf) == static_cast<int>(oracle_roots(sf).size()));
    }
}

TEST_CASE("expression parsing and evaluation") {
    CHECK(eval(parse_expression("x^2 - 1"), 2.0) == doctest::Approx(3.0));
    CHECK(eval(parse_expression("(x^2-1)*exp(-x^2)"), 0.0) == doctest::Approx(-1.0));
    CHECK(eval(parse_expression("exp(-x^2)"), 0.0) == doctest::Approx(1.0));
    CHECK(eval(parse_expression("x^2/(50*(x^2+1))"), 1.0) == doctest::Approx(0.01));
    CHECK(eval(parse_expression("x/((x/3)^6+1)"), 3.0) == doctest::Approx(1.5));
    CHECK(eval(parse_expression("x^-2"), 2.0) == doctest::Approx(0.25));
    CHECK(eval(parse_expression("2/3"), 0.0) == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(parse_expression("x^y"), ParseError);
    CHECK_THROWS_AS(parse_expression("x^2.5"), ParseError);
    CHECK_THROWS_AS(parse_expression("foo(x)"), ParseError);
    CHECK_THROWS_AS(parse_expression("(x+1"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(eval(parse_expression("1/x"), 0.0), EvalError);

    try {
        parse_expression("x + @");
    } catch (const ParseError& pe) {
        CHECK(pe.position == 4);
    }
}

TEST_CASE("print-parse round trip is evaluation equivalent") {
    const char* samples[] = {
        "x^2 - 1",
        "(x^2-1)*exp(-x^2)",
        "x^2/(50*(x^2+1))",
        "x/((x/3)^6+1)",
        "-x^2",
        "1 - 2*x + x^3/3",
        "exp(x)/(1+exp(x))",
        "x^-3 + 2",
        "-(x+1)*(x-2)",
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-3.0, 3.0);
    for (const char* s : samples) {
        ExprPtr e = parse_expression(s);
        ExprPtr e2 = parse_expression(print_expression(e));
        for (int i = 0; i < 100; ++i) {
            double x = xs(rng);
            double v1, v2;
            try {
                v1 = eval(e, x);
                v2 = eval(e2, x);
            } catch (const EvalError&) {
                continue;
            }
            CHECK(v1 == doctest::Approx(v2).epsilon(1e-12));
        }
    }
}

TEST_CASE("symbolic differentiation against central differences") {
    ExprPtr cubic = parse_expression("x^3/3 - x");
    auto dp = to_polynomial(differentiate(cubic));
    REQUIRE(dp.has_value());
    CHECK(*dp == P({-1, 0, 1}));

    ExprPtr gauss = parse_expression("exp(-x^2)");
    ExprPtr dgauss = differentiate(gauss);
    for (double x : {-1.7, -0.3, 0.0, 0.9, 2.2}) {
        double expect = -2.0 * x * std::exp(-x * x);
        CHECK(eval(dgauss, x) == doctest::Approx(expect).epsilon(1e-12));
    }

    std::mt19937 rng(0xC0FFEE);
    std::uniform_real_distribution<double> xs(-2.0, 2.0);
    int tested = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ExprPtr e = random_expr(rng, 4);
        ExprPtr d = differentiate(e);
        for (int k = 0; k < 5; ++k) {
            double x = xs(rng);
            double h = 1e-5;
            double fp, fm, fp2, fm2, sym;
            try {
                fp = eval(e, x + h);
                fm = eval(e, x - h);
                fp2 = eval(e, x + h / 2);
                fm2 = eval(e, x - h / 2);
                sym = eval(d, x);
            } catch (const EvalError&) {
                continue;
            }
            double fd1 = (fp - fm) / (2 * h);
            double fd2 = (fp2 - fm2) / h;
            if (!std::isfinite(fd1) || !std::isfinite(fd2) || !std::isfinite(sym)) continue;
            // Large function values wreck the difference quotient through
            // cancellation, and disagreement between the two step sizes
            // flags unresolved truncation; skip both regimes.
            double fscale = std::max({std::abs(fp), std::abs(fm), std::abs(fp2),
                                      std::abs(fm2)});
            if (fscale > 1e6) continue;
            if (std::abs(fd1 - fd2) > 1e-6 * (1.0 + std::abs(fd2))) continue;
            CHECK(sym == doctest::Approx(fd2).epsilon(2e-5));
            ++tested;
        }
    }
    CHECK(tested > 150);
}

TEST_CASE("polynomial extraction from expressions") {
    auto p = to_polynomial(parse_expression("x^3 - 4*x + 1/2"));
    REQUIRE(p.has_value());
    CHECK(p->coeff(0) == Rational(1, 2));
    CHECK(p->coeff(3) == Rational(1));
    CHECK_FALSE(to_polynomial(parse_expression("exp(x)")).has_value());
    CHECK_FALSE(to_polynomial(parse_expression("1/x")).has_value());
    CHECK(to_polynomial(parse_expression("x/2")).has_value());
    // Round trip through printing keeps values.
    ExprPtr back = parse_expression(p->to_string());
    for (double x : {-2.0, 0.5, 3.0})
        CHECK(eval(back, x) == doctest::Approx(p->eval(x)).epsilon(1e-14));
}

TEST_CASE("antiderivative: exact for polynomials") {
    Antiderivative F = Antiderivative::of(parse_expression("x^2 - 1"));
    CHECK(F.exact());
    CHECK(F(0.0) == 0.0);
    CHECK(F(2.0) == doctest::Approx(8.0 / 3.0 - 2.0).epsilon(1e-15));
    CHECK(F(-1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    Antiderivative zero = Antiderivative::of(ex_num(0L));
    CHECK(zero(3.7) == 0.0);
}

TEST_CASE("antiderivative: quadrature path with frozen value") {
    ExprPtr f1 = parse_expression("(x^2-1)*exp(-x^2)");
    Antiderivative F = Antiderivative::of(f1);
    CHECK_FALSE(F.exact());
    CHECK(F(0.0) == 0.0);
    // Independent oracle at tolerance well inside the library's 1e-10.
    auto fd = [&](double x) { return eval(f1, x); };
    CHECK(F(1.0) == doctest::Approx(-0.5573517869919347).epsilon(1e-10));
    for (double x : {-3.0, -1.0, 0.5, 1.0, 2.5}) {
        CHECK(F(x) == doctest::Approx(simpson_oracle(fd, 0.0, x)).epsilon(1e-8));
    }
    // Repeated evaluation hits the anchor cache and must agree with itself.
    CHECK(F(2.5) == F(2.5));
}

TEST_CASE("antiderivative of derivative recovers the function") {
    const char* samples[] = {"exp(-x^2)", "x^3/3 - x", "x/(1+x^2)", "exp(x/2)*x"};
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> xs(-5.0, 5.0);
    for (const char* s : samples) {
        ExprPtr e = parse_expression(s);
        Antiderivative F = Antiderivative::of(differentiate(e));
        double e0 = eval(e, 0.0);
        for (int i = 0; i < 8; ++i) {
            double x = xs(rng);
            CHECK(F(x) - (eval(e, x) - e0) == doctest::Approx(0.0).epsilon(1e-8));
        }
    }
}

TEST_CASE("growth analysis of the exponential-polynomial class") {
    ExprPtr gauss_tail = parse_expression("(x^2-1)*exp(-x^2)");
    GrowthOrder go = growth_order(gauss_tail, +1);
    CHECK(go.kind == GrowthOrder::Kind::ExpDecay);
    CHECK(go.sign == 1);

    GrowthOrder grow = growth_order(parse_expression("exp(x^2)"), +1);
    CHECK(grow.kind == GrowthOrder::Kind::ExpGrow);
    CHECK(grow.sign == 1);

    GrowthOrder cubic_left = growth_order(parse_expression("x^3"), -1);
    CHECK(cubic_left.kind == GrowthOrder::Kind::Power);
    CHECK(cubic_left.sign == -1);
    CHECK(cubic_left.power == doctest::Approx(3.0));

    // g-tilde of the cubic-exponent transform example: x*exp(-2/3*x^3).
    ExprPtr gt = parse_expression("x*exp(-2/3*x^3)");
    CHECK(limit_class(integral_growth(growth_order(gt, +1), +1)) == LimitClass::Finite);
    CHECK(limit_class(integral_growth(growth_order(gt, -1), -1))
          == LimitClass::PlusInfinity);

    // F(x) = int_0^x s ds = x^2/2 diverges to +inf on both sides.
    CHECK(limit_class(integral_growth(growth_order(ex_var(), +1), +1))
          == LimitClass::PlusInfinity);
    CHECK(limit_class(integral_growth(growth_order(ex_var(), -1), -1))
          == LimitClass::PlusInfinity);

    auto cmp = compare_growth(growth_order(parse_expression("x^4"), +1),
                              growth_order(parse_expression("x^2"), +1), +1);
    REQUIRE(cmp.has_value());
    CHECK(*cmp == 1);
    auto cmp2 = compare_growth(growth_order(parse_expression("x^2"), +1),
                               growth_order(parse_expression("exp(x)"), +1), +1);
    REQUIRE(cmp2.has_value());
    CHECK(*cmp2 == -1);
}

TEST_CASE("sign decomposition covers rational and gaussian coefficients") {
    auto sd = sign_decompose(parse_expression("(x^2-1)*exp(-x^2)"));
    REQUIRE(sd.has_value());
    CHECK(analyze_sign(sd->signature).kind == SignKind::ChangesSign);

    auto sd2 = sign_decompose(parse_expression("x^2/(50*(x^2+1))"));
    REQUIRE(sd2.has_value());
    CHECK(analyze_sign(sd2->signature).kind == SignKind::NonnegWithZeros);
    CHECK(isolate_real_roots(sd2->poles).empty());

    ExprSignReport rep = classify_expr_sign(parse_expression("x^2/(50*(x^2+1))"));
    CHECK(rep.exact);
    CHECK(rep.kind == SignKind::NonnegWithZeros);
    CHECK(one_signed(rep));

    ExprSignReport ch = classify_expr_sign(parse_expression("(x^2-1)*exp(-x^2)"));
    CHECK(ch.exact);
    CHECK(ch.kind == SignKind::ChangesSign);
    CHECK_FALSE(one_signed(ch));
}
