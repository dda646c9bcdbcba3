#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "equation.hpp"
#include "specfile.hpp"

#include <cmath>
#include <random>

using namespace cyclescope;

namespace {

EquationSpec make_spec(std::initializer_list<const char*> coeffs) {
    std::vector<std::string> texts;
    for (const char* c : coeffs) texts.emplace_back(c);
    return EquationSpec::parse_coefficients(texts);
}

} // namespace

TEST_CASE("equation construction and trimming") {
    EquationSpec fig1 = make_spec({"x", "x^2+1", "-x^2"});
    CHECK(fig1.n() == 2);
    CHECK(fig1.coefficient_texts()[2] == "-x^2");

    EquationSpec trimmed = make_spec({"x", "x^2-1", "0"});
    CHECK(trimmed.n() == 1);

    EquationSpec only_g = make_spec({"x"});
    CHECK(only_g.n() == 0);

    CHECK_THROWS_AS(EquationSpec({}), std::invalid_argument);
    CHECK_THROWS_AS(make_spec({"x +"}), ParseError);
    CHECK(fig1.is_polynomial());
    CHECK_FALSE(make_spec({"x", "exp(x)"}).is_polynomial());
}

TEST_CASE("vector field values") {
    EquationSpec harmonic = make_spec({"x"});
    double dx, dy;
    harmonic.field(1.0, 0.0, dx, dy);
    CHECK(dx == 0.0);
    CHECK(dy == -1.0);

    EquationSpec fig1 = make_spec({"x", "x^2+1", "-x^2"});
    fig1.field(0.0, 1.0, dx, dy);
    CHECK(dx == doctest::Approx(1.0));
    CHECK(dy == doctest::Approx(-1.0));

    // On the x-axis every l >= 1 term vanishes.
    for (double x : {-2.0, -0.5, 0.0, 1.5, 3.0}) {
        fig1.field(x, 0.0, dx, dy);
        CHECK(dx == 0.0);
        CHECK(dy == doctest::Approx(-x).epsilon(1e-14));
    }
}

TEST_CASE("field matches direct expression evaluation") {
    EquationSpec spec = make_spec({"x", "(x^2-1)*exp(-x^2)", "x/2", "x^2/(50*(x^2+1))"});
    std::mt19937 rng(4321);
    std::uniform_real_distribution<double> pts(-2.5, 2.5);
    for (int i = 0; i < 200; ++i) {
        double x = pts(rng), y = pts(rng);
        double dx, dy;
        spec.field(x, y, dx, dy);
        double expect = 0.0;
        for (int l = spec.n(); l >= 0; --l)
            expect = expect * y + eval(spec.f(l).expr(), x);
        CHECK(dx == y);
        CHECK(dy == doctest::Approx(-expect).epsilon(1e-12));
    }
}

TEST_CASE("divergence equals the jacobian trace") {
    EquationSpec harmonic = make_spec({"x"});
    CHECK(harmonic.divergence(0.3, -1.2) == 0.0);

    EquationSpec lienard = make_spec({"x", "x^2-1"});
    for (double x : {-1.0, 0.0, 2.0})
        CHECK(lienard.divergence(x, 5.0) == doctest::Approx(-(x * x - 1)).epsilon(1e-14));

    EquationSpec spec = make_spec({"x", "(x^2-1)*exp(-x^2)", "x/2", "x^3"});
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pts(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        double x = pts(rng), y = pts(rng);
        double h = 1e-6;
        double dxp, dyp, dxm, dym;
        spec.field(x, y + h, dxp, dyp);
        spec.field(x, y - h, dxm, dym);
        // dx/dt = y has no x-dependence, so the trace is d(dy/dt)/dy alone.
        double trace = (dyp - dym) / (2 * h);
        CHECK(spec.divergence(x, y) == doctest::Approx(trace).epsilon(1e-6));
    }
}

TEST_CASE("hypothesis validation: exact cases") {
    ValidationReport good = make_spec({"x"}).validate();
    REQUIRE(good.find("B"));
    CHECK(good.find("B")->verdict == Verdict::Holds);
    CHECK(good.find("A1")->verdict == Verdict::Holds);
    CHECK(good.find("A2")->verdict == Verdict::Holds);
    CHECK(good.all_hold());

    ValidationReport bad = make_spec({"x^3-x"}).validate();
    CHECK(bad.find("B")->verdict == Verdict::Fails);
    CHECK_FALSE(bad.all_hold());

    // Odd powers of x keep B.
    CHECK(make_spec({"x^3"}).validate().find("B")->verdict == Verdict::Holds);
    // Even ones lose it.
    CHECK(make_spec({"x^2"}).validate().find("B")->verdict == Verdict::Fails);
    // A zero away from the origin loses it.
    CHECK(make_spec({"x*(x^2-1)^2"}).validate().find("B")->verdict == Verdict::Fails);
    // g(0) != 0 loses it.
    CHECK(make_spec({"x+1"}).validate().find("B")->verdict == Verdict::Fails);
}

TEST_CASE("hypothesis validation: rational g from the degree-six example") {
    ValidationReport rep = make_spec({"x/((x/3)^6+1)", "x^2-1", "-x/(1+x^4)"}).validate();
    CHECK(rep.find("B")->verdict == Verdict::Holds);
    CHECK(rep.find("A2")->verdict == Verdict::Holds);
    CHECK(rep.all_hold());
}

TEST_CASE("hypothesis validation: poles are caught") {
    ValidationReport rep = make_spec({"x", "1/(x-1)"}).validate();
    CHECK(rep.find("A2")->verdict == Verdict::Fails);
    CHECK(rep.find("A2")->evidence.find("f_1") != std::string::npos);
}

TEST_CASE("grid sign classification for non-decomposable expressions") {
    // exp(-x^2) - 1/2 crosses zero at x^2 = ln 2.
    ExprSignReport ch = classify_expr_sign(parse_expression("exp(-x^2) - 1/2"));
    CHECK(ch.kind == SignKind::ChangesSign);
    CHECK_FALSE(ch.exact);

    // exp(-x^2) + 1 stays above 1; the tail limit is the constant term.
    ExprSignReport pos = classify_expr_sign(parse_expression("exp(-x^2) + 1"));
    CHECK(pos.kind == SignKind::EverywherePositive);
    CHECK(one_signed(pos));

    ExprSignReport neg = classify_expr_sign(parse_expression("-exp(-x^2) - 1"));
    CHECK(neg.kind == SignKind::EverywhereNegative);
    CHECK(one_signed(neg));
}

TEST_CASE("toml spec documents") {
    const char* text = R"(# comment
n = 2
coefficients = [
  "x",        # g
  "x^2+1",
  "-x^2",
]

[theorem3]
p = "(x/3)^6+1"
q1 = "x^2-1"
q2 = "x^4-4*x^2+1"
r = "x"

[hopf]
a = 1.5
)";
    SpecDocument doc = parse_spec_toml(text);
    REQUIRE(doc.n.has_value());
    CHECK(*doc.n == 2);
    REQUIRE(doc.coefficients.size() == 3);
    CHECK(doc.coefficients[0] == "x");
    CHECK(doc.coefficients[2] == "-x^2");
    REQUIRE(doc.theorem3.has_value());
    CHECK(doc.theorem3->q2 == "x^4-4*x^2+1");
    REQUIRE(doc.hopf_a.has_value());
    CHECK(*doc.hopf_a == doctest::Approx(1.5));

    EquationSpec spec = build_equation(doc);
    CHECK(spec.n() == 2);
    // Strings survive verbatim.
    CHECK(spec.coefficient_texts() == doc.coefficients);
}

TEST_CASE("json spec documents") {
    const char* text = R"json({"n": 1, "coefficients": ["x", "0.1*(x^2-1)"],
                               "hopf": {"a": 1}})json";
    SpecDocument doc = parse_spec_json(text);
    CHECK(doc.n == 1);
    CHECK(doc.coefficients.size() == 2);
    CHECK(*doc.hopf_a == doctest::Approx(1.0));
    CHECK(build_equation(doc).n() == 1);
}

TEST_CASE("spec document errors") {
    CHECK_THROWS_AS(parse_spec_toml("coefficients = oops"), SpecFileError);
    CHECK_THROWS_AS(parse_spec_toml("n = x"), SpecFileError);
    CHECK_THROWS_AS(parse_spec_toml("n 2"), SpecFileError);
    CHECK_THROWS_AS(parse_spec_json("{"), SpecFileError);
    CHECK_THROWS_AS(parse_spec_json(R"({"coefficients": 3})"), SpecFileError);

    SpecDocument mismatch = parse_spec_toml("n = 3\ncoefficients = [\"x\", \"x^2\"]");
    CHECK_THROWS_AS(build_equation(mismatch), SpecFileError);

    SpecDocument empty;
    CHECK_THROWS_AS(build_equation(empty), SpecFileError);

    SpecDocument bad_expr = parse_spec_toml("coefficients = [\"x^\"]");
    CHECK_THROWS_AS(build_equation(bad_expr), ParseError);
}

TEST_CASE("hopf parameter substitution") {
    std::string out = substitute_parameter("a*x^2 - b", 'a', 1.0);
    out = substitute_parameter(out, 'b', 0.1);
    ExprPtr e = parse_expression(out);
    CHECK(eval(e, 2.0) == doctest::Approx(4.0 - 0.1));
    // 'x' and 'exp' are untouched even when the parameter letter appears
    // nowhere.
    CHECK(substitute_parameter("exp(-x^2)", 'a', 2.0) == "exp(-x^2)");
    CHECK(substitute_parameter("b*exp(b*x)", 'b', 2.0)
          == "(2)*exp((2)*x)");
}
