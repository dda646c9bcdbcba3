#include "equation.hpp"

#include "exppoly.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace cyclescope {

namespace {

std::string fmtd(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Replaces every exponential factor by 1, recursing only through the
// multiplicative structure (exp of anything is positive, so the sign of the
// whole expression is unchanged). Sums are left alone: exp terms inside a sum
// do affect the sign.
ExprPtr strip_exp_factors(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Exp: return ex_num(1L);
        case ExprKind::Neg: return ex_neg(strip_exp_factors(e->a));
        case ExprKind::Mul: return ex_mul(strip_exp_factors(e->a), strip_exp_factors(e->b));
        case ExprKind::Div: return ex_div(strip_exp_factors(e->a), strip_exp_factors(e->b));
        case ExprKind::Pow: return ex_pow(strip_exp_factors(e->a), e->exponent);
        default: return e;
    }
}

std::vector<double> approx_roots(const Polynomial& p) {
    std::vector<double> out;
    for (const auto& enc : isolate_real_roots(p)) out.push_back(enc.approx);
    return out;
}

// Tail sign of e as x -> dir*infinity: +1, -1, 0 for a vanishing or zero
// limit, or no value when the asymptotics are out of reach.
std::optional<int> tail_sign(const ExprPtr& e, int dir) {
    GrowthOrder go = growth_order(e, dir);
    if (go.kind == GrowthOrder::Kind::Unknown) return std::nullopt;
    return go.sign;
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        default: return "Indeterminate";
    }
}

Coefficient::Coefficient() : Coefficient(ex_num(0L)) {}

Coefficient::Coefficient(ExprPtr e) : expr_(std::move(e)) {
    poly_ = to_polynomial(expr_);
    if (poly_) {
        for (const auto& c : poly_->coeffs()) horner_.push_back(to_double(c));
    }
}

double Coefficient::operator()(double x) const {
    if (poly_) {
        double acc = 0.0;
        for (std::size_t i = horner_.size(); i-- > 0;) acc = acc * x + horner_[i];
        return acc;
    }
    return eval(expr_, x);
}

bool Coefficient::identically_zero() const { return poly_ && poly_->is_zero(); }

const HypothesisCheck* ValidationReport::find(const std::string& label) const {
    for (const auto& c : checks)
        if (c.label == label) return &c;
    return nullptr;
}

bool ValidationReport::all_hold() const {
    for (const auto& c : checks)
        if (c.verdict != Verdict::Holds) return false;
    return !checks.empty();
}

EquationSpec::EquationSpec(std::vector<ExprPtr> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("equation needs at least g = f_0");
    for (auto& e : coeffs) coeffs_.emplace_back(std::move(e));
    while (coeffs_.size() > 1 && coeffs_.back().identically_zero()) coeffs_.pop_back();
    for (const auto& c : coeffs_) texts_.push_back(print_expression(c.expr()));
}

EquationSpec EquationSpec::parse_coefficients(const std::vector<std::string>& texts) {
    std::vector<ExprPtr> exprs;
    for (std::size_t l = 0; l < texts.size(); ++l) {
        try {
            exprs.push_back(parse_expression(texts[l]));
        } catch (const ParseError& pe) {
            throw ParseError("coefficient " + std::to_string(l) + ": " + pe.what(),
                             pe.position);
        }
    }
    EquationSpec spec(std::move(exprs));
    // Keep the user's spelling for the retained coefficients.
    for (std::size_t l = 0; l < spec.coeffs_.size() && l < texts.size(); ++l)
        spec.texts_[l] = texts[l];
    return spec;
}

bool EquationSpec::is_polynomial() const {
    for (const auto& c : coeffs_)
        if (!c.poly()) return false;
    return true;
}

void EquationSpec::field(double x, double y, double& dx, double& dy) const {
    const int N = n();
    double acc = coeffs_[static_cast<std::size_t>(N)](x);
    for (int l = N - 1; l >= 0; --l) acc = acc * y + coeffs_[static_cast<std::size_t>(l)](x);
    dx = y;
    dy = -acc;
}

double EquationSpec::divergence(double x, double y) const {
    const int N = n();
    if (N == 0) return 0.0;
    double acc = N * coeffs_[static_cast<std::size_t>(N)](x);
    for (int l = N - 1; l >= 1; --l)
        acc = acc * y + l * coeffs_[static_cast<std::size_t>(l)](x);
    return -acc;
}

ValidationReport EquationSpec::validate(double window) const {
    ValidationReport rep;

    // A1: g Lipschitz. Decidable only up to the window; we report sup |g'|
    // there and say so.
    {
        HypothesisCheck a1{"A1", Verdict::Indeterminate, ""};
        ExprPtr gp = differentiate(g().expr());
        double sup = 0.0;
        bool ok = true;
        const int N = 2001;
        for (int i = 0; i < N && ok; ++i) {
            double x = -window + 2.0 * window * i / (N - 1);
            try {
                double v = eval(gp, x);
                if (!std::isfinite(v)) ok = false;
                else sup = std::max(sup, std::abs(v));
            } catch (const EvalError&) {
                ok = false;
            }
        }
        if (ok) {
            a1.verdict = Verdict::Holds;
            a1.evidence = "sup |g'| <= " + fmtd(sup) + " on [-" + fmtd(window) + ", "
                + fmtd(window) + "]";
        } else {
            a1.evidence = "g' undefined or unbounded inside the window";
        }
        rep.checks.push_back(std::move(a1));
    }

    // A2: every coefficient continuous on the line. Within the grammar the
    // only threat is a division whose denominator has a real zero.
    {
        HypothesisCheck a2{"A2", Verdict::Holds, "no real poles in any coefficient"};
        for (int l = 0; l <= n() && a2.verdict == Verdict::Holds; ++l) {
            const Coefficient& c = f(l);
            if (c.poly()) continue;
            ExprPtr core = strip_exp_factors(c.expr());
            if (auto sd = sign_decompose(core)) {
                auto poles = isolate_real_roots(sd->poles);
                if (!poles.empty()) {
                    a2.verdict = Verdict::Fails;
                    a2.evidence = "f_" + std::to_string(l) + " has a real pole near x = "
                        + fmtd(poles.front().approx);
                }
                continue;
            }
            // No exact certificate; scan the window.
            const int N = 2001;
            for (int i = 0; i < N; ++i) {
                double x = -window + 2.0 * window * i / (N - 1);
                bool bad = false;
                try {
                    bad = std::isnan(c(x));
                } catch (const EvalError&) {
                    bad = true;
                }
                if (bad) {
                    a2.verdict = Verdict::Indeterminate;
                    a2.evidence = "f_" + std::to_string(l)
                        + " could not be evaluated near x = " + fmtd(x);
                    break;
                }
            }
        }
        rep.checks.push_back(std::move(a2));
    }

    // B: x*g(x) > 0 for x != 0.
    {
        HypothesisCheck b{"B", Verdict::Indeterminate, ""};
        ExprPtr xg = ex_mul(ex_var(), g().expr());
        ExprSignReport sr = classify_expr_sign(xg, window);
        if (sr.exact && sr.signature) {
            if (sr.kind == SignKind::NonnegWithZeros && roots_only_at_origin(*sr.signature)) {
                b.verdict = Verdict::Holds;
                b.evidence = "x*g >= 0 with equality only at x = 0 (" + sr.evidence + ")";
            } else {
                b.verdict = Verdict::Fails;
                b.evidence = "x*g is not positive away from 0 (" + sr.evidence + ")";
            }
        } else {
            // Grid fallback: strict positivity at every sampled x != 0 and
            // g(0) = 0 within rounding.
            const int N = 4001;
            bool any_zero = false, ok = true;
            double bad_x = 0.0;
            for (int i = 0; i < N; ++i) {
                double x = -window + 2.0 * window * i / (N - 1);
                if (x == 0.0) continue;
                double v;
                try {
                    v = x * g()(x);
                } catch (const EvalError&) {
                    any_zero = true;
                    break;
                }
                if (std::isnan(v) || std::abs(v) < 1e-13) {
                    any_zero = true;
                    bad_x = x;
                } else if (v < 0.0) {
                    ok = false;
                    bad_x = x;
                    break;
                }
            }
            double g0 = 0.0;
            try {
                g0 = g()(0.0);
            } catch (const EvalError&) {
                ok = false;
            }
            if (!ok) {
                b.verdict = Verdict::Fails;
                b.evidence = "x*g < 0 at x = " + fmtd(bad_x);
            } else if (any_zero || std::abs(g0) > 1e-12) {
                b.verdict = Verdict::Indeterminate;
                b.evidence = any_zero
                    ? "x*g vanishes (within rounding) at x = " + fmtd(bad_x)
                        + "; no exact certificate"
                    : "g(0) = " + fmtd(g0) + " is not 0";
            } else {
                b.verdict = Verdict::Holds;
                b.evidence = "x*g > 0 at all grid samples on [-" + fmtd(window) + ", "
                    + fmtd(window) + "] (grid evidence only)";
            }
        }
        rep.checks.push_back(std::move(b));
    }

    return rep;
}

ExprSignReport classify_expr_sign(const ExprPtr& e, double window) {
    ExprSignReport rep;

    // Exact route: polynomial sign signature via Sturm. Exponential factors
    // never change sign, so they may be stripped first.
    ExprPtr core = strip_exp_factors(e);
    std::optional<Polynomial> sig;
    std::string how;
    if (auto p = to_polynomial(core)) {
        sig = *p;
        how = "Sturm on " + p->to_string();
    } else if (auto sd = sign_decompose(core)) {
        auto poles = isolate_real_roots(sd->poles);
        if (!poles.empty()) {
            rep.evidence = "real pole near x = " + fmtd(poles.front().approx)
                + "; sign analysis skipped";
            return rep;
        }
        sig = sd->signature;
        how = "Sturm on sign signature " + sd->signature.to_string();
    }
    if (sig) {
        SignAnalysis sa = analyze_sign(*sig);
        rep.kind = sa.kind;
        rep.exact = true;
        rep.signature = *sig;
        rep.zeros = approx_roots(*sig);
        std::ostringstream ev;
        ev << sign_kind_name(sa.kind);
        if (!rep.zeros.empty()) {
            ev << ", zeros near";
            for (double r : rep.zeros) ev << ' ' << fmtd(r);
        }
        ev << " (" << how << ")";
        rep.evidence = ev.str();
        return rep;
    }

    // Numeric route: dense grid and tail asymptotics.
    const int N = 4001;
    bool has_pos = false, has_neg = false, ambiguous = false;
    double pos_x = 0.0, neg_x = 0.0;
    for (int i = 0; i < N; ++i) {
        double x = -window + 2.0 * window * i / (N - 1);
        double v;
        try {
            v = eval(e, x);
        } catch (const EvalError&) {
            ambiguous = true;
            continue;
        }
        if (std::isnan(v)) {
            ambiguous = true;
        } else if (v > 1e-13) {
            if (!has_pos) pos_x = x;
            has_pos = true;
        } else if (v < -1e-13) {
            if (!has_neg) neg_x = x;
            has_neg = true;
        } else {
            ambiguous = true;
        }
    }
    if (has_pos && has_neg) {
        rep.kind = SignKind::ChangesSign;
        rep.evidence = "sign change witnessed: f(" + fmtd(neg_x) + ") < 0 < f("
            + fmtd(pos_x) + ")";
        return rep;
    }
    auto tp = tail_sign(e, +1);
    auto tm = tail_sign(e, -1);
    if (ambiguous || !tp || !tm) {
        rep.evidence = "grid and tail evidence inconclusive on [-" + fmtd(window) + ", "
            + fmtd(window) + "]";
        return rep;
    }
    if (has_pos && *tp >= 0 && *tm >= 0) {
        rep.kind = SignKind::EverywherePositive;
        rep.evidence = "positive at all grid samples, both tails nonnegative (grid evidence)";
    } else if (has_neg && *tp <= 0 && *tm <= 0) {
        rep.kind = SignKind::EverywhereNegative;
        rep.evidence = "negative at all grid samples, both tails nonpositive (grid evidence)";
    } else if (!has_pos && !has_neg) {
        rep.evidence = "numerically zero on the whole grid; no exact certificate";
    } else {
        rep.evidence = "grid sign and tail asymptotics disagree";
    }
    return rep;
}

bool one_signed(const ExprSignReport& r) {
    if (!r.kind) return false;
    switch (*r.kind) {
        case SignKind::ChangesSign: return false;
        default: return true;
    }
}

} // namespace cyclescope
