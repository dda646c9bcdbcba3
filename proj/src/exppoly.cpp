#include "exppoly.hpp"

#include <algorithm>
#include <cmath>

namespace cyclescope {

namespace {

constexpr std::size_t kMaxTerms = 24;

bool canonicalize(ExpSum& s) {
    std::sort(s.terms.begin(), s.terms.end(), [](const ExpTerm& u, const ExpTerm& v) {
        if (u.expo.degree() != v.expo.degree()) return u.expo.degree() < v.expo.degree();
        return u.expo.coeffs() < v.expo.coeffs();
    });
    std::vector<ExpTerm> merged;
    for (auto& t : s.terms) {
        if (t.coef.is_zero()) continue;
        if (!merged.empty() && merged.back().expo == t.expo) {
            merged.back().coef = merged.back().coef + t.coef;
            if (merged.back().coef.is_zero()) merged.pop_back();
        } else {
            merged.push_back(std::move(t));
        }
    }
    s.terms = std::move(merged);
    return s.terms.size() <= kMaxTerms;
}

std::optional<ExpSum> sum_add(const ExpSum& a, const ExpSum& b) {
    ExpSum r;
    r.terms = a.terms;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    if (!canonicalize(r)) return std::nullopt;
    return r;
}

ExpSum sum_neg(const ExpSum& a) {
    ExpSum r = a;
    for (auto& t : r.terms) t.coef = -t.coef;
    return r;
}

std::optional<ExpSum> sum_mul(const ExpSum& a, const ExpSum& b) {
    ExpSum r;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms)
            r.terms.push_back({ta.coef * tb.coef, ta.expo + tb.expo});
    if (!canonicalize(r)) return std::nullopt;
    return r;
}

ExpSum sum_one() {
    ExpSum s;
    s.terms.push_back({Polynomial(1L), Polynomial()});
    return s;
}

ExpSum sum_poly(Polynomial p) {
    ExpSum s;
    if (!p.is_zero()) s.terms.push_back({std::move(p), Polynomial()});
    return s;
}

// Cancel shared structure when both sides are single terms: common exp
// factor exactly, common polynomial factor via gcd, and constant
// denominators fold into the numerator.
void reduce(ExpRatio& r) {
    if (r.num.terms.size() == 1 && r.den.terms.size() == 1) {
        ExpTerm& n = r.num.terms[0];
        ExpTerm& d = r.den.terms[0];
        if (!d.expo.is_zero() || !n.expo.is_zero()) {
            Polynomial shifted = n.expo - d.expo;
            n.expo = std::move(shifted);
            d.expo = Polynomial();
        }
        Polynomial g = poly_gcd(n.coef, d.coef);
        if (g.degree() >= 1) {
            n.coef = poly_divmod(n.coef, g).first;
            d.coef = poly_divmod(d.coef, g).first;
        }
    }
    if (r.den.terms.size() == 1 && r.den.terms[0].coef.is_constant() &&
        r.den.terms[0].expo.is_zero()) {
        Rational c = r.den.terms[0].coef.constant_value();
        for (auto& t : r.num.terms) t.coef = t.coef * (Rational(1) / c);
        r.den = sum_one();
        canonicalize(r.num);
    }
}

std::optional<ExpRatio> ratio_mul(const ExpRatio& a, const ExpRatio& b) {
    auto n = sum_mul(a.num, b.num);
    auto d = sum_mul(a.den, b.den);
    if (!n || !d) return std::nullopt;
    ExpRatio r{std::move(*n), std::move(*d)};
    reduce(r);
    return r;
}

std::optional<ExpRatio> ratio_add(const ExpRatio& a, const ExpRatio& b) {
    auto n1 = sum_mul(a.num, b.den);
    auto n2 = sum_mul(b.num, a.den);
    auto d = sum_mul(a.den, b.den);
    if (!n1 || !n2 || !d) return std::nullopt;
    auto n = sum_add(*n1, *n2);
    if (!n) return std::nullopt;
    ExpRatio r{std::move(*n), std::move(*d)};
    reduce(r);
    return r;
}

std::optional<ExpRatio> convert(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Number:
            return ExpRatio{sum_poly(Polynomial(e->number)), sum_one()};
        case ExprKind::Variable:
            return ExpRatio{sum_poly(Polynomial::variable()), sum_one()};
        case ExprKind::Add: {
            auto a = convert(e->a), b = convert(e->b);
            if (!a || !b) return std::nullopt;
            return ratio_add(*a, *b);
        }
        case ExprKind::Sub: {
            auto a = convert(e->a), b = convert(e->b);
            if (!a || !b) return std::nullopt;
            ExpRatio nb{sum_neg(b->num), b->den};
            return ratio_add(*a, nb);
        }
        case ExprKind::Neg: {
            auto a = convert(e->a);
            if (!a) return std::nullopt;
            return ExpRatio{sum_neg(a->num), a->den};
        }
        case ExprKind::Mul: {
            auto a = convert(e->a), b = convert(e->b);
            if (!a || !b) return std::nullopt;
            return ratio_mul(*a, *b);
        }
        case ExprKind::Div: {
            auto a = convert(e->a), b = convert(e->b);
            if (!a || !b) return std::nullopt;
            if (b->num.is_zero()) return std::nullopt;
            ExpRatio inv{b->den, b->num};
            return ratio_mul(*a, inv);
        }
        case ExprKind::Pow: {
            auto a = convert(e->a);
            if (!a) return std::nullopt;
            int k = e->exponent;
            if (std::abs(k) > 20) return std::nullopt;
            bool recip = k < 0;
            unsigned n = static_cast<unsigned>(recip ? -k : k);
            ExpRatio acc{sum_one(), sum_one()};
            for (unsigned i = 0; i < n; ++i) {
                auto next = ratio_mul(acc, *a);
                if (!next) return std::nullopt;
                acc = std::move(*next);
            }
            if (recip) {
                if (acc.num.is_zero()) return std::nullopt;
                std::swap(acc.num, acc.den);
            }
            return acc;
        }
        case ExprKind::Exp: {
            auto a = convert(e->a);
            if (!a) return std::nullopt;
            // exponent argument must itself be a polynomial
            if (a->den.terms.size() != 1 || !a->den.terms[0].coef.is_constant() ||
                !a->den.terms[0].expo.is_zero())
                return std::nullopt;
            Polynomial arg;
            if (!a->num.is_zero()) {
                if (a->num.terms.size() != 1 || !a->num.terms[0].expo.is_zero())
                    return std::nullopt;
                arg = a->num.terms[0].coef *
                      (Rational(1) / a->den.terms[0].coef.constant_value());
            }
            ExpSum n;
            n.terms.push_back({Polynomial(1L), std::move(arg)});
            return ExpRatio{std::move(n), sum_one()};
        }
    }
    return std::nullopt;
}

// sign of lead * x^deg as x -> dir*inf, folded onto |x|^deg convention
double directed_lead(double lead, int deg, int dir) {
    return (dir < 0 && (deg & 1)) ? -lead : lead;
}

int expo_tail_sign(const Polynomial& p, int dir) {
    if (p.degree() <= 0) return 0;
    double dl = directed_lead(to_double(p.leading()), p.degree(), dir);
    return dl > 0 ? 1 : -1;
}

// +1 / -1: e1 dominates / is dominated; 0: difference tends to constant c.
int compare_expo(const Polynomial& e1, const Polynomial& e2, int dir, double& c) {
    Polynomial diff = e1 - e2;
    if (diff.degree() <= 0) {
        c = diff.is_zero() ? 0.0 : to_double(diff.constant_value());
        return 0;
    }
    c = 0.0;
    return expo_tail_sign(diff, dir);
}

struct Dominant {
    bool ok = false;
    Polynomial expo;
    int deg = 0;
    double lead = 0.0;   // directed (sign valid at dir), nonzero when ok
};

Dominant dominant_term(const ExpSum& s, int dir) {
    Dominant d;
    if (s.is_zero()) return d;

    Polynomial rep = s.terms[0].expo;
    std::vector<std::pair<const Polynomial*, double>> group;   // coef, e^offset
    group.emplace_back(&s.terms[0].coef, 1.0);
    for (std::size_t i = 1; i < s.terms.size(); ++i) {
        double c = 0.0;
        int cmp = compare_expo(s.terms[i].expo, rep, dir, c);
        if (cmp > 0) {
            rep = s.terms[i].expo;
            group.clear();
            group.emplace_back(&s.terms[i].coef, 1.0);
        } else if (cmp == 0) {
            group.emplace_back(&s.terms[i].coef, std::exp(c));
        }
    }

    // Effective double-precision coefficients of the co-dominant group.
    int maxdeg = 0;
    for (auto& [p, w] : group) maxdeg = std::max(maxdeg, p->degree());
    std::vector<double> eff(static_cast<std::size_t>(maxdeg) + 1, 0.0);
    for (auto& [p, w] : group)
        for (int k = 0; k <= p->degree(); ++k) eff[k] += w * to_double(p->coeff(k));
    double mag = 0.0;
    for (double v : eff) mag = std::max(mag, std::fabs(v));
    for (int k = maxdeg; k >= 0; --k) {
        if (std::fabs(eff[k]) > 1e-10 * mag) {
            d.ok = true;
            d.expo = rep;
            d.deg = k;
            d.lead = directed_lead(eff[k], k, dir);
            return d;
        }
    }
    return d;   // dominant-group cancellation: give up
}

} // namespace

std::optional<ExpRatio> to_exp_ratio(const ExprPtr& e) {
    auto r = convert(e);
    if (r && r->den.is_zero()) return std::nullopt;
    return r;
}

std::optional<SignDecomposition> sign_decompose(const ExprPtr& e) {
    auto r = to_exp_ratio(e);
    if (!r) return std::nullopt;
    SignDecomposition d;
    if (r->num.is_zero()) {
        d.signature = Polynomial();
        d.poles = Polynomial(1L);
        return d;
    }
    if (r->num.terms.size() != 1 || r->den.terms.size() != 1) return std::nullopt;
    d.signature = r->num.terms[0].coef * r->den.terms[0].coef;
    d.poles = r->den.terms[0].coef.is_constant() ? Polynomial(1L) : r->den.terms[0].coef;
    return d;
}

GrowthOrder growth_order(const ExpRatio& r, int dir) {
    GrowthOrder g;
    if (r.num.is_zero()) {
        g.kind = GrowthOrder::Kind::BoundedLimit;
        g.sign = 0;
        g.scale = 0.0;
        return g;
    }
    Dominant n = dominant_term(r.num, dir);
    Dominant d = dominant_term(r.den, dir);
    if (!n.ok || !d.ok) return g;

    Polynomial expo_net = n.expo - d.expo;
    g.power = n.deg - d.deg;
    g.scale = std::fabs(n.lead / d.lead);
    g.sign = (n.lead * d.lead) > 0 ? 1 : -1;

    int es = expo_tail_sign(expo_net, dir);
    if (es > 0) {
        g.kind = GrowthOrder::Kind::ExpGrow;
        g.expo = std::move(expo_net);
    } else if (es < 0) {
        g.kind = GrowthOrder::Kind::ExpDecay;
        g.expo = std::move(expo_net);
    } else {
        g.kind = GrowthOrder::Kind::Power;
        if (!expo_net.is_zero()) g.scale *= std::exp(to_double(expo_net.constant_value()));
    }
    return g;
}

GrowthOrder growth_order(const ExprPtr& e, int dir) {
    auto r = to_exp_ratio(e);
    if (!r) return GrowthOrder{};
    return growth_order(*r, dir);
}

GrowthOrder integral_growth(const GrowthOrder& f, int dir) {
    GrowthOrder g;
    switch (f.kind) {
        case GrowthOrder::Kind::Unknown:
        case GrowthOrder::Kind::BoundedLimit:
        case GrowthOrder::Kind::Log:
            // Bounded-with-unknown-limit integrands can still produce a
            // linearly growing integral, so nothing sound can be said.
            if (f.kind == GrowthOrder::Kind::BoundedLimit && f.sign == 0 && f.scale == 0.0) {
                g.kind = GrowthOrder::Kind::BoundedLimit;   // integral of zero
                g.scale = 0.0;
            }
            return g;
        case GrowthOrder::Kind::ExpDecay:
            g.kind = GrowthOrder::Kind::BoundedLimit;
            g.sign = 0;
            return g;
        case GrowthOrder::Kind::ExpGrow: {
            // int P e^E ~ (P/E') e^E by parts; E' has degree >= 0 and its
            // directed sign tells whether F inherits or flips f's sign.
            Polynomial ep = f.expo.derivative();
            int epdeg = ep.degree();
            double eplead = directed_lead(to_double(ep.leading()), epdeg, dir);
            g.kind = GrowthOrder::Kind::ExpGrow;
            g.expo = f.expo;
            g.power = f.power - epdeg;
            g.scale = f.scale / std::fabs(to_double(ep.leading()));
            g.sign = eplead > 0 ? f.sign : -f.sign;
            return g;
        }
        case GrowthOrder::Kind::Power: {
            if (f.power < -1.0 - 1e-9) {
                g.kind = GrowthOrder::Kind::BoundedLimit;
                g.sign = 0;
                return g;
            }
            int fsign = dir > 0 ? f.sign : -f.sign;
            if (std::fabs(f.power + 1.0) <= 1e-9) {
                g.kind = GrowthOrder::Kind::Log;
                g.sign = fsign;
                g.scale = f.scale;
                g.log_factor = true;
                return g;
            }
            g.kind = GrowthOrder::Kind::Power;
            g.power = f.power + 1.0;
            g.scale = f.scale / (f.power + 1.0);
            g.sign = fsign;
            return g;
        }
    }
    return g;
}

GrowthOrder sqrt_growth(const GrowthOrder& f) {
    GrowthOrder g;
    switch (f.kind) {
        case GrowthOrder::Kind::Unknown:
        case GrowthOrder::Kind::Log:
            return g;
        case GrowthOrder::Kind::BoundedLimit:
            g.kind = GrowthOrder::Kind::BoundedLimit;
            g.sign = f.sign >= 0 ? f.sign : 0;
            return g;
        case GrowthOrder::Kind::ExpDecay:
        case GrowthOrder::Kind::ExpGrow:
        case GrowthOrder::Kind::Power:
            if (f.sign != 1) return g;   // needs an eventually positive radicand
            g.kind = f.kind;
            g.sign = 1;
            g.power = f.power / 2.0;
            g.scale = std::sqrt(f.scale);
            g.expo = f.expo * Rational(1, 2);
            return g;
    }
    return g;
}

const char* limit_class_name(LimitClass c) {
    switch (c) {
        case LimitClass::Finite: return "finite";
        case LimitClass::PlusInfinity: return "+inf";
        case LimitClass::MinusInfinity: return "-inf";
        case LimitClass::Unknown: return "unknown";
    }
    return "?";
}

LimitClass limit_class(const GrowthOrder& g) {
    switch (g.kind) {
        case GrowthOrder::Kind::Unknown: return LimitClass::Unknown;
        case GrowthOrder::Kind::BoundedLimit:
        case GrowthOrder::Kind::ExpDecay: return LimitClass::Finite;
        case GrowthOrder::Kind::Log:
        case GrowthOrder::Kind::ExpGrow:
            return g.sign > 0 ? LimitClass::PlusInfinity
                              : (g.sign < 0 ? LimitClass::MinusInfinity : LimitClass::Unknown);
        case GrowthOrder::Kind::Power:
            if (g.power > 1e-9)
                return g.sign > 0 ? LimitClass::PlusInfinity
                                  : (g.sign < 0 ? LimitClass::MinusInfinity : LimitClass::Unknown);
            return LimitClass::Finite;
    }
    return LimitClass::Unknown;
}

std::optional<int> compare_growth(const GrowthOrder& a, const GrowthOrder& b, int dir) {
    using K = GrowthOrder::Kind;
    if (a.kind == K::Unknown || b.kind == K::Unknown) return std::nullopt;

    auto diverges = [](const GrowthOrder& g) {
        return g.kind == K::ExpGrow || g.kind == K::Log ||
               (g.kind == K::Power && g.power > 1e-9);
    };
    bool da = diverges(a), db = diverges(b);
    if (!da && !db) return 0;
    if (da && !db) return 1;
    if (!da && db) return -1;

    if (a.kind == K::ExpGrow || b.kind == K::ExpGrow) {
        if (a.kind != K::ExpGrow) return -1;
        if (b.kind != K::ExpGrow) return 1;
        double c = 0.0;
        int cmp = compare_expo(a.expo, b.expo, dir, c);
        if (cmp != 0) return cmp;
    }
    if (std::fabs(a.power - b.power) > 1e-9) return a.power > b.power ? 1 : -1;
    bool la = a.log_factor || a.kind == K::Log;
    bool lb = b.log_factor || b.kind == K::Log;
    if (la != lb) return la ? 1 : -1;
    return 0;
}

} // namespace cyclescope
