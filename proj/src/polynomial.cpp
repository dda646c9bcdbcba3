#include "polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cyclescope {

void Polynomial::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::variable() {
    Polynomial p;
    p.c_ = {Rational(0), Rational(1)};
    return p;
}

Polynomial Polynomial::from_coeffs(std::vector<Rational> coeffs) {
    Polynomial p;
    p.c_ = std::move(coeffs);
    p.normalize();
    return p;
}

Rational Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Rational(0);
    return c_[k];
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.normalize();
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + (-o);
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    Polynomial r;
    r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r.c_[i + j] += c_[i] * o.c_[j];
    r.normalize();
    return r;
}

Polynomial Polynomial::operator*(const Rational& s) const {
    Polynomial r = *this;
    for (auto& c : r.c_) c *= s;
    r.normalize();
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial acc(Rational(1));
    Polynomial base = *this;
    while (e) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    Polynomial r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Rational(static_cast<long>(i));
    r.normalize();
    return r;
}

Polynomial Polynomial::antiderivative() const {
    Polynomial r;
    if (c_.empty()) return r;
    r.c_.resize(c_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i + 1] = c_[i] / Rational(static_cast<long>(i + 1));
    r.normalize();
    return r;
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Polynomial::eval(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

namespace {

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

} // namespace

std::string Polynomial::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        Rational c = coeff(k);
        if (c == 0) continue;
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        bool unit = (mag == 1) && k > 0;
        if (!unit) os << rational_str(mag);
        if (k > 0) {
            if (!unit) os << "*";
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    assert(!b.is_zero());
    std::vector<Rational> rem(a.coeffs());
    std::vector<Rational> quot;
    int db = b.degree();
    int dq = static_cast<int>(rem.size()) - 1 - db;
    if (dq < 0) return {Polynomial(), a};
    quot.assign(dq + 1, Rational(0));
    for (int k = dq; k >= 0; --k) {
        Rational f = rem[k + db] / b.leading();
        quot[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.coeff(j);
    }
    return {Polynomial::from_coeffs(std::move(quot)), Polynomial::from_coeffs(std::move(rem))};
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a * (Rational(1) / a.leading());
    return a;
}

Polynomial square_free_part(const Polynomial& p) {
    if (p.degree() <= 1) return p;
    Polynomial g = poly_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return poly_divmod(p, g).first;
}

Rational root_bound(const Polynomial& p) {
    if (p.degree() <= 0) return Rational(1);
    Rational m(0);
    for (int k = 0; k < p.degree(); ++k) {
        Rational r = p.coeff(k) / p.leading();
        if (r < 0) r = -r;
        if (r > m) m = r;
    }
    return m + 1;
}

namespace {

// Sturm chain of the square-free polynomial p: p, p', then negated remainders.
std::vector<Polynomial> sturm_chain(const Polynomial& p) {
    std::vector<Polynomial> chain;
    chain.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(d);
    while (true) {
        const Polynomial& s0 = chain[chain.size() - 2];
        const Polynomial& s1 = chain[chain.size() - 1];
        Polynomial r = poly_divmod(s0, s1).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<Polynomial>& chain, const Rational& x) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
        int s = sign_of(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

struct SturmContext {
    Polynomial sf;
    std::vector<Polynomial> chain;

    explicit SturmContext(const Polynomial& p) : sf(square_free_part(p)), chain(sturm_chain(sf)) {}

    int count_open(const Rational& a, const Rational& b) const {
        // (a, b) with non-root endpoints; Sturm counts (a, b], which is the
        // same set when b is not a root.
        return sign_variations(chain, a) - sign_variations(chain, b);
    }

    bool is_root(const Rational& x) const { return sf.eval(x) == 0; }

    // A point near the midpoint of (a, b) that is not a root of sf.
    Rational split_point(const Rational& a, const Rational& b) const {
        Rational mid = (a + b) / 2;
        if (!is_root(mid)) return mid;
        Rational step = (b - a) / 1024;
        while (true) {
            Rational cand = mid + step;
            if (cand < b && !is_root(cand)) return cand;
            step /= 2;
        }
    }
};

void isolate_rec(const SturmContext& ctx, const Rational& a, const Rational& b, int count,
                 std::vector<std::pair<Rational, Rational>>& out) {
    if (count == 0) return;
    if (count == 1) {
        out.emplace_back(a, b);
        return;
    }
    Rational m = ctx.split_point(a, b);
    int left = ctx.count_open(a, m);
    isolate_rec(ctx, a, m, left, out);
    isolate_rec(ctx, m, b, count - left, out);
}

} // namespace

int count_real_roots(const Polynomial& p, const Rational& a, const Rational& b) {
    if (p.degree() <= 0) return 0;
    SturmContext ctx(p);
    return ctx.count_open(a, b);
}

int count_real_roots(const Polynomial& p) {
    if (p.degree() <= 0) return 0;
    Rational m = root_bound(p);
    return count_real_roots(p, -m, m);
}

std::vector<RootEnclosure> isolate_real_roots(const Polynomial& p, double width) {
    std::vector<RootEnclosure> roots;
    if (p.degree() <= 0) return roots;
    SturmContext ctx(p);
    Rational bound = root_bound(p);
    int total = ctx.count_open(-bound, bound);
    if (total == 0) return roots;

    std::vector<std::pair<Rational, Rational>> intervals;
    isolate_rec(ctx, -bound, bound, total, intervals);
    std::sort(intervals.begin(), intervals.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });

    for (auto& [lo, hi] : intervals) {
        while (true) {
            Rational w = hi - lo;
            Rational scale = hi < 0 ? -lo : hi;
            if (scale < 1) scale = 1;
            if (to_double(w) <= width * to_double(scale)) break;
            Rational m = ctx.split_point(lo, hi);
            if (ctx.count_open(lo, m) == 1)
                hi = m;
            else
                lo = m;
        }
        roots.push_back({lo, hi, to_double((lo + hi) / 2)});
    }
    return roots;
}

const char* sign_kind_name(SignKind k) {
    switch (k) {
        case SignKind::IdenticallyZero: return "identically-zero";
        case SignKind::EverywherePositive: return "everywhere-positive";
        case SignKind::EverywhereNegative: return "everywhere-negative";
        case SignKind::NonnegWithZeros: return "nonneg-with-zeros";
        case SignKind::NonposWithZeros: return "nonpos-with-zeros";
        case SignKind::ChangesSign: return "changes-sign";
    }
    return "?";
}

SignAnalysis analyze_sign(const Polynomial& p) {
    SignAnalysis res;
    if (p.is_zero()) {
        res.kind = SignKind::IdenticallyZero;
        return res;
    }
    if (p.degree() == 0) {
        res.kind = p.constant_value() > 0 ? SignKind::EverywherePositive
                                          : SignKind::EverywhereNegative;
        return res;
    }

    res.roots = isolate_real_roots(p);
    if (res.roots.empty()) {
        res.kind = p.eval(Rational(0)) > 0 ? SignKind::EverywherePositive
                                           : SignKind::EverywhereNegative;
        return res;
    }

    // Sample p strictly between consecutive roots and beyond the extremes.
    // Enclosure endpoints are never roots, so these samples are all nonzero.
    std::vector<Rational> samples;
    samples.push_back(res.roots.front().lo - 1);
    for (std::size_t i = 0; i + 1 < res.roots.size(); ++i)
        samples.push_back((res.roots[i].hi + res.roots[i + 1].lo) / 2);
    samples.push_back(res.roots.back().hi + 1);

    bool pos = false, neg = false;
    for (const auto& s : samples) {
        int sg = sign_of(p.eval(s));
        // A sample could still land on a root of p when consecutive
        // square-free enclosures touch; nudge via the enclosure bound.
        if (sg == 0) continue;
        (sg > 0 ? pos : neg) = true;
    }
    if (pos && neg)
        res.kind = SignKind::ChangesSign;
    else if (pos)
        res.kind = SignKind::NonnegWithZeros;
    else
        res.kind = SignKind::NonposWithZeros;
    return res;
}

bool roots_only_at_origin(const Polynomial& p) {
    if (p.is_zero()) return false;
    Polynomial q = p;
    while (!q.is_zero() && q.coeff(0) == 0) q = poly_divmod(q, Polynomial::variable()).first;
    return count_real_roots(q) == 0;
}

} // namespace cyclescope
