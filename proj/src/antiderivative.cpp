#include "antiderivative.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cyclescope {

namespace {

double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double m,
             double fm, double b, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, flm, m, fm);
    const double right = simpson(m, fm, frm, b, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1);
}

// Nearest ladder point between x and the origin. Ladder: multiples of 1/8 up
// to 16, then 32, 64, ... doubling.
double ladder_floor(double x) {
    const double ax = std::abs(x);
    double a;
    if (ax <= 16.0) {
        a = std::floor(ax * 8.0) / 8.0;
    } else {
        a = 16.0;
        while (a * 2.0 <= ax) a *= 2.0;
    }
    return x < 0 ? -a : a;
}

// Ladder points from the origin out to |a|, inclusive, on a's side.
std::vector<double> ladder_chain(double a) {
    std::vector<double> pts;
    const double sign = a < 0 ? -1.0 : 1.0;
    const double aa = std::abs(a);
    pts.push_back(0.0);
    for (int k = 1; k <= 128 && k / 8.0 <= aa; ++k) pts.push_back(sign * k / 8.0);
    for (double p = 32.0; p <= aa; p *= 2.0) pts.push_back(sign * p);
    return pts;
}

} // namespace

struct Antiderivative::State {
    std::shared_ptr<const Polynomial> poly;
    std::function<double(double)> f;
    double tol = 1e-10;
    std::map<double, double> anchors;
    std::mutex mutex;

    double anchor_value(double a) {
        if (a == 0.0) return 0.0;
        std::vector<double> pts = ladder_chain(a);
        std::size_t start = pts.size();
        double base = 0.0;
        {
            std::lock_guard<std::mutex> lock(mutex);
            for (std::size_t i = pts.size(); i-- > 0;) {
                auto it = anchors.find(pts[i]);
                if (it != anchors.end() || pts[i] == 0.0) {
                    start = i + 1;
                    base = pts[i] == 0.0 ? 0.0 : it->second;
                    break;
                }
            }
        }
        if (start >= pts.size()) return base;
        // Values depend only on the ladder, never on who computes them, so the
        // quadrature can run unlocked; a racing thread would insert identical
        // numbers.
        const double panel_tol = tol / 256.0;
        std::vector<std::pair<double, double>> fresh;
        for (std::size_t i = start; i < pts.size(); ++i) {
            base += integrate_adaptive(f, pts[i - 1], pts[i], panel_tol);
            fresh.emplace_back(pts[i], base);
        }
        std::lock_guard<std::mutex> lock(mutex);
        for (const auto& kv : fresh) anchors.emplace(kv.first, kv.second);
        return base;
    }
};

Antiderivative::Antiderivative(Polynomial p) : state_(std::make_shared<State>()) {
    state_->poly = std::make_shared<const Polynomial>(p.antiderivative());
}

Antiderivative::Antiderivative(std::function<double(double)> f, double abs_tol)
    : state_(std::make_shared<State>()) {
    state_->f = std::move(f);
    state_->tol = abs_tol;
}

Antiderivative Antiderivative::of(const ExprPtr& e, double abs_tol) {
    if (auto p = to_polynomial(e)) {
        return Antiderivative(*p);
    }
    ExprPtr held = e;
    return Antiderivative([held](double x) { return eval(held, x); }, abs_tol);
}

double Antiderivative::operator()(double x) const {
    if (state_->poly) return state_->poly->eval(x);
    if (x == 0.0) return 0.0;
    if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
    const double a = ladder_floor(x);
    return state_->anchor_value(a) + integrate_adaptive(state_->f, a, x, state_->tol / 4.0);
}

bool Antiderivative::exact() const { return state_->poly != nullptr; }

const Polynomial* Antiderivative::polynomial() const { return state_->poly.get(); }

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol) {
    if (a == b) return 0.0;
    if (a > b) return -integrate_adaptive(f, b, a, abs_tol);
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = simpson(a, fa, fm, b, fb);
    return adapt(f, a, fa, m, fm, b, fb, whole, abs_tol, 48);
}

} // namespace cyclescope
