#include "isoclines.hpp"

#include "antiderivative.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace cyclescope {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kYCap = 1e6;

double safe_eval(const Coefficient& c, double x) {
    try {
        return c(x);
    } catch (const EvalError&) {
        return kNaN;
    }
}

void refine(std::vector<std::pair<double, double>>& out,
            const std::function<double(double)>& f, double x0, double y0, double x1,
            double y1, double ytol, int depth) {
    bool flat = std::isfinite(y0) && std::isfinite(y1) && std::abs(y1 - y0) <= ytol;
    if (depth <= 0 || std::abs(x1 - x0) < 1e-9 || flat) {
        if (std::isfinite(y1) && std::abs(y1) <= kYCap) out.emplace_back(x1, y1);
        return;
    }
    double xm = 0.5 * (x0 + x1);
    double ym = f(xm);
    refine(out, f, x0, y0, xm, ym, ytol, depth - 1);
    refine(out, f, xm, ym, x1, y1, ytol, depth - 1);
}

std::vector<std::pair<double, double>> sample_curve(const std::function<double(double)>& f,
                                                    double a, double b, int base) {
    // Coarse pass to estimate the vertical span, then adaptive refinement so
    // near-vertical sections near the interval ends stay resolved.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i <= 64; ++i) {
        double y = f(a + (b - a) * i / 64.0);
        if (std::isfinite(y) && std::abs(y) <= kYCap) {
            lo = std::min(lo, y);
            hi = std::max(hi, y);
        }
    }
    double ytol = lo <= hi ? (hi - lo) / 200.0 + 1e-9 : 1e-9;

    std::vector<std::pair<double, double>> out;
    double x_prev = a, y_prev = f(a);
    if (std::isfinite(y_prev) && std::abs(y_prev) <= kYCap) out.emplace_back(a, y_prev);
    for (int i = 1; i < base; ++i) {
        double x = a + (b - a) * i / (base - 1);
        double y = f(x);
        refine(out, f, x_prev, y_prev, x, y, ytol, 8);
        x_prev = x;
        y_prev = y;
    }
    return out;
}

} // namespace

IsoclineSet isoclines(const EquationSpec& spec, double x_lo, double x_hi,
                      int base_samples) {
    if (spec.n() != 2) throw std::invalid_argument("isoclines are defined for n = 2");
    if (spec.f(2).identically_zero())
        throw std::invalid_argument("isoclines need f_2 not identically zero");
    if (!(x_lo < x_hi)) throw std::invalid_argument("empty x range");

    const Coefficient& g = spec.g();
    const Coefficient& f2 = spec.f(2);
    Antiderivative F1 = Antiderivative::of(spec.f(1).expr());

    auto radicand = [&](double x) -> double {
        double den = safe_eval(f2, x);
        double num = -safe_eval(g, x);
        if (den == 0.0 || std::isnan(den) || std::isnan(num)) return kNaN;
        return num / den;
    };

    // Domain boundaries: zeros of g*f_2 inside the range (where a branch
    // meets y = F_1 or leaves along an asymptote of the radicand).
    IsoclineSet set;
    ExprPtr prod = ex_mul(g.expr(), f2.expr());
    double window = std::max(std::abs(x_lo), std::abs(x_hi));
    ExprSignReport rep = classify_expr_sign(prod, window);
    if (rep.exact) {
        for (double r : rep.zeros)
            if (x_lo < r && r < x_hi) set.boundary_points.push_back(r);
    } else {
        const int N = 4001;
        double px = x_lo, pv = safe_eval(g, px) * safe_eval(f2, px);
        for (int i = 1; i < N; ++i) {
            double x = x_lo + (x_hi - x_lo) * i / (N - 1);
            double v = safe_eval(g, x) * safe_eval(f2, x);
            if (std::isfinite(pv) && std::isfinite(v) && pv != 0.0
                && ((pv < 0) != (v < 0))) {
                double a = px, b = x, fa = pv;
                while (b - a > 1e-12 * (1.0 + std::abs(a))) {
                    double m = 0.5 * (a + b);
                    double fm = safe_eval(g, m) * safe_eval(f2, m);
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
                set.boundary_points.push_back(0.5 * (a + b));
            }
            px = x;
            pv = v;
        }
    }
    std::sort(set.boundary_points.begin(), set.boundary_points.end());

    std::vector<double> cuts;
    cuts.push_back(x_lo);
    for (double r : set.boundary_points) cuts.push_back(r);
    cuts.push_back(x_hi);

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b - a < 1e-10) continue;
        double rho_mid = radicand(0.5 * (a + b));
        if (!(rho_mid > 0.0)) continue;

        for (int sgn : {+1, -1}) {
            auto y_of = [&, sgn](double x) -> double {
                double rho = radicand(x);
                if (std::isnan(rho)) return kNaN;
                if (rho < 0.0) {
                    // Rounding at a boundary where the branch meets F_1.
                    if (rho > -1e-10) rho = 0.0;
                    else return kNaN;
                }
                return F1(x) + sgn * std::sqrt(rho);
            };
            IsoclineBranch br;
            br.sign = sgn;
            br.x_lo = a;
            br.x_hi = b;
            br.samples = sample_curve(y_of, a, b, base_samples);
            if (!br.samples.empty()) set.branches.push_back(std::move(br));
        }
    }

    // Tag the leftmost branch lying above y = F_1.
    IsoclineBranch* leftmost = nullptr;
    for (auto& br : set.branches)
        if (br.sign == +1 && (!leftmost || br.x_lo < leftmost->x_lo)) leftmost = &br;
    if (leftmost) leftmost->leftmost_upper = true;

    return set;
}

} // namespace cyclescope
