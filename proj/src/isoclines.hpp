#pragma once

#include "equation.hpp"

#include <utility>
#include <vector>

namespace cyclescope {

// One branch of the zero-isocline y(x) = F_1(x) +- sqrt(-g(x)/f_2(x)) of a
// second-order (n = 2) system, over a maximal subinterval where the radicand
// is positive.
struct IsoclineBranch {
    int sign = +1;                 // +1 upper branch, -1 lower
    double x_lo = 0.0, x_hi = 0.0; // domain, clipped to the requested range
    bool leftmost_upper = false;   // the leftmost branch above y = F_1
    std::vector<std::pair<double, double>> samples;
};

struct IsoclineSet {
    std::vector<IsoclineBranch> branches;
    // Where the domain endpoints came from: isolated zeros of g*f_2 inside
    // the range (branch ends meet y = F_1 or run off along an asymptote).
    std::vector<double> boundary_points;
};

// Computes the zero-isocline branches over [x_lo, x_hi]. Branch tables are
// sampled adaptively so steep sections stay resolved. Throws
// std::invalid_argument unless n = 2 and f_2 is not identically zero.
IsoclineSet isoclines(const EquationSpec& spec, double x_lo, double x_hi,
                      int base_samples = 129);

} // namespace cyclescope
