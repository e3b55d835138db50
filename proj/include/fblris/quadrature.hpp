// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <utility>

namespace fblris {

namespace detail {

template <class F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth,
                             int force) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || (force <= 0 && std::fabs(delta) <= 15.0 * tol))
        return left + right + delta / 15.0;
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1,
                                 force - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1,
                                 force - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b]. The first force_depth levels are always
// subdivided so narrow features cannot be skipped by an accidental agreement
// of the coarse estimates.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-10,
                 int max_depth = 48, int force_depth = 5) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth,
                                         force_depth);
}

// Semi-infinite integral of an eventually-decaying integrand: panels of
// doubling width; stops after two consecutive negligible panels once some
// mass has been seen.
template <class F>
double integrate_semi_inf(const F& f, double a, double tol = 1e-10) {
    double total = 0.0;
    double lo = a;
    double width = 1.0;
    int quiet = 0;
    bool seen_mass = false;
    for (int panel = 0; panel < 64; ++panel) {
        const double hi = lo + width;
        const double part = integrate(f, lo, hi, tol * 0.25);
        total += part;
        if (std::fabs(part) >= tol * 0.25) {
            seen_mass = true;
            quiet = 0;
        } else if (seen_mass && ++quiet >= 2) {
            break;
        }
        lo = hi;
        width *= 2.0;
    }
    return total;
}

}  // namespace fblris
