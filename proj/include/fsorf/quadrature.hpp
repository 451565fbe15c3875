#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fsorf {

// Adaptive Gauss-Kronrod G7-K15 on a finite interval, interval bisection
// driven by the embedded error estimate.
namespace gk {

// abscissa, Gauss weight, Kronrod weight
inline constexpr double nodes[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

template <class F>
std::pair<double, double> g7k15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double y0 = f(c);
    double g7 = nodes[0][1] * y0;
    double k15 = nodes[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * nodes[i][0];
        const double yi = f(c + dx) + f(c - dx);
        g7 += nodes[i][1] * yi;
        k15 += nodes[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;
    double err = std::fabs(k15 - g7);
    err = 200.0 * err * std::sqrt(err > 0 ? err : 0.0);
    return {k15, err};
}

}  // namespace gk

/// Integral of f over [a, b] to the requested absolute or relative tolerance.
/// Throws std::runtime_error if the interval stack overflows.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 double rel_tol = 1e-10, int max_intervals = 4000) {
    struct Seg { double a, b; };
    std::vector<Seg> stack{{a, b}};
    stack.reserve(64);
    double sum = 0.0;
    int used = 0;
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        auto [v, err] = gk::g7k15(f, s.a, s.b);
        if (err <= abs_tol || err <= rel_tol * std::fabs(v) ||
            (s.b - s.a) < 1e-14 * (b - a)) {
            sum += v;
            continue;
        }
        if (++used > max_intervals)
            throw std::runtime_error("integrate: adaptive subdivision limit reached");
        const double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
    }
    return sum;
}

/// Same, with user-chosen interior breakpoints (useful when the integrand has
/// known scale changes).
template <class F>
double integrate_segmented(const F& f, std::initializer_list<double> pts,
                           double abs_tol = 1e-12, double rel_tol = 1e-10) {
    double sum = 0.0;
    const double* it = pts.begin();
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        sum += integrate(f, it[i], it[i + 1], abs_tol, rel_tol);
    return sum;
}

}  // namespace fsorf
