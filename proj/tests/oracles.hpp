// Test-only oracles, kept independent of the implementation paths they check.
#ifndef ORLICZ_GAUSS_TESTS_ORACLES_HPP
#define ORLICZ_GAUSS_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

/// Composite-Simpson integral of g over [a, b].
inline double simpson(const std::function<double(double)>& g, double a, double b,
                      std::size_t intervals = 20000) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / static_cast<double>(intervals);
    double sum = g(a) + g(b);
    for (std::size_t i = 1; i < intervals; ++i) {
        const double x = a + h * static_cast<double>(i);
        sum += g(x) * (i % 2 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

/// Dense 1-d integral against the standard Gaussian: int g dgamma over
/// [-15, 15] (mass outside is ~5e-51).
inline double gauss_integral_1d(const std::function<double(double)>& g,
                                std::size_t intervals = 60000) {
    const double inv_sqrt_2pi = 0.3989422804014327;
    return simpson(
        [&](double x) { return g(x) * inv_sqrt_2pi * std::exp(-0.5 * x * x); },
        -15.0, 15.0, intervals);
}

/// Defining integral of (cosh-1)_*: int_0^y asinh(v) dv.
inline double cosh_m1_star_integral(double y, std::size_t intervals = 20000) {
    if (y == 0.0) return 0.0;
    return simpson([](double v) { return std::asinh(v); }, 0.0, y, intervals);
}

/// (2p-1)!! for integer p >= 1.
inline double double_factorial_moment(unsigned p) {
    double v = 1.0;
    for (unsigned k = 1; k <= p; ++k) v *= static_cast<double>(2 * k - 1);
    return v;
}

/// Central difference df/dx.
inline double central_diff(const std::function<double(double)>& g, double x,
                           double h = 1e-5) {
    return (g(x + h) - g(x - h)) / (2.0 * h);
}

}  // namespace oracles

#endif
