#ifndef ORLICZ_GAUSS_GAUSS_SPACE_HPP
#define ORLICZ_GAUSS_GAUSS_SPACE_HPP

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "orlicz_gauss/core.hpp"
#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/quadrature.hpp"

namespace orlicz_gauss {

/// int f dgamma by the rule; +infinity if any evaluation overflows.
inline double integrate(const FunctionHandle& f, const GaussQuadrature& rule) {
    if (f.dim() != rule.dim())
        throw std::invalid_argument("integrate: function/rule dimension mismatch");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    return chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = f(std::span<const double>(rule.node(i), d));
        return clamp_overflow(rule.weight(i) * clamp_overflow(v));
    });
}

/// Node-sample cache: |f| and f evaluated once per rule, reused by the norm
/// bisections.
inline std::vector<double> sample_values(const FunctionHandle& f,
                                         const GaussQuadrature& rule) {
    if (f.dim() != rule.dim())
        throw std::invalid_argument("sample_values: dimension mismatch");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = f(std::span<const double>(rule.node(i), d));
    return out;
}

inline double mean(const FunctionHandle& f, const GaussQuadrature& rule) {
    if (f.is_hermite()) return f.hermite().exact_mean();
    return integrate(f, rule);
}

/// cov(f,g) = int (f - mean f)(g - mean g) dgamma.
inline double covariance(const FunctionHandle& f, const FunctionHandle& g,
                         const GaussQuadrature& rule) {
    if (f.dim() != g.dim())
        throw std::invalid_argument("covariance: dimension mismatch");
    const double mf = mean(f, rule);
    const double mg = mean(g, rule);
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    return chunked_weighted_sum(n, [&](std::size_t i) {
        const std::span<const double> x(rule.node(i), d);
        return rule.weight(i) * (f(x) - mf) * (g(x) - mg);
    });
}

/// f - int f dgamma, with derivative data carried over.
inline FunctionHandle centered(const FunctionHandle& f, const GaussQuadrature& rule) {
    return f.plus_const(-mean(f, rule));
}

/// ||f||_{L^r(gamma)} = (int |f|^r dgamma)^{1/r}, r > 0.
inline double lp_norm(const FunctionHandle& f, double r, const GaussQuadrature& rule) {
    if (r <= 0.0) throw std::invalid_argument("lp_norm: exponent must be positive");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    const double m = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = std::abs(f(std::span<const double>(rule.node(i), d)));
        return clamp_overflow(rule.weight(i) * clamp_overflow(std::pow(v, r)));
    });
    return std::isfinite(m) ? std::pow(m, 1.0 / r) : kInf;
}

/// int |grad f|^2 dgamma.
inline double dirichlet_energy(const FunctionHandle& f, const GaussQuadrature& rule) {
    if (!f.has_gradient())
        throw std::domain_error("dirichlet_energy: no gradient for " + f.describe());
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    return chunked_weighted_sum(n, [&](std::size_t i) {
        return rule.weight(i) *
               f.gradient_sq_norm(std::span<const double>(rule.node(i), d));
    });
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_GAUSS_SPACE_HPP
