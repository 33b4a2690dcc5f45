#ifndef ORLICZ_GAUSS_OU_SEMIGROUP_HPP
#define ORLICZ_GAUSS_OU_SEMIGROUP_HPP

#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/gauss_space.hpp"
#include "orlicz_gauss/orlicz_norms.hpp"
#include "orlicz_gauss/quadrature.hpp"

namespace orlicz_gauss {

/// How to realize P_t: Mehler quadrature for any handle, or the exact
/// spectral action on Hermite expansions. t may be +infinity (P_inf f = mean).
struct SemigroupPlan {
    enum class Representation { Mehler, HermiteSpectral };
    double t = 0.0;
    Representation representation = Representation::Mehler;
};

/// Exact eigen-action on a finite expansion: c_alpha -> e^{-t|alpha|} c_alpha.
inline HermiteExpansion hermite_apply(const HermiteExpansion& f, double t) {
    if (t < 0.0) throw std::domain_error("hermite_apply: t must be >= 0");
    return f.semigroup(t);
}

/// P_t f by the Mehler formula: averages f(e^{-t}x + sqrt(1-e^{-2t}) y) over
/// y ~ gamma using inner_rule. Returns a handle; gradient and laplacian are
/// carried along via nabla P_t f = e^{-t} P_t nabla f when f has them.
inline FunctionHandle mehler_apply(const FunctionHandle& f, double t,
                                   const GaussQuadrature& inner_rule) {
    if (t < 0.0) throw std::domain_error("mehler_apply: t must be >= 0");
    if (f.dim() != inner_rule.dim())
        throw std::invalid_argument("mehler_apply: rule dimension mismatch");
    if (t == 0.0) return f;
    if (std::isinf(t)) {
        const double m = mean(f, inner_rule);
        if (f.is_hermite())
            return FunctionHandle(HermiteExpansion::constant(f.dim(), m));
        return FunctionHandle(builtins::constant(f.dim(), m));
    }

    const double decay = std::exp(-t);
    const double spread = std::sqrt(-std::expm1(-2.0 * t));
    auto base = std::make_shared<FunctionHandle>(f);
    auto rule = std::make_shared<GaussQuadrature>(inner_rule);
    const std::size_t n = f.dim();

    auto average = [base, rule, decay, spread, n](std::span<const double> x,
                                                  auto&& pointwise) {
        std::vector<double> y(n);
        CompensatedSum sum;
        for (std::size_t j = 0; j < rule->size(); ++j) {
            const double* node = rule->node(j);
            for (std::size_t d = 0; d < n; ++d)
                y[d] = decay * x[d] + spread * node[d];
            sum.add(rule->weight(j) * pointwise(std::span<const double>(y)));
        }
        return sum.value();
    };

    BuiltinFunction out(
        "mehler(" + f.describe() + ",t=" + std::to_string(t) + ")", n,
        [base, average](std::span<const double> x) {
            return average(x, [&](std::span<const double> y) { return (*base)(y); });
        });
    if (f.has_gradient()) {
        out.with_gradient([base, average, decay, n](std::span<const double> x,
                                                    std::span<double> g) {
            std::vector<double> gy(n);
            for (std::size_t i = 0; i < n; ++i) {
                g[i] = decay * average(x, [&](std::span<const double> y) {
                           base->gradient(y, gy);
                           return gy[i];
                       });
            }
        });
    }
    if (f.has_laplacian()) {
        out.with_laplacian([base, average, decay](std::span<const double> x) {
            return decay * decay * average(x, [&](std::span<const double> y) {
                       return base->laplacian(y);
                   });
        });
    }
    return FunctionHandle(std::move(out));
}

inline FunctionHandle apply(const SemigroupPlan& plan, const FunctionHandle& f,
                            const GaussQuadrature& inner_rule) {
    if (plan.representation == SemigroupPlan::Representation::HermiteSpectral)
        return FunctionHandle(hermite_apply(f.hermite(), plan.t));
    return mehler_apply(f, plan.t, inner_rule);
}

/// Generator of the OU semigroup: -delta . nabla.
inline FunctionHandle generator_apply(const FunctionHandle& f) {
    return f.delta_dot_nabla().scaled(-1.0);
}

/// u(x) = int_0^inf e^{-t} P_t f(x) dt, the solution of delta.nabla u + u = f.
/// Hermite input: exact c_alpha -> c_alpha / (1 + |alpha|). Builtin input:
/// substitution s = e^{-t} absorbs the exponential weight exactly, leaving a
/// Gauss-Legendre integral of s -> P_{-log s} f(x) over (0,1).
inline FunctionHandle resolvent(const FunctionHandle& f,
                                const GaussQuadrature& inner_rule,
                                unsigned time_order = 64) {
    if (f.is_hermite()) return FunctionHandle(f.hermite().resolvent());

    const Rule1d time_rule = detail::gauss_legendre_01(time_order);
    const std::size_t n = f.dim();
    std::vector<FunctionHandle> slices;
    slices.reserve(time_rule.nodes.size());
    for (double s : time_rule.nodes)
        slices.push_back(mehler_apply(f, -std::log(s), inner_rule));
    auto weights = time_rule.weights;

    auto shared = std::make_shared<std::vector<FunctionHandle>>(std::move(slices));
    BuiltinFunction out("resolvent(" + f.describe() + ")", n,
                        [shared, weights](std::span<const double> x) {
                            CompensatedSum sum;
                            for (std::size_t k = 0; k < shared->size(); ++k)
                                sum.add(weights[k] * (*shared)[k](x));
                            return sum.value();
                        });
    return FunctionHandle(std::move(out));
}

struct NonexpansiveReport {
    double lhs = 0.0;  // int Phi(|P_t f|) dgamma
    double rhs = 0.0;  // int Phi(|f|) dgamma
    bool holds = false;
};

/// Modular non-expansivity of P_t (Jensen through the Mehler rotation).
inline NonexpansiveReport nonexpansive_check(const FunctionHandle& f,
                                             const YoungFunction& phi, double t,
                                             const GaussQuadrature& rule) {
    NonexpansiveReport rep;
    rep.rhs = modular(f, phi, rule);
    const FunctionHandle pt = mehler_apply(f, t, rule);
    rep.lhs = modular(pt, phi, rule);
    rep.holds = rep.lhs <= rep.rhs + 1e-8 * std::max(1.0, std::abs(rep.rhs));
    return rep;
}

/// |d/dt P_t p0 + delta.nabla P_t p0| at (x, t): time derivative by centered
/// differences (step h_t), spatial part exact for Hermite input and via the
/// commutation identities nabla P_t = e^{-t} P_t nabla, Delta P_t = e^{-2t}
/// P_t Delta for builtins.
inline double kolmogorov_residual(const FunctionHandle& p0, double t,
                                  std::span<const double> x, double h_t,
                                  const GaussQuadrature& inner_rule) {
    if (!(t > h_t && h_t > 0.0))
        throw std::invalid_argument("kolmogorov_residual: needs t > h_t > 0");
    double dt, spatial;
    if (p0.is_hermite()) {
        const auto& e = p0.hermite();
        dt = (hermite_apply(e, t + h_t).eval(x) - hermite_apply(e, t - h_t).eval(x)) /
             (2.0 * h_t);
        spatial = hermite_apply(e, t).number_operator().eval(x);
    } else {
        dt = (mehler_apply(p0, t + h_t, inner_rule)(x) -
              mehler_apply(p0, t - h_t, inner_rule)(x)) /
             (2.0 * h_t);
        const FunctionHandle pt = mehler_apply(p0, t, inner_rule);
        std::vector<double> g(p0.dim());
        pt.gradient(x, g);
        double xg = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) xg += x[i] * g[i];
        spatial = xg - pt.laplacian(x);
    }
    return std::abs(dt + spatial);
}

/// Rotated pair (e^{-t}X + sqrt(1-e^{-2t})Y, sqrt(1-e^{-2t})X - e^{-t}Y);
/// orthogonal, so the pair stays jointly standard Gaussian.
inline std::pair<std::vector<double>, std::vector<double>> rotation_pair(
    std::span<const double> x_sample, std::span<const double> y_sample, double t) {
    if (x_sample.size() != y_sample.size())
        throw std::invalid_argument("rotation_pair: dimension mismatch");
    if (t < 0.0) throw std::domain_error("rotation_pair: t must be >= 0");
    const double c = std::exp(-t);
    const double s = std::sqrt(-std::expm1(-2.0 * t));
    std::vector<double> xt(x_sample.size()), yt(y_sample.size());
    for (std::size_t i = 0; i < x_sample.size(); ++i) {
        xt[i] = c * x_sample[i] + s * y_sample[i];
        yt[i] = s * x_sample[i] - c * y_sample[i];
    }
    return {std::move(xt), std::move(yt)};
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_OU_SEMIGROUP_HPP
