#ifndef ORLICZ_GAUSS_FUNCTION_HPP
#define ORLICZ_GAUSS_FUNCTION_HPP

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz_gauss/builtin.hpp"
#include "orlicz_gauss/hermite.hpp"
#include "orlicz_gauss/quadrature.hpp"

namespace orlicz_gauss {

namespace detail {

/// Exact growth classification of a finite Hermite expansion (a polynomial):
/// degree <= 0 bounded, degree 1 linear with the Euclidean coefficient norm,
/// degree 2 with the max |eigenvalue| of the quadratic form, else polynomial.
inline GrowthClass classify_polynomial(const HermiteExpansion& e) {
    const int deg = e.degree();
    const std::size_t n = e.dim();
    if (deg <= 0) return GrowthClass::bounded();
    if (deg == 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = e.coeff(MultiIndex::unit(n, i));
            s += c * c;
        }
        return GrowthClass::linear(std::sqrt(s));
    }
    if (deg == 2) {
        // x^T A x part: H_{2e_i} = x_i^2 - 1 and H_{e_i+e_j} = x_i x_j.
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (const auto& [alpha, c] : e.terms()) {
            if (alpha.order() != 2) continue;
            int i = -1, j = -1;
            for (std::size_t d = 0; d < n; ++d) {
                if (alpha[d] == 2) i = j = static_cast<int>(d);
                if (alpha[d] == 1) (i < 0 ? i : j) = static_cast<int>(d);
            }
            if (i == j) {
                a(i, i) += c;
            } else {
                a(i, j) += 0.5 * c;
                a(j, i) += 0.5 * c;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        const double qs = es.eigenvalues().cwiseAbs().maxCoeff();
        return GrowthClass::polynomial(2, qs);
    }
    return GrowthClass::polynomial(deg);
}

/// Growth of the gradient field of a polynomial: all partials constant ->
/// bounded; degree-1 partials -> linear with the spectral norm of the Hessian;
/// otherwise polynomial of the partials' max degree.
inline GrowthClass classify_polynomial_gradient(const HermiteExpansion& e) {
    const std::size_t n = e.dim();
    int max_deg = -1;
    std::vector<HermiteExpansion> partials;
    partials.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        partials.push_back(e.partial(i));
        max_deg = std::max(max_deg, partials.back().degree());
    }
    if (max_deg <= 0) return GrowthClass::bounded();
    if (max_deg == 1) {
        Eigen::MatrixXd m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = partials[i].coeff(MultiIndex::unit(n, j));
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        return GrowthClass::linear(svd.singularValues()(0));
    }
    return GrowthClass::polynomial(max_deg);
}

}  // namespace detail

/// A function on R^n: either a finite Hermite expansion (exact calculus) or a
/// builtin/composite with analytic derivative data where available.
class FunctionHandle {
public:
    FunctionHandle(HermiteExpansion e) : impl_(std::move(e)) {}
    FunctionHandle(BuiltinFunction f) : impl_(std::move(f)) {}

    bool is_hermite() const { return std::holds_alternative<HermiteExpansion>(impl_); }
    const HermiteExpansion& hermite() const {
        if (!is_hermite())
            throw std::domain_error("FunctionHandle: not a Hermite expansion");
        return std::get<HermiteExpansion>(impl_);
    }
    const BuiltinFunction& builtin() const {
        if (is_hermite()) throw std::domain_error("FunctionHandle: not a builtin");
        return std::get<BuiltinFunction>(impl_);
    }

    std::size_t dim() const {
        return is_hermite() ? hermite().dim() : builtin().dim();
    }

    std::string describe() const {
        if (is_hermite())
            return "hermite[deg=" + std::to_string(hermite().degree()) + "]";
        return builtin().name();
    }

    double operator()(std::span<const double> x) const {
        return is_hermite() ? hermite().eval(x) : builtin()(x);
    }

    bool has_gradient() const {
        return is_hermite() || builtin().has_gradient();
    }
    void gradient(std::span<const double> x, std::span<double> out) const {
        if (is_hermite()) {
            const auto& e = hermite();
            if (x.size() != e.dim() || out.size() != e.dim())
                throw std::invalid_argument("FunctionHandle: gradient dim mismatch");
            for (std::size_t i = 0; i < e.dim(); ++i) {
                double v = 0.0;
                for (const auto& [alpha, c] : e.terms()) {
                    if (alpha[i] == 0) continue;
                    v += c * static_cast<double>(alpha[i]) *
                         hermite_eval(alpha.lowered(i), x);
                }
                out[i] = v;
            }
            return;
        }
        builtin().gradient(x, out);
    }
    double gradient_sq_norm(std::span<const double> x) const {
        std::vector<double> g(dim());
        gradient(x, g);
        double s = 0.0;
        for (double v : g) s += v * v;
        return s;
    }

    bool has_laplacian() const {
        return is_hermite() || builtin().has_laplacian();
    }
    double laplacian(std::span<const double> x) const {
        if (is_hermite()) {
            const auto& e = hermite();
            double v = 0.0;
            for (std::size_t i = 0; i < e.dim(); ++i) {
                for (const auto& [alpha, c] : e.terms()) {
                    if (alpha[i] < 2) continue;
                    const double k = static_cast<double>(alpha[i]) *
                                     static_cast<double>(alpha[i] - 1);
                    v += c * k * hermite_eval(alpha.lowered(i).lowered(i), x);
                }
            }
            return v;
        }
        return builtin().laplacian(x);
    }

    /// partial_i f. Exact coefficient shift for Hermite; gradient component
    /// for builtins (requires the analytic gradient).
    FunctionHandle partial(std::size_t axis) const {
        if (is_hermite()) return FunctionHandle(hermite().partial(axis));
        const BuiltinFunction& f = builtin();
        if (!f.has_gradient())
            throw std::domain_error("partial: builtin '" + f.name() + "' has no gradient");
        auto base = std::make_shared<BuiltinFunction>(f);
        const std::size_t n = f.dim();
        BuiltinFunction out(
            "partial" + std::to_string(axis) + "(" + f.name() + ")", n,
            [base, axis, n](std::span<const double> x) {
                std::vector<double> g(n);
                base->gradient(x, g);
                return g[axis];
            });
        return FunctionHandle(std::move(out));
    }

    /// delta_i f = x_i f - partial_i f. Exact index shift for Hermite;
    /// wrapped composite evaluator for builtins.
    FunctionHandle delta(std::size_t axis) const {
        if (is_hermite()) return FunctionHandle(hermite().delta(axis));
        const BuiltinFunction& f = builtin();
        if (!f.has_gradient())
            throw std::domain_error("delta: builtin '" + f.name() + "' has no gradient");
        auto base = std::make_shared<BuiltinFunction>(f);
        const std::size_t n = f.dim();
        BuiltinFunction out(
            "delta" + std::to_string(axis) + "(" + f.name() + ")", n,
            [base, axis, n](std::span<const double> x) {
                std::vector<double> g(n);
                base->gradient(x, g);
                return x[axis] * (*base)(x) - g[axis];
            });
        return FunctionHandle(std::move(out));
    }

    /// delta . nabla f = x . nabla f - Delta f (the OU number operator).
    FunctionHandle delta_dot_nabla() const {
        if (is_hermite()) return FunctionHandle(hermite().number_operator());
        const BuiltinFunction& f = builtin();
        if (!f.has_gradient())
            throw std::domain_error("delta_dot_nabla: builtin '" + f.name() +
                                    "' has no gradient");
        if (!f.has_laplacian())
            throw std::domain_error("delta_dot_nabla: builtin '" + f.name() +
                                    "' missing laplacian");
        auto base = std::make_shared<BuiltinFunction>(f);
        const std::size_t n = f.dim();
        BuiltinFunction out("delta_dot_nabla(" + f.name() + ")", n,
                            [base, n](std::span<const double> x) {
                                std::vector<double> g(n);
                                base->gradient(x, g);
                                double v = 0.0;
                                for (std::size_t i = 0; i < n; ++i) v += x[i] * g[i];
                                return v - base->laplacian(x);
                            });
        return FunctionHandle(std::move(out));
    }

    FunctionHandle scaled(double s) const {
        if (is_hermite()) return FunctionHandle(hermite().scaled(s));
        const BuiltinFunction& f = builtin();
        auto base = std::make_shared<BuiltinFunction>(f);
        const std::size_t n = f.dim();
        BuiltinFunction out("scaled(" + f.name() + ")", n,
                            [base, s](std::span<const double> x) { return s * (*base)(x); });
        if (f.has_gradient())
            out.with_gradient([base, s, n](std::span<const double> x, std::span<double> g) {
                base->gradient(x, g);
                for (double& v : g) v *= s;
            });
        if (f.has_laplacian())
            out.with_laplacian(
                [base, s](std::span<const double> x) { return s * base->laplacian(x); });
        if (f.lipschitz_bound()) out.with_lipschitz(std::abs(s) * *f.lipschitz_bound());
        GrowthClass g = f.growth();
        if (g.kind == GrowthClass::Kind::Linear) g.slope *= std::abs(s);
        if (g.kind == GrowthClass::Kind::Polynomial) g.quad_scale *= std::abs(s);
        out.with_growth(g);
        out.with_gradient_growth(scaled_growth(f.gradient_growth(), s));
        return FunctionHandle(std::move(out));
    }

    /// f + c; derivative data and growth class carry over.
    FunctionHandle plus_const(double c) const {
        if (is_hermite()) {
            HermiteExpansion e = hermite();
            e.add(MultiIndex::zeros(e.dim()), c);
            return FunctionHandle(std::move(e));
        }
        const BuiltinFunction& f = builtin();
        auto base = std::make_shared<BuiltinFunction>(f);
        const std::size_t n = f.dim();
        BuiltinFunction out("shifted(" + f.name() + ")", n,
                            [base, c](std::span<const double> x) { return (*base)(x) + c; });
        if (f.has_gradient())
            out.with_gradient([base](std::span<const double> x, std::span<double> g) {
                base->gradient(x, g);
            });
        if (f.has_laplacian())
            out.with_laplacian([base](std::span<const double> x) { return base->laplacian(x); });
        if (f.lipschitz_bound()) out.with_lipschitz(*f.lipschitz_bound());
        out.with_growth(f.growth());
        out.with_gradient_growth(f.gradient_growth());
        return FunctionHandle(std::move(out));
    }

    GrowthClass growth() const {
        if (is_hermite()) return detail::classify_polynomial(hermite());
        return builtin().growth();
    }
    GrowthClass gradient_growth() const {
        if (is_hermite()) return detail::classify_polynomial_gradient(hermite());
        return builtin().gradient_growth();
    }

private:
    static GrowthClass scaled_growth(GrowthClass g, double s) {
        if (g.kind == GrowthClass::Kind::Linear) g.slope *= std::abs(s);
        if (g.kind == GrowthClass::Kind::Polynomial) g.quad_scale *= std::abs(s);
        return g;
    }
    std::variant<HermiteExpansion, BuiltinFunction> impl_;
};

/// |grad f|_p as a scalar function handle (p in {1, 2, inf}). The growth class
/// is propagated only where it stays exact (see vector-norm caveat in docs).
enum class VectorNorm { L1, L2, LInf };

inline FunctionHandle gradient_norm_handle(const FunctionHandle& f, VectorNorm p) {
    if (!f.has_gradient())
        throw std::domain_error("gradient_norm_handle: no gradient for " + f.describe());
    auto base = std::make_shared<FunctionHandle>(f);
    const std::size_t n = f.dim();
    const char* tag = p == VectorNorm::L1 ? "l1" : (p == VectorNorm::L2 ? "l2" : "linf");
    BuiltinFunction out("grad_norm_" + std::string(tag) + "(" + f.describe() + ")", n,
                        [base, p, n](std::span<const double> x) {
                            std::vector<double> g(n);
                            base->gradient(x, g);
                            double v = 0.0;
                            switch (p) {
                                case VectorNorm::L1:
                                    for (double c : g) v += std::abs(c);
                                    return v;
                                case VectorNorm::L2:
                                    for (double c : g) v += c * c;
                                    return std::sqrt(v);
                                case VectorNorm::LInf:
                                    for (double c : g) v = std::max(v, std::abs(c));
                                    return v;
                            }
                            return v;
                        });
    const GrowthClass gg = f.gradient_growth();
    switch (gg.kind) {
        case GrowthClass::Kind::Bounded:
            out.with_growth(GrowthClass::bounded());
            break;
        case GrowthClass::Kind::Exponential:
            out.with_growth(GrowthClass::exponential());
            break;
        case GrowthClass::Kind::Linear:
            // The Euclidean slope is the exact spectral norm; other vector
            // norms change the constant, so only L2 keeps an exact gate.
            out.with_growth(p == VectorNorm::L2 ? GrowthClass::linear(gg.slope)
                                                : GrowthClass::unknown());
            break;
        case GrowthClass::Kind::Polynomial:
            out.with_growth(p == VectorNorm::L2 && gg.degree >= 2
                                ? GrowthClass::polynomial(gg.degree)
                                : GrowthClass::unknown());
            break;
        default:
            out.with_growth(GrowthClass::unknown());
            break;
    }
    return FunctionHandle(std::move(out));
}

/// Central-difference self-test of the analytic gradient at seeded Gaussian
/// points; returns the worst relative error.
inline double gradient_selftest(const FunctionHandle& f, std::uint64_t seed,
                                std::size_t points = 20, double h = 1e-5) {
    const std::size_t n = f.dim();
    NormalSampler rng(seed);
    std::vector<double> x(n), g(n), xp(n), xm(n);
    double worst = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        for (double& v : x) v = rng.next();
        f.gradient(x, g);
        for (std::size_t i = 0; i < n; ++i) {
            xp = x;
            xm = x;
            xp[i] += h;
            xm[i] -= h;
            const double fd = (f(xp) - f(xm)) / (2.0 * h);
            const double scale = std::max(1.0, std::abs(g[i]));
            worst = std::max(worst, std::abs(fd - g[i]) / scale);
        }
    }
    return worst;
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_FUNCTION_HPP
