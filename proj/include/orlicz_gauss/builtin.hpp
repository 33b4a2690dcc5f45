#ifndef ORLICZ_GAUSS_BUILTIN_HPP
#define ORLICZ_GAUSS_BUILTIN_HPP

#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orlicz_gauss {

/// Growth classification of a scalar function on R^n against the Gaussian
/// weight. Exact for Hermite expansions, annotated for catalog builtins,
/// Unknown for opaque composites. Drives the provable-divergence gates of the
/// modular computations.
struct GrowthClass {
    enum class Kind { Bounded, Linear, Polynomial, Exponential, Unknown };
    Kind kind = Kind::Unknown;
    double slope = 0.0;       // Linear: limsup |f(x)|/|x|
    int degree = 0;           // Polynomial: total degree (>= 2)
    double quad_scale = 0.0;  // Polynomial deg 2: max |eigenvalue| of the x^T A x part

    static GrowthClass bounded() { return {Kind::Bounded, 0.0, 0, 0.0}; }
    static GrowthClass linear(double s) { return {Kind::Linear, s, 1, 0.0}; }
    static GrowthClass polynomial(int deg, double qs = 0.0) {
        return {Kind::Polynomial, 0.0, deg, qs};
    }
    static GrowthClass exponential() { return {Kind::Exponential, 0.0, 0, 0.0}; }
    static GrowthClass unknown() { return {Kind::Unknown, 0.0, 0, 0.0}; }
};

/// A function on R^n with analytic derivative data where available. Catalog
/// entries carry a registry name; wrapped composites (Mehler averages,
/// divergences, ...) use a descriptive name and may lack derivatives.
class BuiltinFunction {
public:
    using Eval = std::function<double(std::span<const double>)>;
    using Grad = std::function<void(std::span<const double>, std::span<double>)>;

    BuiltinFunction(std::string name, std::size_t dim, Eval eval)
        : name_(std::move(name)), dim_(dim), eval_(std::move(eval)) {
        if (dim_ == 0) throw std::invalid_argument("BuiltinFunction: dim must be >= 1");
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return dim_; }

    double operator()(std::span<const double> x) const {
        if (x.size() != dim_)
            throw std::invalid_argument("BuiltinFunction: point dim mismatch");
        return eval_(x);
    }

    bool has_gradient() const { return static_cast<bool>(grad_); }
    void gradient(std::span<const double> x, std::span<double> out) const {
        if (!grad_)
            throw std::domain_error("BuiltinFunction '" + name_ + "': no gradient");
        if (x.size() != dim_ || out.size() != dim_)
            throw std::invalid_argument("BuiltinFunction: gradient dim mismatch");
        grad_(x, out);
    }

    bool has_laplacian() const { return static_cast<bool>(laplacian_); }
    double laplacian(std::span<const double> x) const {
        if (!laplacian_)
            throw std::domain_error("BuiltinFunction '" + name_ + "': missing laplacian");
        return laplacian_(x);
    }

    std::optional<double> lipschitz_bound() const { return lipschitz_bound_; }
    const GrowthClass& growth() const { return growth_; }
    GrowthClass gradient_growth() const {
        if (gradient_growth_) return *gradient_growth_;
        if (lipschitz_bound_) return GrowthClass::bounded();
        return GrowthClass::unknown();
    }

    BuiltinFunction& with_gradient(Grad g) {
        grad_ = std::move(g);
        return *this;
    }
    BuiltinFunction& with_laplacian(Eval l) {
        laplacian_ = std::move(l);
        return *this;
    }
    BuiltinFunction& with_lipschitz(double l) {
        lipschitz_bound_ = l;
        return *this;
    }
    BuiltinFunction& with_growth(GrowthClass g) {
        growth_ = g;
        return *this;
    }
    BuiltinFunction& with_gradient_growth(GrowthClass g) {
        gradient_growth_ = g;
        return *this;
    }

private:
    std::string name_;
    std::size_t dim_;
    Eval eval_;
    Grad grad_;
    Eval laplacian_;
    std::optional<double> lipschitz_bound_;
    GrowthClass growth_ = GrowthClass::unknown();
    std::optional<GrowthClass> gradient_growth_;
};

namespace builtins {

/// f(x) = c.
inline BuiltinFunction constant(std::size_t dim, double value) {
    BuiltinFunction f("constant", dim, [value](std::span<const double>) { return value; });
    f.with_gradient([](std::span<const double>, std::span<double> g) {
         std::fill(g.begin(), g.end(), 0.0);
     })
        .with_laplacian([](std::span<const double>) { return 0.0; })
        .with_lipschitz(0.0)
        .with_growth(GrowthClass::bounded())
        .with_gradient_growth(GrowthClass::bounded());
    return f;
}

/// f(x) = x_axis.
inline BuiltinFunction coordinate(std::size_t dim, std::size_t axis) {
    if (axis >= dim) throw std::invalid_argument("coordinate: axis out of range");
    BuiltinFunction f("coordinate", dim,
                      [axis](std::span<const double> x) { return x[axis]; });
    f.with_gradient([axis](std::span<const double>, std::span<double> g) {
         std::fill(g.begin(), g.end(), 0.0);
         g[axis] = 1.0;
     })
        .with_laplacian([](std::span<const double>) { return 0.0; })
        .with_lipschitz(1.0)
        .with_growth(GrowthClass::linear(1.0))
        .with_gradient_growth(GrowthClass::bounded());
    return f;
}

/// f(x) = theta . x  (+ optional constant shift).
inline BuiltinFunction linear(std::vector<double> theta, double shift = 0.0) {
    const std::size_t dim = theta.size();
    if (dim == 0) throw std::invalid_argument("linear: empty theta");
    const double norm = std::sqrt(
        std::inner_product(theta.begin(), theta.end(), theta.begin(), 0.0));
    BuiltinFunction f("linear", dim, [theta, shift](std::span<const double> x) {
        double v = shift;
        for (std::size_t i = 0; i < x.size(); ++i) v += theta[i] * x[i];
        return v;
    });
    f.with_gradient([theta](std::span<const double>, std::span<double> g) {
         std::copy(theta.begin(), theta.end(), g.begin());
     })
        .with_laplacian([](std::span<const double>) { return 0.0; })
        .with_lipschitz(norm)
        .with_growth(GrowthClass::linear(norm))
        .with_gradient_growth(GrowthClass::bounded());
    return f;
}

/// f(x) = scale * sum_i x_i.
inline BuiltinFunction linear_sum(std::size_t dim, double scale = 1.0) {
    BuiltinFunction f = linear(std::vector<double>(dim, scale));
    return f;
}

/// f(x) = e^{theta.x}, optionally centered to mean zero under gamma
/// (subtracting e^{|theta|^2/2}).
inline BuiltinFunction exp_linear(std::vector<double> theta, bool centered = false) {
    const std::size_t dim = theta.size();
    if (dim == 0) throw std::invalid_argument("exp_linear: empty theta");
    const double theta_sq = std::inner_product(theta.begin(), theta.end(),
                                               theta.begin(), 0.0);
    const double shift = centered ? std::exp(0.5 * theta_sq) : 0.0;
    auto dot = [theta](std::span<const double> x) {
        double v = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) v += theta[i] * x[i];
        return v;
    };
    BuiltinFunction f(centered ? "exp_linear_centered" : "exp_linear", dim,
                      [dot, shift](std::span<const double> x) {
                          return std::exp(dot(x)) - shift;
                      });
    f.with_gradient([dot, theta](std::span<const double> x, std::span<double> g) {
         const double e = std::exp(dot(x));
         for (std::size_t i = 0; i < g.size(); ++i) g[i] = theta[i] * e;
     })
        .with_laplacian([dot, theta_sq](std::span<const double> x) {
            return theta_sq * std::exp(dot(x));
        })
        .with_growth(GrowthClass::exponential())
        .with_gradient_growth(GrowthClass::exponential());
    return f;
}

/// p(x) = e^{theta.x - |theta|^2/2}; integrates to 1 against gamma.
inline BuiltinFunction gaussian_tilt_density(std::vector<double> theta) {
    const std::size_t dim = theta.size();
    if (dim == 0) throw std::invalid_argument("gaussian_tilt_density: empty theta");
    const double theta_sq = std::inner_product(theta.begin(), theta.end(),
                                               theta.begin(), 0.0);
    auto dot = [theta](std::span<const double> x) {
        double v = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) v += theta[i] * x[i];
        return v;
    };
    BuiltinFunction f("gaussian_tilt_density", dim,
                      [dot, theta_sq](std::span<const double> x) {
                          return std::exp(dot(x) - 0.5 * theta_sq);
                      });
    f.with_gradient([dot, theta, theta_sq](std::span<const double> x, std::span<double> g) {
         const double p = std::exp(dot(x) - 0.5 * theta_sq);
         for (std::size_t i = 0; i < g.size(); ++i) g[i] = theta[i] * p;
     })
        .with_laplacian([dot, theta_sq](std::span<const double> x) {
            return theta_sq * std::exp(dot(x) - 0.5 * theta_sq);
        })
        .with_growth(GrowthClass::exponential())
        .with_gradient_growth(GrowthClass::exponential());
    return f;
}

struct SinTerm {
    double amp;
    double freq;
    std::size_t axis;
};

/// f(x) = sum_k amp_k sin(freq_k x_{axis_k}); bounded with bounded gradient.
inline BuiltinFunction sin_sum(std::size_t dim, std::vector<SinTerm> terms) {
    for (const auto& t : terms)
        if (t.axis >= dim) throw std::invalid_argument("sin_sum: axis out of range");
    // |grad f| <= sqrt(sum_axis (sum_k |amp freq|)^2)
    std::vector<double> per_axis(dim, 0.0);
    for (const auto& t : terms) per_axis[t.axis] += std::abs(t.amp * t.freq);
    const double lip = std::sqrt(std::inner_product(per_axis.begin(), per_axis.end(),
                                                    per_axis.begin(), 0.0));
    BuiltinFunction f("sin_sum", dim, [terms](std::span<const double> x) {
        double v = 0.0;
        for (const auto& t : terms) v += t.amp * std::sin(t.freq * x[t.axis]);
        return v;
    });
    f.with_gradient([terms](std::span<const double> x, std::span<double> g) {
         std::fill(g.begin(), g.end(), 0.0);
         for (const auto& t : terms)
             g[t.axis] += t.amp * t.freq * std::cos(t.freq * x[t.axis]);
     })
        .with_laplacian([terms](std::span<const double> x) {
            double v = 0.0;
            for (const auto& t : terms)
                v -= t.amp * t.freq * t.freq * std::sin(t.freq * x[t.axis]);
            return v;
        })
        .with_lipschitz(lip)
        .with_growth(GrowthClass::bounded())
        .with_gradient_growth(GrowthClass::bounded());
    return f;
}

}  // namespace builtins

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_BUILTIN_HPP
