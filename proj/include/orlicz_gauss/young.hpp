#ifndef ORLICZ_GAUSS_YOUNG_HPP
#define ORLICZ_GAUSS_YOUNG_HPP

#include <cmath>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz_gauss/core.hpp"
#include "orlicz_gauss/quadrature.hpp"

namespace orlicz_gauss {

/// Asymptotic growth family of a Young function; drives the provable
/// divergence gates of the modular integrals.
enum class YoungGrowth {
    PolynomialType,   // power-like or y log y (all powers of |f| integrable)
    ExpLinearType,    // ~ e^{x}: exp2, cosh-1
    GaussSquareType,  // ~ e^{c x^2}: gauss2 (c = 1/2), sq(exp2)/sq(cosh-1) (c = 1)
    BeyondGaussType,  // grows faster than e^{c x^2} for every c
};

/// Convex Young function from the paper's catalog: evaluator, density phi
/// (right derivative), inverse density psi where defined, growth control C(a)
/// where it exists, and the conjugation links. RawPower(r) = x^r is the
/// un-normalized power mode used by the tilde transform and the s^2 rows.
class YoungFunction {
public:
    enum class Kind {
        Power,
        RawPower,
        Exp2,
        Exp2Star,
        CoshM1,
        CoshM1Star,
        Gauss2,
        SquaredCompose,
    };

    static YoungFunction power(double p) {
        if (!(p > 1.0)) throw std::invalid_argument("power: requires p > 1");
        return YoungFunction(Kind::Power, p);
    }
    static YoungFunction raw_power(double r) {
        if (!(r > 1.0)) throw std::invalid_argument("raw_power: requires r > 1");
        return YoungFunction(Kind::RawPower, r);
    }
    static YoungFunction exp2() { return YoungFunction(Kind::Exp2); }
    static YoungFunction exp2_star() { return YoungFunction(Kind::Exp2Star); }
    static YoungFunction cosh_m1() { return YoungFunction(Kind::CoshM1); }
    static YoungFunction cosh_m1_star() { return YoungFunction(Kind::CoshM1Star); }
    static YoungFunction gauss2() { return YoungFunction(Kind::Gauss2); }
    static YoungFunction squared_compose(YoungFunction base) {
        YoungFunction f(Kind::SquaredCompose);
        f.base_ = std::make_shared<YoungFunction>(std::move(base));
        return f;
    }

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    const YoungFunction& base() const {
        if (!base_) throw std::domain_error("YoungFunction: no base");
        return *base_;
    }

    /// Phi(x), x >= 0. Values above the overflow threshold collapse to +inf.
    double operator()(double x) const {
        if (x < 0.0) throw std::domain_error("YoungFunction: argument must be >= 0");
        switch (kind_) {
            case Kind::Power:
                return clamp_overflow(std::pow(x, param_) / param_);
            case Kind::RawPower:
                return clamp_overflow(std::pow(x, param_));
            case Kind::Exp2:
                return clamp_overflow(std::expm1(x) - x);
            case Kind::Exp2Star:
                return clamp_overflow((1.0 + x) * std::log1p(x) - x);
            case Kind::CoshM1: {
                const double s = std::sinh(0.5 * x);
                return clamp_overflow(2.0 * s * s);
            }
            case Kind::CoshM1Star: {
                // closed form of int_0^y asinh: y asinh y - (sqrt(1+y^2) - 1)
                const double root = std::sqrt(1.0 + x * x);
                return clamp_overflow(x * std::asinh(x) - x * x / (root + 1.0));
            }
            case Kind::Gauss2:
                return clamp_overflow(std::expm1(0.5 * x * x));
            case Kind::SquaredCompose:
                return (*base_)(clamp_overflow(x * x));
        }
        throw std::logic_error("YoungFunction: bad kind");
    }

    /// Right derivative phi(x).
    double density(double x) const {
        if (x < 0.0) throw std::domain_error("YoungFunction: argument must be >= 0");
        switch (kind_) {
            case Kind::Power:
                return clamp_overflow(std::pow(x, param_ - 1.0));
            case Kind::RawPower:
                return clamp_overflow(param_ * std::pow(x, param_ - 1.0));
            case Kind::Exp2:
                return clamp_overflow(std::expm1(x));
            case Kind::Exp2Star:
                return std::log1p(x);
            case Kind::CoshM1:
                return clamp_overflow(std::sinh(x));
            case Kind::CoshM1Star:
                return std::asinh(x);
            case Kind::Gauss2:
                return clamp_overflow(x * std::exp(0.5 * x * x));
            case Kind::SquaredCompose:
                return clamp_overflow(2.0 * x * base_->density(x * x));
        }
        throw std::logic_error("YoungFunction: bad kind");
    }

    bool has_inverse_density() const {
        switch (kind_) {
            case Kind::Power:
            case Kind::RawPower:
            case Kind::Exp2:
            case Kind::Exp2Star:
            case Kind::CoshM1:
            case Kind::CoshM1Star:
                return true;
            default:
                return false;
        }
    }

    /// psi = phi^{-1} where defined.
    double inverse_density(double y) const {
        if (y < 0.0) throw std::domain_error("YoungFunction: argument must be >= 0");
        switch (kind_) {
            case Kind::Power:
                return std::pow(y, 1.0 / (param_ - 1.0));
            case Kind::RawPower:
                return std::pow(y / param_, 1.0 / (param_ - 1.0));
            case Kind::Exp2:
                return std::log1p(y);
            case Kind::Exp2Star:
                return std::expm1(y);
            case Kind::CoshM1:
                return std::asinh(y);
            case Kind::CoshM1Star:
                return std::sinh(y);
            default:
                throw std::domain_error("YoungFunction '" + name() +
                                        "': inverse density not available");
        }
    }

    /// C(a) with Phi(a x) <= C(a) Phi(x) for all x >= 0 (registered kinds
    /// only; cosh-1 and gauss2 admit no such bound).
    bool has_growth_control() const {
        return kind_ == Kind::Power || kind_ == Kind::RawPower ||
               kind_ == Kind::Exp2Star || kind_ == Kind::CoshM1Star;
    }
    double growth_control(double a) const {
        if (a < 0.0) throw std::domain_error("growth_control: a must be >= 0");
        switch (kind_) {
            case Kind::Power:
            case Kind::RawPower:
                return std::pow(a, param_);
            case Kind::Exp2Star:
            case Kind::CoshM1Star:
                return std::max(a, a * a);
            default:
                throw std::domain_error("growth_control: no registered C for '" +
                                        name() + "'");
        }
    }

    YoungGrowth growth() const {
        switch (kind_) {
            case Kind::Power:
            case Kind::RawPower:
            case Kind::Exp2Star:
            case Kind::CoshM1Star:
                return YoungGrowth::PolynomialType;
            case Kind::Exp2:
            case Kind::CoshM1:
                return YoungGrowth::ExpLinearType;
            case Kind::Gauss2:
                return YoungGrowth::GaussSquareType;
            case Kind::SquaredCompose:
                switch (base_->growth()) {
                    case YoungGrowth::PolynomialType:
                        return YoungGrowth::PolynomialType;
                    case YoungGrowth::ExpLinearType:
                        return YoungGrowth::GaussSquareType;
                    default:
                        return YoungGrowth::BeyondGaussType;
                }
        }
        throw std::logic_error("YoungFunction: bad kind");
    }

    /// For GaussSquareType: Phi(x) ~ e^{c x^2}.
    double gauss_square_rate() const {
        if (kind_ == Kind::Gauss2) return 0.5;
        if (kind_ == Kind::SquaredCompose &&
            base_->growth() == YoungGrowth::ExpLinearType)
            return 1.0;
        throw std::domain_error("gauss_square_rate: not a gauss-square kind");
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Power:
                return "power:" + format_param(param_);
            case Kind::RawPower:
                return "rawpow:" + format_param(param_);
            case Kind::Exp2:
                return "exp2";
            case Kind::Exp2Star:
                return "exp2*";
            case Kind::CoshM1:
                return "cosh-1";
            case Kind::CoshM1Star:
                return "cosh-1*";
            case Kind::Gauss2:
                return "gauss2";
            case Kind::SquaredCompose:
                return "sq(" + base_->name() + ")";
        }
        throw std::logic_error("YoungFunction: bad kind");
    }

    bool structurally_equal(const YoungFunction& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == Kind::Power || kind_ == Kind::RawPower)
            return param_ == o.param_;
        if (kind_ == Kind::SquaredCompose)
            return base_->structurally_equal(*o.base_);
        return true;
    }

private:
    explicit YoungFunction(Kind k, double p = 0.0) : kind_(k), param_(p) {}
    static std::string format_param(double p) {
        std::string s = std::to_string(p);
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
    Kind kind_;
    double param_;
    std::shared_ptr<const YoungFunction> base_;
};

/// Phi_*: conjugation on the catalog pairs; involution by construction.
inline YoungFunction conjugate(const YoungFunction& phi) {
    using Kind = YoungFunction::Kind;
    switch (phi.kind()) {
        case Kind::Power: {
            const double p = phi.param();
            return YoungFunction::power(p / (p - 1.0));
        }
        case Kind::Exp2:
            return YoungFunction::exp2_star();
        case Kind::Exp2Star:
            return YoungFunction::exp2();
        case Kind::CoshM1:
            return YoungFunction::cosh_m1_star();
        case Kind::CoshM1Star:
            return YoungFunction::cosh_m1();
        default:
            throw std::domain_error("conjugate: '" + phi.name() +
                                     "' has no catalog conjugate");
    }
}

/// Phi(x) + Phi_*(y) - x y >= 0.
inline double young_gap(const YoungFunction& phi, double x, double y) {
    const YoungFunction psi = conjugate(phi);
    const double a = phi(x);
    const double b = psi(y);
    if (!std::isfinite(a) || !std::isfinite(b)) return kInf;
    return a + b - x * y;
}

/// Phi(x) + Phi_*(phi(x)) - x phi(x); zero on the finite domain.
inline double legendre_residual(const YoungFunction& phi, double x) {
    const YoungFunction psi = conjugate(phi);
    const double d = phi.density(x);
    if (!std::isfinite(d)) return kInf;
    return phi(x) + psi(d) - x * d;
}

/// Phi-bar(x) = Phi(x^2); realizes the L^{Phi,2} spaces.
inline YoungFunction squared_compose(const YoungFunction& phi) {
    return YoungFunction::squared_compose(phi);
}

inline double growth_control(const YoungFunction& phi, double a) {
    return phi.growth_control(a);
}

/// Result of the bounded eventual-domination semi-decision.
struct DominationResult {
    bool found = false;
    double kappa = 0.0;
    double xbar = 0.0;
    double counterexample = 0.0;  // when !found: violating x for the best pair
};

/// Searches the supplied (kappa, xbar) grids for Phi1(x) <= Phi2(kappa x) on a
/// geometric grid over [xbar, xmax]. A bounded semi-decision: a witness proves
/// nothing beyond xmax, and a counterexample only defeats the grids tried.
inline DominationResult eventually_dominates(const YoungFunction& phi1,
                                             const YoungFunction& phi2,
                                             const std::vector<double>& kappa_grid,
                                             const std::vector<double>& xbar_grid,
                                             double xmax,
                                             std::size_t grid_points = 256) {
    if (kappa_grid.empty() || xbar_grid.empty())
        throw std::invalid_argument("eventually_dominates: empty grid");
    for (double xb : xbar_grid)
        if (!(xmax > xb))
            throw std::invalid_argument("eventually_dominates: xmax must exceed xbar");

    DominationResult best;
    double best_x = 0.0;
    bool have_best = false;
    for (double xbar : xbar_grid) {
        for (double kappa : kappa_grid) {
            if (!(kappa > 0.0))
                throw std::invalid_argument("eventually_dominates: kappa must be > 0");
            bool ok = true;
            double first_violation = 0.0;
            const double ratio = std::pow(xmax / xbar,
                                          1.0 / static_cast<double>(grid_points));
            double x = xbar;
            for (std::size_t i = 0; i <= grid_points; ++i) {
                const double lhs = phi1(x);
                const double rhs = phi2(kappa * x);
                if (!(lhs <= rhs)) {
                    ok = false;
                    first_violation = x;
                    break;
                }
                x = (i + 1 == grid_points) ? xmax : x * ratio;
            }
            if (ok) {
                DominationResult r;
                r.found = true;
                r.kappa = kappa;
                r.xbar = xbar;
                return r;
            }
            if (!have_best || first_violation > best_x) {
                best_x = first_violation;
                have_best = true;
            }
        }
    }
    best.found = false;
    best.counterexample = best_x;
    return best;
}

/// tilde-Phi(a) = int Phi(|(pi/2) a z|) dgamma(z). Closed-form divergence for
/// the gauss-square kinds (quadrature cannot witness it); quadrature
/// otherwise.
inline double tilde_phi(const YoungFunction& phi, double a, const Rule1d& rule) {
    if (a < 0.0) throw std::domain_error("tilde_phi: a must be >= 0");
    if (a == 0.0) return 0.0;
    const double s = 0.5 * M_PI * a;
    switch (phi.growth()) {
        case YoungGrowth::GaussSquareType: {
            const double c = phi.gauss_square_rate();
            if (s * std::sqrt(2.0 * c) >= 1.0) return kInf;
            if (phi.kind() == YoungFunction::Kind::Gauss2) {
                // int e^{s^2 z^2 / 2} dgamma = (1 - s^2)^{-1/2}
                return 1.0 / std::sqrt(1.0 - s * s) - 1.0;
            }
            break;
        }
        case YoungGrowth::BeyondGaussType:
            return kInf;
        default:
            break;
    }
    CompensatedSum sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = phi(std::abs(s * rule.nodes[i]));
        if (!std::isfinite(v)) return kInf;
        sum.add(rule.weights[i] * v);
    }
    return clamp_overflow(sum.value());
}

/// Exp-mode of the tilde transform for the plain exponential Phi(s) = e^s
/// (not a Young function in this normalization; used only inside the MGF
/// bound): int e^{(pi/2) a z} dgamma(z) = e^{pi^2 a^2 / 8}.
inline double tilde_phi_exp(double a, const Rule1d& rule) {
    const double s = 0.5 * M_PI * a;
    CompensatedSum sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = std::exp(s * rule.nodes[i]);
        if (!std::isfinite(v)) return kInf;
        sum.add(rule.weights[i] * v);
    }
    return clamp_overflow(sum.value());
}

/// Parses the CLI names: "power:p", "rawpow:r", "exp2", "exp2*", "cosh-1",
/// "cosh-1*", "gauss2", "sq(<name>)".
inline YoungFunction parse_young(const std::string& name) {
    if (name.rfind("power:", 0) == 0)
        return YoungFunction::power(std::stod(name.substr(6)));
    if (name.rfind("rawpow:", 0) == 0)
        return YoungFunction::raw_power(std::stod(name.substr(7)));
    if (name == "exp2") return YoungFunction::exp2();
    if (name == "exp2*") return YoungFunction::exp2_star();
    if (name == "cosh-1") return YoungFunction::cosh_m1();
    if (name == "cosh-1*") return YoungFunction::cosh_m1_star();
    if (name == "gauss2") return YoungFunction::gauss2();
    if (name.rfind("sq(", 0) == 0 && name.back() == ')')
        return YoungFunction::squared_compose(
            parse_young(name.substr(3, name.size() - 4)));
    throw std::invalid_argument("unknown Young function name: '" + name + "'");
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_YOUNG_HPP
