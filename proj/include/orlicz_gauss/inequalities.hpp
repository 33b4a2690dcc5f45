#ifndef ORLICZ_GAUSS_INEQUALITIES_HPP
#define ORLICZ_GAUSS_INEQUALITIES_HPP

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/gauss_space.hpp"
#include "orlicz_gauss/orlicz_norms.hpp"
#include "orlicz_gauss/quadrature.hpp"
#include "orlicz_gauss/young.hpp"

namespace orlicz_gauss {

/// Explicit constants of the summary proposition.
struct Constants {
    /// Positive root of sqrt(pi/2) k + (pi^2/4) k^2 = 1.
    static double kappa_star() {
        const double a = M_PI * M_PI / 4.0;
        const double b = std::sqrt(M_PI / 2.0);
        return (-b + std::sqrt(b * b + 4.0 * a)) / (2.0 * a);
    }
    /// L log L constant: C1 = 1 / kappa*.
    static double c1() { return 1.0 / kappa_star(); }
    /// m(2p) = 2^p Gamma(p + 1/2) / sqrt(pi), the 2p-moment of the standard
    /// Gaussian; equals (2p-1)!! at integer p.
    static double gaussian_moment_2p(double p) {
        if (!(p > 0.0)) throw std::invalid_argument("gaussian_moment_2p: p > 0");
        return std::pow(2.0, p) * std::tgamma(p + 0.5) / std::sqrt(M_PI);
    }
    /// Lebesgue constant: C2(p) = (pi/2) m(2p)^{1/(2p)}.
    static double c2(double p) {
        return 0.5 * M_PI * std::pow(gaussian_moment_2p(p), 0.5 / p);
    }
    /// cosh-1 vs gauss2 constant: C3 = pi/2.
    static double c3() { return 0.5 * M_PI; }
};

/// One verified inequality instance.
struct ReportRow {
    enum class Status { Ok, Vacuous, Error };
    std::string name;
    std::string function_id;
    std::string phi_name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool holds = false;
    Status status = Status::Ok;
    std::string message;
    std::vector<std::pair<std::string, double>> params;  // deterministic order

    void finish() {
        margin = rhs - lhs;
        holds = status == Status::Ok &&
                margin >= -1e-8 * std::max(1.0, std::abs(rhs));
    }
    void mark_vacuous(const std::string& why) {
        status = Status::Vacuous;
        message = why;
        holds = false;
        margin = 0.0;
    }
};

struct InequalityReport {
    std::vector<ReportRow> rows;

    std::size_t total() const { return rows.size(); }
    std::size_t holds_count() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.holds ? 1 : 0;
        return n;
    }
    std::size_t vacuous_count() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.status == ReportRow::Status::Vacuous;
        return n;
    }
    std::size_t error_count() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.status == ReportRow::Status::Error;
        return n;
    }
    std::size_t failed_count() const {
        std::size_t n = 0;
        for (const auto& r : rows)
            n += (r.status == ReportRow::Status::Ok && !r.holds) ? 1 : 0;
        return n;
    }
};

/// Classical Gauss-Poincare: int (f - fbar)^2 <= int |grad f|^2.
inline ReportRow gauss_poincare_check(const FunctionHandle& f,
                                      const GaussQuadrature& rule,
                                      std::string function_id = {}) {
    ReportRow row;
    row.name = "gauss_poincare";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.lhs = covariance(f, f, rule);
    row.rhs = dirichlet_energy(f, rule);
    row.finish();
    return row;
}

/// chi^2 bound through the generator: int (p-1)^2 <= int (delta.nabla p)^2.
inline ReportRow chi2_bound_check(const FunctionHandle& p,
                                  const GaussQuadrature& rule,
                                  std::string function_id = {}) {
    ReportRow row;
    row.name = "chi2_bound";
    row.function_id = function_id.empty() ? p.describe() : std::move(function_id);

    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (p(std::span<const double>(rule.node(i), d)) < 0.0) {
            row.status = ReportRow::Status::Error;
            row.message = "density is negative at a quadrature node";
            return row;
        }
    }
    const double mass = integrate(p, rule);
    if (std::abs(mass - 1.0) > 1e-8) {
        row.status = ReportRow::Status::Error;
        row.message = "density does not integrate to 1 (got " +
                      std::to_string(mass) + ")";
        return row;
    }

    const FunctionHandle pm1 = p.plus_const(-1.0);
    row.lhs = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = pm1(std::span<const double>(rule.node(i), d));
        return rule.weight(i) * v * v;
    });
    const FunctionHandle dnp = p.delta_dot_nabla();
    row.rhs = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = dnp(std::span<const double>(rule.node(i), d));
        return rule.weight(i) * v * v;
    });
    row.finish();
    return row;
}

/// First-version inequality: int Phi(|f - fbar|) <= int tilde-Phi(|grad f|).
inline ReportRow first_version_check(const FunctionHandle& f,
                                     const YoungFunction& phi,
                                     const GaussQuadrature& rule,
                                     const Rule1d& inner_rule,
                                     std::string function_id = {}) {
    ReportRow row;
    row.name = "first_version";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.phi_name = phi.name();

    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    row.rhs = chunked_weighted_sum(n, [&](std::size_t i) {
        const double a =
            std::sqrt(f.gradient_sq_norm(std::span<const double>(rule.node(i), d)));
        const double v = tilde_phi(phi, a, inner_rule);
        return std::isfinite(v) ? rule.weight(i) * v : kInf;
    });
    if (!std::isfinite(row.rhs)) {
        row.mark_vacuous("tilde-Phi(|grad f|) modular diverges");
        return row;
    }
    row.lhs = modular(centered(f, rule), phi, rule);
    row.finish();
    return row;
}

/// MGF bound (exp-mode of the first version at scale 2 kappa / pi):
/// int e^{(2k/pi)(f - fbar)} <= int e^{(k^2/2) |grad f|^2}.
inline ReportRow mgf_bound_check(const FunctionHandle& f, double kappa,
                                 const GaussQuadrature& rule,
                                 std::string function_id = {}) {
    if (!(kappa > 0.0)) throw std::invalid_argument("mgf_bound_check: kappa > 0");
    ReportRow row;
    row.name = "mgf_bound";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.params.emplace_back("kappa", kappa);

    // rhs = 1 + int gauss2(kappa |grad f|) dgamma, so the growth gates of the
    // modular decide divergence exactly.
    const FunctionHandle grad = gradient_norm_handle(f, VectorNorm::L2);
    const double rhs_modular = modular(grad.scaled(kappa), YoungFunction::gauss2(), rule);
    if (!std::isfinite(rhs_modular)) {
        row.mark_vacuous("exp((kappa^2/2)|grad f|^2) is not integrable");
        return row;
    }
    row.rhs = 1.0 + rhs_modular;

    const double fbar = mean(f, rule);
    const double scale = 2.0 * kappa / M_PI;
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    row.lhs = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = f(std::span<const double>(rule.node(i), d)) - fbar;
        return clamp_overflow(rule.weight(i) * clamp_overflow(std::exp(scale * v)));
    });
    row.finish();
    return row;
}

/// Lebesgue-norm bound: ||f - fbar||_{2p} <= C2(p) || |grad f| ||_{2p}.
inline ReportRow lp_bound_check(const FunctionHandle& f, double p,
                                const GaussQuadrature& rule,
                                std::string function_id = {}) {
    if (!(p > 0.5)) throw std::invalid_argument("lp_bound_check: requires p > 1/2");
    ReportRow row;
    row.name = "lp_bound";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.params.emplace_back("p", p);
    row.params.emplace_back("C2", Constants::c2(p));
    row.lhs = lp_norm(centered(f, rule), 2.0 * p, rule);
    row.rhs = Constants::c2(p) *
              lp_norm(gradient_norm_handle(f, VectorNorm::L2), 2.0 * p, rule);
    row.finish();
    return row;
}

/// L log L bound: ||f - fbar||_{(exp2)*} <= C1 || |grad f| ||_{(exp2)*}.
inline ReportRow llogl_bound_check(const FunctionHandle& f,
                                   const GaussQuadrature& rule,
                                   std::string function_id = {}) {
    ReportRow row;
    row.name = "llogl_bound";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.params.emplace_back("C1", Constants::c1());
    row.params.emplace_back("kappa_star", Constants::kappa_star());
    const YoungFunction phi = YoungFunction::exp2_star();
    const NormResult lhs = luxemburg_norm(centered(f, rule), phi, rule);
    const NormResult rhs =
        luxemburg_norm(gradient_norm_handle(f, VectorNorm::L2), phi, rule);
    if (rhs.diverged) {
        row.mark_vacuous("gradient (exp2)* norm diverges");
        return row;
    }
    row.lhs = lhs.value;
    row.rhs = Constants::c1() * rhs.value;
    row.finish();
    return row;
}

/// ||f - fbar||_{cosh-1} <= (pi/2) || |grad f| ||_{gauss2}, plus the modular
/// form of the cosh inequality at kappa = 1 / || |grad f| ||_{gauss2}.
inline ReportRow cosh_gauss2_bound_check(const FunctionHandle& f,
                                         const GaussQuadrature& rule,
                                         std::string function_id = {}) {
    ReportRow row;
    row.name = "cosh_gauss2_bound";
    row.function_id = function_id.empty() ? f.describe() : std::move(function_id);
    row.params.emplace_back("C3", Constants::c3());

    const FunctionHandle grad = gradient_norm_handle(f, VectorNorm::L2);
    const NormResult grad_norm = luxemburg_norm(grad, YoungFunction::gauss2(), rule);
    if (grad_norm.diverged) {
        row.mark_vacuous("|grad f| is not in the gauss2 space");
        return row;
    }
    const NormResult lhs =
        luxemburg_norm(centered(f, rule), YoungFunction::cosh_m1(), rule);
    row.lhs = lhs.value;
    row.rhs = Constants::c3() * grad_norm.value;

    // Modular form: at kappa = 1/||grad||, both modulars sit at/below 1.
    if (grad_norm.value > 0.0) {
        const double kappa = 1.0 / grad_norm.value;
        const double lhs_mod = modular(
            centered(f, rule).scaled(2.0 * kappa / M_PI), YoungFunction::cosh_m1(), rule);
        const double rhs_mod =
            modular(grad.scaled(kappa), YoungFunction::gauss2(), rule);
        row.params.emplace_back("modular_lhs", lhs_mod);
        row.params.emplace_back("modular_rhs", rhs_mod);
    }
    row.finish();
    return row;
}

/// Covariance bound with paired vector norms: |cov(f,g)| <=
/// || |grad f|_1 ||_Phi  || |grad g|_2 ||_{Psi,*}.
inline ReportRow covariance_bound_check(const FunctionHandle& f,
                                        const FunctionHandle& g,
                                        const YoungFunction& phi, VectorNorm norm1,
                                        VectorNorm norm2, const GaussQuadrature& rule,
                                        std::string function_id = {}) {
    ReportRow row;
    row.name = "covariance_bound";
    row.function_id = function_id.empty()
                          ? f.describe() + "," + g.describe()
                          : std::move(function_id);
    row.phi_name = phi.name();
    row.lhs = std::abs(covariance(f, g, rule));
    const NormResult a = luxemburg_norm(gradient_norm_handle(f, norm1), phi, rule);
    const NormResult b = dual_norm(gradient_norm_handle(g, norm2), phi, rule);
    if (a.diverged || b.diverged) {
        row.mark_vacuous("a gradient norm diverges");
        return row;
    }
    row.rhs = a.value * b.value;
    row.params.emplace_back("lux_grad_f", a.value);
    row.params.emplace_back("dual_grad_g", b.value);
    row.finish();
    return row;
}

/// OU self-adjointness identity: cov(f,g) = int_0^inf e^{-t} int P_t grad f .
/// grad g dgamma dt. Hermite inputs only; the time integral is exact, each
/// matched term contributing alpha! |alpha| * (1/|alpha|).
inline ReportRow ou_selfadjoint_check(const FunctionHandle& f,
                                      const FunctionHandle& g,
                                      const GaussQuadrature& rule,
                                      std::string function_id = {}) {
    ReportRow row;
    row.name = "ou_selfadjoint";
    row.function_id = function_id.empty()
                          ? f.describe() + "," + g.describe()
                          : std::move(function_id);
    if (!f.is_hermite() || !g.is_hermite()) {
        row.status = ReportRow::Status::Error;
        row.message = "restricted to Hermite inputs (exact time integral)";
        return row;
    }
    // Numerical route.
    row.lhs = covariance(f, g, rule);
    // Spectral route: sum over matched alpha != 0 of a b alpha! |alpha| I(|alpha|)
    // with I(m) = int_0^inf e^{-mt} dt = 1/m.
    double rhs = 0.0;
    for (const auto& [alpha, a] : f.hermite().terms()) {
        const unsigned m = alpha.order();
        if (m == 0) continue;
        const double b = g.hermite().coeff(alpha);
        if (b == 0.0) continue;
        const double time_integral = 1.0 / static_cast<double>(m);
        rhs += a * b * alpha.factorial() * static_cast<double>(m) * time_integral;
    }
    row.rhs = rhs;
    row.margin = row.rhs - row.lhs;
    // An identity: holds when the two routes agree.
    row.holds = std::abs(row.margin) <= 1e-8 * std::max(1.0, std::abs(row.rhs));
    if (!row.holds) row.message = "identity routes disagree";
    return row;
}

struct LipschitzSubexpReport {
    double lipschitz = 0.0;
    double kappa = 0.0;
    double cosh_norm_bound = 0.0;  // pi L / (2 sqrt(2 ln 2))
    double cosh_norm = 0.0;        // direct Luxemburg norm of f - fbar
    double gauss2_modular = 0.0;   // modular of kappa |grad f| (must be <= 1)
    bool holds = false;
};

/// Lipschitz implies sub-exponential, with the explicit bound
/// ||f - fbar||_{cosh-1} <= pi/(2 kappa), kappa = sqrt(2 ln 2)/L chosen so the
/// gauss2 modular of kappa |grad f| is at most gauss2(kappa L) = 1.
inline LipschitzSubexpReport lipschitz_subexp_bound(const FunctionHandle& f,
                                                    const GaussQuadrature& rule) {
    if (f.is_hermite() || !f.builtin().lipschitz_bound())
        throw std::domain_error(
            "lipschitz_subexp_bound: needs a builtin with a Lipschitz bound");
    LipschitzSubexpReport rep;
    rep.lipschitz = *f.builtin().lipschitz_bound();
    if (rep.lipschitz == 0.0) {
        rep.holds = true;
        return rep;  // constant function: bound 0
    }
    rep.kappa = std::sqrt(2.0 * std::log(2.0)) / rep.lipschitz;
    rep.cosh_norm_bound = M_PI / (2.0 * rep.kappa);
    rep.gauss2_modular =
        modular(gradient_norm_handle(f, VectorNorm::L2).scaled(rep.kappa),
                YoungFunction::gauss2(), rule);
    rep.cosh_norm =
        luxemburg_norm(centered(f, rule), YoungFunction::cosh_m1(), rule).value;
    rep.holds = rep.gauss2_modular <= 1.0 + 1e-8 &&
                rep.cosh_norm <= rep.cosh_norm_bound + 1e-8;
    return rep;
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_INEQUALITIES_HPP
