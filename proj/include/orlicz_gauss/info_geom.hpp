#ifndef ORLICZ_GAUSS_INFO_GEOM_HPP
#define ORLICZ_GAUSS_INFO_GEOM_HPP

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz_gauss/function.hpp"
#include "orlicz_gauss/gauss_space.hpp"
#include "orlicz_gauss/orlicz_norms.hpp"
#include "orlicz_gauss/quadrature.hpp"

namespace orlicz_gauss {

/// Density of the maximal exponential model in exponential coordinates:
/// p = e^{u - K} with u centered under gamma and K = log int e^u dgamma.
class ExpDensity {
public:
    ExpDensity(FunctionHandle u, double log_normalizer)
        : u_(std::move(u)), k_(log_normalizer) {}

    const FunctionHandle& u() const { return u_; }
    double log_normalizer() const { return k_; }
    std::size_t dim() const { return u_.dim(); }

    double operator()(std::span<const double> x) const {
        return std::exp(u_(x) - k_);
    }
    /// nabla log p = nabla u.
    void score(std::span<const double> x, std::span<double> out) const {
        u_.gradient(x, out);
    }

    static ExpDensity standard(std::size_t dim) {
        return ExpDensity(FunctionHandle(HermiteExpansion(dim)), 0.0);
    }

private:
    FunctionHandle u_;
    double k_;
};

namespace detail {

/// Quadratic-form data of a polynomial u of degree <= 2:
/// u(x) = const + l.x + x^T A x (H_{2e_i} = x_i^2 - 1, H_{e_i+e_j} = x_i x_j).
struct QuadraticForm {
    Eigen::VectorXd linear;
    Eigen::MatrixXd quad;
};

inline std::optional<QuadraticForm> quadratic_form(const FunctionHandle& f) {
    if (!f.is_hermite()) return std::nullopt;
    const HermiteExpansion& e = f.hermite();
    if (e.degree() > 2) return std::nullopt;
    const std::size_t n = e.dim();
    QuadraticForm q;
    q.linear = Eigen::VectorXd::Zero(n);
    q.quad = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [alpha, c] : e.terms()) {
        if (alpha.order() == 1) {
            for (std::size_t d = 0; d < n; ++d)
                if (alpha[d] == 1) q.linear(d) += c;
        } else if (alpha.order() == 2) {
            int i = -1, j = -1;
            for (std::size_t d = 0; d < n; ++d) {
                if (alpha[d] == 2) i = j = static_cast<int>(d);
                if (alpha[d] == 1) (i < 0 ? i : j) = static_cast<int>(d);
            }
            if (i == j) {
                q.quad(i, i) += c;
            } else {
                q.quad(i, j) += 0.5 * c;
                q.quad(j, i) += 0.5 * c;
            }
        }
    }
    return q;
}

/// Provable divergence of int e^u dgamma for polynomial u.
inline bool normalizer_diverges(const FunctionHandle& u) {
    const GrowthClass g = u.growth();
    if (g.kind == GrowthClass::Kind::Exponential) return true;
    if (g.kind == GrowthClass::Kind::Polynomial && g.degree == 2) {
        if (const auto q = quadratic_form(u)) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q->quad);
            return es.eigenvalues().maxCoeff() >= 0.5;
        }
    }
    return false;
}

}  // namespace detail

/// Builds e^{u - K} * gamma: subtracts the gamma-mean of u, then computes
/// K = log int e^{u - ubar} dgamma. Throws on a (provably or numerically)
/// divergent normalizer.
inline ExpDensity normalize(const FunctionHandle& u, const GaussQuadrature& rule) {
    const FunctionHandle uc = centered(u, rule);
    if (detail::normalizer_diverges(uc))
        throw std::domain_error("normalize: int e^u dgamma diverges");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    const double z = chunked_weighted_sum(n, [&](std::size_t i) {
        return clamp_overflow(
            rule.weight(i) *
            clamp_overflow(std::exp(uc(std::span<const double>(rule.node(i), d)))));
    });
    if (!std::isfinite(z) || !(z > 0.0))
        throw std::domain_error("normalize: divergent or vanishing normalizer");
    return ExpDensity(uc, std::log(z));
}

struct MaxexpCheck {
    double l2 = 0.0;   // int p^2 dgamma
    double inv = 0.0;  // int 1/p dgamma
    bool holds = false;
    // Quadrature finiteness is evidence, not proof.
    static constexpr const char* caveat = "numerical evidence only";
};

/// The two sufficient conditions for p in the maximal exponential model:
/// int p^2 dgamma < inf and int 1/p dgamma < inf.
inline MaxexpCheck maxexp_sufficient_check(const FunctionHandle& p,
                                           const GaussQuadrature& rule) {
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(p(std::span<const double>(rule.node(i), d)) > 0.0))
            throw std::domain_error(
                "maxexp_sufficient_check: p <= 0 at a quadrature node");
    }
    MaxexpCheck out;
    out.l2 = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = p(std::span<const double>(rule.node(i), d));
        return clamp_overflow(rule.weight(i) * clamp_overflow(v * v));
    });
    out.inv = chunked_weighted_sum(n, [&](std::size_t i) {
        const double v = p(std::span<const double>(rule.node(i), d));
        return clamp_overflow(rule.weight(i) / v);
    });
    out.holds = std::isfinite(out.l2) && std::isfinite(out.inv);
    return out;
}

/// Hyvarinen divergence in the Gaussian chart:
/// KH(P,Q) = 1/2 int |nabla u_p - nabla u_q|^2 p dgamma.
inline double hyvarinen_divergence(const ExpDensity& p, const ExpDensity& q,
                                   const GaussQuadrature& rule) {
    if (p.dim() != q.dim() || p.dim() != rule.dim())
        throw std::invalid_argument("hyvarinen_divergence: dimension mismatch");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();
    return chunked_weighted_sum(n, [&](std::size_t i) {
        const std::span<const double> x(rule.node(i), d);
        std::vector<double> gp(d), gq(d);
        p.score(x, gp);
        q.score(x, gq);
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double t = gp[k] - gq[k];
            s += t * t;
        }
        return 0.5 * rule.weight(i) * s * p(x);
    });
}

/// Local Hyvarinen score S(q,x) = 1/2 |nabla u|^2 - delta.nabla u.
inline double local_score(const ExpDensity& q, std::span<const double> x) {
    const std::size_t d = q.dim();
    std::vector<double> g(d);
    q.u().gradient(x, g);
    double xg = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        xg += x[i] * g[i];
        gg += g[i] * g[i];
    }
    return 0.5 * gg - (xg - q.u().laplacian(x));
}

struct ScoreFitResult {
    std::vector<double> coefficients;
    std::vector<std::vector<double>> gram;  // A_{ij} = E_p[grad b_i . grad b_j]
    std::vector<double> moments;            // m_i = E_p[delta.nabla b_i]
    double residual_score = 0.0;            // (1/2) c^T A c - c^T m at the fit
    std::vector<double> std_errors;         // empirical mode only
    bool pseudo_solved = false;
};

namespace detail {

inline std::vector<double> solve_spd(const Eigen::MatrixXd& a,
                                     const Eigen::VectorXd& b, bool allow_pseudo,
                                     bool& pseudo_used, const char* what) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-12 * sv(0);
    const bool singular = sv(sv.size() - 1) <= cutoff;
    if (singular && !allow_pseudo)
        throw std::domain_error(std::string(what) + ": singular Gram matrix");
    pseudo_used = singular;
    Eigen::VectorXd x = svd.solve(b);
    return {x.data(), x.data() + x.size()};
}

}  // namespace detail

/// Exact-mode score matching: minimizes E_p[ 1/2 |sum c_i grad b_i|^2 -
/// sum c_i delta.nabla b_i ] by the normal equations A c = m with
/// A_{ij} = E_p[grad b_i . grad b_j], m_i = E_p[delta.nabla b_i].
inline ScoreFitResult score_matching_fit(const ExpDensity& target,
                                         const std::vector<FunctionHandle>& basis,
                                         const GaussQuadrature& rule,
                                         bool allow_pseudo = false) {
    if (basis.empty()) throw std::invalid_argument("score_matching_fit: empty basis");
    const std::size_t nb = basis.size();
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();

    std::vector<FunctionHandle> dn;
    dn.reserve(nb);
    for (const auto& b : basis) dn.push_back(b.delta_dot_nabla());

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(nb);
    std::vector<std::vector<double>> grads(nb, std::vector<double>(d));
    for (std::size_t k = 0; k < n; ++k) {
        const std::span<const double> x(rule.node(k), d);
        const double w = rule.weight(k) * target(x);
        for (std::size_t i = 0; i < nb; ++i) basis[i].gradient(x, grads[i]);
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = i; j < nb; ++j) {
                double dot = 0.0;
                for (std::size_t t = 0; t < d; ++t) dot += grads[i][t] * grads[j][t];
                a(i, j) += w * dot;
            }
            m(i) += w * dn[i](x);
        }
    }
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);

    ScoreFitResult res;
    res.coefficients =
        detail::solve_spd(a, m, allow_pseudo, res.pseudo_solved, "score_matching_fit");
    res.gram.assign(nb, std::vector<double>(nb));
    res.moments.assign(m.data(), m.data() + nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) res.gram[i][j] = a(i, j);
    Eigen::Map<const Eigen::VectorXd> c(res.coefficients.data(), nb);
    res.residual_score = 0.5 * c.dot(a * c) - c.dot(m);
    return res;
}

/// Empirical-mode score matching over a caller-supplied sample set (row-major
/// points). Adds sandwich standard errors for the fitted coefficients.
inline ScoreFitResult score_matching_fit_empirical(
    std::span<const double> samples, std::size_t dim,
    const std::vector<FunctionHandle>& basis, bool allow_pseudo = false) {
    if (basis.empty()) throw std::invalid_argument("score_matching_fit: empty basis");
    if (dim == 0 || samples.size() % dim != 0)
        throw std::invalid_argument("score_matching_fit: bad sample layout");
    const std::size_t count = samples.size() / dim;
    if (count == 0) throw std::invalid_argument("score_matching_fit: no samples");
    const std::size_t nb = basis.size();

    std::vector<FunctionHandle> dn;
    dn.reserve(nb);
    for (const auto& b : basis) dn.push_back(b.delta_dot_nabla());

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::VectorXd m = Eigen::VectorXd::Zero(nb);
    std::vector<Eigen::MatrixXd> per_a(count, Eigen::MatrixXd(nb, nb));
    std::vector<Eigen::VectorXd> per_m(count, Eigen::VectorXd(nb));
    std::vector<std::vector<double>> grads(nb, std::vector<double>(dim));
    for (std::size_t k = 0; k < count; ++k) {
        const std::span<const double> x(samples.data() + k * dim, dim);
        for (std::size_t i = 0; i < nb; ++i) basis[i].gradient(x, grads[i]);
        for (std::size_t i = 0; i < nb; ++i) {
            for (std::size_t j = 0; j < nb; ++j) {
                double dot = 0.0;
                for (std::size_t t = 0; t < dim; ++t) dot += grads[i][t] * grads[j][t];
                per_a[k](i, j) = dot;
            }
            per_m[k](i) = dn[i](x);
        }
        a += per_a[k];
        m += per_m[k];
    }
    a /= static_cast<double>(count);
    m /= static_cast<double>(count);

    ScoreFitResult res;
    res.coefficients =
        detail::solve_spd(a, m, allow_pseudo, res.pseudo_solved, "score_matching_fit");
    res.gram.assign(nb, std::vector<double>(nb));
    res.moments.assign(m.data(), m.data() + nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) res.gram[i][j] = a(i, j);
    Eigen::Map<const Eigen::VectorXd> c(res.coefficients.data(), nb);
    res.residual_score = 0.5 * c.dot(a * c) - c.dot(m);

    // Sandwich covariance of c-hat: A^{-1} S A^{-1} / N with S the sample
    // covariance of v_k = m_k - A_k c.
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nb, nb);
    Eigen::VectorXd vbar = Eigen::VectorXd::Zero(nb);
    std::vector<Eigen::VectorXd> vs(count);
    for (std::size_t k = 0; k < count; ++k) {
        vs[k] = per_m[k] - per_a[k] * c;
        vbar += vs[k];
    }
    vbar /= static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Eigen::VectorXd w = vs[k] - vbar;
        s += w * w.transpose();
    }
    s /= static_cast<double>(count);
    const Eigen::MatrixXd ainv = a.inverse();
    const Eigen::MatrixXd cov = ainv * s * ainv / static_cast<double>(count);
    res.std_errors.resize(nb);
    for (std::size_t i = 0; i < nb; ++i)
        res.std_errors[i] = std::sqrt(std::max(0.0, cov(i, i)));
    return res;
}

/// Seeded exact sampler for e^{u-K} gamma with polynomial u of degree <= 2
/// (a Gaussian after completing the square). Row-major output.
inline std::vector<double> sample_exp_density(const ExpDensity& p, std::size_t count,
                                              std::uint64_t seed) {
    const auto q = detail::quadratic_form(p.u());
    if (!q)
        throw std::domain_error(
            "sample_exp_density: supported only for Hermite u of degree <= 2");
    const std::size_t n = p.dim();
    const Eigen::MatrixXd precision =
        Eigen::MatrixXd::Identity(n, n) - 2.0 * q->quad;
    Eigen::LLT<Eigen::MatrixXd> llt_prec(precision);
    if (llt_prec.info() != Eigen::Success)
        throw std::domain_error("sample_exp_density: density is not normalizable");
    const Eigen::MatrixXd sigma = precision.inverse();
    const Eigen::VectorXd mu = sigma * q->linear;
    Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    const Eigen::MatrixXd l = llt.matrixL();

    NormalSampler rng(seed);
    std::vector<double> out(count * n);
    Eigen::VectorXd z(n);
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < n; ++i) z(i) = rng.next();
        const Eigen::VectorXd x = mu + l * z;
        for (std::size_t i = 0; i < n; ++i) out[k * n + i] = x(i);
    }
    return out;
}

struct OttoResult {
    double value = 0.0;          // int grad f . grad g p dgamma
    double adjoint_value = 0.0;  // int f delta.(p grad g) dgamma
    bool consistent = false;     // agreement within 1e-8 (relative to max(1,.))
};

/// Otto inner product of centered f, g on the p-fiber, and the adjoint form
/// int f delta.(p grad g) with delta.(p grad g) = p (delta.nabla g -
/// grad u . grad g) expanded analytically for p = e^{u-K}.
inline OttoResult otto_inner(const ExpDensity& p, const FunctionHandle& f,
                             const FunctionHandle& g, const GaussQuadrature& rule,
                             bool auto_center = false) {
    if (f.dim() != p.dim() || g.dim() != p.dim())
        throw std::invalid_argument("otto_inner: dimension mismatch");
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();

    auto p_mean = [&](const FunctionHandle& h) {
        return chunked_weighted_sum(n, [&](std::size_t i) {
            const std::span<const double> x(rule.node(i), d);
            return rule.weight(i) * h(x) * p(x);
        });
    };
    FunctionHandle fc = f;
    FunctionHandle gc = g;
    const double fm = p_mean(f);
    const double gm = p_mean(g);
    if (auto_center) {
        fc = f.plus_const(-fm);
        gc = g.plus_const(-gm);
    } else if (std::abs(fm) > 1e-8 || std::abs(gm) > 1e-8) {
        throw std::invalid_argument(
            "otto_inner: arguments must be p-centered (or pass auto_center)");
    }

    OttoResult out;
    out.value = chunked_weighted_sum(n, [&](std::size_t i) {
        const std::span<const double> x(rule.node(i), d);
        std::vector<double> gf(d), gg(d);
        fc.gradient(x, gf);
        gc.gradient(x, gg);
        double dot = 0.0;
        for (std::size_t k = 0; k < d; ++k) dot += gf[k] * gg[k];
        return rule.weight(i) * dot * p(x);
    });
    const FunctionHandle dng = gc.delta_dot_nabla();
    out.adjoint_value = chunked_weighted_sum(n, [&](std::size_t i) {
        const std::span<const double> x(rule.node(i), d);
        std::vector<double> gg(d), gu(d);
        gc.gradient(x, gg);
        p.u().gradient(x, gu);
        double ug = 0.0;
        for (std::size_t k = 0; k < d; ++k) ug += gu[k] * gg[k];
        return rule.weight(i) * fc(x) * p(x) * (dng(x) - ug);
    });
    out.consistent = std::abs(out.value - out.adjoint_value) <=
                     1e-8 * std::max(1.0, std::abs(out.value));
    return out;
}

/// Natural gradient of a covector under the Otto pairing: returns c with
/// sum_j G_{ij} c_j = <target, b_i>_p, G the Otto Gram of the (p-centered)
/// basis — the Galerkin inverse of g -> delta.(p grad g).
inline std::vector<double> natural_gradient(const ExpDensity& p,
                                            const FunctionHandle& target,
                                            const std::vector<FunctionHandle>& basis,
                                            const GaussQuadrature& rule,
                                            bool allow_pseudo = false) {
    if (basis.empty()) throw std::invalid_argument("natural_gradient: empty basis");
    const std::size_t nb = basis.size();
    const std::size_t n = rule.size();
    const std::size_t d = rule.dim();

    // Center the basis on the p-fiber (the Otto pairing only sees gradients,
    // but the covector pairing does not).
    std::vector<FunctionHandle> b;
    b.reserve(nb);
    for (const auto& h : basis) {
        const double m = chunked_weighted_sum(n, [&](std::size_t i) {
            const std::span<const double> x(rule.node(i), d);
            return rule.weight(i) * h(x) * p(x);
        });
        b.push_back(h.plus_const(-m));
    }

    Eigen::MatrixXd gram(nb, nb);
    Eigen::VectorXd v(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = i; j < nb; ++j) {
            gram(i, j) = chunked_weighted_sum(n, [&](std::size_t k) {
                const std::span<const double> x(rule.node(k), d);
                std::vector<double> gi(d), gj(d);
                b[i].gradient(x, gi);
                b[j].gradient(x, gj);
                double dot = 0.0;
                for (std::size_t t = 0; t < d; ++t) dot += gi[t] * gj[t];
                return rule.weight(k) * dot * p(x);
            });
            gram(j, i) = gram(i, j);
        }
        v(i) = chunked_weighted_sum(n, [&](std::size_t k) {
            const std::span<const double> x(rule.node(k), d);
            return rule.weight(k) * target(x) * b[i](x) * p(x);
        });
    }
    bool pseudo = false;
    return detail::solve_spd(gram, v, allow_pseudo, pseudo, "natural_gradient");
}

struct ScoreModelPreconditions {
    NormResult grad_squared_space;  // || |grad u| ||_{(cosh-1), 2}
    NormResult delta_grad;          // || delta.nabla u ||_{cosh-1}
    bool ok = false;
};

/// Sufficient regularity of a score-matching target: |grad u| in
/// L^{(cosh-1),2} and delta.nabla u in L^{cosh-1}; reported, not enforced.
inline ScoreModelPreconditions score_model_preconditions(const FunctionHandle& u,
                                                         const GaussQuadrature& rule) {
    ScoreModelPreconditions out;
    out.grad_squared_space = squared_space_norm(gradient_norm_handle(u, VectorNorm::L2),
                                                YoungFunction::cosh_m1(), rule);
    out.delta_grad =
        luxemburg_norm(u.delta_dot_nabla(), YoungFunction::cosh_m1(), rule);
    out.ok = !out.grad_squared_space.diverged && !out.delta_grad.diverged;
    return out;
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_INFO_GEOM_HPP
