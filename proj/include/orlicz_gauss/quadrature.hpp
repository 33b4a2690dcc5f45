#ifndef ORLICZ_GAUSS_QUADRATURE_HPP
#define ORLICZ_GAUSS_QUADRATURE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "orlicz_gauss/core.hpp"

namespace orlicz_gauss {

/// One-dimensional rule: nodes and weights.
struct Rule1d {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Probabilists' Gauss–Hermite rule. Nodes are the eigenvalues of the Jacobi
// matrix of H_{k+1}(t) = t H_k(t) - k H_{k-1}(t) (zero diagonal, off-diagonal
// sqrt(k); equivalent to the physicists' rule with nodes scaled by sqrt(2)
// and weights by 1/sqrt(pi)). Weights come from the Christoffel identity
// w_i = 1 / sum_{k<m} p_k(x_i)^2 with p_k the orthonormal polynomials: the
// eigenvector route underflows to noise (~1e-33) at extreme nodes whose true
// weights are far smaller, which wrecks modulars of rapidly growing
// integrands.
inline Rule1d gauss_hermite_prob(unsigned order) {
    if (order == 0) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
    for (unsigned k = 1; k < order; ++k) sub(k - 1) = std::sqrt(double(k));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Gauss-Hermite eigensolve failed");

    Rule1d rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (unsigned i = 0; i < order; ++i) rule.nodes[i] = solver.eigenvalues()(i);
    // Eigenvalues come out sorted. Symmetrize node pairs so the rule is
    // exactly even.
    for (unsigned i = 0, j = order - 1; i < j; ++i, --j) {
        const double m = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        rule.nodes[i] = -m;
        rule.nodes[j] = m;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;

    for (unsigned i = 0; i < order; ++i) {
        const double x = rule.nodes[i];
        // orthonormal recurrence: p_{k+1} = (x p_k - sqrt(k) p_{k-1})/sqrt(k+1)
        double pkm1 = 0.0;
        double pk = 1.0;
        double sum_sq = 1.0;
        for (unsigned k = 0; k + 1 < order; ++k) {
            const double pkp1 = (x * pk - std::sqrt(double(k)) * pkm1) /
                                std::sqrt(double(k + 1));
            pkm1 = pk;
            pk = pkp1;
            sum_sq += pk * pk;
        }
        rule.weights[i] = 1.0 / sum_sq;
    }
    for (unsigned i = 0, j = order - 1; i < j; ++i, --j) {
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.weights[i] = rule.weights[j] = w;
    }
    double total = 0.0;
    for (double w : rule.weights) total += w;
    for (double& w : rule.weights) w /= total;
    return rule;
}

// Gauss–Legendre on [0,1] (used for the resolvent time integral after the
// substitution s = e^{-t}).
inline Rule1d gauss_legendre_01(unsigned order) {
    if (order == 0) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
    for (unsigned k = 1; k < order; ++k)
        sub(k - 1) = double(k) / std::sqrt(4.0 * k * k - 1.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("Gauss-Legendre eigensolve failed");

    Rule1d rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (unsigned i = 0; i < order; ++i) {
        rule.nodes[i] = 0.5 * (solver.eigenvalues()(i) + 1.0);  // [-1,1] -> [0,1]
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = v0 * v0;  // mu_0 = 2, interval scale 1/2
    }
    return rule;
}

// Deterministic uniform in (0,1) from the raw 64-bit stream; avoids the
// implementation-defined std::normal_distribution so that seeded runs are
// bit-reproducible everywhere.
inline double uniform01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// 1-d probabilists' Gauss-Hermite rule (weights sum to 1).
inline Rule1d gauss_hermite_rule(unsigned order) {
    return detail::gauss_hermite_prob(order);
}

/// Seeded standard-normal stream (splitmix64 + Box-Muller), bit-reproducible.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : state_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = detail::uniform01(next_bits());
        const double u2 = detail::uniform01(next_bits());
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    void fill(std::vector<double>& out) {
        for (double& v : out) v = next();
    }

private:
    std::uint64_t next_bits() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Quadrature plan for integrals against the standard Gaussian on R^n.
/// Probabilists' normalization: weights sum to 1.
class GaussQuadrature {
public:
    enum class Mode { TensorGaussHermite, MonteCarlo };

    static GaussQuadrature gauss_hermite(std::size_t dim, unsigned order) {
        if (dim == 0) throw std::invalid_argument("quadrature dim must be >= 1");
        if (dim > 4)
            throw std::invalid_argument(
                "tensor Gauss-Hermite is restricted to dim <= 4; use Monte Carlo");
        GaussQuadrature q;
        q.mode_ = Mode::TensorGaussHermite;
        q.dim_ = dim;
        q.order_ = order;
        const Rule1d rule = detail::gauss_hermite_prob(order);
        const std::size_t total = [&] {
            std::size_t t = 1;
            for (std::size_t i = 0; i < dim; ++i) t *= order;
            return t;
        }();
        q.nodes_.resize(total * dim);
        q.weights_.resize(total);
        std::vector<std::size_t> idx(dim, 0);
        for (std::size_t k = 0; k < total; ++k) {
            double w = 1.0;
            for (std::size_t d = 0; d < dim; ++d) {
                q.nodes_[k * dim + d] = rule.nodes[idx[d]];
                w *= rule.weights[idx[d]];
            }
            q.weights_[k] = w;
            for (std::size_t d = dim; d-- > 0;) {
                if (++idx[d] < order) break;
                idx[d] = 0;
            }
        }
        return q;
    }

    static GaussQuadrature monte_carlo(std::size_t dim, std::size_t samples,
                                       std::uint64_t seed) {
        if (dim == 0) throw std::invalid_argument("quadrature dim must be >= 1");
        if (samples == 0) throw std::invalid_argument("sample count must be >= 1");
        GaussQuadrature q;
        q.mode_ = Mode::MonteCarlo;
        q.dim_ = dim;
        q.samples_ = samples;
        q.seed_ = seed;
        q.nodes_.resize(samples * dim);
        NormalSampler rng(seed);
        rng.fill(q.nodes_);
        q.weights_.assign(samples, 1.0 / static_cast<double>(samples));
        return q;
    }

    Mode mode() const { return mode_; }
    std::size_t dim() const { return dim_; }
    unsigned order() const { return order_; }
    std::size_t samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }
    std::size_t size() const { return weights_.size(); }

    const double* node(std::size_t i) const { return &nodes_[i * dim_]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }

    /// A 1-d rule with the same flavor (used for inner integrals).
    Rule1d rule_1d() const {
        if (mode_ == Mode::TensorGaussHermite) return detail::gauss_hermite_prob(order_);
        Rule1d r;
        r.nodes.resize(samples_);
        NormalSampler rng(seed_);
        rng.fill(r.nodes);
        r.weights.assign(samples_, 1.0 / static_cast<double>(samples_));
        return r;
    }

private:
    GaussQuadrature() = default;
    Mode mode_ = Mode::TensorGaussHermite;
    std::size_t dim_ = 1;
    unsigned order_ = 0;
    std::size_t samples_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<double> nodes_;   // row-major, size() * dim
    std::vector<double> weights_;
};

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_QUADRATURE_HPP
