#ifndef ORLICZ_GAUSS_HERMITE_HPP
#define ORLICZ_GAUSS_HERMITE_HPP

#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "orlicz_gauss/multi_index.hpp"

namespace orlicz_gauss {

/// Probabilists' Hermite H_k via the recurrence
/// H_{k+1}(t) = t H_k(t) - k H_{k-1}(t), H_0 = 1, H_1 = t.
inline double hermite_1d(unsigned k, double t) {
    if (k == 0) return 1.0;
    double hm1 = 1.0;
    double h = t;
    for (unsigned j = 1; j < k; ++j) {
        const double hp1 = t * h - static_cast<double>(j) * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

/// H_alpha(x) = prod_i H_{alpha_i}(x_i).
inline double hermite_eval(const MultiIndex& alpha, std::span<const double> x) {
    if (alpha.dim() != x.size())
        throw std::invalid_argument("hermite_eval: dimension mismatch");
    double v = 1.0;
    for (std::size_t i = 0; i < alpha.dim(); ++i) v *= hermite_1d(alpha[i], x[i]);
    return v;
}

/// Finite Hermite expansion: sparse multi-index -> coefficient map. Carrier of
/// the exact actions of partial_i, delta_i and the OU semigroup.
class HermiteExpansion {
public:
    using TermMap = std::map<MultiIndex, double>;

    explicit HermiteExpansion(std::size_t dim) : dim_(dim) {
        if (dim == 0) throw std::invalid_argument("HermiteExpansion: dim must be >= 1");
    }

    static HermiteExpansion basis(std::size_t dim, const MultiIndex& alpha,
                                  double coeff = 1.0) {
        HermiteExpansion e(dim);
        e.set(alpha, coeff);
        return e;
    }
    static HermiteExpansion constant(std::size_t dim, double value) {
        HermiteExpansion e(dim);
        e.set(MultiIndex::zeros(dim), value);
        return e;
    }

    std::size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double coeff(const MultiIndex& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? 0.0 : it->second;
    }

    void set(const MultiIndex& alpha, double c) {
        if (alpha.dim() != dim_)
            throw std::invalid_argument("HermiteExpansion: multi-index dim mismatch");
        if (c == 0.0) {
            terms_.erase(alpha);
        } else {
            terms_[alpha] = c;
        }
    }

    void add(const MultiIndex& alpha, double c) { set(alpha, coeff(alpha) + c); }

    double eval(std::span<const double> x) const {
        if (x.size() != dim_)
            throw std::invalid_argument("HermiteExpansion: point dim mismatch");
        double v = 0.0;
        for (const auto& [alpha, c] : terms_) v += c * hermite_eval(alpha, x);
        return v;
    }

    /// partial_i H_alpha = alpha_i H_{alpha - e_i}, termwise.
    HermiteExpansion partial(std::size_t axis) const {
        check_axis(axis);
        HermiteExpansion out(dim_);
        for (const auto& [alpha, c] : terms_) {
            if (alpha[axis] == 0) continue;
            out.add(alpha.lowered(axis), c * static_cast<double>(alpha[axis]));
        }
        return out;
    }

    /// delta_i H_alpha = H_{alpha + e_i}, termwise.
    HermiteExpansion delta(std::size_t axis) const {
        check_axis(axis);
        HermiteExpansion out(dim_);
        for (const auto& [alpha, c] : terms_) out.add(alpha.raised(axis), c);
        return out;
    }

    /// delta·nabla acts as the number operator: c_alpha -> |alpha| c_alpha.
    HermiteExpansion number_operator() const {
        HermiteExpansion out(dim_);
        for (const auto& [alpha, c] : terms_) {
            const double o = static_cast<double>(alpha.order());
            if (o != 0.0) out.set(alpha, c * o);
        }
        return out;
    }

    /// OU semigroup eigen-action: c_alpha -> e^{-t|alpha|} c_alpha.
    HermiteExpansion semigroup(double t) const {
        HermiteExpansion out(dim_);
        for (const auto& [alpha, c] : terms_) {
            if (std::isinf(t)) {
                if (alpha.order() == 0) out.set(alpha, c);
                continue;
            }
            out.set(alpha, c * std::exp(-t * static_cast<double>(alpha.order())));
        }
        return out;
    }

    /// Resolvent of (I + delta·nabla): c_alpha -> c_alpha / (1 + |alpha|).
    HermiteExpansion resolvent() const {
        HermiteExpansion out(dim_);
        for (const auto& [alpha, c] : terms_)
            out.set(alpha, c / (1.0 + static_cast<double>(alpha.order())));
        return out;
    }

    HermiteExpansion scaled(double s) const {
        HermiteExpansion out(dim_);
        if (s == 0.0) return out;
        for (const auto& [alpha, c] : terms_) out.set(alpha, c * s);
        return out;
    }

    HermiteExpansion plus(const HermiteExpansion& o) const {
        if (o.dim_ != dim_)
            throw std::invalid_argument("HermiteExpansion: dim mismatch in sum");
        HermiteExpansion out = *this;
        for (const auto& [alpha, c] : o.terms_) out.add(alpha, c);
        return out;
    }

    /// Exact Gaussian mean: the H_0 coefficient.
    double exact_mean() const { return coeff(MultiIndex::zeros(dim_)); }

    /// Exact L^2(gamma) inner product: sum_alpha c_alpha d_alpha alpha!.
    double exact_inner(const HermiteExpansion& o) const {
        if (o.dim_ != dim_)
            throw std::invalid_argument("HermiteExpansion: dim mismatch in inner");
        double v = 0.0;
        for (const auto& [alpha, c] : terms_) {
            const double d = o.coeff(alpha);
            if (d != 0.0) v += c * d * alpha.factorial();
        }
        return v;
    }

    double exact_covariance(const HermiteExpansion& o) const {
        double v = 0.0;
        for (const auto& [alpha, c] : terms_) {
            if (alpha.order() == 0) continue;
            const double d = o.coeff(alpha);
            if (d != 0.0) v += c * d * alpha.factorial();
        }
        return v;
    }

    /// Max polynomial degree (= max |alpha| over the support; -1 if empty).
    int degree() const {
        int d = -1;
        for (const auto& [alpha, c] : terms_)
            d = std::max(d, static_cast<int>(alpha.order()));
        return d;
    }

private:
    void check_axis(std::size_t axis) const {
        if (axis >= dim_) throw std::invalid_argument("HermiteExpansion: axis out of range");
    }
    std::size_t dim_;
    TermMap terms_;
};

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_HERMITE_HPP
