#ifndef ORLICZ_GAUSS_SUITE_HPP
#define ORLICZ_GAUSS_SUITE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "orlicz_gauss/inequalities.hpp"

namespace orlicz_gauss {

struct CatalogEntry {
    std::string id;
    FunctionHandle function;
    bool is_density = false;

    CatalogEntry(std::string id_, FunctionHandle f, bool density = false)
        : id(std::move(id_)), function(std::move(f)), is_density(density) {}
};

using Catalog = std::vector<CatalogEntry>;

/// The shipped verification catalog: >= 10 functions over n in {1,2,3},
/// mixing exact Hermite expansions, Lipschitz builtins, exponential tilts and
/// densities. Ordered so the first differentiable entries give the classical
/// covariance/self-adjointness pairs.
inline Catalog shipped_catalog() {
    Catalog cat;
    const auto H = [](std::size_t dim, std::vector<unsigned> alpha, double c) {
        return HermiteExpansion::basis(dim, MultiIndex(std::move(alpha)), c);
    };

    cat.emplace_back("h1", FunctionHandle(H(1, {1}, 1.0)));
    cat.emplace_back("h2", FunctionHandle(H(1, {2}, 1.0)));
    cat.emplace_back("h1_03h2",
                     FunctionHandle(H(1, {1}, 1.0).plus(H(1, {2}, 0.3))));
    cat.emplace_back("h3", FunctionHandle(H(1, {3}, 1.0)));
    cat.emplace_back("h11", FunctionHandle(H(2, {1, 1}, 1.0)));
    cat.emplace_back("hmix2", FunctionHandle(H(2, {1, 0}, 1.0)
                                                 .plus(H(2, {1, 1}, 0.5))
                                                 .plus(H(2, {0, 2}, 0.25))));
    cat.emplace_back("quad3", FunctionHandle(H(3, {2, 0, 0}, 0.5)
                                                 .plus(H(3, {0, 2, 0}, 0.5))
                                                 .plus(H(3, {0, 0, 2}, 0.5))));
    cat.emplace_back("lin3",
                     FunctionHandle(builtins::linear_sum(3, 1.0 / std::sqrt(3.0))));
    cat.emplace_back("sin1", FunctionHandle(builtins::sin_sum(
                                 1, {{1.0, 1.0, 0}, {0.5, 2.0, 0}})));
    cat.emplace_back("sin2",
                     FunctionHandle(builtins::sin_sum(2, {{1.0, 1.0, 0}, {1.0, 1.0, 1}})));
    cat.emplace_back("expt", FunctionHandle(builtins::exp_linear({0.5}, true)));
    cat.emplace_back("const1", FunctionHandle(builtins::constant(1, 2.5)));

    cat.emplace_back("tilt05", FunctionHandle(builtins::gaussian_tilt_density({0.5})),
                     true);
    cat.emplace_back("dens_h2",
                     FunctionHandle(HermiteExpansion::constant(1, 1.0)
                                        .plus(H(1, {2}, 0.1))),
                     true);
    cat.emplace_back("tilt2d",
                     FunctionHandle(builtins::gaussian_tilt_density({0.3, 0.2})), true);
    return cat;
}

struct SuiteConfig {
    enum class Mode { GaussHermite, MonteCarlo };
    Mode mode = Mode::GaussHermite;
    // Per-dimension tensor orders (the m^n cost caps the higher dimensions).
    unsigned gh_order_1d = 96;
    unsigned gh_order_2d = 40;
    unsigned gh_order_3d = 24;
    unsigned gh_order_4d = 10;
    std::size_t mc_samples = 100000;
    std::uint64_t mc_seed = 0;
    unsigned inner_1d_order = 64;  // tilde-Phi inner rule
    double tol = 1e-10;
    std::vector<double> mgf_kappas{0.5, 1.0};
    std::vector<double> lp_exponents{1.0, 2.0, 3.0};

    /// Base order override (CLI "gh:N"): N on the line, capped per dimension.
    void set_base_order(unsigned n) {
        gh_order_1d = n;
        gh_order_2d = std::min(n, 40u);
        gh_order_3d = std::min(n, 24u);
        gh_order_4d = std::min(n, 10u);
    }

    GaussQuadrature rule_for(std::size_t dim) const {
        if (mode == Mode::MonteCarlo)
            return GaussQuadrature::monte_carlo(dim, mc_samples, mc_seed);
        unsigned order = gh_order_1d;
        if (dim == 2) order = gh_order_2d;
        if (dim == 3) order = gh_order_3d;
        if (dim >= 4) order = gh_order_4d;
        return GaussQuadrature::gauss_hermite(dim, order);
    }
};

namespace detail {

template <class Fn>
inline ReportRow guarded_row(const std::string& name, const std::string& fid,
                             const Fn& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        ReportRow row;
        row.name = name;
        row.function_id = fid;
        row.status = ReportRow::Status::Error;
        row.message = e.what();
        return row;
    }
}

}  // namespace detail

/// Runs every check over the catalog in a fixed order; per-row failures are
/// recorded, never thrown. Deterministic for a fixed config.
inline InequalityReport run_suite(const Catalog& catalog, const SuiteConfig& config) {
    InequalityReport report;
    if (catalog.empty()) return report;

    std::map<std::size_t, GaussQuadrature> rules;
    auto rule_for = [&](std::size_t dim) -> const GaussQuadrature& {
        auto it = rules.find(dim);
        if (it == rules.end())
            it = rules.emplace(dim, config.rule_for(dim)).first;
        return it->second;
    };
    const Rule1d inner = gauss_hermite_rule(config.inner_1d_order);

    std::vector<const CatalogEntry*> functions;
    std::vector<const CatalogEntry*> densities;
    for (const auto& e : catalog)
        (e.is_density ? densities : functions).push_back(&e);

    auto push = [&](ReportRow row) { report.rows.push_back(std::move(row)); };

    for (const auto* e : functions)
        push(detail::guarded_row("gauss_poincare", e->id, [&] {
            return gauss_poincare_check(e->function, rule_for(e->function.dim()), e->id);
        }));

    for (const auto* e : densities)
        push(detail::guarded_row("chi2_bound", e->id, [&] {
            return chi2_bound_check(e->function, rule_for(e->function.dim()), e->id);
        }));

    const std::vector<YoungFunction> fv_phis = {YoungFunction::raw_power(2.0),
                                                YoungFunction::exp2_star(),
                                                YoungFunction::cosh_m1_star()};
    for (const auto& phi : fv_phis)
        for (const auto* e : functions)
            push(detail::guarded_row("first_version", e->id, [&] {
                return first_version_check(e->function, phi,
                                           rule_for(e->function.dim()), inner, e->id);
            }));

    for (double kappa : config.mgf_kappas)
        for (const auto* e : functions)
            push(detail::guarded_row("mgf_bound", e->id, [&] {
                return mgf_bound_check(e->function, kappa,
                                       rule_for(e->function.dim()), e->id);
            }));

    for (double p : config.lp_exponents)
        for (const auto* e : functions)
            push(detail::guarded_row("lp_bound", e->id, [&] {
                return lp_bound_check(e->function, p, rule_for(e->function.dim()),
                                      e->id);
            }));

    for (const auto* e : functions)
        push(detail::guarded_row("llogl_bound", e->id, [&] {
            return llogl_bound_check(e->function, rule_for(e->function.dim()), e->id);
        }));

    for (const auto* e : functions)
        push(detail::guarded_row("cosh_gauss2_bound", e->id, [&] {
            return cosh_gauss2_bound_check(e->function, rule_for(e->function.dim()),
                                           e->id);
        }));

    // Covariance pairs: (0,0), (0,1), (1,2) over the differentiable entries of
    // matching dimension, for the two shipped norm pairs.
    std::vector<const CatalogEntry*> pairable;
    for (const auto* e : functions)
        if (e->function.has_gradient()) pairable.push_back(e);
    std::vector<std::pair<const CatalogEntry*, const CatalogEntry*>> pairs;
    auto try_pair = [&](std::size_t i, std::size_t j) {
        if (i < pairable.size() && j < pairable.size() &&
            pairable[i]->function.dim() == pairable[j]->function.dim())
            pairs.emplace_back(pairable[i], pairable[j]);
    };
    try_pair(0, 0);
    try_pair(0, 1);
    try_pair(1, 2);
    const YoungFunction cov_phi = YoungFunction::power(2.0);
    const YoungFunction cov_phi2 = YoungFunction::cosh_m1();
    for (const auto& [a, b] : pairs) {
        push(detail::guarded_row("covariance_bound", a->id + "," + b->id, [&] {
            return covariance_bound_check(a->function, b->function, cov_phi,
                                          VectorNorm::L2, VectorNorm::L2,
                                          rule_for(a->function.dim()),
                                          a->id + "," + b->id);
        }));
        push(detail::guarded_row("covariance_bound", a->id + "," + b->id, [&] {
            ReportRow row = covariance_bound_check(
                a->function, b->function, cov_phi2, VectorNorm::L1, VectorNorm::LInf,
                rule_for(a->function.dim()), a->id + "," + b->id);
            row.params.emplace_back("norm_pair_l1_linf", 1.0);
            return row;
        }));
    }

    // Self-adjointness identity rows over the Hermite entries.
    std::vector<const CatalogEntry*> hermites;
    for (const auto* e : functions)
        if (e->function.is_hermite()) hermites.push_back(e);
    std::vector<std::pair<const CatalogEntry*, const CatalogEntry*>> hpairs;
    auto try_hpair = [&](std::size_t i, std::size_t j) {
        if (i < hermites.size() && j < hermites.size() &&
            hermites[i]->function.dim() == hermites[j]->function.dim())
            hpairs.emplace_back(hermites[i], hermites[j]);
    };
    try_hpair(0, 0);
    try_hpair(0, 1);
    try_hpair(1, 2);
    for (const auto& [a, b] : hpairs)
        push(detail::guarded_row("ou_selfadjoint", a->id + "," + b->id, [&] {
            return ou_selfadjoint_check(a->function, b->function,
                                        rule_for(a->function.dim()),
                                        a->id + "," + b->id);
        }));

    for (const auto* e : functions) {
        if (e->function.is_hermite() || !e->function.builtin().lipschitz_bound())
            continue;
        push(detail::guarded_row("lipschitz_subexp", e->id, [&] {
            const LipschitzSubexpReport rep =
                lipschitz_subexp_bound(e->function, rule_for(e->function.dim()));
            ReportRow row;
            row.name = "lipschitz_subexp";
            row.function_id = e->id;
            row.lhs = rep.cosh_norm;
            row.rhs = rep.cosh_norm_bound;
            row.params.emplace_back("lipschitz", rep.lipschitz);
            row.params.emplace_back("kappa", rep.kappa);
            row.params.emplace_back("gauss2_modular", rep.gauss2_modular);
            row.finish();
            return row;
        }));
    }

    return report;
}

}  // namespace orlicz_gauss

#endif  // ORLICZ_GAUSS_SUITE_HPP
