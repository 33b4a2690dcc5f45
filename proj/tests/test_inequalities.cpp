#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "orlicz_gauss/suite.hpp"

using namespace orlicz_gauss;

namespace {

FunctionHandle hermite1(std::vector<unsigned> alpha, double c) {
    return FunctionHandle(
        HermiteExpansion::basis(alpha.size(), MultiIndex{alpha}, c));
}

const GaussQuadrature& rule64() {
    static const auto r = GaussQuadrature::gauss_hermite(1, 64);
    return r;
}

}  // namespace

TEST_CASE("constants: kappa*, C1, C2(p), C3, Gaussian moments") {
    const double ks = Constants::kappa_star();
    // root of sqrt(pi/2) k + (pi^2/4) k^2 = 1
    const double residual =
        std::sqrt(M_PI / 2.0) * ks + (M_PI * M_PI / 4.0) * ks * ks - 1.0;
    CHECK(std::abs(residual) <= 1e-12);
    CHECK(ks == Catch::Approx(0.431435).margin(1e-5));
    CHECK(ks > 0.0);
    CHECK(ks < 1.0);
    CHECK(Constants::c1() == Catch::Approx(1.0 / ks).epsilon(1e-15));

    CHECK(std::abs(Constants::c2(1.0) - M_PI / 2.0) <= 1e-12);
    CHECK(std::abs(Constants::c2(2.0) - (M_PI / 2.0) * std::pow(3.0, 0.25)) <= 1e-12);
    CHECK(Constants::c3() == Catch::Approx(M_PI / 2.0));

    // m(2p) equals the double factorial at integer p
    for (unsigned p : {1u, 2u, 3u}) {
        CHECK(Constants::gaussian_moment_2p(p) ==
              Catch::Approx(oracles::double_factorial_moment(p)).epsilon(1e-13));
    }
    // C2 is increasing in p on a grid
    double prev = 0.0;
    for (double p : {0.6, 1.0, 1.5, 2.0, 3.0, 4.0}) {
        const double c2 = Constants::c2(p);
        CHECK(c2 > prev);
        prev = c2;
    }
}

TEST_CASE("Gauss-Poincare: equality case, constants, H_2") {
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        HermiteExpansion sum(n);
        for (std::size_t i = 0; i < n; ++i)
            sum = sum.plus(HermiteExpansion::basis(n, MultiIndex::unit(n, i), 1.0));
        const auto rule = GaussQuadrature::gauss_hermite(n, 6);
        const ReportRow row = gauss_poincare_check(FunctionHandle(sum), rule);
        CHECK(std::sqrt(row.lhs) == Catch::Approx(std::sqrt(double(n))).margin(1e-9));
        CHECK(std::sqrt(row.rhs) == Catch::Approx(std::sqrt(double(n))).margin(1e-9));
        CHECK(row.holds);
    }

    const ReportRow c =
        gauss_poincare_check(FunctionHandle(HermiteExpansion::constant(1, 3.0)), rule64());
    CHECK(c.lhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(c.rhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(c.holds);

    const ReportRow h2 = gauss_poincare_check(hermite1({2}, 1.0), rule64());
    CHECK(h2.lhs == Catch::Approx(2.0).margin(1e-10));
    CHECK(h2.rhs == Catch::Approx(4.0).margin(1e-10));
    CHECK(h2.holds);

    // scaling consistency: f -> 3f multiplies both sides by 9
    const ReportRow scaled = gauss_poincare_check(hermite1({2}, 3.0), rule64());
    CHECK(scaled.lhs == Catch::Approx(9.0 * h2.lhs).epsilon(1e-10));
    CHECK(scaled.rhs == Catch::Approx(9.0 * h2.rhs).epsilon(1e-10));
}

TEST_CASE("chi^2 bound: trivial, tilt closed form, Hermite perturbation, errors") {
    const ReportRow unit =
        chi2_bound_check(FunctionHandle(HermiteExpansion::constant(1, 1.0)), rule64());
    CHECK(unit.status == ReportRow::Status::Ok);
    CHECK(unit.lhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(unit.holds);

    // p = e^{theta x - theta^2/2}, theta = 0.5:
    // lhs = e^{theta^2} - 1, rhs = theta^2 e^{theta^2} (1 + theta^2)
    const double theta = 0.5;
    const ReportRow tilt = chi2_bound_check(
        FunctionHandle(builtins::gaussian_tilt_density({theta})), rule64());
    const double lhs_oracle = std::exp(theta * theta) - 1.0;
    const double rhs_oracle =
        theta * theta * std::exp(theta * theta) * (1.0 + theta * theta);
    CHECK(std::abs(tilt.lhs - lhs_oracle) <= 1e-6);
    CHECK(std::abs(tilt.rhs - rhs_oracle) <= 1e-6);
    CHECK(tilt.holds);

    // p = 1 + 0.1 H_2: lhs = 2 eps^2, rhs = 8 eps^2
    const ReportRow pert = chi2_bound_check(
        FunctionHandle(HermiteExpansion::constant(1, 1.0)
                           .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.1))),
        rule64());
    CHECK(pert.lhs == Catch::Approx(0.02).margin(1e-10));
    CHECK(pert.rhs == Catch::Approx(0.08).margin(1e-10));
    CHECK(pert.holds);

    // non-normalized density: error row, not an exception
    const ReportRow bad =
        chi2_bound_check(FunctionHandle(HermiteExpansion::constant(1, 2.0)), rule64());
    CHECK(bad.status == ReportRow::Status::Error);
}

TEST_CASE("first version: raw s^2 recovers a non-optimal Poincare inequality") {
    const Rule1d inner = gauss_hermite_rule(64);
    const FunctionHandle f(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                               .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.3)));

    const ReportRow raw =
        first_version_check(f, YoungFunction::raw_power(2.0), rule64(), inner);
    const ReportRow poincare = gauss_poincare_check(f, rule64());
    CHECK(raw.status == ReportRow::Status::Ok);
    CHECK(raw.holds);
    // structure: rhs = (pi/2)^2 m(2) * Poincare rhs, and lhs is the variance
    CHECK(raw.rhs == Catch::Approx(M_PI * M_PI / 4.0 * poincare.rhs).epsilon(1e-9));
    CHECK(raw.lhs == Catch::Approx(poincare.lhs).epsilon(1e-9));
    CHECK(raw.rhs / raw.lhs >= 1.0);

    const ReportRow cst = first_version_check(
        FunctionHandle(HermiteExpansion::constant(1, 2.0)),
        YoungFunction::raw_power(2.0), rule64(), inner);
    CHECK(cst.lhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(cst.rhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(cst.holds);

    for (const auto& phi : {YoungFunction::exp2_star(), YoungFunction::cosh_m1_star()}) {
        const ReportRow row = first_version_check(f, phi, rule64(), inner);
        CHECK(row.status == ReportRow::Status::Ok);
        CHECK(row.holds);
    }
}

TEST_CASE("MGF bound: trivial, linear closed form, Lipschitz, vacuous") {
    const ReportRow cst = mgf_bound_check(
        FunctionHandle(HermiteExpansion::constant(1, 5.0)), 0.5, rule64());
    CHECK(cst.lhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(cst.rhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(cst.holds);

    // f(x) = x, kappa = 0.5: lhs = e^{(2k/pi)^2/2}, rhs = e^{k^2/2}
    const double kappa = 0.5;
    const ReportRow lin = mgf_bound_check(hermite1({1}, 1.0), kappa, rule64());
    const double s = 2.0 * kappa / M_PI;
    CHECK(lin.lhs == Catch::Approx(std::exp(0.5 * s * s)).epsilon(1e-10));
    CHECK(lin.rhs == Catch::Approx(std::exp(0.5 * kappa * kappa)).epsilon(1e-10));
    CHECK(lin.holds);

    const ReportRow lip = mgf_bound_check(
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}})), 0.9, rule64());
    CHECK(lip.status == ReportRow::Status::Ok);
    CHECK(lip.holds);

    // |grad H_2| = 2|x| has slope 2: kappa*sigma >= 1 makes the rhs diverge
    const ReportRow vac = mgf_bound_check(hermite1({2}, 1.0), 0.5, rule64());
    CHECK(vac.status == ReportRow::Status::Vacuous);
    const ReportRow ok = mgf_bound_check(hermite1({2}, 1.0), 0.4, rule64());
    CHECK(ok.status == ReportRow::Status::Ok);
    CHECK(ok.holds);
}

TEST_CASE("L^2p bound") {
    // p = 1, f(x) = x: lhs = 1, rhs = pi/2
    const ReportRow row = lp_bound_check(hermite1({1}, 1.0), 1.0, rule64());
    CHECK(row.lhs == Catch::Approx(1.0).margin(1e-10));
    CHECK(row.rhs == Catch::Approx(M_PI / 2.0).margin(1e-10));
    CHECK(row.holds);

    for (double p : {1.0, 2.0, 3.0}) {
        const ReportRow r = lp_bound_check(
            FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0)
                               .plus(HermiteExpansion::basis(1, MultiIndex{{1}}, 0.5))),
            p, rule64());
        CHECK(r.holds);
    }
}

TEST_CASE("L log L bound") {
    const ReportRow cst = llogl_bound_check(
        FunctionHandle(HermiteExpansion::constant(1, 2.0)), rule64());
    CHECK(cst.lhs == Catch::Approx(0.0).margin(1e-10));
    CHECK(cst.holds);

    const ReportRow h2 = llogl_bound_check(hermite1({2}, 1.0), rule64());
    CHECK(h2.status == ReportRow::Status::Ok);
    CHECK(h2.holds);
    CHECK(h2.lhs > 0.0);
}

TEST_CASE("cosh-1 vs gauss2 bound with the modular form") {
    const ReportRow cst = cosh_gauss2_bound_check(
        FunctionHandle(HermiteExpansion::constant(1, 2.0)), rule64());
    CHECK(cst.lhs == Catch::Approx(0.0).margin(1e-10));
    CHECK(cst.holds);

    // f(x) = x: lhs = 1/sqrt(2 ln 2), rhs = (pi/2) * 1/sqrt(2 ln 2)
    const double a = 1.0 / std::sqrt(2.0 * std::log(2.0));
    const ReportRow lin = cosh_gauss2_bound_check(hermite1({1}, 1.0), rule64());
    CHECK(lin.lhs == Catch::Approx(a).epsilon(1e-8));
    CHECK(lin.rhs == Catch::Approx(M_PI / 2.0 * a).epsilon(1e-8));
    CHECK(lin.holds);
    // modular form recorded and consistent: both modulars at/below 1
    double lhs_mod = -1.0, rhs_mod = -1.0;
    for (const auto& [k, v] : lin.params) {
        if (k == "modular_lhs") lhs_mod = v;
        if (k == "modular_rhs") rhs_mod = v;
    }
    CHECK(lhs_mod >= 0.0);
    CHECK(lhs_mod <= rhs_mod + 1e-8);
    CHECK(rhs_mod <= 1.0 + 1e-8);

    const ReportRow smooth = cosh_gauss2_bound_check(
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}, {0.5, 2.0, 0}})), rule64());
    CHECK(smooth.status == ReportRow::Status::Ok);
    CHECK(smooth.holds);

    // superlinear gradient: vacuous
    const ReportRow vac = cosh_gauss2_bound_check(hermite1({3}, 1.0), rule64());
    CHECK(vac.status == ReportRow::Status::Vacuous);

    // quadratic with linear gradient growth stays computable
    const ReportRow quad = cosh_gauss2_bound_check(hermite1({2}, 1.0), rule64());
    CHECK(quad.status == ReportRow::Status::Ok);
    CHECK(quad.holds);
}

TEST_CASE("covariance bound with paired norms") {
    // f = g = H_1, Phi(u) = u^2/2: the standard Poincare case, equality
    const ReportRow std_case = covariance_bound_check(
        hermite1({1}, 1.0), hermite1({1}, 1.0), YoungFunction::power(2.0),
        VectorNorm::L2, VectorNorm::L2, rule64());
    CHECK(std_case.lhs == Catch::Approx(1.0).margin(1e-9));
    CHECK(std_case.rhs == Catch::Approx(1.0).margin(1e-7));
    CHECK(std_case.holds);

    // orthogonal pair
    const ReportRow orth = covariance_bound_check(
        hermite1({1}, 1.0), hermite1({2}, 1.0), YoungFunction::power(2.0),
        VectorNorm::L2, VectorNorm::L2, rule64());
    CHECK(orth.lhs == Catch::Approx(0.0).margin(1e-10));
    CHECK(orth.holds);

    const ReportRow mixed = covariance_bound_check(
        FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                           .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0))),
        hermite1({1}, 1.0), YoungFunction::cosh_m1(), VectorNorm::L1, VectorNorm::LInf,
        rule64());
    CHECK(mixed.status == ReportRow::Status::Ok);
    CHECK(mixed.holds);
}

TEST_CASE("OU self-adjointness identity") {
    const ReportRow r11 =
        ou_selfadjoint_check(hermite1({1}, 1.0), hermite1({1}, 1.0), rule64());
    CHECK(r11.lhs == Catch::Approx(1.0).margin(1e-10));
    CHECK(r11.rhs == Catch::Approx(1.0).margin(1e-12));
    CHECK(r11.holds);

    const ReportRow r22 =
        ou_selfadjoint_check(hermite1({2}, 1.0), hermite1({2}, 1.0), rule64());
    CHECK(r22.lhs == Catch::Approx(2.0).margin(1e-9));
    CHECK(r22.rhs == Catch::Approx(2.0).margin(1e-12));
    CHECK(r22.holds);

    const ReportRow r12 =
        ou_selfadjoint_check(hermite1({1}, 1.0), hermite1({2}, 1.0), rule64());
    CHECK(r12.lhs == Catch::Approx(0.0).margin(1e-10));
    CHECK(r12.rhs == Catch::Approx(0.0).margin(1e-12));
    CHECK(r12.holds);

    const ReportRow builtin_err = ou_selfadjoint_check(
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}})), hermite1({1}, 1.0),
        rule64());
    CHECK(builtin_err.status == ReportRow::Status::Error);
}

TEST_CASE("Lipschitz implies sub-exponential with an explicit bound") {
    const double bound_unit = M_PI / (2.0 * std::sqrt(2.0 * std::log(2.0)));

    const LipschitzSubexpReport sin_rep = lipschitz_subexp_bound(
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}})), rule64());
    CHECK(sin_rep.lipschitz == Catch::Approx(1.0));
    CHECK(sin_rep.cosh_norm_bound == Catch::Approx(bound_unit).epsilon(1e-12));
    CHECK(sin_rep.gauss2_modular <= 1.0 + 1e-8);
    CHECK(sin_rep.cosh_norm <= sin_rep.cosh_norm_bound);
    CHECK(sin_rep.holds);

    const LipschitzSubexpReport flat = lipschitz_subexp_bound(
        FunctionHandle(builtins::constant(1, 3.0)), rule64());
    CHECK(flat.cosh_norm_bound == 0.0);
    CHECK(flat.holds);

    // f = sum x_i / sqrt(n): the bound is independent of n
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        const auto rule = GaussQuadrature::gauss_hermite(n, n == 3 ? 24 : 40);
        const LipschitzSubexpReport rep = lipschitz_subexp_bound(
            FunctionHandle(builtins::linear_sum(n, 1.0 / std::sqrt(double(n)))), rule);
        CHECK(rep.lipschitz == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(rep.cosh_norm_bound == Catch::Approx(bound_unit).epsilon(1e-12));
        CHECK(rep.cosh_norm <= rep.cosh_norm_bound);
        CHECK(rep.holds);
    }

    CHECK_THROWS_AS(lipschitz_subexp_bound(hermite1({1}, 1.0), rule64()),
                    std::domain_error);
}

TEST_CASE("full suite over the shipped catalog") {
    const Catalog catalog = shipped_catalog();
    CHECK(catalog.size() >= 10);

    SuiteConfig config;
    const InequalityReport report = run_suite(catalog, config);

    CHECK(report.total() > 100);
    CHECK(report.failed_count() == 0);
    CHECK(report.error_count() == 0);

    // The vacuous rows are exactly the provably divergent ones.
    std::set<std::string> vacuous;
    for (const auto& row : report.rows) {
        if (row.status == ReportRow::Status::Vacuous) {
            std::string kappa;
            for (const auto& [k, v] : row.params)
                if (k == "kappa") kappa = ":" + std::to_string(v).substr(0, 3);
            vacuous.insert(row.name + kappa + "/" + row.function_id);
        }
    }
    const std::set<std::string> expected = {
        "mgf_bound:0.5/h2",        "mgf_bound:0.5/h3",
        "mgf_bound:0.5/expt",      "mgf_bound:1.0/h2",
        "mgf_bound:1.0/h3",        "mgf_bound:1.0/h11",
        "mgf_bound:1.0/quad3",     "mgf_bound:1.0/expt",
        "cosh_gauss2_bound/h3",    "cosh_gauss2_bound/expt",
    };
    CHECK(vacuous == expected);

    // every non-vacuous row satisfies the margin contract
    for (const auto& row : report.rows) {
        if (row.status != ReportRow::Status::Ok) continue;
        CHECK(row.margin >= -1e-8 * std::max(1.0, std::abs(row.rhs)));
    }

    // empty catalog: empty report
    const InequalityReport empty = run_suite({}, config);
    CHECK(empty.total() == 0);
}
