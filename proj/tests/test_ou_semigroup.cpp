#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orlicz_gauss/ou_semigroup.hpp"

using namespace orlicz_gauss;

namespace {

std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_order) {
    std::vector<MultiIndex> out;
    std::vector<unsigned> entries(dim, 0);
    const unsigned cap = max_order + 1;
    while (true) {
        MultiIndex m{std::vector<unsigned>(entries)};
        if (m.order() <= max_order) out.push_back(m);
        std::size_t d = dim;
        while (true) {
            if (d == 0) return out;
            --d;
            if (++entries[d] < cap) break;
            entries[d] = 0;
        }
    }
}

std::vector<std::vector<double>> seeded_points(std::size_t dim, std::size_t count,
                                               std::uint64_t seed) {
    NormalSampler rng(seed);
    std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
    for (auto& p : pts)
        for (double& v : p) v = rng.next();
    return pts;
}

FunctionHandle hmix() {
    return FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                              .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0)));
}

}  // namespace

TEST_CASE("Mehler endpoints: t = 0 is the identity, t = inf is the mean") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 32);
    const FunctionHandle f = hmix();
    const FunctionHandle p0 = mehler_apply(f, 0.0, rule);
    for (const auto& x : seeded_points(1, 10, 5))
        CHECK(p0(x) == Catch::Approx(f(x)).margin(1e-14));

    const FunctionHandle pinf = mehler_apply(f, kInf, rule);
    const double fbar = integrate(f, rule);
    for (const auto& x : seeded_points(1, 5, 6))
        CHECK(pinf(x) == Catch::Approx(fbar).margin(1e-12));

    // builtin route
    const FunctionHandle s(builtins::sin_sum(1, {{1.0, 1.0, 0}}));
    const FunctionHandle sinf = mehler_apply(s, kInf, GaussQuadrature::gauss_hermite(1, 64));
    const std::vector<double> x0{0.3};
    CHECK(sinf(x0) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("eigen-oracle: Mehler agrees with e^{-t|alpha|} H_alpha") {
    for (std::size_t dim : {std::size_t{1}, std::size_t{2}}) {
        const auto inner = GaussQuadrature::gauss_hermite(dim, 8);
        const auto points = seeded_points(dim, 10, 11);
        for (const auto& alpha : indices_up_to(dim, 6)) {
            const FunctionHandle h(HermiteExpansion::basis(dim, alpha, 1.0));
            for (double t : {0.1, 1.0}) {
                const FunctionHandle pt = mehler_apply(h, t, inner);
                const double decay =
                    std::exp(-t * static_cast<double>(alpha.order()));
                for (const auto& x : points) {
                    const double expected = decay * hermite_eval(alpha, x);
                    CHECK(pt(x) ==
                          Catch::Approx(expected).margin(1e-8 * std::max(1.0, std::abs(expected))));
                }
            }
        }
    }
}

TEST_CASE("hermite_apply: spectral action and exact semigroup law") {
    const HermiteExpansion h2 = HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0);
    const HermiteExpansion at_ln2 = hermite_apply(h2, std::log(2.0));
    CHECK(at_ln2.coeff(MultiIndex{{2}}) == Catch::Approx(0.25).epsilon(1e-15));

    const HermiteExpansion c = HermiteExpansion::constant(1, 3.3);
    CHECK(hermite_apply(c, 7.0).coeff(MultiIndex::zeros(1)) == Catch::Approx(3.3));

    const HermiteExpansion f = HermiteExpansion::basis(1, MultiIndex{{1}}, 2.0)
                                   .plus(HermiteExpansion::basis(1, MultiIndex{{3}}, -0.5));
    const HermiteExpansion ab = hermite_apply(hermite_apply(f, 0.3), 0.4);
    const HermiteExpansion once = hermite_apply(f, 0.7);
    for (const auto& [alpha, coeff] : once.terms())
        CHECK(ab.coeff(alpha) == Catch::Approx(coeff).epsilon(1e-15));

    // t = inf keeps only the constant part
    const HermiteExpansion inf_part =
        hermite_apply(f.plus(HermiteExpansion::constant(1, 1.5)), kInf);
    CHECK(inf_part.terms().size() == 1);
    CHECK(inf_part.exact_mean() == Catch::Approx(1.5));
}

TEST_CASE("semigroup law through nested Mehler quadrature") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 32);
    const std::vector<FunctionHandle> fs = {
        hmix(), FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}, {0.5, 2.0, 0}}))};
    const auto points = seeded_points(1, 10, 21);
    for (const auto& f : fs) {
        for (double s : {0.1, 0.5}) {
            for (double t : {0.1, 0.5}) {
                const FunctionHandle nested = mehler_apply(mehler_apply(f, t, rule), s, rule);
                const FunctionHandle direct = mehler_apply(f, s + t, rule);
                for (const auto& x : points)
                    CHECK(std::abs(nested(x) - direct(x)) <= 1e-6);
            }
        }
    }
}

TEST_CASE("mass invariance of P_t") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const std::vector<FunctionHandle> fs = {
        hmix(), FunctionHandle(builtins::exp_linear({0.5})),
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}}))};
    for (const auto& f : fs) {
        const double before = integrate(f, rule);
        for (double t : {0.2, 1.0}) {
            const double after = integrate(mehler_apply(f, t, rule), rule);
            CHECK(std::abs(after - before) <= 1e-9 * std::max(1.0, std::abs(before)));
        }
    }
}

TEST_CASE("commutation: nabla P_t f = e^{-t} P_t nabla f") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const FunctionHandle f(builtins::sin_sum(1, {{1.0, 1.0, 0}, {0.3, 3.0, 0}}));
    const FunctionHandle pt = mehler_apply(f, 0.4, rule);
    for (const auto& x : seeded_points(1, 6, 31)) {
        // independent route: finite differences through the Mehler evaluator
        std::vector<double> xp = x, xm = x;
        xp[0] += 1e-5;
        xm[0] -= 1e-5;
        const double fd = (pt(xp) - pt(xm)) / 2e-5;
        std::vector<double> g(1);
        pt.gradient(x, g);  // implemented as e^{-t} P_t (nabla f)
        CHECK(std::abs(fd - g[0]) <= 1e-7);
    }
}

TEST_CASE("L2 contraction of the centered part") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const FunctionHandle f = hmix();
    const double var0 = covariance(f, f, rule);
    for (double t : {0.1, 0.7, 2.0}) {
        const FunctionHandle pt = mehler_apply(f, t, rule);
        const double vart = covariance(pt, pt, rule);
        CHECK(std::sqrt(vart) <= std::exp(-t) * std::sqrt(var0) + 1e-8);
    }
}

TEST_CASE("generator: eigenvalues and the centered time difference") {
    const FunctionHandle h3(HermiteExpansion::basis(1, MultiIndex{{3}}, 1.0));
    const FunctionHandle gen = generator_apply(h3);
    CHECK(gen.hermite().coeff(MultiIndex{{3}}) == Catch::Approx(-3.0));
    CHECK(generator_apply(FunctionHandle(HermiteExpansion::constant(1, 2.0)))
              .hermite()
              .empty());

    // (P_{t+h} f - P_{t-h} f) / 2h ~ generator(P_t f), h = 1e-4, tol 1e-5
    const double t = 0.5, h = 1e-4;
    const HermiteExpansion f = HermiteExpansion::basis(1, MultiIndex{{3}}, 1.0)
                                   .plus(HermiteExpansion::basis(1, MultiIndex{{1}}, 0.7));
    const HermiteExpansion fp = hermite_apply(f, t + h);
    const HermiteExpansion fm = hermite_apply(f, t - h);
    const FunctionHandle gt = generator_apply(FunctionHandle(hermite_apply(f, t)));
    for (const auto& x : seeded_points(1, 8, 41)) {
        const double fd = (fp.eval(x) - fm.eval(x)) / (2.0 * h);
        CHECK(std::abs(fd - gt(x)) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("resolvent: exact coefficients and the defining equation") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 32);

    const FunctionHandle h2(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0));
    const FunctionHandle u2 = resolvent(h2, rule);
    CHECK(u2.hermite().coeff(MultiIndex{{2}}) == Catch::Approx(1.0 / 3.0).epsilon(1e-15));

    const FunctionHandle c(HermiteExpansion::constant(1, 4.0));
    CHECK(resolvent(c, rule).hermite().exact_mean() == Catch::Approx(4.0));

    // residual delta.nabla u + u - f vanishes in L2 for a mixed expansion
    const HermiteExpansion f = HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                                   .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, -0.4))
                                   .plus(HermiteExpansion::basis(1, MultiIndex{{4}}, 0.2))
                                   .plus(HermiteExpansion::constant(1, 0.3));
    const HermiteExpansion u = resolvent(FunctionHandle(f), rule).hermite();
    const HermiteExpansion residual =
        u.number_operator().plus(u).plus(f.scaled(-1.0));
    CHECK(std::sqrt(residual.exact_inner(residual)) <= 1e-10);

    // builtin route: u(x) = int_0^inf e^{-2t} x dt = x/2 for the coordinate
    const FunctionHandle coord(builtins::coordinate(1, 0));
    const FunctionHandle ucoord = resolvent(coord, GaussQuadrature::gauss_hermite(1, 16));
    for (const auto& x : seeded_points(1, 5, 51))
        CHECK(ucoord(x) == Catch::Approx(0.5 * x[0]).margin(1e-6));
}

TEST_CASE("modular non-expansivity") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const FunctionHandle f = hmix();

    const NonexpansiveReport at0 = nonexpansive_check(f, YoungFunction::cosh_m1(), 0.0, rule);
    CHECK(at0.holds);
    CHECK(at0.lhs == Catch::Approx(at0.rhs).margin(1e-10));

    const NonexpansiveReport mid = nonexpansive_check(f, YoungFunction::cosh_m1(), 0.5, rule);
    CHECK(mid.holds);
    CHECK(mid.lhs < mid.rhs - 1e-3);

    // t = inf on a mean-zero function: lhs = Phi(0) = 0
    const NonexpansiveReport inf_rep =
        nonexpansive_check(FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)),
                           YoungFunction::cosh_m1(), kInf, rule);
    CHECK(inf_rep.holds);
    CHECK(inf_rep.lhs == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("Kolmogorov equation residuals") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 32);
    const std::vector<double> x1{0.7};
    CHECK(kolmogorov_residual(FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0)),
                              1.0, x1, 1e-4, rule) <= 1e-6);
    CHECK(kolmogorov_residual(FunctionHandle(HermiteExpansion::constant(1, 2.0)), 0.5,
                              x1, 1e-4, rule) <= 1e-14);

    const auto rule2 = GaussQuadrature::gauss_hermite(2, 16);
    const std::vector<double> x2{0.5, -1.0};
    CHECK(kolmogorov_residual(FunctionHandle(HermiteExpansion::basis(2, MultiIndex{{1, 1}}, 1.0)),
                              0.3, x2, 1e-4, rule2) <= 1e-6);

    // |alpha| <= 4 contract at 1e-4
    const FunctionHandle mix(HermiteExpansion::basis(1, MultiIndex{{4}}, 0.5)
                                 .plus(HermiteExpansion::basis(1, MultiIndex{{3}}, 1.0)));
    CHECK(kolmogorov_residual(mix, 0.7, x1, 1e-4, rule) <= 1e-4);

    // builtin route through the commutation identities
    const FunctionHandle s(builtins::sin_sum(1, {{1.0, 1.0, 0}}));
    CHECK(kolmogorov_residual(s, 0.5, x1, 1e-4, GaussQuadrature::gauss_hermite(1, 64)) <=
          1e-4);

    CHECK_THROWS_AS(kolmogorov_residual(s, 1e-5, x1, 1e-4, rule), std::invalid_argument);
}

TEST_CASE("rotation pair: endpoints, norm preservation, joint Gaussianity") {
    const std::vector<double> x{0.3, -1.1, 0.9};
    const std::vector<double> y{1.4, 0.2, -0.5};
    const auto [x0, y0] = rotation_pair(x, y, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(x0[i] == Catch::Approx(x[i]).margin(1e-15));
        CHECK(y0[i] == Catch::Approx(-y[i]).margin(1e-15));
    }

    for (double t : {0.1, 0.8, 3.0}) {
        const auto [xt, yt] = rotation_pair(x, y, t);
        double before = 0.0, after = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            before += x[i] * x[i] + y[i] * y[i];
            after += xt[i] * xt[i] + yt[i] * yt[i];
        }
        CHECK(after == Catch::Approx(before).epsilon(1e-12));
    }

    // Monte Carlo: the rotated pair stays jointly standard Gaussian (3 sigma).
    const std::size_t n = 100000;
    NormalSampler rng(99);
    double sxx = 0.0, syy = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<double> xs{rng.next()};
        const std::vector<double> ys{rng.next()};
        const auto [xt, yt] = rotation_pair(xs, ys, 0.6);
        sx += xt[0];
        sy += yt[0];
        sxx += xt[0] * xt[0];
        syy += yt[0] * yt[0];
        sxy += xt[0] * yt[0];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    const double sigma_mean = 3.0 * std::sqrt(inv_n);
    const double sigma_sq = 3.0 * std::sqrt(2.0 * inv_n);
    CHECK(std::abs(sx * inv_n) <= sigma_mean);
    CHECK(std::abs(sy * inv_n) <= sigma_mean);
    CHECK(std::abs(sxx * inv_n - 1.0) <= sigma_sq);
    CHECK(std::abs(syy * inv_n - 1.0) <= sigma_sq);
    CHECK(std::abs(sxy * inv_n) <= sigma_mean);
}
