#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "orlicz_gauss/builtin.hpp"
#include "orlicz_gauss/orlicz_norms.hpp"

using namespace orlicz_gauss;

namespace {

FunctionHandle hermite1(std::vector<unsigned> alpha, double c) {
    return FunctionHandle(HermiteExpansion::basis(alpha.size(), MultiIndex{alpha}, c));
}

FunctionHandle constant1(double c) {
    return FunctionHandle(HermiteExpansion::constant(1, c));
}

const double kArccosh2 = std::acosh(2.0);

}  // namespace

TEST_CASE("modular: zero, power, and the provably divergent gauss2 case") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    CHECK(modular(constant1(0.0), YoungFunction::cosh_m1(), rule) == 0.0);
    // E x^2 / 2 = 1/2
    CHECK(modular(hermite1({1}, 1.0), YoungFunction::power(2.0), rule) ==
          Catch::Approx(0.5).margin(1e-12));
    // int gauss2(|x|) dgamma diverges: e^{x^2/2} against gamma is non-integrable
    CHECK(modular(hermite1({1}, 1.0), YoungFunction::gauss2(), rule) == kInf);
}

TEST_CASE("Luxemburg norm: closed-form constants") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);

    // constant c under Phi(x) = x^2/2: solve (c/a)^2/2 = 1 => a = c/sqrt(2)
    const NormResult r1 = luxemburg_norm(constant1(3.0), YoungFunction::power(2.0), rule);
    CHECK(r1.value == Catch::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK_FALSE(r1.diverged);
    CHECK(std::abs(r1.modular_at_value - 1.0) <= 1e-8);

    // constant c under cosh-1: cosh(c/a) - 1 = 1 => a = c / arccosh(2)
    const NormResult r2 = luxemburg_norm(constant1(2.0), YoungFunction::cosh_m1(), rule);
    CHECK(r2.value == Catch::Approx(2.0 / kArccosh2).epsilon(1e-9));

    // f(x) = x under cosh-1: int cosh(x/a) dgamma = e^{1/(2a^2)} = 2
    // => a = 1/sqrt(2 ln 2)
    const NormResult r3 = luxemburg_norm(hermite1({1}, 1.0), YoungFunction::cosh_m1(), rule);
    CHECK(r3.value == Catch::Approx(1.0 / std::sqrt(2.0 * std::log(2.0))).epsilon(1e-9));
    // dense adaptive oracle: the modular at the returned gauge is 1
    const double mod_oracle = oracles::gauss_integral_1d([&](double x) {
        return std::cosh(x / r3.value) - 1.0;
    });
    CHECK(mod_oracle == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("Luxemburg norm: gauss2 divergence boundary and the zero function") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);

    // f(x) = x grows linearly with slope 1, so the gauss2 modular diverges
    // exactly for alpha <= 1 and the gauge solves (1-1/a^2)^{-1/2} - 1 = 1.
    const NormResult r =
        luxemburg_norm(hermite1({1}, 1.0), YoungFunction::gauss2(), rule);
    CHECK_FALSE(r.diverged);
    CHECK(r.value == Catch::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));

    // Superlinear growth is not in the gauss2 space at any scale.
    const NormResult h2 =
        luxemburg_norm(hermite1({2}, 1.0), YoungFunction::gauss2(), rule);
    CHECK(h2.diverged);
    CHECK(h2.value == kInf);
    const NormResult ex = luxemburg_norm(FunctionHandle(builtins::exp_linear({0.5})),
                                         YoungFunction::gauss2(), rule);
    CHECK(ex.diverged);

    const NormResult z = luxemburg_norm(constant1(0.0), YoungFunction::cosh_m1(), rule);
    CHECK_FALSE(z.diverged);
    CHECK(z.value == 0.0);

    // gauss2 on bounded functions
    const NormResult b = luxemburg_norm(
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}})),
        YoungFunction::gauss2(), rule);
    CHECK_FALSE(b.diverged);
    CHECK(b.value > 0.0);
}

TEST_CASE("homogeneity and triangle inequality") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const std::vector<YoungFunction> phis = {YoungFunction::power(2.0),
                                             YoungFunction::cosh_m1(),
                                             YoungFunction::exp2_star()};
    const FunctionHandle f = hermite1({1}, 1.0);
    const FunctionHandle g(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.5)
                               .plus(HermiteExpansion::constant(1, 0.3)));
    for (const auto& phi : phis) {
        const double nf = luxemburg_norm(f, phi, rule).value;
        for (double c : {0.5, 2.0, -3.0}) {
            const double scaled = luxemburg_norm(f.scaled(c), phi, rule).value;
            CHECK(scaled == Catch::Approx(std::abs(c) * nf).margin(1e-8));
        }
        const double ng = luxemburg_norm(g, phi, rule).value;
        const double nfg =
            luxemburg_norm(FunctionHandle(f.hermite().plus(g.hermite())), phi, rule).value;
        CHECK(nfg <= nf + ng + 1e-8);
    }
}

TEST_CASE("the modular map alpha -> modular(f/alpha) is non-increasing") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const FunctionHandle f = hermite1({1}, 1.0);
    for (const auto& phi : {YoungFunction::cosh_m1(), YoungFunction::power(3.0)}) {
        double prev = kInf;
        for (double alpha : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            const double m = modular(f.scaled(1.0 / alpha), phi, rule);
            CHECK(m <= prev + 1e-12);
            prev = m;
        }
    }
}

TEST_CASE("norm <= 1 iff modular <= 1") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const YoungFunction phi = YoungFunction::cosh_m1();
    for (double c : {0.3, 0.8, 1.0, 1.3, 2.5}) {
        const FunctionHandle f = hermite1({1}, c);
        const double m = modular(f, phi, rule);
        const double n = luxemburg_norm(f, phi, rule).value;
        if (m <= 1.0) CHECK(n <= 1.0 + 1e-8);
        if (n <= 1.0 - 1e-8) CHECK(m <= 1.0 + 1e-8);
        if (m > 1.0 + 1e-8) CHECK(n > 1.0);
    }
}

TEST_CASE("dual norm: zero, Amemiya closed form, sup-form oracle") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const YoungFunction p2 = YoungFunction::power(2.0);

    CHECK(dual_norm(constant1(0.0), p2, rule).value == 0.0);

    // For Phi(x)=x^2/2 (self-conjugate) the Amemiya form has the closed
    // value sqrt(2 E f^2): check on H_1 and H_1 + 0.5 H_2.
    const NormResult d1 = dual_norm(hermite1({1}, 1.0), p2, rule);
    CHECK(d1.value == Catch::Approx(std::sqrt(2.0)).epsilon(1e-9));

    const FunctionHandle mix(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                                 .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.5)));
    CHECK(dual_norm(mix, p2, rule).value == Catch::Approx(std::sqrt(3.0)).epsilon(1e-9));

    // Discretized sup-form oracle: maximize <f,g> over g = a + b H_1 + c H_2
    // with the exact Power(2) modular constraint (a^2 + b^2 + 2 c^2)/2 <= 1.
    double best = 0.0;
    for (double a = -2.0; a <= 2.0; a += 0.05) {
        for (double b = -2.0; b <= 2.0; b += 0.05) {
            for (double c = -2.0; c <= 2.0; c += 0.05) {
                if (0.5 * (a * a + b * b + 2.0 * c * c) > 1.0) continue;
                best = std::max(best, b);  // <H_1, g> = b
            }
        }
    }
    CHECK(d1.value == Catch::Approx(best).margin(0.06));
}

TEST_CASE("Luxemburg <= dual <= 2 Luxemburg (conjugate pairing)") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const std::vector<YoungFunction> phis = {
        YoungFunction::power(2.0), YoungFunction::power(3.0), YoungFunction::exp2(),
        YoungFunction::cosh_m1()};
    const std::vector<FunctionHandle> fs = {
        hermite1({1}, 1.0),
        FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{1}}, 1.0)
                           .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.3))),
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}, {0.5, 2.0, 0}})),
        constant1(1.7)};
    for (const auto& phi : phis) {
        for (const auto& f : fs) {
            const double dual = dual_norm(f, phi, rule).value;
            const double lux = luxemburg_norm(f, conjugate(phi), rule).value;
            CHECK(lux <= dual + 1e-8);
            CHECK(dual <= 2.0 * lux + 1e-8);
        }
    }
}

TEST_CASE("squared-space norm and the norm(f)^2 = norm(f^2) identity") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const YoungFunction phi = YoungFunction::cosh_m1();

    // constant c: cosh(c^2/a^2) - 1 = 1 => a = |c| / sqrt(arccosh 2)
    const NormResult r = squared_space_norm(constant1(1.5), phi, rule);
    CHECK(r.value == Catch::Approx(1.5 / std::sqrt(kArccosh2)).epsilon(1e-9));
    CHECK(squared_space_norm(constant1(0.0), phi, rule).value == 0.0);

    // ||f||_{Phi-bar} = sqrt(||f^2||_Phi) for several catalog functions
    const std::vector<FunctionHandle> fs = {
        constant1(0.7), hermite1({1}, 0.8),
        FunctionHandle(builtins::sin_sum(1, {{1.0, 1.0, 0}})),
        FunctionHandle(builtins::sin_sum(1, {{0.5, 2.0, 0}, {0.25, 3.0, 0}})),
        hermite1({1}, 0.2)};
    for (const auto& f : fs) {
        const double lhs = squared_space_norm(f, phi, rule).value;
        // f^2 as a raw evaluator
        auto base = std::make_shared<FunctionHandle>(f);
        BuiltinFunction sq("f_squared", 1, [base](std::span<const double> x) {
            const double v = (*base)(x);
            return v * v;
        });
        const double rhs = luxemburg_norm(FunctionHandle(sq), phi, rule).value;
        CHECK(lhs * lhs == Catch::Approx(rhs).margin(1e-7));
    }
}

TEST_CASE("Holder duality bound") {
    const auto rule = GaussQuadrature::gauss_hermite(1, 64);
    const HolderReport zero =
        holder_check(constant1(0.0), constant1(0.0), YoungFunction::power(2.0), rule);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.holds);

    const HolderReport h11 =
        holder_check(hermite1({1}, 1.0), hermite1({1}, 1.0), YoungFunction::power(2.0), rule);
    CHECK(h11.holds);
    CHECK(h11.lhs == Catch::Approx(1.0).margin(1e-10));

    const HolderReport h21 =
        holder_check(hermite1({2}, 1.0), hermite1({1}, 1.0), YoungFunction::exp2(), rule);
    CHECK(h21.holds);
    CHECK(h21.lhs <= h21.rhs - 0.1);  // strict margin

    // duality order holds across catalog pairs
    for (const auto& phi : {YoungFunction::power(3.0), YoungFunction::cosh_m1()}) {
        const HolderReport rep = holder_check(
            FunctionHandle(HermiteExpansion::basis(1, MultiIndex{{1}}, 0.7)
                               .plus(HermiteExpansion::basis(1, MultiIndex{{2}}, 0.4))),
            hermite1({1}, 1.2), phi, rule);
        CHECK(rep.holds);
    }
}

TEST_CASE("sub-exponential tail diagnostic") {
    // Gaussian tail: comfortably sub-exponential.
    const TailFit gauss = sub_exponential_tail(hermite1({1}, 1.0), 7, 100000);
    CHECK(gauss.holds);
    CHECK(gauss.c2 > 0.5);

    // chi-square tail (f = x^2): sub-exponential with rate about 1/2.
    const FunctionHandle xsq(HermiteExpansion::basis(1, MultiIndex{{2}}, 1.0)
                                 .plus(HermiteExpansion::constant(1, 1.0)));
    const TailFit chi2 = sub_exponential_tail(xsq, 7, 100000);
    CHECK(chi2.holds);
    CHECK(chi2.c2 < 0.7);

    // e^{x^2}: the survival function decays only polynomially in t.
    BuiltinFunction heavy("exp_xsq", 1, [](std::span<const double> x) {
        return std::exp(x[0] * x[0]);
    });
    const TailFit fat = sub_exponential_tail(FunctionHandle(heavy), 7, 100000);
    CHECK_FALSE(fat.holds);

    // constant: degenerate, trivially sub-exponential.
    const TailFit flat = sub_exponential_tail(constant1(2.0), 7, 100000);
    CHECK(flat.holds);
    CHECK(flat.degenerate);

    CHECK_THROWS_AS(sub_exponential_tail(hermite1({1}, 1.0), 7, 100),
                    std::invalid_argument);
}
