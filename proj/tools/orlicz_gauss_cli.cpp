// orlicz-gauss: command-line front door for the Orlicz/Gaussian toolkit.
// Subcommands: norm, verify, semigroup, ig score-fit, ig otto, ig check-model.
// Exit codes: 0 ok, 1 input error, 2 divergence, 3 internal error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "orlicz_gauss/orlicz_gauss.hpp"
#include "orlicz_gauss/serialization.hpp"

namespace og = orlicz_gauss;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitInternal = 3;

void emit(const og::JValue& payload, const std::string& out_path) {
    const std::string text = payload.dump();
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw og::ParseError("cannot open output file '" + out_path + "'");
        out << text << "\n";
    }
}

og::JValue base_config(const std::string& command, const og::QuadratureSpec& quad,
                       std::uint64_t seed) {
    og::JValue config = og::JValue::object();
    config.set("command", command);
    config.set("quad", quad.to_jvalue());
    config.set("seed", static_cast<long long>(seed));
    return config;
}

og::JValue wrap_output(og::JValue config) {
    og::JValue out = og::JValue::object();
    out.set("version", og::kVersion);
    out.set("config", std::move(config));
    return out;
}

struct NormArgs {
    std::string phi;
    std::string function_path;
    std::string quad = "gh:64";
    double tol = 1e-10;
    bool dual = false;
    std::string out;
};

int run_norm(const NormArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::YoungFunction phi = og::parse_young(args.phi);
    const og::FunctionHandle f = og::load_function(args.function_path);
    const og::GaussQuadrature rule = quad.realize(f.dim());
    const og::NormResult result =
        args.dual ? og::dual_norm(f, phi, rule, args.tol)
                  : og::luxemburg_norm(f, phi, rule, args.tol);

    og::JValue config = base_config("norm", quad, 0);
    config.set("phi", phi.name());
    config.set("f", args.function_path);
    config.set("tol", args.tol);
    config.set("dual", args.dual);
    og::JValue out = wrap_output(std::move(config));
    out.set("result", og::norm_result_to_jvalue(result));
    emit(out, args.out);
    return result.diverged ? kExitDiverged : kExitOk;
}

struct VerifyArgs {
    std::string catalog_path;
    std::string quad = "gh:96";
    std::string out = "report.json";
    std::string format = "json";
    unsigned inner_order = 64;
};

int run_verify(const VerifyArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::Catalog catalog = args.catalog_path.empty()
                                    ? og::shipped_catalog()
                                    : og::load_catalog(args.catalog_path);
    og::SuiteConfig config;
    if (quad.mode == og::QuadratureSpec::Mode::GaussHermite) {
        config.mode = og::SuiteConfig::Mode::GaussHermite;
        config.set_base_order(quad.order);
    } else {
        config.mode = og::SuiteConfig::Mode::MonteCarlo;
        config.mc_samples = quad.samples;
        config.mc_seed = quad.seed;
    }
    config.inner_1d_order = args.inner_order;

    const og::InequalityReport report = og::run_suite(catalog, config);

    og::JValue cfg = base_config("verify", quad, quad.seed);
    cfg.set("catalog", args.catalog_path.empty() ? "<shipped>" : args.catalog_path);
    cfg.set("inner_order", args.inner_order);
    cfg.set("format", args.format);
    og::JValue out = wrap_output(std::move(cfg));
    og::JValue rep = og::report_to_jvalue(report);
    out.set("report", std::move(rep));

    if (args.format == "csv") {
        std::ofstream csv(args.out, std::ios::binary);
        if (!csv) throw og::ParseError("cannot open output file '" + args.out + "'");
        csv << og::report_to_csv(report);
    } else if (args.format == "json") {
        emit(out, args.out);
    } else {
        throw og::ParseError("format: must be 'json' or 'csv'");
    }

    std::cout << "total=" << report.total() << " holds=" << report.holds_count()
              << " vacuous=" << report.vacuous_count()
              << " failed=" << report.failed_count()
              << " errors=" << report.error_count() << "\n";
    return report.failed_count() == 0 ? kExitOk : kExitDiverged;
}

struct SemigroupArgs {
    std::string function_path;
    std::string t = "0.5";
    std::string points_path;
    std::string quad = "gh:64";
    std::string out;
};

int run_semigroup(const SemigroupArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::FunctionHandle f = og::load_function(args.function_path);
    const double t = (args.t == "inf" || args.t == "infinity")
                         ? og::kInf
                         : std::stod(args.t);
    if (t < 0.0) throw og::ParseError("t: must be >= 0 (or 'inf')");
    const og::GaussQuadrature rule = quad.realize(f.dim());
    const auto points = og::load_points(args.points_path, f.dim());

    const og::FunctionHandle pt = og::mehler_apply(f, t, rule);
    og::JValue values = og::JValue::array();
    for (const auto& x : points) values.push(pt(x));

    const double mass_before = og::integrate(f, rule);
    const double mass_after = og::integrate(pt, rule);

    og::JValue cfg = base_config("semigroup", quad, 0);
    cfg.set("f", args.function_path);
    cfg.set("t", args.t);
    cfg.set("eval_at", args.points_path);
    og::JValue out = wrap_output(std::move(cfg));
    out.set("values", std::move(values));
    og::JValue diag = og::JValue::object();
    diag.set("mass_before", mass_before);
    diag.set("mass_after", mass_after);
    diag.set("mass_error", std::abs(mass_after - mass_before));
    out.set("diagnostics", std::move(diag));
    emit(out, args.out);
    return kExitOk;
}

struct ScoreFitArgs {
    std::string target_path;
    std::string basis_path;
    std::string mode = "exact";
    std::size_t samples = 100000;
    std::uint64_t seed = 0;
    std::string quad = "gh:64";
    std::string out;
};

std::vector<og::FunctionHandle> load_basis(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw og::ParseError("cannot open basis file '" + path + "'");
    og::json j;
    try {
        in >> j;
    } catch (const og::json::exception& e) {
        throw og::ParseError("malformed JSON in '" + path + "': " + e.what());
    }
    const og::json& arr = j.is_object() ? j.at("basis") : j;
    if (!arr.is_array() || arr.empty())
        throw og::ParseError("basis: expected a non-empty array of functions");
    std::vector<og::FunctionHandle> basis;
    for (const auto& b : arr) basis.push_back(og::parse_function(b));
    return basis;
}

int run_score_fit(const ScoreFitArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::FunctionHandle u = og::load_function(args.target_path);
    const auto basis = load_basis(args.basis_path);
    const og::GaussQuadrature rule = quad.realize(u.dim());
    const og::ExpDensity target = og::normalize(u, rule);

    og::ScoreFitResult fit;
    if (args.mode == "exact") {
        fit = og::score_matching_fit(target, basis, rule);
    } else if (args.mode == "empirical") {
        const auto samples = og::sample_exp_density(target, args.samples, args.seed);
        fit = og::score_matching_fit_empirical(samples, u.dim(), basis);
    } else {
        throw og::ParseError("mode: must be 'exact' or 'empirical'");
    }

    og::JValue cfg = base_config("ig score-fit", quad, args.seed);
    cfg.set("target", args.target_path);
    cfg.set("basis", args.basis_path);
    cfg.set("mode", args.mode);
    cfg.set("samples", args.samples);
    og::JValue out = wrap_output(std::move(cfg));
    og::JValue coeffs = og::JValue::array();
    for (double c : fit.coefficients) coeffs.push(c);
    out.set("coefficients", std::move(coeffs));
    og::JValue gram = og::JValue::array();
    for (const auto& row : fit.gram) {
        og::JValue r = og::JValue::array();
        for (double v : row) r.push(v);
        gram.push(std::move(r));
    }
    out.set("gram", std::move(gram));
    og::JValue moments = og::JValue::array();
    for (double v : fit.moments) moments.push(v);
    out.set("moments", std::move(moments));
    out.set("residual_score", fit.residual_score);
    if (!fit.std_errors.empty()) {
        og::JValue se = og::JValue::array();
        for (double v : fit.std_errors) se.push(v);
        out.set("std_errors", std::move(se));
    }
    emit(out, args.out);
    return kExitOk;
}

struct OttoArgs {
    std::string p_path;
    std::string f_path;
    std::string g_path;
    std::string quad = "gh:64";
    bool auto_center = false;
    std::string out;
};

int run_otto(const OttoArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::FunctionHandle u = og::load_function(args.p_path);
    const og::FunctionHandle f = og::load_function(args.f_path);
    const og::FunctionHandle g = og::load_function(args.g_path);
    const og::GaussQuadrature rule = quad.realize(u.dim());
    const og::ExpDensity p = og::normalize(u, rule);
    const og::OttoResult result = og::otto_inner(p, f, g, rule, args.auto_center);

    og::JValue cfg = base_config("ig otto", quad, 0);
    cfg.set("p", args.p_path);
    cfg.set("f", args.f_path);
    cfg.set("g", args.g_path);
    cfg.set("auto_center", args.auto_center);
    og::JValue out = wrap_output(std::move(cfg));
    out.set("value", result.value);
    out.set("adjoint_value", result.adjoint_value);
    out.set("consistent", result.consistent);
    emit(out, args.out);
    return kExitOk;
}

struct CheckModelArgs {
    std::string p_path;
    std::string u_path;
    std::string quad = "gh:64";
    std::string out;
};

int run_check_model(const CheckModelArgs& args) {
    const og::QuadratureSpec quad = og::QuadratureSpec::parse_string(args.quad);
    const og::FunctionHandle p = og::load_function(args.p_path);
    const og::GaussQuadrature rule = quad.realize(p.dim());
    const og::MaxexpCheck check = og::maxexp_sufficient_check(p, rule);

    og::JValue cfg = base_config("ig check-model", quad, 0);
    cfg.set("p", args.p_path);
    if (!args.u_path.empty()) cfg.set("u", args.u_path);
    og::JValue out = wrap_output(std::move(cfg));
    out.set("l2", check.l2);
    out.set("inv", check.inv);
    out.set("holds", check.holds);
    out.set("caveat", og::MaxexpCheck::caveat);
    if (!args.u_path.empty()) {
        const og::FunctionHandle u = og::load_function(args.u_path);
        const og::GaussQuadrature urule = quad.realize(u.dim());
        const og::ScoreModelPreconditions pre =
            og::score_model_preconditions(u, urule);
        og::JValue pj = og::JValue::object();
        pj.set("grad_squared_space_norm",
               og::norm_result_to_jvalue(pre.grad_squared_space));
        pj.set("delta_grad_norm", og::norm_result_to_jvalue(pre.delta_grad));
        pj.set("ok", pre.ok);
        out.set("score_preconditions", std::move(pj));
    }
    emit(out, args.out);
    return check.holds ? kExitOk : kExitDiverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orlicz norms, Poincare inequalities and information geometry "
                 "on the Gaussian space"};
    app.require_subcommand(1);

    NormArgs norm_args;
    CLI::App* norm = app.add_subcommand("norm", "Luxemburg / dual Orlicz norm");
    norm->add_option("--phi", norm_args.phi, "Young function name")->required();
    norm->add_option("--f", norm_args.function_path, "function JSON file")->required();
    norm->add_option("--quad", norm_args.quad, "quadrature spec (gh:N | mc:N:seed)");
    norm->add_option("--tol", norm_args.tol, "bisection tolerance");
    norm->add_flag("--dual", norm_args.dual, "compute the dual (Amemiya) norm");
    norm->add_option("--out", norm_args.out, "output file (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run the inequality suite");
    verify->add_option("--catalog", verify_args.catalog_path,
                       "catalog JSON file (default: shipped catalog)");
    verify->add_option("--quad", verify_args.quad, "quadrature spec");
    verify->add_option("--out", verify_args.out, "report file");
    verify->add_option("--format", verify_args.format, "json | csv");
    verify->add_option("--inner-order", verify_args.inner_order,
                       "inner 1-d rule order for the tilde transform");

    SemigroupArgs semi_args;
    CLI::App* semi = app.add_subcommand("semigroup", "apply the OU semigroup");
    semi->add_option("--f", semi_args.function_path, "function JSON file")->required();
    semi->add_option("--t", semi_args.t, "time (>= 0, or 'inf')");
    semi->add_option("--eval-at", semi_args.points_path, "points JSON file")->required();
    semi->add_option("--quad", semi_args.quad, "quadrature spec");
    semi->add_option("--out", semi_args.out, "output file (default stdout)");

    CLI::App* ig = app.add_subcommand("ig", "information-geometry operations");
    ig->require_subcommand(1);

    ScoreFitArgs fit_args;
    CLI::App* fit = ig->add_subcommand("score-fit", "Hyvarinen score matching");
    fit->add_option("--target", fit_args.target_path, "target u JSON file")->required();
    fit->add_option("--basis", fit_args.basis_path, "basis JSON file")->required();
    fit->add_option("--mode", fit_args.mode, "exact | empirical");
    fit->add_option("--samples", fit_args.samples, "empirical sample count");
    fit->add_option("--seed", fit_args.seed, "sampler seed");
    fit->add_option("--quad", fit_args.quad, "quadrature spec");
    fit->add_option("--out", fit_args.out, "output file (default stdout)");

    OttoArgs otto_args;
    CLI::App* otto = ig->add_subcommand("otto", "Otto inner product");
    otto->add_option("--p", otto_args.p_path, "density u JSON file")->required();
    otto->add_option("--f", otto_args.f_path, "f JSON file")->required();
    otto->add_option("--g", otto_args.g_path, "g JSON file")->required();
    otto->add_option("--quad", otto_args.quad, "quadrature spec");
    otto->add_flag("--auto-center", otto_args.auto_center, "center f,g on the p-fiber");
    otto->add_option("--out", otto_args.out, "output file (default stdout)");

    CheckModelArgs check_args;
    CLI::App* check = ig->add_subcommand("check-model",
                                         "maximal-exponential-model diagnostics");
    check->add_option("--p", check_args.p_path, "density JSON file")->required();
    check->add_option("--u", check_args.u_path,
                      "optional score target for precondition checks");
    check->add_option("--quad", check_args.quad, "quadrature spec");
    check->add_option("--out", check_args.out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*norm) return run_norm(norm_args);
        if (*verify) return run_verify(verify_args);
        if (*semi) return run_semigroup(semi_args);
        if (*fit) return run_score_fit(fit_args);
        if (*otto) return run_otto(otto_args);
        if (*check) return run_check_model(check_args);
    } catch (const og::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiverged;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
