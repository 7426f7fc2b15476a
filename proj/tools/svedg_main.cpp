// Command-line driver: scenario runs, convergence and entropy studies, and a
// built-in operator/fluctuation self-test.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sve/config.hpp"
#include "sve/errors.hpp"
#include "sve/runners.hpp"

namespace {

using namespace sve;

int exit_code_for(const solver_error& e) {
    switch (e.code()) {
        case errc::config:
        case errc::parameter:
        case errc::io:
            return 1;
        default:
            return 2;
    }
}

RunConfig load_config(const std::string& path, const std::string& output_dir,
                      const std::vector<std::string>& overrides) {
    RunConfig cfg = parse_config(path);
    for (const std::string& o : overrides) apply_override(cfg, o);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    return cfg;
}

struct CheckTable {
    int failures = 0;

    void row(const std::string& name, bool ok, double value) {
        std::printf("  %-52s %s   (%.3e)\n", name.c_str(), ok ? "pass" : "FAIL", value);
        if (!ok) ++failures;
    }
};

/// Quick self-test of the operator and fluctuation kernels.
int run_check() {
    CheckTable table;
    std::printf("operator checks\n");
    for (int n = 1; n <= 8; ++n) {
        const LobattoBasis basis = lgl_basis(n);
        table.row("SBP defect, degree " + std::to_string(n), sbp_defect(basis) <= 1e-14,
                  sbp_defect(basis));
        double wsum = 0.0;
        for (double w : basis.weights) wsum += w;
        table.row("weight sum, degree " + std::to_string(n), std::abs(wsum - 2.0) <= 1e-14,
                  std::abs(wsum - 2.0));
    }
    for (int n = 1; n <= 5; ++n) {
        const GaussRule rule = gauss_rule(n);
        double err = 0.0;
        for (int m = 0; m <= 2 * n - 1; ++m) {
            double quad = 0.0;
            for (int q = 0; q < n; ++q) quad += rule.weights[q] * std::pow(rule.nodes[q], m);
            err = std::max(err, std::abs(quad - 1.0 / (m + 1)));
        }
        table.row("Gauss exactness, " + std::to_string(n) + " points", err <= 1e-13, err);
    }

    std::printf("fluctuation checks\n");
    const SveParams p = SveParams::defaults();
    const GaussRule rule3 = gauss_rule(3);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> uh(0.5, 5.0), uv(-2.0, 2.0), ub(-1.0, 1.0);
    double worst_closed = 0.0, worst_quad = 0.0, worst_skew = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double hl = uh(gen), hr = hl * std::exp(0.2 * ub(gen));
        const State ul{hl, hl * uv(gen), ub(gen)};
        const State ur{hr, hr * (uv(gen)), ub(gen)};
        const double scale =
            std::max({1.0, std::abs(entropy_flux(ul, p)), std::abs(entropy_flux(ur, p))});
        const FluctuationPair closed = ec_fluctuation_closed_form(ul, ur, p);
        worst_closed = std::max(worst_closed, std::abs(ec_residual(ul, ur, closed, p)) / scale);
        const FluctuationPair quad = ec_fluctuation_quadrature(ul, ur, p, rule3);
        worst_quad = std::max(worst_quad, std::abs(ec_residual(ul, ur, quad, p)) / scale);
        const FluctuationPair mirrored = ec_fluctuation_closed_form(ur, ul, p);
        const Vec3 skew = closed.d_minus + mirrored.d_plus;
        worst_skew = std::max(worst_skew, max_abs(skew) /
                                              std::max(1.0, max_abs(closed.d_minus)));
    }
    table.row("closed-form EC residual (2000 random pairs)", worst_closed <= 1e-13, worst_closed);
    table.row("3-point quadrature EC residual", worst_quad <= 1e-12, worst_quad);
    table.row("skew pairing", worst_skew <= 1e-12, worst_skew);

    // blending unit case
    ViscosityMatrix q_prod{(-0.5) * Mat3::identity()};  // entropy producing
    const State wl{1.0, 0.5, 0.1}, wr{1.3, 0.2, 0.2};
    const ViscosityMatrix q_llf = llf_viscosity(wl, wr, p);
    const auto [q_es, rep] = blend_viscosity(wl, wr, q_prod, q_llf, p);
    const double production = rep.alpha * rep.delta_s_llf + (1.0 - rep.alpha) * rep.delta_s;
    table.row("blending enforces nonpositive production",
              rep.alpha >= 0.0 && rep.alpha <= 1.0 && production <= 1e-12, production);

    // lake-at-rest fluctuation
    const State lar_l{0.1, 0.0, 0.4}, lar_r{0.5, 0.0, 0.0};
    const FluctuationPair lar = ec_fluctuation_closed_form(lar_l, lar_r, p);
    const ViscosityMatrix q_roe = roe_viscosity(lar_l, lar_r, p);
    const Vec3 roe_diss = q_roe.q * (to_vec(lar_r) - to_vec(lar_l));
    table.row("lake-at-rest EC fluctuation vanishes",
              max_abs(lar.d_minus) + max_abs(lar.d_plus) <= 1e-13,
              max_abs(lar.d_minus) + max_abs(lar.d_plus));
    table.row("lake-at-rest Roe dissipation vanishes", max_abs(roe_diss) <= 1e-12,
              max_abs(roe_diss));

    std::printf(table.failures == 0 ? "all checks passed\n"
                                    : "%d check(s) FAILED\n",
                table.failures);
    return table.failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy stable DGSEM solver for shallow water flow with sediment transport"};
    app.require_subcommand(1);

    std::string config_path, output_dir;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("config", config_path, "configuration file")->required();
        cmd->add_option("--output-dir", output_dir, "override [output] dir");
        cmd->add_option("--override", overrides, "section.key=value overrides")
            ->take_all();
    };

    CLI::App* solve = app.add_subcommand("solve", "run a scenario and write snapshots");
    add_common(solve);
    CLI::App* conv = app.add_subcommand("convergence", "manufactured-solution EOC study");
    add_common(conv);
    CLI::App* study = app.add_subcommand("entropy-study", "EC fluctuation comparison");
    add_common(study);
    app.add_subcommand("check", "run the operator/fluctuation self-test suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            sve::run_simulation(load_config(config_path, output_dir, overrides));
        } else if (conv->parsed()) {
            sve::run_convergence(load_config(config_path, output_dir, overrides));
        } else if (study->parsed()) {
            sve::run_entropy_study(load_config(config_path, output_dir, overrides));
        } else {
            return run_check();
        }
    } catch (const sve::solver_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
