#include "sve/runners.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "sve/errors.hpp"
#include "sve/output.hpp"

namespace sve {

namespace {

std::string join(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) raise(errc::io, "cannot create output directory '" + dir + "'");
}

/// Median wall time of one rhs evaluation: warmup calls followed by timed
/// calls on a fixed field.
double median_rhs_seconds(const Semidiscretization& semi, const DGField& field,
                          int warmup = 10, int samples = 101) {
    DGField out(field.n_elements, field.n_nodes);
    for (int i = 0; i < warmup; ++i) compute_rhs(semi, field, 0.0, out);
    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        compute_rhs(semi, field, 0.0, out);
        const auto t1 = std::chrono::steady_clock::now();
        times[i] = std::chrono::duration<double>(t1 - t0).count();
    }
    std::nth_element(times.begin(), times.begin() + samples / 2, times.end());
    return times[samples / 2];
}

}  // namespace

EocReport run_convergence(const RunConfig& cfg) {
    validate_for_convergence(cfg);
    ensure_dir(cfg.output_dir);
    const Scenario scenario = scenario_by_name(cfg.scenario.empty() ? "manufactured" : cfg.scenario,
                                               cfg.params);
    if (!scenario.exact)
        raise(errc::config, "convergence study needs a scenario with an exact solution");

    EocReport report;
    for (int k_elems : cfg.resolutions) {
        const Semidiscretization semi =
            build_semidiscretization(cfg, scenario, k_elems, cfg.degree);
        DGField field = interpolate_ic(semi, scenario.ic, scenario.discontinuous_ic);
        TimeIntegrationConfig tc = cfg.time;
        tc.series_cadence = 1 << 30;  // endpoints only
        const IntegrationResult res = integrate(semi, field, tc);
        report.resolutions.push_back(k_elems);
        report.l2_errors.push_back(l2_error(semi, res.field, scenario.exact, res.t_final));

        const Vec3& e = report.l2_errors.back();
        std::printf("K = %4d   L2(h) = %.6e   L2(hv) = %.6e   L2(b) = %.6e\n", k_elems, e[0],
                    e[1], e[2]);
    }
    compute_eoc(report);
    for (std::size_t i = 0; i < report.eoc.size(); ++i) {
        const Vec3& r = report.eoc[i];
        std::printf("K = %4d -> %4d   EOC(h) = %.2f   EOC(hv) = %.2f   EOC(b) = %.2f\n",
                    report.resolutions[i], report.resolutions[i + 1], r[0], r[1], r[2]);
    }
    write_text_file(join(cfg.output_dir, "eoc.json"), eoc_report_json(report));
    return report;
}

std::vector<EntropyStudyRow> run_entropy_study(const RunConfig& cfg) {
    validate_for_entropy_study(cfg);
    ensure_dir(cfg.output_dir);
    const Scenario scenario = scenario_by_name(cfg.scenario, cfg.params);

    std::vector<EntropyStudyRow> rows;
    auto add_row = [&](const std::string& label, VolumeFluct volume, int n_quad) {
        EntropyStudyRow row;
        row.label = label;
        row.closed_form = volume == VolumeFluct::closed_form;
        row.quadrature_points = n_quad;
        try {
            RunConfig local = cfg;
            local.volume = volume;
            local.quadrature_points = n_quad;
            local.surface = SurfaceMode::ec;
            Semidiscretization semi =
                build_semidiscretization(local, scenario, cfg.elements, cfg.degree);
            DGField field = interpolate_ic(semi, scenario.ic, scenario.discontinuous_ic);

            row.total_entropy = total_entropy(semi, field);
            const double domain = semi.mesh.length();
            double max_rate = 0.0;
            TimeIntegrationConfig tc = cfg.time;
            const IntegrationResult res = integrate(
                semi, field, tc, [&](int, const DGField&, const TimeSeriesRow& r) {
                    max_rate = std::max(max_rate, std::abs(r.entropy_rate) / domain);
                });
            row.max_rate = max_rate;
            row.rhs_seconds = median_rhs_seconds(semi, res.field);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        rows.push_back(row);
        if (row.failed) {
            std::printf("%-16s FAILED: %s\n", row.label.c_str(), row.error.c_str());
        } else {
            std::printf("%-16s max |entropy rate|/|domain| = %.3e   median t_rhs = %.1f us\n",
                        row.label.c_str(), row.max_rate, 1e6 * row.rhs_seconds);
        }
        return;
    };

    for (int n : cfg.study_quadratures)
        add_row("quadrature(" + std::to_string(n) + ")", VolumeFluct::quadrature, n);
    add_row("closed_form", VolumeFluct::closed_form, 0);

    std::string csv = "fluctuation,max_rate,rhs_seconds,failed\n";
    for (const EntropyStudyRow& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%d\n", r.label.c_str(), r.max_rate,
                      r.rhs_seconds, r.failed ? 1 : 0);
        csv += buf;
    }
    write_text_file(join(cfg.output_dir, "entropy_study.csv"), csv);
    return rows;
}

std::vector<std::string> run_simulation(const RunConfig& cfg) {
    validate_for_solve(cfg);
    ensure_dir(cfg.output_dir);
    const Scenario scenario = scenario_by_name(cfg.scenario, cfg.params);
    const Semidiscretization semi =
        build_semidiscretization(cfg, scenario, cfg.elements, cfg.degree);
    DGField field = interpolate_ic(semi, scenario.ic, scenario.discontinuous_ic);

    std::vector<std::string> written;
    const std::string initial_path = join(cfg.output_dir, "snapshot_initial.csv");
    write_snapshot(initial_path, semi, field);
    written.push_back(initial_path);

    double next_snapshot =
        cfg.snapshot_interval > 0.0 ? cfg.snapshot_interval : std::numeric_limits<double>::infinity();
    TimeIntegrationConfig tc = cfg.time;
    tc.series_cadence = cfg.series_cadence;
    const IntegrationResult res =
        integrate(semi, field, tc, [&](int, const DGField& f, const TimeSeriesRow& row) {
            if (row.t >= next_snapshot && row.dt > 0.0) {
                char name[64];
                std::snprintf(name, sizeof(name), "snapshot_t%.6g.csv", row.t);
                const std::string path = join(cfg.output_dir, name);
                write_snapshot(path, semi, f);
                written.push_back(path);
                while (next_snapshot <= row.t) next_snapshot += cfg.snapshot_interval;
            }
        });

    const std::string final_path = join(cfg.output_dir, "snapshot_final.csv");
    write_snapshot(final_path, semi, res.field);
    written.push_back(final_path);

    const std::string series_path = join(cfg.output_dir, "timeseries.csv");
    write_timeseries(series_path, res.series);
    written.push_back(series_path);

    std::printf("%s: %d steps to t = %.6g, total entropy %.10e -> %.10e\n",
                scenario.name.c_str(), res.n_steps, res.t_final,
                res.series.empty() ? 0.0 : res.series.front().total_entropy,
                res.series.empty() ? 0.0 : res.series.back().total_entropy);
    return written;
}

}  // namespace sve
