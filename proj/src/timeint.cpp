#include "sve/timeint.hpp"

#include <cmath>
#include <string>

#include "sve/errors.hpp"

namespace sve {

namespace {

RhsFn make_rhs_fn(const Semidiscretization& semi) {
    return [&semi](const DGField& field, double t, DGField& out, RhsStats* stats) {
        compute_rhs(semi, field, t, out, stats);
    };
}

bool all_finite(const DGField& field) {
    for (double x : field.values)
        if (!std::isfinite(x)) return false;
    return true;
}

struct StepWorkspace {
    DGField stage;  // intermediate stage values
    DGField k;      // rhs evaluations
    DGField acc;    // RK4 accumulator

    explicit StepWorkspace(const DGField& like)
        : stage(like.n_elements, like.n_nodes),
          k(like.n_elements, like.n_nodes),
          acc(like.n_elements, like.n_nodes) {}
};

void merge(RhsStats* step_stats, const RhsStats& stage_stats) {
    if (step_stats) step_stats->alpha_max = std::max(step_stats->alpha_max, stage_stats.alpha_max);
}

/// Advances `field` in place; `first_stage_rhs`, when non-null, receives the
/// rhs of the incoming field (the semidiscrete time derivative at step start).
void ssprk33_step(const RhsFn& rhs, DGField& field, double t, double dt, StepWorkspace& ws,
                  RhsStats* step_stats, std::vector<BlendReport>* blend_log,
                  DGField* first_stage_rhs) {
    RhsStats stats;
    stats.blend_log = blend_log;

    rhs(field, t, ws.k, &stats);
    merge(step_stats, stats);
    if (first_stage_rhs) *first_stage_rhs = ws.k;
    lin_comb(ws.stage, 1.0, field, dt, ws.k);

    rhs(ws.stage, t + dt, ws.k, &stats);
    merge(step_stats, stats);
    lin_comb(ws.stage, 0.75, field, 0.25, ws.stage, 0.25 * dt, ws.k);

    rhs(ws.stage, t + 0.5 * dt, ws.k, &stats);
    merge(step_stats, stats);
    lin_comb(field, 1.0 / 3.0, field, 2.0 / 3.0, ws.stage, 2.0 / 3.0 * dt, ws.k);
}

void rk4_step(const RhsFn& rhs, DGField& field, double t, double dt, StepWorkspace& ws,
              RhsStats* step_stats, std::vector<BlendReport>* blend_log,
              DGField* first_stage_rhs) {
    RhsStats stats;
    stats.blend_log = blend_log;

    rhs(field, t, ws.k, &stats);
    merge(step_stats, stats);
    if (first_stage_rhs) *first_stage_rhs = ws.k;
    ws.acc = ws.k;
    lin_comb(ws.stage, 1.0, field, 0.5 * dt, ws.k);

    rhs(ws.stage, t + 0.5 * dt, ws.k, &stats);
    merge(step_stats, stats);
    lin_comb(ws.acc, 1.0, ws.acc, 2.0, ws.k);
    lin_comb(ws.stage, 1.0, field, 0.5 * dt, ws.k);

    rhs(ws.stage, t + 0.5 * dt, ws.k, &stats);
    merge(step_stats, stats);
    lin_comb(ws.acc, 1.0, ws.acc, 2.0, ws.k);
    lin_comb(ws.stage, 1.0, field, dt, ws.k);

    rhs(ws.stage, t + dt, ws.k, &stats);
    merge(step_stats, stats);
    lin_comb(ws.acc, 1.0, ws.acc, 1.0, ws.k);
    lin_comb(field, 1.0, field, dt / 6.0, ws.acc);
}

}  // namespace

void TimeIntegrationConfig::validate() const {
    if (stepping == Stepping::fixed && !(dt > 0.0))
        raise(errc::config, "time integration: fixed stepping requires dt > 0");
    if (stepping == Stepping::cfl && !(cfl > 0.0))
        raise(errc::config, "time integration: cfl stepping requires cfl > 0");
    if (t_end < 0.0) raise(errc::config, "time integration: t_end must be nonnegative");
    if (series_cadence < 1) raise(errc::config, "time integration: series cadence must be >= 1");
}

void step_ssprk33(const RhsFn& rhs, DGField& field, double t, double dt, RhsStats* stats) {
    StepWorkspace ws(field);
    ssprk33_step(rhs, field, t, dt, ws, stats, nullptr, nullptr);
}

void step_rk4(const RhsFn& rhs, DGField& field, double t, double dt, RhsStats* stats) {
    StepWorkspace ws(field);
    rk4_step(rhs, field, t, dt, ws, stats, nullptr, nullptr);
}

DGField step_ssprk33(const Semidiscretization& semi, const DGField& field, double t, double dt) {
    if (!(dt > 0.0)) raise(errc::config, "step_ssprk33: dt must be positive");
    DGField out = field;
    step_ssprk33(make_rhs_fn(semi), out, t, dt, nullptr);
    return out;
}

DGField step_rk4(const Semidiscretization& semi, const DGField& field, double t, double dt) {
    if (!(dt > 0.0)) raise(errc::config, "step_rk4: dt must be positive");
    DGField out = field;
    step_rk4(make_rhs_fn(semi), out, t, dt, nullptr);
    return out;
}

IntegrationResult integrate(const Semidiscretization& semi, const DGField& field0,
                            const TimeIntegrationConfig& config, const StepCallback& callback,
                            std::vector<BlendReport>* blend_log) {
    config.validate();

    IntegrationResult result;
    result.field = field0;
    double t = 0.0;

    const RhsFn rhs_fn = make_rhs_fn(semi);
    StepWorkspace ws(field0);
    DGField first_rhs(field0.n_elements, field0.n_nodes);
    DGField pre_step(field0.n_elements, field0.n_nodes);

    // relative time tolerance for the final-step truncation
    const double t_eps = 1e-14 * std::max(1.0, config.t_end);

    while (t < config.t_end - t_eps) {
        double dt = config.stepping == Stepping::fixed
                        ? config.dt
                        : cfl_timestep(semi, result.field, config.cfl);
        if (t + dt > config.t_end) dt = config.t_end - t;

        const bool record = (result.n_steps % config.series_cadence) == 0;
        if (record) pre_step = result.field;
        RhsStats step_stats;
        try {
            if (config.method == TimeMethod::ssprk33) {
                ssprk33_step(rhs_fn, result.field, t, dt, ws, &step_stats, blend_log,
                             record ? &first_rhs : nullptr);
            } else {
                rk4_step(rhs_fn, result.field, t, dt, ws, &step_stats, blend_log,
                         record ? &first_rhs : nullptr);
            }
        } catch (const solver_error& e) {
            if (e.code() == errc::positivity)
                raise(errc::positivity, std::string(e.what()) + " at t = " + std::to_string(t));
            throw;
        }

        if (record) {
            // the row describes the state at the beginning of this step
            TimeSeriesRow row;
            row.t = t;
            row.dt = dt;
            row.alpha_max = step_stats.alpha_max;
            row.entropy_rate = entropy_rate(semi, pre_step, first_rhs);
            row.total_entropy = total_entropy(semi, pre_step);
            result.series.push_back(row);
            if (callback) callback(result.n_steps, pre_step, row);
        }

        ++result.n_steps;
        // fixed stepping recomputes t from the counter so rounding cannot
        // accumulate into a spurious final micro-step
        t = config.stepping == Stepping::fixed ? config.dt * result.n_steps : t + dt;

        if (!all_finite(result.field))
            raise(errc::numeric, "non-finite values detected at t = " + std::to_string(t));
    }

    result.t_final = result.n_steps == 0 ? t : config.t_end;
    if (result.n_steps > 0) {
        TimeSeriesRow row;
        row.t = result.t_final;
        row.dt = 0.0;
        DGField final_rhs = rhs(semi, result.field, result.t_final);
        row.entropy_rate = entropy_rate(semi, result.field, final_rhs);
        row.total_entropy = total_entropy(semi, result.field);
        result.series.push_back(row);
        if (callback) callback(result.n_steps, result.field, row);
    }
    return result;
}

}  // namespace sve
