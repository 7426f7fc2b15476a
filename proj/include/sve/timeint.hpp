#pragma once

#include <functional>
#include <vector>

#include "sve/dgsem.hpp"

namespace sve {

/// Right-hand-side callable used by the steppers; evaluates du/dt of `field`
/// at time t into `out` (pre-sized), optionally reporting per-call stats.
using RhsFn = std::function<void(const DGField& field, double t, DGField& out, RhsStats*)>;

enum class TimeMethod { ssprk33, rk4 };

enum class Stepping { fixed, cfl };

struct TimeIntegrationConfig {
    TimeMethod method = TimeMethod::ssprk33;
    Stepping stepping = Stepping::fixed;
    double dt = 0.0;          ///< fixed step size
    double cfl = 0.5;         ///< CFL factor for adaptive stepping
    double t_end = 0.0;
    int series_cadence = 1;   ///< record a time-series row every this many steps

    void validate() const;
};

/// One recorded time-series sample. entropy_rate is the semidiscrete rate
/// w^T du/dt evaluated with the first-stage rhs of the step that begins at t;
/// alpha_max is the largest blending factor seen in any stage of that step.
struct TimeSeriesRow {
    double t = 0.0;
    double total_entropy = 0.0;
    double entropy_rate = 0.0;
    double dt = 0.0;
    double alpha_max = 0.0;
};

struct IntegrationResult {
    DGField field;
    std::vector<TimeSeriesRow> series;
    int n_steps = 0;
    double t_final = 0.0;
};

/// Called at the series cadence with the state at the BEGINNING of the
/// recorded step (and once more with the final state, dt = 0).
using StepCallback = std::function<void(int step, const DGField& field, const TimeSeriesRow& row)>;

/// Three-stage, third-order strong-stability-preserving Runge-Kutta step.
DGField step_ssprk33(const Semidiscretization& semi, const DGField& field, double t, double dt);

/// Classical fourth-order Runge-Kutta step.
DGField step_rk4(const Semidiscretization& semi, const DGField& field, double t, double dt);

/// Generic-forcing variants used by the drivers and tests.
void step_ssprk33(const RhsFn& rhs, DGField& field, double t, double dt, RhsStats* stats);
void step_rk4(const RhsFn& rhs, DGField& field, double t, double dt, RhsStats* stats);

/// Advance field0 to config.t_end (final step truncated to land exactly).
/// Aborts with the failing time attached on positivity errors and on
/// non-finite values. blend_log, when given, collects every interface
/// blending decision of every rhs evaluation.
IntegrationResult integrate(const Semidiscretization& semi, const DGField& field0,
                            const TimeIntegrationConfig& config,
                            const StepCallback& callback = {},
                            std::vector<BlendReport>* blend_log = nullptr);

}  // namespace sve
