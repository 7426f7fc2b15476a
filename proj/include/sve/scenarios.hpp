#pragma once

#include <functional>
#include <string>

#include "sve/dgsem.hpp"
#include "sve/model.hpp"

namespace sve {

/// One experiment setup: initial condition, optional exact solution and
/// source term, domain, and the parameter set it is defined for. Boundaries
/// are periodic in every scenario.
struct Scenario {
    std::string name;
    std::function<State(double x)> ic;
    std::function<State(double x, double t)> exact;  ///< empty if unavailable
    SourceFn source;                                 ///< empty if none
    double domain_a = 0.0;
    double domain_b = 1.0;
    SveParams params;
    bool discontinuous_ic = false;  ///< interface-aligned jumps in the IC
};

/// Smooth manufactured solution on [0, sqrt(2)]:
///   h + b = 4 + cos(2 sqrt(2) pi x) cos(2 pi t),  v = 0.5,
///   b = 1 + sin(2 sqrt(2) pi x),
/// with the analytic source that makes it solve the system. Requires the
/// Grass closure and zero friction; throws errc::parameter otherwise.
Scenario manufactured_scenario(const SveParams& p);

/// Subcritical channel flow over a sinusoidal dune on [0, 1000]:
///   h = 10 - b, hv = 10, b = sin^2(pi (x-300)/200) on [300, 500], else 0.
Scenario channel_scenario(const SveParams& p);

/// Lake at rest with a discontinuous sediment layer on [-2, 2]:
///   h + b = 0.5, v = 0, b = 0.4 for |x| < 0.5, else 0.
/// The exact solution is the initial condition for all time.
Scenario well_balanced_scenario(const SveParams& p);

Scenario scenario_by_name(const std::string& name, const SveParams& p);

}  // namespace sve
