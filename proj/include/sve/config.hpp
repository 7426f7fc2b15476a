#pragma once

#include <string>
#include <vector>

#include "sve/dgsem.hpp"
#include "sve/scenarios.hpp"
#include "sve/timeint.hpp"

namespace sve {

/// Parsed and validated run configuration. The file format is INI-style
/// key/value text with sections [mesh], [model], [scheme], [time], [output];
/// unknown sections or keys are configuration errors.
struct RunConfig {
    // [model]
    std::string scenario = "channel";
    SveParams params = SveParams::defaults();

    // [mesh]
    int elements = 0;
    bool has_domain_override = false;
    double domain_a = 0.0;
    double domain_b = 0.0;
    std::vector<int> resolutions;  ///< convergence studies

    // [scheme]
    int degree = -1;
    VolumeFluct volume = VolumeFluct::closed_form;
    int quadrature_points = 3;
    SurfaceMode surface = SurfaceMode::es_roe_blend;
    bool saturate_alpha = false;
    std::vector<int> study_quadratures{1, 2, 3};  ///< entropy-study rows

    // [time]
    TimeIntegrationConfig time;

    // [output]
    std::string output_dir = ".";
    double snapshot_interval = 0.0;  ///< 0 = initial/final snapshots only
    int series_cadence = 1;
};

/// Parse an INI file. Throws errc::config (naming the offending key) on
/// unknown keys, malformed lines, or unparseable values; errc::io if the
/// file cannot be read.
RunConfig parse_config(const std::string& path);

/// Apply a "section.key=value" override string.
void apply_override(RunConfig& cfg, const std::string& override_spec);

/// Cross-field validation (ranges, required keys per command).
void validate_for_solve(const RunConfig& cfg);
void validate_for_convergence(const RunConfig& cfg);
void validate_for_entropy_study(const RunConfig& cfg);

/// Assemble the semidiscretization for a scenario at the configured
/// resolution. The manufactured scenario attaches its source term.
Semidiscretization build_semidiscretization(const RunConfig& cfg, const Scenario& scenario,
                                            int n_elements, int degree);

}  // namespace sve
