#pragma once

#include <string>
#include <vector>

#include "sve/config.hpp"
#include "sve/norms.hpp"

namespace sve {

/// Run the manufactured-solution convergence study over cfg.resolutions and
/// write the report (table to stdout, JSON + CSV to the output directory).
EocReport run_convergence(const RunConfig& cfg);

/// One row of the entropy study: an EC fluctuation constructor, the largest
/// observed magnitude of the domain-averaged semidiscrete entropy rate, and
/// the median wall time per rhs evaluation.
struct EntropyStudyRow {
    std::string label;
    bool closed_form = false;
    int quadrature_points = 0;
    double max_rate = 0.0;       ///< max_t |entropy_rate| / |domain|
    double rhs_seconds = 0.0;    ///< median of timed rhs calls
    double total_entropy = 0.0;  ///< initial total entropy, for scale
    bool failed = false;
    std::string error;
};

/// Channel-flow entropy study: integrates with EC volume+surface fluctuations
/// for each quadrature order in cfg.study_quadratures plus the closed form,
/// logging the per-step semidiscrete entropy rate and timing the rhs.
std::vector<EntropyStudyRow> run_entropy_study(const RunConfig& cfg);

/// Scenario run with snapshot and time-series output; returns the paths of
/// the files written.
std::vector<std::string> run_simulation(const RunConfig& cfg);

}  // namespace sve
