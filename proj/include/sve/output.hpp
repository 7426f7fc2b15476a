#pragma once

#include <string>
#include <vector>

#include "sve/dgsem.hpp"
#include "sve/norms.hpp"
#include "sve/timeint.hpp"

namespace sve {

/// One snapshot row: node position and conserved variables.
struct SnapshotRow {
    double x, h, hv, b;
};

/// Write nodal values as CSV with header `x,h,hv,b`, one row per global node
/// in element-major, node-minor order, 17 significant digits.
void write_snapshot(const std::string& path, const Semidiscretization& semi,
                    const DGField& field);

/// Read a snapshot written by write_snapshot (round-trips bit-exactly).
std::vector<SnapshotRow> read_snapshot(const std::string& path);

/// Write the time series as CSV `t,total_entropy,entropy_rate,dt,alpha_max`.
void write_timeseries(const std::string& path, const std::vector<TimeSeriesRow>& series);

/// Serialize an EOC report as JSON (resolutions, per-variable errors, EOC).
std::string eoc_report_json(const EocReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace sve
