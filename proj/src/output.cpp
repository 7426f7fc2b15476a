#include "sve/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sve/errors.hpp"

namespace sve {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_snapshot(const std::string& path, const Semidiscretization& semi,
                    const DGField& field) {
    std::ofstream out(path);
    if (!out) raise(errc::io, "cannot open '" + path + "' for writing");
    out << "x,h,hv,b\n";
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        for (int i = 0; i < semi.basis.n_nodes(); ++i) {
            const State u = field.state(k, i);
            out << fmt17(semi.node_position(k, i)) << ',' << fmt17(u.h) << ',' << fmt17(u.hv)
                << ',' << fmt17(u.b) << '\n';
        }
    }
    if (!out) raise(errc::io, "write failed for '" + path + "'");
}

std::vector<SnapshotRow> read_snapshot(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io, "cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line) || line != "x,h,hv,b")
        raise(errc::io, "'" + path + "': missing snapshot header");
    std::vector<SnapshotRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SnapshotRow r{};
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.x, &r.h, &r.hv, &r.b) != 4)
            raise(errc::io, "'" + path + "': malformed snapshot row '" + line + "'");
        rows.push_back(r);
    }
    return rows;
}

void write_timeseries(const std::string& path, const std::vector<TimeSeriesRow>& series) {
    std::ofstream out(path);
    if (!out) raise(errc::io, "cannot open '" + path + "' for writing");
    out << "t,total_entropy,entropy_rate,dt,alpha_max\n";
    for (const TimeSeriesRow& r : series) {
        out << fmt17(r.t) << ',' << fmt17(r.total_entropy) << ',' << fmt17(r.entropy_rate) << ','
            << fmt17(r.dt) << ',' << fmt17(r.alpha_max) << '\n';
    }
    if (!out) raise(errc::io, "write failed for '" + path + "'");
}

std::string eoc_report_json(const EocReport& report) {
    nlohmann::json j;
    j["resolutions"] = report.resolutions;
    const char* names[3] = {"h", "hv", "b"};
    for (int c = 0; c < 3; ++c) {
        std::vector<double> errs, rates;
        for (const Vec3& e : report.l2_errors) errs.push_back(e[c]);
        for (const Vec3& r : report.eoc) rates.push_back(r[c]);
        j["l2_errors"][names[c]] = errs;
        j["eoc"][names[c]] = rates;
    }
    return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) raise(errc::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) raise(errc::io, "write failed for '" + path + "'");
}

}  // namespace sve
