#include "sve/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sve/errors.hpp"

namespace sve {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        raise(errc::config, "key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        raise(errc::config, "key '" + key + "': cannot parse '" + value + "' as an integer");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    raise(errc::config, "key '" + key + "': cannot parse '" + value + "' as a boolean");
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_int(key, item));
    }
    if (out.empty()) raise(errc::config, "key '" + key + "': empty list");
    return out;
}

/// Dispatch one section.key assignment into the config.
void assign(RunConfig& cfg, const std::string& section, const std::string& key,
            const std::string& value) {
    const std::string full = section + "." + key;

    if (section == "model") {
        if (key == "scenario") cfg.scenario = value;
        else if (key == "g") cfg.params.g = parse_double(full, value);
        else if (key == "r") cfg.params.r = parse_double(full, value);
        else if (key == "porosity") cfg.params.porosity = parse_double(full, value);
        else if (key == "manning_n") cfg.params.manning_n = parse_double(full, value);
        else if (key == "rho_f") cfg.params.rho_f = parse_double(full, value);
        else if (key == "h_min") cfg.params.h_min = parse_double(full, value);
        else if (key == "discharge") {
            if (value == "grass") cfg.params.discharge.kind = Discharge::Kind::grass;
            else if (value == "mpm") cfg.params.discharge.kind = Discharge::Kind::mpm;
            else raise(errc::config, "key '" + full + "': unknown discharge '" + value + "'");
        }
        else if (key == "grass_ag") cfg.params.discharge.a_g = parse_double(full, value);
        else if (key == "mpm_ds") cfg.params.discharge.d_s = parse_double(full, value);
        else if (key == "mpm_theta_c") cfg.params.discharge.theta_c = parse_double(full, value);
        else raise(errc::config, "unknown key '" + full + "'");
    } else if (section == "mesh") {
        if (key == "elements") cfg.elements = parse_int(full, value);
        else if (key == "domain_start") {
            cfg.domain_a = parse_double(full, value);
            cfg.has_domain_override = true;
        }
        else if (key == "domain_end") {
            cfg.domain_b = parse_double(full, value);
            cfg.has_domain_override = true;
        }
        else if (key == "resolutions") cfg.resolutions = parse_int_list(full, value);
        else raise(errc::config, "unknown key '" + full + "'");
    } else if (section == "scheme") {
        if (key == "degree") cfg.degree = parse_int(full, value);
        else if (key == "volume") {
            if (value == "closed_form") cfg.volume = VolumeFluct::closed_form;
            else if (value == "quadrature") cfg.volume = VolumeFluct::quadrature;
            else raise(errc::config, "key '" + full + "': unknown volume fluctuation '" + value + "'");
        }
        else if (key == "quadrature_points") cfg.quadrature_points = parse_int(full, value);
        else if (key == "surface") {
            if (value == "ec") cfg.surface = SurfaceMode::ec;
            else if (value == "es_llf") cfg.surface = SurfaceMode::es_llf;
            else if (value == "es_roe_blend") cfg.surface = SurfaceMode::es_roe_blend;
            else raise(errc::config, "key '" + full + "': unknown surface mode '" + value + "'");
        }
        else if (key == "saturate_alpha") cfg.saturate_alpha = parse_bool(full, value);
        else if (key == "study_quadratures") cfg.study_quadratures = parse_int_list(full, value);
        else raise(errc::config, "unknown key '" + full + "'");
    } else if (section == "time") {
        if (key == "method") {
            if (value == "ssprk33") cfg.time.method = TimeMethod::ssprk33;
            else if (value == "rk4") cfg.time.method = TimeMethod::rk4;
            else raise(errc::config, "key '" + full + "': unknown method '" + value + "'");
        }
        else if (key == "stepping") {
            if (value == "fixed") cfg.time.stepping = Stepping::fixed;
            else if (value == "cfl") cfg.time.stepping = Stepping::cfl;
            else raise(errc::config, "key '" + full + "': unknown stepping '" + value + "'");
        }
        else if (key == "dt") cfg.time.dt = parse_double(full, value);
        else if (key == "cfl") cfg.time.cfl = parse_double(full, value);
        else if (key == "t_end") cfg.time.t_end = parse_double(full, value);
        else raise(errc::config, "unknown key '" + full + "'");
    } else if (section == "output") {
        if (key == "dir") cfg.output_dir = value;
        else if (key == "snapshot_interval") cfg.snapshot_interval = parse_double(full, value);
        else if (key == "series_cadence") cfg.series_cadence = parse_int(full, value);
        else raise(errc::config, "unknown key '" + full + "'");
    } else {
        raise(errc::config, "unknown section '[" + section + "]'");
    }
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io, "cannot open config file '" + path + "'");

    RunConfig cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                raise(errc::config, path + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(errc::config, path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            raise(errc::config, path + ":" + std::to_string(lineno) + ": key outside any section");
        if (key.empty())
            raise(errc::config, path + ":" + std::to_string(lineno) + ": empty key");
        assign(cfg, section, key, value);
    }
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& override_spec) {
    const auto eq = override_spec.find('=');
    if (eq == std::string::npos)
        raise(errc::config, "override '" + override_spec + "': expected section.key=value");
    const std::string path = trim(override_spec.substr(0, eq));
    const std::string value = trim(override_spec.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        raise(errc::config, "override '" + override_spec + "': expected section.key=value");
    assign(cfg, path.substr(0, dot), path.substr(dot + 1), value);
}

namespace {

void validate_common(const RunConfig& cfg) {
    cfg.params.validate();
    if (cfg.degree < 0 || cfg.degree > 20)
        raise(errc::config, "key 'scheme.degree': must be in [0,20]");
    if (cfg.volume == VolumeFluct::quadrature &&
        (cfg.quadrature_points < 1 || cfg.quadrature_points > 10))
        raise(errc::config, "key 'scheme.quadrature_points': must be in [1,10]");
    if (cfg.has_domain_override && !(cfg.domain_a < cfg.domain_b))
        raise(errc::config, "key 'mesh.domain_start': domain override must satisfy start < end");
    cfg.time.validate();
    if (cfg.series_cadence < 1)
        raise(errc::config, "key 'output.series_cadence': must be >= 1");
    if (cfg.scenario == "manufactured" && cfg.params.manning_n != 0.0)
        raise(errc::config, "key 'model.manning_n': manufactured scenario requires 0");
}

}  // namespace

void validate_for_solve(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.elements < 1) raise(errc::config, "key 'mesh.elements': must be >= 1");
    if (cfg.snapshot_interval < 0.0)
        raise(errc::config, "key 'output.snapshot_interval': must be nonnegative");
}

void validate_for_convergence(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.resolutions.empty())
        raise(errc::config, "key 'mesh.resolutions': required for convergence runs");
    for (int k : cfg.resolutions)
        if (k < 1) raise(errc::config, "key 'mesh.resolutions': entries must be >= 1");
    if (cfg.time.stepping != Stepping::fixed)
        raise(errc::config, "key 'time.stepping': convergence runs use fixed stepping");
}

void validate_for_entropy_study(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.elements < 1) raise(errc::config, "key 'mesh.elements': must be >= 1");
    for (int n : cfg.study_quadratures)
        if (n < 1 || n > 10)
            raise(errc::config, "key 'scheme.study_quadratures': entries must be in [1,10]");
}

Semidiscretization build_semidiscretization(const RunConfig& cfg, const Scenario& scenario,
                                            int n_elements, int degree) {
    const double a = cfg.has_domain_override ? cfg.domain_a : scenario.domain_a;
    const double b = cfg.has_domain_override ? cfg.domain_b : scenario.domain_b;
    Semidiscretization semi =
        make_semidiscretization(lgl_basis(degree), uniform_mesh(a, b, n_elements),
                                scenario.params, cfg.volume, cfg.quadrature_points, cfg.surface,
                                scenario.source);
    semi.saturate_alpha = cfg.saturate_alpha;
    return semi;
}

}  // namespace sve
