#include "sve/scenarios.hpp"

#include <cmath>

#include "sve/errors.hpp"

namespace sve {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Manning friction as a pointwise source, attached whenever the
/// coefficient is nonzero.
SourceFn friction_term(const SveParams& p) {
    if (p.manning_n == 0.0) return {};
    return [p](double, double, const State& u) { return friction_source(u, p); };
}

}  // namespace

Scenario manufactured_scenario(const SveParams& p) {
    if (p.discharge.kind != Discharge::Kind::grass)
        raise(errc::parameter, "manufactured scenario requires the Grass closure");
    if (p.manning_n != 0.0)
        raise(errc::parameter, "manufactured scenario requires zero Manning friction");

    const double kx = 2.0 * std::sqrt(2.0) * kPi;  // spatial wave number
    const double kt = 2.0 * kPi;                   // temporal frequency
    const double v0 = 0.5;
    const double hb0 = p.theta_factor() * p.discharge.a_g * v0 * v0;  // constant h_b

    Scenario s;
    s.name = "manufactured";
    s.domain_a = 0.0;
    s.domain_b = std::sqrt(2.0);
    s.params = p;

    auto exact = [=](double x, double t) -> State {
        const double b = 1.0 + std::sin(kx * x);
        const double h = 4.0 + std::cos(kx * x) * std::cos(kt * t) - b;
        return {h, h * v0, b};
    };
    s.exact = exact;
    s.ic = [=](double x) { return exact(x, 0.0); };

    // Analytic source: the exact fields substituted into the three equations.
    // b is static and q_b(v0) is constant, so the third component vanishes.
    s.source = [=, g = p.g, r = p.r](double x, double t, const State&) -> Vec3 {
        const double cx = std::cos(kx * x);
        const double sx = std::sin(kx * x);
        const double ct = std::cos(kt * t);
        const double st = std::sin(kt * t);

        const double h = 4.0 + cx * ct - (1.0 + sx);
        const double dh_dt = -kt * cx * st;
        const double dh_dx = -kx * sx * ct - kx * cx;
        const double dH_dx = -kx * sx * ct;  // d(h+b)/dx
        const double db_dx = kx * cx;

        Vec3 src;
        src[0] = dh_dt + v0 * dh_dx;
        src[1] = v0 * dh_dt + v0 * v0 * dh_dx + g * h * dH_dx +
                 (g / r) * hb0 * (r * dh_dx + db_dx);
        src[2] = 0.0;
        return src;
    };
    return s;
}

Scenario channel_scenario(const SveParams& p) {
    Scenario s;
    s.name = "channel";
    s.domain_a = 0.0;
    s.domain_b = 1000.0;
    s.params = p;
    s.ic = [](double x) -> State {
        double b = 0.0;
        if (x >= 300.0 && x <= 500.0) {
            const double arg = std::sin(kPi * (x - 300.0) / 200.0);
            b = arg * arg;
        }
        return {10.0 - b, 10.0, b};
    };
    s.source = friction_term(p);
    return s;
}

Scenario well_balanced_scenario(const SveParams& p) {
    Scenario s;
    s.name = "well_balanced";
    s.domain_a = -2.0;
    s.domain_b = 2.0;
    s.params = p;
    s.discontinuous_ic = true;
    auto ic = [](double x) -> State {
        const double b = std::abs(x) < 0.5 ? 0.4 : 0.0;
        return {0.5 - b, 0.0, b};
    };
    s.ic = ic;
    s.exact = [ic](double x, double) { return ic(x); };
    s.source = friction_term(p);
    return s;
}

Scenario scenario_by_name(const std::string& name, const SveParams& p) {
    if (name == "manufactured") return manufactured_scenario(p);
    if (name == "channel") return channel_scenario(p);
    if (name == "well_balanced") return well_balanced_scenario(p);
    raise(errc::config, "unknown scenario '" + name + "'");
}

}  // namespace sve
