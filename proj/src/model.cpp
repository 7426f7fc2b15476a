#include "sve/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sve/errors.hpp"

namespace sve {

namespace {

constexpr double kVelocityCutoff = 1e-12;
constexpr double kEigenGapTol = 1e-10;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

void require_mpm_admissible(const SveParams& p) {
    if (p.r >= 1.0)
        raise(errc::parameter,
              "MPM discharge requires r < 1 (got r = " + std::to_string(p.r) + ")");
}

}  // namespace

void SveParams::validate() const {
    if (g <= 0.0) raise(errc::parameter, "g must be positive");
    if (r <= 0.0 || r == 1.0) raise(errc::parameter, "density ratio r must be positive and != 1");
    if (porosity < 0.0 || porosity >= 1.0) raise(errc::parameter, "porosity must be in [0,1)");
    if (manning_n < 0.0) raise(errc::parameter, "manning_n must be nonnegative");
    if (rho_f <= 0.0) raise(errc::parameter, "rho_f must be positive");
    if (h_min <= 0.0) raise(errc::parameter, "h_min must be positive");
    switch (discharge.kind) {
        case Discharge::Kind::grass:
            if (discharge.a_g < 0.0 || discharge.a_g > 1.0)
                raise(errc::parameter, "Grass coefficient must be in [0,1]");
            break;
        case Discharge::Kind::mpm:
            if (discharge.d_s <= 0.0) raise(errc::parameter, "MPM grain diameter must be positive");
            if (discharge.theta_c <= 0.0)
                raise(errc::parameter, "MPM critical Shields parameter must be positive");
            require_mpm_admissible(*this);
            break;
    }
}

SveParams SveParams::defaults() {
    SveParams p;
    p.g = 9.81;
    p.r = 0.3;
    p.porosity = 0.4;
    p.manning_n = 0.0;
    p.rho_f = 1.0;
    p.discharge = Discharge::grass(0.01);
    return p;
}

void require_positive(const State& u, const SveParams& p) {
    if (!(u.h >= p.h_min))
        raise(errc::positivity, "water height " + std::to_string(u.h) + " below floor");
}

double velocity(const State& u, const SveParams& p) {
    require_positive(u, p);
    return u.hv / u.h;
}

Vec3 conservative_flux(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    return {{{u.hv, u.hv * v, sediment_discharge(u, p)}}};
}

double sediment_discharge(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    switch (p.discharge.kind) {
        case Discharge::Kind::grass:
            return p.theta_factor() * p.discharge.a_g * v * v * v;
        case Discharge::Kind::mpm: {
            require_mpm_admissible(p);
            const double tau = shear_stress(u, p);
            // Shields parameter from the shear stress magnitude; the sign of
            // the transport is carried by the sgn(tau) prefactor.
            const double theta =
                std::abs(tau) / ((p.rho_s() - p.rho_f) * p.g * p.discharge.d_s);
            const double excess = theta - p.discharge.theta_c;
            if (excess <= 0.0) return 0.0;
            const double d3 = p.discharge.d_s * p.discharge.d_s * p.discharge.d_s;
            return p.theta_factor() * sgn(tau) * 8.0 * std::pow(excess, 1.5) *
                   std::sqrt(p.g * (1.0 / p.r - 1.0) * d3);
        }
    }
    return 0.0;
}

double active_sediment_height(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    if (p.discharge.kind == Discharge::Kind::grass)
        return p.theta_factor() * p.discharge.a_g * v * v;
    if (std::abs(v) < kVelocityCutoff) return 0.0;
    return sediment_discharge(u, p) / v;
}

double shear_stress(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    const double n = p.manning_n;
    return p.rho_f * p.g * n * n * v * std::abs(v) / std::cbrt(u.h);
}

Vec3 friction_source(const State& u, const SveParams& p) {
    return {{{0.0, -shear_stress(u, p) / p.rho_f, 0.0}}};
}

std::pair<double, double> discharge_derivatives(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    switch (p.discharge.kind) {
        case Discharge::Kind::grass: {
            const double c = 3.0 * p.theta_factor() * p.discharge.a_g * v * v / u.h;
            return {-c * v, c};
        }
        case Discharge::Kind::mpm: {
            require_mpm_admissible(p);
            const double tau = shear_stress(u, p);
            const double denom = (p.rho_s() - p.rho_f) * p.g * p.discharge.d_s;
            const double theta = std::abs(tau) / denom;
            const double excess = theta - p.discharge.theta_c;
            if (excess <= 0.0) return {0.0, 0.0};
            const double d3 = p.discharge.d_s * p.discharge.d_s * p.discharge.d_s;
            const double dq_dtheta = p.theta_factor() * sgn(tau) * 12.0 *
                                     std::sqrt(excess) *
                                     std::sqrt(p.g * (1.0 / p.r - 1.0) * d3);
            // |tau| = rho_f g n^2 v^2 / h^{1/3}; chain rule through (h, hv)
            const double n2 = p.manning_n * p.manning_n;
            const double habs43 = std::pow(u.h, 4.0 / 3.0);
            const double dtheta_dh = -(7.0 / 3.0) * p.rho_f * p.g * n2 * v * v / habs43 / denom;
            const double dtheta_dhv = 2.0 * p.rho_f * p.g * n2 * v / habs43 / denom;
            return {dq_dtheta * dtheta_dh, dq_dtheta * dtheta_dhv};
        }
    }
    return {0.0, 0.0};
}

Mat3 generalized_jacobian(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    const double hb = active_sediment_height(u, p);
    const auto [dqdh, dqdhv] = discharge_derivatives(u, p);
    Mat3 a;
    a(0, 1) = 1.0;
    a(1, 0) = p.g * (u.h + hb) - v * v;
    a(1, 1) = 2.0 * v;
    a(1, 2) = p.g * (u.h + hb / p.r);
    a(2, 0) = dqdh;
    a(2, 1) = dqdhv;
    return a;
}

Mat3 noncons_matrix(const State& u, const SveParams& p) {
    require_positive(u, p);
    const double hb = active_sediment_height(u, p);
    Mat3 b;
    b(1, 0) = p.g * (u.h + hb);
    b(1, 2) = p.g * (u.h + hb / p.r);
    return b;
}

double entropy(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    return 0.5 * p.r * u.h * v * v + 0.5 * p.g * (p.r * u.h * u.h + u.b * u.b) +
           p.r * p.g * u.h * u.b;
}

double entropy_flux(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    const double qb = sediment_discharge(u, p);
    return p.r * u.hv * (0.5 * v * v + p.g * (u.h + u.b)) + p.g * qb * (p.r * u.h + u.b);
}

EntropyVars entropy_vars(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    return {p.r * (p.g * (u.h + u.b) - 0.5 * v * v), p.r * v, p.g * (p.r * u.h + u.b)};
}

State state_from_entropy_vars(const EntropyVars& w, const SveParams& p) {
    if (p.r == 1.0) raise(errc::parameter, "entropy-variable inversion requires r != 1");
    const double v = w.w2 / p.r;
    const double s1 = (w.w1 / p.r + 0.5 * v * v) / p.g;  // h + b
    const double s2 = w.w3 / p.g;                        // r h + b
    const double h = (s2 - s1) / (p.r - 1.0);
    if (!(h > p.h_min))
        raise(errc::inversion, "entropy-variable inversion produced h = " + std::to_string(h));
    return {h, h * v, s1 - h};
}

Mat3 inverse_entropy_hessian(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    const double c = 1.0 / ((p.r - 1.0) * p.g);
    Mat3 h;
    h(0, 0) = -c / p.r;
    h(0, 1) = -c * v / p.r;
    h(0, 2) = c;
    h(1, 0) = h(0, 1);
    h(1, 1) = u.h / p.r - c * v * v / p.r;
    h(1, 2) = c * v;
    h(2, 0) = h(0, 2);
    h(2, 1) = h(1, 2);
    h(2, 2) = -c;
    return h;
}

Mat3 entropy_hessian_inverse(const EntropyVars& w, const SveParams& p) {
    return inverse_entropy_hessian(state_from_entropy_vars(w, p), p);
}

Mat3 entropy_hessian(const State& u, const SveParams& p) {
    const double v = velocity(u, p);
    Mat3 m;
    m(0, 0) = p.r * v * v / u.h + p.g * p.r;
    m(0, 1) = -p.r * v / u.h;
    m(0, 2) = p.r * p.g;
    m(1, 0) = m(0, 1);
    m(1, 1) = p.r / u.h;
    m(1, 2) = 0.0;
    m(2, 0) = m(0, 2);
    m(2, 1) = 0.0;
    m(2, 2) = p.g;
    return m;
}

double symmetrization_defect(const State& u, const SveParams& p) {
    return asymmetry(generalized_jacobian(u, p) * inverse_entropy_hessian(u, p));
}

State roe_average(const State& ul, const State& ur, const SveParams& p) {
    const double vl = velocity(ul, p);
    const double vr = velocity(ur, p);
    const double sl = std::sqrt(ul.h);
    const double sr = std::sqrt(ur.h);
    const double h = 0.5 * (ul.h + ur.h);
    const double v = (sl * vl + sr * vr) / (sl + sr);
    return {h, h * v, 0.5 * (ul.b + ur.b)};
}

Vec3 eigenvalues(const State& u, const SveParams& p) {
    const Mat3 a = generalized_jacobian(u, p);
    // characteristic polynomial: l^3 + c2 l^2 + c1 l + c0 = 0
    const double c2 = -a(1, 1);
    const double c1 = -(a(1, 0) + a(1, 2) * a(2, 1));
    const double c0 = -a(1, 2) * a(2, 0);

    // depressed cubic y^3 + py + q with l = y - c2/3
    const double shift = c2 / 3.0;
    const double pp = c1 - c2 * c2 / 3.0;
    const double qq = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;

    // disc > 0 means one real and two complex roots; sy normalizes to the
    // magnitude of the depressed roots
    const double sy = std::max({std::sqrt(std::abs(pp)), std::cbrt(std::abs(qq)), 1e-150});
    const double disc = 0.25 * qq * qq + pp * pp * pp / 27.0;
    const double sy3 = sy * sy * sy;
    if (disc > 1e-10 * sy3 * sy3)
        raise(errc::hyperbolicity, "characteristic cubic has complex roots");

    Vec3 lam;
    if (pp >= 0.0) {
        // only reachable near the fully degenerate triple root
        lam = {{{-shift, -shift, -shift}}};
    } else {
        const double amp = 2.0 * std::sqrt(-pp / 3.0);
        double arg = 3.0 * qq / (pp * amp);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        constexpr double kTwoThirdsPi = 2.0943951023931953;
        for (int k = 0; k < 3; ++k)
            lam[k] = amp * std::cos(phi - kTwoThirdsPi * k) - shift;
    }
    std::sort(lam.v.begin(), lam.v.end());
    return lam;
}

RoeEigen roe_eigen(const State& u_tilde, const SveParams& p) {
    const Vec3 lam = eigenvalues(u_tilde, p);
    const double lam_max = std::max(max_abs(lam), 1.0);
    const double gap = std::min({lam[1] - lam[0], lam[2] - lam[1]});
    if (gap <= kEigenGapTol * lam_max)
        raise(errc::degeneracy, "near-coincident eigenvalues in Roe matrix");

    const double v = velocity(u_tilde, p);
    const double hb = active_sediment_height(u_tilde, p);
    const double col1 = p.g * (u_tilde.h + hb);
    const double col3 = p.g * (u_tilde.h + hb / p.r);

    RoeEigen e;
    e.lambdas = lam;
    for (int i = 0; i < 3; ++i) {
        const double d = v - lam[i];
        e.right_vectors(0, i) = 1.0;
        e.right_vectors(1, i) = lam[i];
        e.right_vectors(2, i) = (d * d - col1) / col3;
    }
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const int k = (i + 2) % 3;
        const double denom = (lam[i] - lam[j]) * (lam[i] - lam[k]);
        e.left_vectors(i, 0) = (col1 - v * v + lam[j] * lam[k]) / denom;
        e.left_vectors(i, 1) = (2.0 * v - lam[j] - lam[k]) / denom;
        e.left_vectors(i, 2) = col3 / denom;
    }
    return e;
}

double max_abs_eigenvalue(const State& u, const SveParams& p) {
    return max_abs(eigenvalues(u, p));
}

double max_wave_speed(const State& ul, const State& ur, const SveParams& p) {
    const double a = max_abs_eigenvalue(ul, p);
    const double b = max_abs_eigenvalue(ur, p);
    const double c = max_abs_eigenvalue(roe_average(ul, ur, p), p);
    return std::max({a, b, c});
}

}  // namespace sve
