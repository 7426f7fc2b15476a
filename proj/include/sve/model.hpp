#pragma once

#include <utility>

#include "sve/linalg.hpp"

namespace sve {

/// Conserved variables of the shallow-water/sediment system at one point.
struct State {
    double h = 0.0;   ///< water height
    double hv = 0.0;  ///< momentum
    double b = 0.0;   ///< sediment height
};

/// Sediment discharge closure: Grass power law or Meyer-Peter & Mueller
/// threshold law.
struct Discharge {
    enum class Kind { grass, mpm };

    Kind kind = Kind::grass;
    double a_g = 0.01;       ///< Grass coefficient, in [0,1]
    double d_s = 0.0;        ///< MPM grain diameter
    double theta_c = 0.047;  ///< MPM critical Shields parameter

    static Discharge grass(double a_g) {
        Discharge d;
        d.kind = Kind::grass;
        d.a_g = a_g;
        return d;
    }

    static Discharge mpm(double d_s, double theta_c = 0.047) {
        Discharge d;
        d.kind = Kind::mpm;
        d.d_s = d_s;
        d.theta_c = theta_c;
        return d;
    }
};

/// Model parameters. r = rho_f / rho_s must differ from 1: the entropy
/// variable inversion divides by (r - 1). The entropy function is convex for
/// r in (0,1), the physically relevant regime of sediment denser than fluid.
struct SveParams {
    double g = 9.81;        ///< gravitational acceleration
    double r = 0.3;         ///< density ratio rho_f / rho_s
    double porosity = 0.4;  ///< sediment porosity, in [0,1)
    double manning_n = 0.0; ///< Manning friction coefficient
    double rho_f = 1.0;     ///< fluid density
    double h_min = 1e-10;   ///< positivity floor for the water height
    Discharge discharge{};

    /// 1/(1 - porosity), the porosity factor multiplying every discharge law
    double theta_factor() const { return 1.0 / (1.0 - porosity); }

    double rho_s() const { return rho_f / r; }

    /// Throws errc::parameter on inadmissible values.
    void validate() const;

    /// g = 9.81, r = 0.3, porosity = 0.4, Grass A_g = 0.01, no friction.
    static SveParams defaults();
};

/// Entropy variables, the gradient of the entropy function with respect to
/// the conserved variables.
struct EntropyVars {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;

    Vec3 vec() const { return {{{w1, w2, w3}}}; }
};

/// Eigendecomposition of the generalized Jacobian at a Roe-averaged state.
struct RoeEigen {
    Vec3 lambdas;        ///< eigenvalues, ascending
    Mat3 right_vectors;  ///< columns are right eigenvectors
    Mat3 left_vectors;   ///< rows are the matching left eigenvectors (R^-1)
};

// ---------------------------------------------------------------------------
// State algebra
// ---------------------------------------------------------------------------

/// hv / h; throws errc::positivity when h < h_min.
double velocity(const State& u, const SveParams& p);

/// Throws errc::positivity when h < h_min.
void require_positive(const State& u, const SveParams& p);

inline Vec3 to_vec(const State& u) { return {{{u.h, u.hv, u.b}}}; }

inline State to_state(const Vec3& v) { return {v[0], v[1], v[2]}; }

// ---------------------------------------------------------------------------
// Fluxes, closures, Jacobians
// ---------------------------------------------------------------------------

/// Conservative flux (hv, h v^2, q_b).
Vec3 conservative_flux(const State& u, const SveParams& p);

/// Sediment discharge q_b for the configured closure.
/// Grass: q_b = theta_factor * A_g v^3.
/// MPM:   q_b = theta_factor * sgn(tau) * 8 (theta - theta_c)_+^{3/2}
///              * sqrt(g (1/r - 1) d_s^3), theta the Shields parameter.
/// MPM requires r < 1 and throws errc::parameter otherwise.
double sediment_discharge(const State& u, const SveParams& p);

/// Active sediment height h_b = q_b / v, with the division-free closed form
/// theta_factor * A_g v^2 for Grass and a zero cutoff below |v| = 1e-12 in
/// the generic path.
double active_sediment_height(const State& u, const SveParams& p);

/// Manning shear stress tau = rho_f g n^2 v |v| / h^{1/3}.
double shear_stress(const State& u, const SveParams& p);

/// Right-hand-side contribution of friction: (0, -tau/rho_f, 0).
Vec3 friction_source(const State& u, const SveParams& p);

/// Analytic (d q_b / d h, d q_b / d hv).
std::pair<double, double> discharge_derivatives(const State& u, const SveParams& p);

/// Generalized Jacobian A = f_u + B.
Mat3 generalized_jacobian(const State& u, const SveParams& p);

/// Nonconservative coefficient matrix B; only row 2 is nonzero, with entries
/// g(h + h_b) and g(h + h_b/r) in columns 1 and 3.
Mat3 noncons_matrix(const State& u, const SveParams& p);

// ---------------------------------------------------------------------------
// Entropy pair and variable maps
// ---------------------------------------------------------------------------

/// S = 1/2 r h v^2 + 1/2 g (r h^2 + b^2) + r g h b
double entropy(const State& u, const SveParams& p);

/// q = r h v (v^2/2 + g (h + b)) + g q_b (r h + b)
double entropy_flux(const State& u, const SveParams& p);

EntropyVars entropy_vars(const State& u, const SveParams& p);

/// Closed-form inverse of the entropy-variable map. Throws errc::parameter
/// when r = 1 and errc::inversion when the reconstructed height is not
/// positive.
State state_from_entropy_vars(const EntropyVars& w, const SveParams& p);

/// H = du/dw evaluated at the state u, the inverse of the entropy Hessian.
/// Symmetric positive definite for admissible states (r < 1).
Mat3 inverse_entropy_hessian(const State& u, const SveParams& p);

/// H = du/dw evaluated from entropy variables (inverts w first).
Mat3 entropy_hessian_inverse(const EntropyVars& w, const SveParams& p);

/// dw/du, the entropy Hessian itself (diagnostics and tests).
Mat3 entropy_hessian(const State& u, const SveParams& p);

/// max_ij |(A H) _ij - (A H)_ji| at u: measures the loss of entropy
/// symmetrization caused by the nonconservative coupling.
double symmetrization_defect(const State& u, const SveParams& p);

// ---------------------------------------------------------------------------
// Roe average, eigenstructure, wave speeds
// ---------------------------------------------------------------------------

/// Approximate Roe average: arithmetic means of h and b, sqrt-weighted
/// velocity average.
State roe_average(const State& ul, const State& ur, const SveParams& p);

/// Real eigenvalues of A(u) by the trigonometric Cardano method, ascending.
/// Throws errc::hyperbolicity when the characteristic cubic has complex
/// roots.
Vec3 eigenvalues(const State& u, const SveParams& p);

/// Eigenvalues plus the closed-form right/left eigenvector matrices at a
/// (Roe-averaged) state. Throws errc::degeneracy when two eigenvalues are
/// closer than 1e-10 relative to the largest magnitude.
RoeEigen roe_eigen(const State& u_tilde, const SveParams& p);

/// max |lambda_i| over A(u).
double max_abs_eigenvalue(const State& u, const SveParams& p);

/// max |lambda_i| over A(uL), A(uR), and A at the Roe average.
double max_wave_speed(const State& ul, const State& ur, const SveParams& p);

}  // namespace sve
