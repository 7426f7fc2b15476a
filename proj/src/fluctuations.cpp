#include "sve/fluctuations.hpp"

#include <algorithm>
#include <cmath>

#include "sve/errors.hpp"

namespace sve {

FluctuationPair ec_fluctuation_quadrature(const State& ul, const State& ur,
                                          const SveParams& p, const GaussRule& rule) {
    const EntropyVars wl = entropy_vars(ul, p);
    const EntropyVars wr = entropy_vars(ur, p);
    const Vec3 jump_w = wr.vec() - wl.vec();

    Mat3 k_minus, k_plus;
    for (int q = 0; q < rule.n_points; ++q) {
        const double s = rule.nodes[q];
        const EntropyVars ws{wl.w1 + s * jump_w[0], wl.w2 + s * jump_w[1],
                             wl.w3 + s * jump_w[2]};
        State us;
        try {
            us = state_from_entropy_vars(ws, p);
        } catch (const solver_error& e) {
            if (e.code() == errc::inversion)
                raise(errc::path, "entropy-variable path left the admissible set");
            throw;
        }
        const Mat3 ah = generalized_jacobian(us, p) * inverse_entropy_hessian(us, p);
        k_minus = k_minus + (rule.weights[q] * (1.0 - s)) * ah;
        k_plus = k_plus + (rule.weights[q] * s) * ah;
    }
    return {k_minus * jump_w, k_plus * jump_w};
}

FluctuationPair ec_fluctuation_closed_form(const State& ul, const State& ur,
                                           const SveParams& p) {
    const double vl = velocity(ul, p);
    const double vr = velocity(ur, p);
    const double hbl = active_sediment_height(ul, p);
    const double hbr = active_sediment_height(ur, p);
    const double qbl = sediment_discharge(ul, p);
    const double qbr = sediment_discharge(ur, p);

    const double jump_h = ur.h - ul.h;
    const double jump_b = ur.b - ul.b;
    const double avg_hv = 0.5 * (ul.hv + ur.hv);
    const double avg_v = 0.5 * (vl + vr);
    const double avg_qb = 0.5 * (qbl + qbr);
    const double fstar_mom = avg_hv * avg_v;

    FluctuationPair out;
    out.d_minus[0] = avg_hv - ul.hv;
    out.d_minus[1] = 0.5 * p.g * ((ul.h + hbl) * jump_h + (ul.h + hbl / p.r) * jump_b) +
                     (fstar_mom - ul.hv * vl);
    out.d_minus[2] = avg_qb - qbl;

    out.d_plus[0] = ur.hv - avg_hv;
    out.d_plus[1] = 0.5 * p.g * ((ur.h + hbr) * jump_h + (ur.h + hbr / p.r) * jump_b) +
                    (ur.hv * vr - fstar_mom);
    out.d_plus[2] = qbr - avg_qb;
    return out;
}

double ec_residual(const State& ul, const State& ur, const FluctuationPair& pair,
                   const SveParams& p) {
    const EntropyVars wl = entropy_vars(ul, p);
    const EntropyVars wr = entropy_vars(ur, p);
    return dot(wl.vec(), pair.d_minus) + dot(wr.vec(), pair.d_plus) -
           (entropy_flux(ur, p) - entropy_flux(ul, p));
}

Vec3 path_conservation_residual(const State& ul, const State& ur,
                                const FluctuationPair& pair, const SveParams& p,
                                PathKind kind, const GaussRule& rule) {
    Vec3 integral;
    switch (kind) {
        case PathKind::aux_linear: {
            // B is affine in (h, h_b, b): the path integral reduces to B at
            // the averaged auxiliary variables plus the conservative jump.
            const double avg_h = 0.5 * (ul.h + ur.h);
            const double avg_hb =
                0.5 * (active_sediment_height(ul, p) + active_sediment_height(ur, p));
            const double jump_h = ur.h - ul.h;
            const double jump_b = ur.b - ul.b;
            const Vec3 jump_f = conservative_flux(ur, p) - conservative_flux(ul, p);
            integral[0] = jump_f[0];
            integral[1] = jump_f[1] + p.g * ((avg_h + avg_hb) * jump_h +
                                             (avg_h + avg_hb / p.r) * jump_b);
            integral[2] = jump_f[2];
            break;
        }
        case PathKind::entropy_linear: {
            const EntropyVars wl = entropy_vars(ul, p);
            const EntropyVars wr = entropy_vars(ur, p);
            const Vec3 jump_w = wr.vec() - wl.vec();
            for (int q = 0; q < rule.n_points; ++q) {
                const double s = rule.nodes[q];
                const EntropyVars ws{wl.w1 + s * jump_w[0], wl.w2 + s * jump_w[1],
                                     wl.w3 + s * jump_w[2]};
                const State us = state_from_entropy_vars(ws, p);
                const Mat3 ah =
                    generalized_jacobian(us, p) * inverse_entropy_hessian(us, p);
                integral = integral + rule.weights[q] * (ah * jump_w);
            }
            break;
        }
    }
    return pair.d_minus + pair.d_plus - integral;
}

ViscosityMatrix llf_viscosity(const State& ul, const State& ur, const SveParams& p) {
    return {(0.5 * max_wave_speed(ul, ur, p)) * Mat3::identity()};
}

ViscosityMatrix roe_viscosity(const State& ul, const State& ur, const SveParams& p) {
    const RoeEigen e = roe_eigen(roe_average(ul, ur, p), p);
    Mat3 abs_lambda;
    for (int i = 0; i < 3; ++i) abs_lambda(i, i) = std::abs(e.lambdas[i]);
    return {0.5 * (e.right_vectors * abs_lambda * e.left_vectors)};
}

std::pair<ViscosityMatrix, BlendReport> blend_viscosity(const State& ul, const State& ur,
                                                        const ViscosityMatrix& q,
                                                        const ViscosityMatrix& q_llf,
                                                        const SveParams& p,
                                                        bool saturate_alpha) {
    const Vec3 jump_u = to_vec(ur) - to_vec(ul);
    const Vec3 jump_w = entropy_vars(ur, p).vec() - entropy_vars(ul, p).vec();

    BlendReport rep;
    rep.delta_s = -dot(jump_w, q.q * jump_u);
    rep.delta_s_llf = -dot(jump_w, q_llf.q * jump_u);

    if (rep.delta_s > 0.0) {
        if (rep.delta_s_llf > 0.0)
            raise(errc::contract, "blend_viscosity: LLF input is not entropy dissipative");
        const double ratio = rep.delta_s / std::abs(rep.delta_s_llf - rep.delta_s);
        rep.alpha = saturate_alpha ? std::max(ratio, 1.0) : std::clamp(ratio, 0.0, 1.0);
        return {{rep.alpha * q_llf.q + (1.0 - rep.alpha) * q.q}, rep};
    }
    rep.alpha = 0.0;
    return {q, rep};
}

FluctuationPair es_fluctuation(const State& ul, const State& ur,
                               const FluctuationPair& ec, const ViscosityMatrix& q_es) {
    const Vec3 dissipation = q_es.q * (to_vec(ur) - to_vec(ul));
    return {ec.d_minus - dissipation, ec.d_plus + dissipation};
}

}  // namespace sve
