#pragma once

#include <utility>

#include "sve/linalg.hpp"
#include "sve/model.hpp"
#include "sve/sbp.hpp"

namespace sve {

/// Left/right fluctuation vectors (D^-, D^+) for one state pair. Consistency
/// (both vanish for equal states) and the skew pairing
/// D^-(uL,uR) = -D^+(uR,uL) hold for every constructor in this module.
struct FluctuationPair {
    Vec3 d_minus;
    Vec3 d_plus;
};

/// Numerical viscosity matrix used to build entropy stable fluctuations.
struct ViscosityMatrix {
    Mat3 q;
};

/// Record of one blending decision. delta_s and delta_s_llf are the signed
/// interface entropy productions -[[w]]^T Q [[u]] of the candidate and LLF
/// matrices (negative = dissipative); alpha is the convex weight of LLF.
struct BlendReport {
    double delta_s = 0.0;
    double delta_s_llf = 0.0;
    double alpha = 0.0;
};

/// Which path in state space a fluctuation pair was built along.
enum class PathKind {
    entropy_linear,  ///< linear in entropy variables (quadrature constructor)
    aux_linear       ///< linear in (h, h_b, b) (closed-form constructor)
};

/// Entropy conservative fluctuations from quadrature of A*H along the linear
/// path in entropy variables:
///   D^- = [int (1-s) A H(Phi(s)) ds] [[w]],  D^+ = [int s A H(Phi(s)) ds] [[w]].
/// Throws errc::path when a path point maps to an inadmissible state.
FluctuationPair ec_fluctuation_quadrature(const State& ul, const State& ur,
                                          const SveParams& p, const GaussRule& rule);

/// Closed-form entropy conservative fluctuations
///   D^{+-} = Bbar^{+-} [[vaux]] +- (f^{+-} - f*),
/// with auxiliary variables vaux = (h, h_b, b), Bbar^- = B(uL)/2,
/// Bbar^+ = B(uR)/2, and the symmetric flux f* = (<hv>, <hv><v>, <q_b>).
FluctuationPair ec_fluctuation_closed_form(const State& ul, const State& ur,
                                           const SveParams& p);

/// Defect of the discrete entropy conservation condition:
///   w_L^T D^- + w_R^T D^+ - (q_R - q_L).
double ec_residual(const State& ul, const State& ur, const FluctuationPair& pair,
                   const SveParams& p);

/// Defect of the path-conservation condition D^- + D^+ = int A(Phi) Phi_s ds,
/// evaluated along the pair's own path. The aux_linear path integral has a
/// closed form; the entropy_linear integral uses the supplied rule.
Vec3 path_conservation_residual(const State& ul, const State& ur,
                                const FluctuationPair& pair, const SveParams& p,
                                PathKind kind, const GaussRule& rule);

/// Scalar local Lax-Friedrichs viscosity Q = |lambda|_max / 2 * I.
ViscosityMatrix llf_viscosity(const State& ul, const State& ur, const SveParams& p);

/// Roe viscosity Q = R |Lambda| R^-1 / 2 at the approximate Roe average.
/// Throws errc::degeneracy when the eigendecomposition fails.
ViscosityMatrix roe_viscosity(const State& ul, const State& ur, const SveParams& p);

/// Convex blending of a candidate viscosity with LLF viscosity, choosing the
/// smallest LLF fraction that makes the blended matrix entropy dissipative:
/// alpha = 0 when the candidate already dissipates (delta_s <= 0), otherwise
/// alpha = clamp(delta_s / |delta_s_llf - delta_s|, 0, 1). With
/// saturate_alpha the production branch instead takes
/// max(ratio, 1), i.e. falls back to pure LLF. Throws errc::contract when
/// the supplied LLF matrix itself produces entropy.
std::pair<ViscosityMatrix, BlendReport> blend_viscosity(const State& ul, const State& ur,
                                                        const ViscosityMatrix& q,
                                                        const ViscosityMatrix& q_llf,
                                                        const SveParams& p,
                                                        bool saturate_alpha = false);

/// Entropy stable fluctuations D^{+-}_ES = D^{+-}_EC +- Q [[u]].
FluctuationPair es_fluctuation(const State& ul, const State& ur,
                               const FluctuationPair& ec, const ViscosityMatrix& q_es);

}  // namespace sve
