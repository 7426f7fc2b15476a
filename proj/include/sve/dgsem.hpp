#pragma once

#include <functional>
#include <vector>

#include "sve/fluctuations.hpp"
#include "sve/model.hpp"
#include "sve/sbp.hpp"

namespace sve {

/// Uniform periodic 1D mesh of K elements.
struct Mesh1D {
    std::vector<double> boundaries;  ///< K+1 ascending element boundaries

    int n_elements() const { return static_cast<int>(boundaries.size()) - 1; }
    double dx(int k) const { return boundaries[k + 1] - boundaries[k]; }
    double x_left(int k) const { return boundaries[k]; }
    double length() const { return boundaries.back() - boundaries.front(); }
};

Mesh1D uniform_mesh(double a, double b, int n_elements);

/// Nodal conserved variables, K x (N+1) x 3, element-major storage.
struct DGField {
    int n_elements = 0;
    int n_nodes = 0;  ///< nodes per element, N+1
    std::vector<double> values;

    DGField() = default;
    DGField(int k, int nodes) : n_elements(k), n_nodes(nodes), values(3LL * k * nodes, 0.0) {}

    std::size_t offset(int k, int i) const {
        return 3 * (static_cast<std::size_t>(k) * n_nodes + i);
    }

    State state(int k, int i) const {
        const double* p = values.data() + offset(k, i);
        return {p[0], p[1], p[2]};
    }

    void set_state(int k, int i, const State& u) {
        double* p = values.data() + offset(k, i);
        p[0] = u.h;
        p[1] = u.hv;
        p[2] = u.b;
    }

    void add(int k, int i, const Vec3& dv) {
        double* p = values.data() + offset(k, i);
        p[0] += dv[0];
        p[1] += dv[1];
        p[2] += dv[2];
    }
};

/// out = a*x + b*y (sizes must match)
void lin_comb(DGField& out, double a, const DGField& x, double b, const DGField& y);

/// out = a*x + b*y + c*z
void lin_comb(DGField& out, double a, const DGField& x, double b, const DGField& y,
              double c, const DGField& z);

enum class VolumeFluct { closed_form, quadrature };

enum class SurfaceMode { ec, es_llf, es_roe_blend };

/// Pointwise source s(x, t, u) added to du/dt after the fluctuation terms.
using SourceFn = std::function<Vec3(double x, double t, const State& u)>;

/// Everything needed to evaluate the semidiscrete right-hand side: operators,
/// mesh, physics, and the fluctuation configuration. The volume fluctuation
/// must be entropy conservative; the same constructor supplies the EC part of
/// entropy stable surface fluctuations.
struct Semidiscretization {
    LobattoBasis basis;
    Mesh1D mesh;
    SveParams params;
    VolumeFluct volume = VolumeFluct::closed_form;
    int quadrature_points = 3;  ///< path quadrature order for VolumeFluct::quadrature
    SurfaceMode surface = SurfaceMode::ec;
    SourceFn source;  ///< empty = no source
    bool saturate_alpha = false;

    GaussRule path_rule;  ///< cached rule, filled by make_semidiscretization

    double node_position(int k, int i) const {
        return mesh.x_left(k) + 0.5 * (basis.nodes[i] + 1.0) * mesh.dx(k);
    }
};

Semidiscretization make_semidiscretization(LobattoBasis basis, Mesh1D mesh, SveParams params,
                                           VolumeFluct volume = VolumeFluct::closed_form,
                                           int quadrature_points = 3,
                                           SurfaceMode surface = SurfaceMode::ec,
                                           SourceFn source = {});

/// Per-call diagnostics of one rhs evaluation.
struct RhsStats {
    double alpha_max = 0.0;  ///< largest blending factor over all interfaces
    std::vector<BlendReport>* blend_log = nullptr;  ///< optional, appended per interface
};

/// Semidiscrete right-hand side in flux-differencing form with periodic
/// interface coupling. Each physical interface is evaluated once; D^+ feeds
/// the right element's first node and D^- the left element's last node.
/// Throws errc::positivity (with element/node location) on inadmissible
/// nodal states.
void compute_rhs(const Semidiscretization& semi, const DGField& field, double t,
                 DGField& out, RhsStats* stats = nullptr);

DGField rhs(const Semidiscretization& semi, const DGField& field, double t);

/// Quadrature of the entropy function over the domain.
double total_entropy(const Semidiscretization& semi, const DGField& field);

/// Quadrature of w^T du/dt over the domain; zero (to roundoff) for entropy
/// conservative configurations, nonpositive for entropy stable ones.
double entropy_rate(const Semidiscretization& semi, const DGField& field,
                    const DGField& rhs_field);

/// Nodal interpolation of an initial condition. With nudge_endpoints, element
/// endpoint nodes are evaluated a relative 1e-10 inside the element, so that
/// jump discontinuities aligned with interfaces take the one-sided values.
DGField interpolate_ic(const Semidiscretization& semi, const std::function<State(double)>& f,
                       bool nudge_endpoints = false);

/// dt = cfl * min_k dx_k / ((2N+1) max_i |lambda|(U_i^k))
double cfl_timestep(const Semidiscretization& semi, const DGField& field, double cfl);

}  // namespace sve
