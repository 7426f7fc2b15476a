#include "sve/dgsem.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#include "sve/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sve {

namespace {

#ifdef _OPENMP
/// Thread count for the rhs parallel regions: SVE_NUM_THREADS if set,
/// otherwise the OpenMP default.
int rhs_threads() {
    static const int n = [] {
        if (const char* env = std::getenv("SVE_NUM_THREADS")) {
            const int v = std::atoi(env);
            if (v > 0) return v;
        }
        return omp_get_max_threads();
    }();
    return n;
}
#endif

[[noreturn]] void raise_nodal_positivity(int k, int i, const State& u) {
    raise(errc::positivity, "water height " + std::to_string(u.h) +
                                " below floor at element " + std::to_string(k) +
                                ", node " + std::to_string(i));
}

struct InterfaceData {
    FluctuationPair pair;
    double alpha = 0.0;
    BlendReport report;
    bool blended = false;
};

}  // namespace

Mesh1D uniform_mesh(double a, double b, int n_elements) {
    if (!(a < b)) raise(errc::config, "uniform_mesh: domain must satisfy a < b");
    if (n_elements < 1) raise(errc::config, "uniform_mesh: need at least one element");
    Mesh1D mesh;
    mesh.boundaries.resize(n_elements + 1);
    const double dx = (b - a) / n_elements;
    for (int k = 0; k <= n_elements; ++k) mesh.boundaries[k] = a + k * dx;
    mesh.boundaries[n_elements] = b;
    return mesh;
}

void lin_comb(DGField& out, double a, const DGField& x, double b, const DGField& y) {
    const std::size_t n = out.values.size();
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a * x.values[i] + b * y.values[i];
}

void lin_comb(DGField& out, double a, const DGField& x, double b, const DGField& y,
              double c, const DGField& z) {
    const std::size_t n = out.values.size();
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] = a * x.values[i] + b * y.values[i] + c * z.values[i];
}

Semidiscretization make_semidiscretization(LobattoBasis basis, Mesh1D mesh, SveParams params,
                                           VolumeFluct volume, int quadrature_points,
                                           SurfaceMode surface, SourceFn source) {
    Semidiscretization semi;
    semi.basis = std::move(basis);
    semi.mesh = std::move(mesh);
    semi.params = params;
    semi.volume = volume;
    semi.quadrature_points = quadrature_points;
    semi.surface = surface;
    semi.source = std::move(source);
    if (volume == VolumeFluct::quadrature) semi.path_rule = gauss_rule(quadrature_points);
    return semi;
}

void compute_rhs(const Semidiscretization& semi, const DGField& field, double t,
                 DGField& out, RhsStats* stats) {
    const int n_el = semi.mesh.n_elements();
    const int n_nodes = semi.basis.n_nodes();
    const int last = n_nodes - 1;
    const SveParams& p = semi.params;

    for (int k = 0; k < n_el; ++k)
        for (int i = 0; i < n_nodes; ++i)
            if (!(field.state(k, i).h >= p.h_min)) raise_nodal_positivity(k, i, field.state(k, i));

    const auto volume_pair = [&](const State& a, const State& b) {
        return semi.volume == VolumeFluct::closed_form
                   ? ec_fluctuation_closed_form(a, b, p)
                   : ec_fluctuation_quadrature(a, b, p, semi.path_rule);
    };

    // Exceptions may not cross an OpenMP region; capture and rethrow.
    std::exception_ptr pending = nullptr;
    const auto capture = [&pending](const auto& work) {
        try {
            work();
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(sve_rhs_error)
#endif
            if (!pending) pending = std::current_exception();
        }
    };

    // Pass 1: one fluctuation pair per physical interface. Interface j joins
    // element j (node N) to element j+1 mod K (node 0).
    std::vector<InterfaceData> interfaces(n_el);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(rhs_threads()) if (n_el > 8)
#endif
    for (int j = 0; j < n_el; ++j) {
        capture([&, j] {
            const State ul = field.state(j, last);
            const State ur = field.state((j + 1) % n_el, 0);
            InterfaceData data;
            const FluctuationPair ec = volume_pair(ul, ur);
            switch (semi.surface) {
                case SurfaceMode::ec:
                    data.pair = ec;
                    break;
                case SurfaceMode::es_llf:
                    data.pair = es_fluctuation(ul, ur, ec, llf_viscosity(ul, ur, p));
                    break;
                case SurfaceMode::es_roe_blend: {
                    const ViscosityMatrix q_llf = llf_viscosity(ul, ur, p);
                    ViscosityMatrix q_roe;
                    try {
                        q_roe = roe_viscosity(ul, ur, p);
                    } catch (const solver_error& e) {
                        // coincident eigenvalues: LLF is always entropy safe
                        if (e.code() != errc::degeneracy) throw;
                        q_roe = q_llf;
                    }
                    auto [q_es, rep] = blend_viscosity(ul, ur, q_roe, q_llf, p,
                                                       semi.saturate_alpha);
                    data.pair = es_fluctuation(ul, ur, ec, q_es);
                    data.alpha = rep.alpha;
                    data.report = rep;
                    data.blended = true;
                    break;
                }
            }
            interfaces[j] = data;
        });
    }
    if (pending) std::rethrow_exception(pending);

    if (stats) {
        stats->alpha_max = 0.0;
        for (const InterfaceData& d : interfaces) {
            stats->alpha_max = std::max(stats->alpha_max, d.alpha);
            if (stats->blend_log && d.blended) stats->blend_log->push_back(d.report);
        }
    }

    // Pass 2: element-local flux-differencing volume terms, interface
    // scatter, and sources.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(rhs_threads()) if (n_el > 8)
#endif
    for (int k = 0; k < n_el; ++k) {
        capture([&, k] {
            const double jac = 2.0 / semi.mesh.dx(k);
            std::array<Vec3, 32> acc{};  // N <= 20 keeps this on the stack

            for (int i = 0; i < n_nodes; ++i) {
                for (int m = i + 1; m < n_nodes; ++m) {
                    const FluctuationPair pair =
                        volume_pair(field.state(k, i), field.state(k, m));
                    // D^-(U_m, U_i) = -D^+(U_i, U_m): one evaluation serves both
                    acc[i] = acc[i] + (2.0 * semi.basis.d(i, m)) * pair.d_minus;
                    acc[m] = acc[m] + (-2.0 * semi.basis.d(m, i)) * pair.d_plus;
                }
            }

            const int left_iface = (k + n_el - 1) % n_el;
            acc[0] = acc[0] + (1.0 / semi.basis.weights[0]) * interfaces[left_iface].pair.d_plus;
            acc[last] =
                acc[last] + (1.0 / semi.basis.weights[last]) * interfaces[k].pair.d_minus;

            for (int i = 0; i < n_nodes; ++i) {
                Vec3 dudt = (-jac) * acc[i];
                if (semi.source) {
                    dudt = dudt + semi.source(semi.node_position(k, i), t, field.state(k, i));
                }
                out.values[out.offset(k, i) + 0] = dudt[0];
                out.values[out.offset(k, i) + 1] = dudt[1];
                out.values[out.offset(k, i) + 2] = dudt[2];
            }
        });
    }
    if (pending) std::rethrow_exception(pending);
}

DGField rhs(const Semidiscretization& semi, const DGField& field, double t) {
    DGField out(field.n_elements, field.n_nodes);
    compute_rhs(semi, field, t, out);
    return out;
}

double total_entropy(const Semidiscretization& semi, const DGField& field) {
    double sum = 0.0;
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        const double half_dx = 0.5 * semi.mesh.dx(k);
        for (int i = 0; i < semi.basis.n_nodes(); ++i)
            sum += semi.basis.weights[i] * half_dx * entropy(field.state(k, i), semi.params);
    }
    return sum;
}

double entropy_rate(const Semidiscretization& semi, const DGField& field,
                    const DGField& rhs_field) {
    double sum = 0.0;
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        const double half_dx = 0.5 * semi.mesh.dx(k);
        for (int i = 0; i < semi.basis.n_nodes(); ++i) {
            const EntropyVars w = entropy_vars(field.state(k, i), semi.params);
            const double* du = rhs_field.values.data() + rhs_field.offset(k, i);
            sum += semi.basis.weights[i] * half_dx *
                   (w.w1 * du[0] + w.w2 * du[1] + w.w3 * du[2]);
        }
    }
    return sum;
}

DGField interpolate_ic(const Semidiscretization& semi, const std::function<State(double)>& f,
                       bool nudge_endpoints) {
    const int n_el = semi.mesh.n_elements();
    const int n_nodes = semi.basis.n_nodes();
    const int last = n_nodes - 1;
    DGField field(n_el, n_nodes);
    for (int k = 0; k < n_el; ++k) {
        for (int i = 0; i < n_nodes; ++i) {
            double x = semi.node_position(k, i);
            if (nudge_endpoints && semi.basis.degree > 0) {
                const double eta = 1e-10 * semi.mesh.dx(k);
                if (i == 0) x += eta;
                if (i == last) x -= eta;
            }
            const State u = f(x);
            if (!(u.h >= semi.params.h_min)) raise_nodal_positivity(k, i, u);
            field.set_state(k, i, u);
        }
    }
    return field;
}

double cfl_timestep(const Semidiscretization& semi, const DGField& field, double cfl) {
    if (!(cfl > 0.0)) raise(errc::config, "cfl_timestep: cfl factor must be positive");
    const double order_factor = 2.0 * semi.basis.degree + 1.0;
    double dt = std::numeric_limits<double>::infinity();
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        double speed = 0.0;
        for (int i = 0; i < semi.basis.n_nodes(); ++i)
            speed = std::max(speed, max_abs_eigenvalue(field.state(k, i), semi.params));
        if (speed > 0.0) dt = std::min(dt, semi.mesh.dx(k) / (order_factor * speed));
    }
    return cfl * dt;
}

}  // namespace sve
