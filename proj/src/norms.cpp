#include "sve/norms.hpp"

#include <algorithm>
#include <cmath>

#include "sve/errors.hpp"

namespace sve {

Vec3 l2_error(const Semidiscretization& semi, const DGField& field,
              const std::function<State(double, double)>& exact, double t) {
    Vec3 acc;
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        const double half_dx = 0.5 * semi.mesh.dx(k);
        for (int i = 0; i < semi.basis.n_nodes(); ++i) {
            const State u = field.state(k, i);
            const State e = exact(semi.node_position(k, i), t);
            const double w = semi.basis.weights[i] * half_dx;
            acc[0] += w * (u.h - e.h) * (u.h - e.h);
            acc[1] += w * (u.hv - e.hv) * (u.hv - e.hv);
            acc[2] += w * (u.b - e.b) * (u.b - e.b);
        }
    }
    return {{{std::sqrt(acc[0]), std::sqrt(acc[1]), std::sqrt(acc[2])}}};
}

Vec3 l2_difference(const Semidiscretization& semi, const DGField& a, const DGField& b) {
    Vec3 acc;
    for (int k = 0; k < semi.mesh.n_elements(); ++k) {
        const double half_dx = 0.5 * semi.mesh.dx(k);
        for (int i = 0; i < semi.basis.n_nodes(); ++i) {
            const State ua = a.state(k, i);
            const State ub = b.state(k, i);
            const double w = semi.basis.weights[i] * half_dx;
            acc[0] += w * (ua.h - ub.h) * (ua.h - ub.h);
            acc[1] += w * (ua.hv - ub.hv) * (ua.hv - ub.hv);
            acc[2] += w * (ua.b - ub.b) * (ua.b - ub.b);
        }
    }
    return {{{std::sqrt(acc[0]), std::sqrt(acc[1]), std::sqrt(acc[2])}}};
}

State eval_field(const Semidiscretization& semi, const DGField& field, double x) {
    const Mesh1D& mesh = semi.mesh;
    const int n_el = mesh.n_elements();
    if (x < mesh.boundaries.front() || x > mesh.boundaries.back())
        raise(errc::config, "eval_field: point outside the domain");

    int k = static_cast<int>((x - mesh.boundaries.front()) / mesh.dx(0));
    k = std::clamp(k, 0, n_el - 1);
    // guard against roundoff at element boundaries
    while (k > 0 && x < mesh.boundaries[k]) --k;
    while (k < n_el - 1 && x > mesh.boundaries[k + 1]) ++k;

    const double xi = 2.0 * (x - mesh.x_left(k)) / mesh.dx(k) - 1.0;
    const int m = semi.basis.n_nodes();

    // barycentric weights for the reference nodes
    std::vector<double> bary(m, 1.0);
    for (int j = 0; j < m; ++j) {
        for (int l = 0; l < m; ++l)
            if (l != j) bary[j] *= (semi.basis.nodes[j] - semi.basis.nodes[l]);
        bary[j] = 1.0 / bary[j];
    }

    Vec3 num;
    double den = 0.0;
    for (int j = 0; j < m; ++j) {
        const double d = xi - semi.basis.nodes[j];
        if (std::abs(d) < 1e-14) return field.state(k, j);
        const double c = bary[j] / d;
        const State u = field.state(k, j);
        num[0] += c * u.h;
        num[1] += c * u.hv;
        num[2] += c * u.b;
        den += c;
    }
    return {num[0] / den, num[1] / den, num[2] / den};
}

void compute_eoc(EocReport& report) {
    report.eoc.clear();
    for (std::size_t i = 1; i < report.l2_errors.size(); ++i) {
        Vec3 rates;
        for (int c = 0; c < 3; ++c)
            rates[c] = std::log2(report.l2_errors[i - 1][c] / report.l2_errors[i][c]);
        report.eoc.push_back(rates);
    }
}

}  // namespace sve
