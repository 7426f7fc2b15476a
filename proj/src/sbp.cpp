#include "sve/sbp.hpp"

#include <cmath>
#include <string>

#include "sve/errors.hpp"

namespace sve {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNewtonTol = 1e-15;
constexpr int kNewtonMaxIter = 100;

/// Legendre polynomial P_n and derivative P_n' at x (interior points only),
/// by the three-term recurrence.
struct LegendreEval {
    double p;       // P_n(x)
    double dp;      // P_n'(x)
    double p_nm1;   // P_{n-1}(x)
};

LegendreEval legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {p0, 0.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    // derivative from the standard relation (valid away from |x| = 1)
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp, p0};
}

/// q(x) = P_n'(x) and q'(x), the Newton pair for interior LGL nodes.
/// Uses the Legendre ODE (1-x^2) P_n'' = 2x P_n' - n(n+1) P_n.
void lgl_newton_funcs(int n, double x, double& q, double& dq) {
    const LegendreEval e = legendre(n, x);
    q = e.dp;
    dq = (2.0 * x * e.dp - n * (n + 1.0) * e.p) / (1.0 - x * x);
}

}  // namespace

LobattoBasis lgl_basis(int n) {
    if (n < 0 || n > 20)
        raise(errc::config, "lgl_basis: degree " + std::to_string(n) + " out of range [0,20]");

    LobattoBasis b;
    b.degree = n;
    const int m = n + 1;
    b.nodes.assign(m, 0.0);
    b.weights.assign(m, 0.0);
    b.deriv_matrix.assign(m * m, 0.0);

    if (n == 0) {
        // finite-volume limit: midpoint node, full reference-element weight
        b.nodes[0] = 0.0;
        b.weights[0] = 2.0;
        b.deriv_matrix[0] = 0.0;
        return b;
    }

    b.nodes[0] = -1.0;
    b.nodes[n] = 1.0;
    b.weights[0] = b.weights[n] = 2.0 / (n * (n + 1.0));

    // Interior nodes are the roots of P_n'; Newton from Chebyshev-Lobatto
    // seeds. Compute the lower half and mirror to keep the set symmetric.
    for (int i = 1; i <= n / 2; ++i) {
        double x = -std::cos(kPi * i / n);
        int it = 0;
        for (; it < kNewtonMaxIter; ++it) {
            double q, dq;
            lgl_newton_funcs(n, x, q, dq);
            const double dx = q / dq;
            x -= dx;
            if (std::abs(dx) <= kNewtonTol) break;
        }
        if (it == kNewtonMaxIter)
            raise(errc::config, "lgl_basis: Newton iteration failed to converge");
        if (2 * i == n) x = 0.0;  // middle node of an even-degree basis
        b.nodes[i] = x;
        b.nodes[n - i] = -x;
    }

    for (int i = 1; i < n; ++i) {
        const double p = legendre(n, b.nodes[i]).p;
        b.weights[i] = 2.0 / (n * (n + 1.0) * p * p);
    }

    // Barycentric weights, then the derivative matrix.
    std::vector<double> bary(m, 1.0);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            if (k != j) bary[j] *= (b.nodes[j] - b.nodes[k]);
        }
        bary[j] = 1.0 / bary[j];
    }
    for (int i = 0; i < m; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            const double dij = (bary[j] / bary[i]) / (b.nodes[i] - b.nodes[j]);
            b.deriv_matrix[i * m + j] = dij;
            row_sum += dij;
        }
        // negative row sum pins exact annihilation of constants
        b.deriv_matrix[i * m + i] = -row_sum;
    }
    return b;
}

GaussRule gauss_rule(int n) {
    if (n < 1 || n > 10)
        raise(errc::config, "gauss_rule: point count " + std::to_string(n) + " out of range [1,10]");

    GaussRule r;
    r.n_points = n;
    r.nodes.assign(n, 0.0);
    r.weights.assign(n, 0.0);

    // Roots of P_n on [-1,1], lower half by Newton, mirrored; then mapped
    // to [0,1] with halved weights.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = -std::cos(kPi * (i + 0.75) / (n + 0.5));
        int it = 0;
        for (; it < kNewtonMaxIter; ++it) {
            const LegendreEval e = legendre(n, x);
            const double dx = e.p / e.dp;
            x -= dx;
            if (std::abs(dx) <= kNewtonTol) break;
        }
        if (it == kNewtonMaxIter)
            raise(errc::config, "gauss_rule: Newton iteration failed to converge");
        if (2 * i + 1 == n) x = 0.0;
        const double dp = legendre(n, x).dp;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = 0.5 * (1.0 + x);
        r.nodes[n - 1 - i] = 0.5 * (1.0 - x);
        r.weights[i] = 0.5 * w;
        r.weights[n - 1 - i] = 0.5 * w;
    }
    return r;
}

double sbp_defect(const LobattoBasis& basis) {
    const int m = basis.n_nodes();
    double defect = 0.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double qij = basis.weights[i] * basis.d(i, j);
            const double qji = basis.weights[j] * basis.d(j, i);
            double bij = 0.0;
            if (basis.degree > 0) {
                if (i == 0 && j == 0) bij = -1.0;
                if (i == basis.degree && j == basis.degree) bij = 1.0;
            }
            defect = std::max(defect, std::abs(qij + qji - bij));
        }
    }
    return defect;
}

}  // namespace sve
