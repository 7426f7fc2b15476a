#pragma once

#include <vector>

namespace sve {

/// Legendre-Gauss-Lobatto collocation operators on the reference element
/// [-1,1]: interpolation nodes, quadrature weights, and the nodal derivative
/// matrix. The operator triple satisfies the diagonal-norm
/// summation-by-parts identity Q + Q^T = B with Q_ij = w_i D_ij and
/// B = diag(-1, 0, ..., 0, +1).
///
/// Degree 0 is supported as the finite-volume limit: a single node at 0 with
/// weight 2 and a zero derivative matrix (B degenerates to 0 as well).
struct LobattoBasis {
    int degree = 0;                    ///< polynomial degree N
    std::vector<double> nodes;         ///< N+1 nodes, ascending, in [-1,1]
    std::vector<double> weights;       ///< N+1 positive quadrature weights
    std::vector<double> deriv_matrix;  ///< (N+1)x(N+1), row-major

    int n_nodes() const { return degree + 1; }

    double d(int i, int j) const { return deriv_matrix[i * n_nodes() + j]; }
};

/// Gauss-Legendre quadrature rule mapped to [0,1]; weights sum to 1 and the
/// rule is exact for polynomials up to degree 2n-1.
struct GaussRule {
    int n_points = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Build the LGL basis of degree n (0 <= n <= 20). Nodes are computed by
/// Newton iteration on the interior extrema of the Legendre polynomial and
/// symmetrized about the origin; the derivative matrix comes from barycentric
/// weights with the diagonal set to the negative row sum.
LobattoBasis lgl_basis(int n);

/// Build the n-point Gauss-Legendre rule on [0,1] (1 <= n <= 10).
GaussRule gauss_rule(int n);

/// Entrywise defect max|Q + Q^T - B| of the SBP identity.
double sbp_defect(const LobattoBasis& basis);

}  // namespace sve
