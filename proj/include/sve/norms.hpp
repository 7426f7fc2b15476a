#pragma once

#include <functional>
#include <vector>

#include "sve/dgsem.hpp"

namespace sve {

/// Collocation-quadrature L2 error per conserved variable against an exact
/// solution at time t.
Vec3 l2_error(const Semidiscretization& semi, const DGField& field,
              const std::function<State(double, double)>& exact, double t);

/// Collocation-quadrature L2 norm of the difference of two fields on the
/// same semidiscretization.
Vec3 l2_difference(const Semidiscretization& semi, const DGField& a, const DGField& b);

/// Evaluate the piecewise polynomial solution at an arbitrary point
/// (barycentric Lagrange evaluation in the containing element).
State eval_field(const Semidiscretization& semi, const DGField& field, double x);

/// Convergence study record: per-variable L2 errors over a resolution sweep
/// and the experimental orders log2(e_coarse / e_fine) between rows.
struct EocReport {
    std::vector<int> resolutions;
    std::vector<Vec3> l2_errors;  ///< one entry per resolution
    std::vector<Vec3> eoc;        ///< size resolutions.size()-1 (empty for one row)
};

/// Fill in the EOC rows of a report from its error rows (mesh-doubling
/// convention).
void compute_eoc(EocReport& report);

}  // namespace sve
