#ifndef WFEM_BASIS_HPP
#define WFEM_BASIS_HPP

#include "wfem/mesh.hpp"
#include "wfem/special_functions.hpp"
#include "wfem/weight.hpp"

#include <Eigen/Dense>

#include <functional>

namespace wfem
{

using RealFunction = std::function<double(double)>;

/// The discrete space V_h = delta^s * (continuous piecewise linears on the mesh),
/// extended by zero outside (a, b). Every mesh node carries a degree of freedom,
/// including the two boundary nodes.
struct WfemSpace
{
    Mesh1D mesh;
    WeightFn weight;
    FracParams params;

    double s() const noexcept { return params.s; }
    int n_dofs() const noexcept { return mesh.n_nodes(); }
};

/// Validates that the weight vanishes on the mesh boundary and builds C_{1,s}.
WfemSpace make_space(Mesh1D mesh, WeightFn weight, double s);

/// Convenience: uniform mesh with n_elems elements on (a, b) and the matching weight.
WfemSpace make_space(double a, double b, int n_elems, WeightKind kind, double s);

/// u_h = delta^s * sum_i coeffs[i] psi_i. Coefficients are the nodal values of u_h / delta^s.
struct DiscreteSolution
{
    WfemSpace space;
    Eigen::VectorXd coeffs;
};

double hat_eval(const Mesh1D& mesh, int i, double x) noexcept;
double weighted_basis_eval(const WfemSpace& space, int i, double x) noexcept;

/// Piecewise-linear function with the given nodal values; zero outside [a, b].
double eval_piecewise_linear(const Mesh1D& mesh, const Eigen::VectorXd& values, double x) noexcept;

/// Nodal interpolant I_h g; returns the nodal values.
Eigen::VectorXd interp_pl(const RealFunction& g, const Mesh1D& mesh);

/// Weighted interpolant J_h v = delta^s I_h(v / delta^s), with the quotient supplied by the caller.
DiscreteSolution interp_weighted(const RealFunction& quotient, const WfemSpace& space);

/// J_h from v itself: the quotient is sampled at interior nodes and extrapolated to the
/// boundary nodes from distances h/4 and h/8 (first-order Richardson). Approximate.
DiscreteSolution interp_weighted_from_values(const RealFunction& v, const WfemSpace& space);

double eval_solution(const DiscreteSolution& sol, double x) noexcept;

} // namespace wfem

#endif // WFEM_BASIS_HPP
