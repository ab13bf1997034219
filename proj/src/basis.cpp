#include "wfem/basis.hpp"

#include "wfem/errors.hpp"

#include <cmath>
#include <string>

namespace wfem
{

WfemSpace make_space(Mesh1D mesh, WeightFn weight, double s)
{
    if (!(s > 0.0 && s < 1.0))
        throw ArgumentError("make_space: s must lie in (0,1)");
    const double tol = 1e-14 * (std::abs(mesh.a) + std::abs(mesh.b) + 1.0);
    if (std::abs(weight.a() - mesh.a) > tol || std::abs(weight.b() - mesh.b) > tol)
        throw ArgumentError("make_space: the weight must vanish exactly at the mesh endpoints");
    weight.R = 0.5 * (mesh.b - mesh.a);
    weight.x0 = 0.5 * (mesh.a + mesh.b);
    return WfemSpace{std::move(mesh), weight, make_frac_params(s, 1)};
}

WfemSpace make_space(double a, double b, int n_elems, WeightKind kind, double s)
{
    return make_space(build_uniform_mesh(a, b, n_elems), make_weight(kind, a, b), s);
}

double hat_eval(const Mesh1D& mesh, int i, double x) noexcept
{
    if (i < 0 || i > mesh.n_elems || x < mesh.a || x > mesh.b)
        return 0.0;
    const double xi = mesh.nodes[static_cast<std::size_t>(i)];
    if (x <= xi) {
        if (i == 0)
            return x == xi ? 1.0 : 0.0;
        const double xl = mesh.nodes[static_cast<std::size_t>(i) - 1];
        return x <= xl ? 0.0 : (x - xl) / (xi - xl);
    }
    if (i == mesh.n_elems)
        return 0.0;
    const double xr = mesh.nodes[static_cast<std::size_t>(i) + 1];
    return x >= xr ? 0.0 : (xr - x) / (xr - xi);
}

double weighted_basis_eval(const WfemSpace& space, int i, double x) noexcept
{
    const double hat = hat_eval(space.mesh, i, x);
    return hat == 0.0 ? 0.0 : delta_pow_s(space.weight, space.s(), x) * hat;
}

double eval_piecewise_linear(const Mesh1D& mesh, const Eigen::VectorXd& values, double x) noexcept
{
    const int e = mesh.locate(x);
    if (e < 0)
        return 0.0;
    const double xl = mesh.left(e);
    const double xr = mesh.right(e);
    const double t = (x - xl) / (xr - xl);
    return (1.0 - t) * values[e] + t * values[e + 1];
}

Eigen::VectorXd interp_pl(const RealFunction& g, const Mesh1D& mesh)
{
    Eigen::VectorXd values(mesh.n_nodes());
    for (int i = 0; i < mesh.n_nodes(); ++i) {
        const double x = mesh.nodes[static_cast<std::size_t>(i)];
        const double v = g(x);
        if (!std::isfinite(v))
            throw InputError("interp_pl: non-finite sample at node " + std::to_string(i) + " (x = " +
                             std::to_string(x) + ")");
        values[i] = v;
    }
    return values;
}

DiscreteSolution interp_weighted(const RealFunction& quotient, const WfemSpace& space)
{
    return DiscreteSolution{space, interp_pl(quotient, space.mesh)};
}

DiscreteSolution interp_weighted_from_values(const RealFunction& v, const WfemSpace& space)
{
    const auto& mesh = space.mesh;
    const double s = space.s();
    auto quotient = [&](double x) { return v(x) / delta_pow_s(space.weight, s, x); };

    Eigen::VectorXd values(mesh.n_nodes());
    for (int i = 1; i < mesh.n_elems; ++i)
        values[i] = quotient(mesh.nodes[static_cast<std::size_t>(i)]);
    const double t1 = mesh.h / 4.0;
    const double t2 = mesh.h / 8.0;
    values[0] = 2.0 * quotient(mesh.a + t2) - quotient(mesh.a + t1);
    values[mesh.n_elems] = 2.0 * quotient(mesh.b - t2) - quotient(mesh.b - t1);
    for (int i = 0; i < mesh.n_nodes(); ++i)
        if (!std::isfinite(values[i]))
            throw InputError("interp_weighted_from_values: non-finite quotient at node " + std::to_string(i));
    return DiscreteSolution{space, std::move(values)};
}

double eval_solution(const DiscreteSolution& sol, double x) noexcept
{
    const double w = delta_pow_s(sol.space.weight, sol.space.s(), x);
    if (w == 0.0)
        return 0.0;
    return w * eval_piecewise_linear(sol.space.mesh, sol.coeffs, x);
}

} // namespace wfem
