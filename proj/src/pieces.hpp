#ifndef WFEM_SRC_PIECES_HPP
#define WFEM_SRC_PIECES_HPP

// Element pieces on which every basis function is smooth up to an explicit
// (x - a)^s or (b - x)^s boundary factor.

#include "wfem/basis.hpp"
#include "wfem/quadrature.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <vector>

namespace wfem::detail
{

struct Piece
{
    double l = 0.0;
    double r = 0.0;
    int elem = 0;
    bool at_a = false;
    bool at_b = false;

    double length() const noexcept { return r - l; }
};

inline bool dof_on_element(int i, int e) noexcept
{
    return i == e || i == e + 1;
}

inline std::vector<Piece> element_pieces(const WfemSpace& sp, int e)
{
    const double l = sp.mesh.left(e);
    const double r = sp.mesh.right(e);
    std::vector<double> cuts{l};
    for (double p : delta_breakpoints(sp.weight))
        if (p > l && p < r)
            cuts.push_back(p);
    cuts.push_back(r);
    std::vector<Piece> out;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        out.push_back(Piece{cuts[k], cuts[k + 1], e, cuts[k] == sp.mesh.a, cuts[k + 1] == sp.mesh.b});
    return out;
}

inline double psi_slope(const Mesh1D& mesh, int i, int e) noexcept
{
    const double h = mesh.right(e) - mesh.left(e);
    if (i == e)
        return -1.0 / h;
    if (i == e + 1)
        return 1.0 / h;
    return 0.0;
}

// Hat i restricted to element e, as the linear function on that element.
inline double psi_local(const Mesh1D& mesh, int i, int e, double x) noexcept
{
    if (i == e)
        return (mesh.right(e) - x) / (mesh.right(e) - mesh.left(e));
    if (i == e + 1)
        return (x - mesh.left(e)) / (mesh.right(e) - mesh.left(e));
    return 0.0;
}

inline double phi_local(const WfemSpace& sp, int i, int e, double x) noexcept
{
    const double psi = psi_local(sp.mesh, i, e, x);
    return psi == 0.0 ? 0.0 : psi * delta_pow_s(sp.weight, sp.s(), x);
}

// phi_i divided by (x - a)^s on pieces touching a, by (b - x)^s on pieces touching b.
inline double phi_reduced(const WfemSpace& sp, int i, const Piece& P, double x) noexcept
{
    const double psi = psi_local(sp.mesh, i, P.elem, x);
    if (psi == 0.0)
        return 0.0;
    if (P.at_a)
        return psi * std::pow(delta_over_left(sp.weight, x), sp.s());
    if (P.at_b)
        return psi * std::pow(delta_over_right(sp.weight, x), sp.s());
    return psi * delta_pow_s(sp.weight, sp.s(), x);
}

// phi_i(x) - phi_i(y) for x in element ex and y in element ey, free of cancellation when x ~ y.
inline double phi_difference(const WfemSpace& sp, int i, int ex, double x, int ey, double y) noexcept
{
    const auto& mesh = sp.mesh;
    double dpsi;
    if (ex == ey) {
        dpsi = psi_slope(mesh, i, ex) * (x - y);
    } else if (std::abs(ex - ey) == 1) {
        const double p = mesh.nodes[static_cast<std::size_t>(std::max(ex, ey))];
        dpsi = psi_slope(mesh, i, ex) * (x - p) - psi_slope(mesh, i, ey) * (y - p);
    } else {
        dpsi = psi_local(mesh, i, ex, x) - psi_local(mesh, i, ey, y);
    }
    const double psi_y = psi_local(mesh, i, ey, y);
    double out = dpsi == 0.0 ? 0.0 : delta_pow_s(sp.weight, sp.s(), x) * dpsi;
    if (psi_y != 0.0)
        out += psi_y * delta_pow_difference(sp.weight, sp.s(), x, y);
    return out;
}

/// Integral of g over a piece. Pieces touching the boundary are split into geometric
/// panels (ratio `grading`) toward the boundary endpoint, stopping at a width of about
/// 1e-11. The innermost panel integrates `reduced` = g / dist^p with a Jacobi rule (p > 0)
/// or g itself with Legendre (p = 0).
template <typename G, typename H>
double integrate_piece_graded(const Piece& P, G&& g, H&& reduced, double p, int order, int max_panels,
                              double grading)
{
    const QuadRule& rule = gauss_jacobi(order, 0.0, 0.0);
    if (!P.at_a && !P.at_b)
        return integrate(rule, P.l, P.r, g);
    const double len = P.length();
    constexpr double min_width = 1e-11;
    int panels = 1;
    if (len > min_width)
        panels = std::min(max_panels, 1 + static_cast<int>(std::ceil(std::log(len / min_width) /
                                                                      std::log(1.0 / grading))));
    double sum = 0.0;
    double outer = 1.0;
    for (int k = 0; k + 1 < panels; ++k) {
        const double inner = outer * grading;
        if (P.at_a)
            sum += integrate(rule, P.l + inner * len, k == 0 ? P.r : P.l + outer * len, g);
        else
            sum += integrate(rule, k == 0 ? P.l : P.r - outer * len, P.r - inner * len, g);
        outer = inner;
    }
    const double w = outer * len;
    if (p > 0.0) {
        const QuadRule& jr = P.at_a ? gauss_jacobi(order, 0.0, p) : gauss_jacobi(order, p, 0.0);
        sum += P.at_a ? integrate(jr, P.l, P.l + w, reduced) : integrate(jr, P.r - w, P.r, reduced);
    } else {
        sum += P.at_a ? integrate(rule, P.l, P.l + w, g) : integrate(rule, P.r - w, P.r, g);
    }
    return sum;
}

} // namespace wfem::detail

#endif // WFEM_SRC_PIECES_HPP
