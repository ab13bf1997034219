#include "pieces.hpp"
#include "pair_integrals.hpp"

#include "wfem/adaptive.hpp"
#include "wfem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wfem
{

using detail::Piece;

void PairStats::merge(const PairStats& other) noexcept
{
    max_discrepancy = std::max(max_discrepancy, other.max_discrepancy);
    evaluations += other.evaluations;
    escalations += other.escalations;
    oracle_fallbacks += other.oracle_fallbacks;
}

namespace
{

class PairKernel
{
public:
    PairKernel(const WfemSpace& sp, int i, int j, int n) : m_sp(sp), m_i(i), m_j(j), m_n(n), m_s(sp.s()) {}

    double elements(int k, int l) const
    {
        if (k > l)
            std::swap(k, l);
        const auto pk = detail::element_pieces(m_sp, k);
        const auto pl = detail::element_pieces(m_sp, l);
        double sum = 0.0;
        for (const auto& P : pk)
            for (const auto& Q : pl)
                sum += pieces(P, Q);
        return sum;
    }

private:
    const WfemSpace& m_sp;
    int m_i;
    int m_j;
    int m_n;
    double m_s;

    bool active(int dof, const Piece& P) const noexcept { return detail::dof_on_element(dof, P.elem); }

    double reduced(int dof, const Piece& P, double x) const noexcept { return detail::phi_reduced(m_sp, dof, P, x); }

    double diff(int dof, int ex, double x, int ey, double y) const noexcept
    {
        return detail::phi_difference(m_sp, dof, ex, x, ey, y);
    }

    // Jacobi rule absorbing (x - a)^p or (b - x)^p on a boundary piece.
    const QuadRule& boundary_rule(const Piece& P, double p) const
    {
        return gauss_jacobi(m_n, P.at_b ? p : 0.0, P.at_a ? p : 0.0);
    }

    double kernel(double x, double y) const noexcept { return std::pow(std::abs(x - y), -1.0 - 2.0 * m_s); }

    // Integral over [lo, hi] of |x - y|^{-1-2s} dy for x outside [lo, hi].
    double inner_kernel(double x, double lo, double hi) const noexcept
    {
        const double d1 = x < lo ? lo - x : x - hi;
        const double two_s = 2.0 * m_s;
        return std::pow(d1, -two_s) * -std::expm1(-two_s * std::log1p((hi - lo) / d1)) / two_s;
    }

    double pieces(const Piece& P, const Piece& Q) const
    {
        const bool i_on = active(m_i, P) || active(m_i, Q);
        const bool j_on = active(m_j, P) || active(m_j, Q);
        if (!i_on || !j_on)
            return 0.0;
        if (P.l == Q.l && P.r == Q.r)
            return identical(P);
        // orient so that P lies to the left of Q
        const Piece& L = P.l < Q.l ? P : Q;
        const Piece& R = P.l < Q.l ? Q : P;
        if (L.r == R.l)
            return adjacent(L, R);
        return separated(L, R);
    }

    double separated(const Piece& P, const Piece& Q) const
    {
        const int i = m_i;
        const int j = m_j;
        double self = 0.0;
        if (active(i, P) && active(j, P))
            self += integrate(boundary_rule(P, 2.0 * m_s), P.l, P.r, [&](double x) {
                return reduced(i, P, x) * reduced(j, P, x) * inner_kernel(x, Q.l, Q.r);
            });
        if (active(i, Q) && active(j, Q))
            self += integrate(boundary_rule(Q, 2.0 * m_s), Q.l, Q.r, [&](double y) {
                return reduced(i, Q, y) * reduced(j, Q, y) * inner_kernel(y, P.l, P.r);
            });

        const bool ij = active(i, P) && active(j, Q);
        const bool ji = active(j, P) && active(i, Q);
        if (!ij && !ji)
            return self;

        const MappedRule mx = map_rule(boundary_rule(P, m_s), P.l, P.r);
        const MappedRule my = map_rule(boundary_rule(Q, m_s), Q.l, Q.r);
        const std::size_t nx = mx.x.size();
        const std::size_t ny = my.x.size();
        std::vector<double> ix(nx), jx(nx), iy(ny), jy(ny);
        for (std::size_t p = 0; p < nx; ++p) {
            ix[p] = reduced(i, P, mx.x[p]);
            jx[p] = reduced(j, P, mx.x[p]);
        }
        for (std::size_t q = 0; q < ny; ++q) {
            iy[q] = reduced(i, Q, my.x[q]);
            jy[q] = reduced(j, Q, my.x[q]);
        }
        double cross = 0.0;
        for (std::size_t p = 0; p < nx; ++p) {
            double row = 0.0;
            for (std::size_t q = 0; q < ny; ++q)
                row += my.w[q] * kernel(mx.x[p], my.x[q]) * (ix[p] * jy[q] + jx[p] * iy[q]);
            cross += mx.w[p] * row;
        }
        return self - cross;
    }

    double identical(const Piece& P) const
    {
        if (P.at_a && P.at_b)
            throw AssemblyError("singular pair: a piece may not touch both boundary points");
        if (P.at_a || P.at_b)
            return identical_boundary(P);

        const double h = P.length();
        const MappedRule rt = map_rule(gauss_jacobi(m_n, 1.0, 1.0 - 2.0 * m_s), 0.0, 1.0);
        const MappedRule ru = map_rule(gauss_jacobi(m_n, 0.0, 0.0), 0.0, 1.0);
        const int e = P.elem;
        double acc = 0.0;
        for (std::size_t t = 0; t < rt.x.size(); ++t) {
            const double T = rt.x[t];
            const double dxy = h * T;
            double row = 0.0;
            for (std::size_t u = 0; u < ru.x.size(); ++u) {
                const double x = P.l + h * (T + (1.0 - T) * ru.x[u]);
                const double y = x - dxy;
                row += ru.w[u] * diff(m_i, e, x, e, y) * diff(m_j, e, x, e, y);
            }
            acc += rt.w[t] * row / (dxy * dxy);
        }
        return 2.0 * std::pow(h, 3.0 - 2.0 * m_s) * acc;
    }

    // Duffy coordinates at the singular corner c: x = c + sg h X, y = c + sg h X v.
    double identical_boundary(const Piece& P) const
    {
        const double s = m_s;
        const double h = P.length();
        const double c = P.at_a ? P.l : P.r;
        const double sg = P.at_a ? 1.0 : -1.0;
        const int e = P.elem;
        const int i = m_i;
        const int j = m_j;

        const double c0 = (std::exp2(2.0 * s) - 1.0) / (2.0 * s);
        const MappedRule rx = map_rule(gauss_jacobi(m_n, 0.0, 0.0), 0.0, 1.0);
        const MappedRule rv1 = map_rule(gauss_jacobi(m_n, 0.0, s), 0.0, 0.5);
        const MappedRule rv2 = map_rule(gauss_jacobi(m_n, 0.0, 2.0 * s), 0.0, 0.5);
        const MappedRule rv3 = map_rule(gauss_jacobi(m_n, 1.0 - 2.0 * s, 0.0), 0.5, 1.0);

        double acc = 0.0;
        for (std::size_t q = 0; q < rx.x.size(); ++q) {
            const double t = h * rx.x[q];
            const double x = c + sg * t;
            const double aix = reduced(i, P, x);
            const double ajx = reduced(j, P, x);
            double part = aix * ajx * c0;
            for (std::size_t k = 0; k < rv1.x.size(); ++k) {
                const double v = rv1.x[k];
                const double y = c + sg * t * v;
                part -= rv1.w[k] * std::pow(1.0 - v, -1.0 - 2.0 * s) *
                        (aix * reduced(j, P, y) + ajx * reduced(i, P, y));
            }
            for (std::size_t k = 0; k < rv2.x.size(); ++k) {
                const double v = rv2.x[k];
                const double y = c + sg * t * v;
                part += rv2.w[k] * std::pow(1.0 - v, -1.0 - 2.0 * s) * reduced(i, P, y) * reduced(j, P, y);
            }
            const double tpow = std::pow(t, 2.0 - 2.0 * s);
            for (std::size_t k = 0; k < rv3.x.size(); ++k) {
                const double v = rv3.x[k];
                const double y = c + sg * t * v;
                const double dxy = t * (1.0 - v);
                part += rv3.w[k] * tpow * diff(i, e, x, e, y) * diff(j, e, x, e, y) / (dxy * dxy);
            }
            acc += rx.w[q] * part;
        }
        return 2.0 * h * acc;
    }

    // P = [p - c1, p], Q = [p, p + c2].
    double adjacent(const Piece& P, const Piece& Q) const
    {
        if (P.at_a) {
            const double m = 0.5 * (P.l + P.r);
            const Piece far{P.l, m, P.elem, true, false};
            const Piece near{m, P.r, P.elem, false, P.at_b};
            return separated(far, Q) + adjacent(near, Q);
        }
        if (Q.at_b) {
            const double m = 0.5 * (Q.l + Q.r);
            const Piece near{Q.l, m, Q.elem, Q.at_a, false};
            const Piece far{m, Q.r, Q.elem, false, true};
            return adjacent(P, near) + separated(P, far);
        }

        const double s = m_s;
        const double p = P.r;
        const double c1 = p - P.l;
        const double c2 = Q.r - p;
        const int ex = P.elem;
        const int ey = Q.elem;
        const MappedRule ru = map_rule(gauss_jacobi(m_n, 0.0, 2.0 - 2.0 * s), 0.0, 1.0);
        const MappedRule rv = map_rule(gauss_jacobi(m_n, 0.0, 0.0), 0.0, 1.0);

        double acc = 0.0;
        for (std::size_t a = 0; a < ru.x.size(); ++a) {
            const double U = ru.x[a];
            double row = 0.0;
            for (std::size_t b = 0; b < rv.x.size(); ++b) {
                const double v = rv.x[b];
                // triangle |x - p| > |y - p|
                {
                    const double x = p - c1 * U;
                    const double y = p + c2 * U * v;
                    const double di = diff(m_i, ex, x, ey, y);
                    const double dj = diff(m_j, ex, x, ey, y);
                    row += rv.w[b] * di * dj * std::pow(c1 + c2 * v, -1.0 - 2.0 * s);
                }
                // triangle |y - p| > |x - p|
                {
                    const double x = p - c1 * U * v;
                    const double y = p + c2 * U;
                    const double di = diff(m_i, ex, x, ey, y);
                    const double dj = diff(m_j, ex, x, ey, y);
                    row += rv.w[b] * di * dj * std::pow(c1 * v + c2, -1.0 - 2.0 * s);
                }
            }
            acc += ru.w[a] * row / (U * U);
        }
        return c1 * c2 * acc;
    }
};

double relative_change(double coarse, double fine) noexcept
{
    const double scale = std::max(std::abs(fine), 1e-300);
    return std::abs(fine - coarse) / scale;
}

bool converged(double coarse, double fine, double tol) noexcept
{
    return std::abs(fine - coarse) <= tol * std::abs(fine) + 1e-15;
}

} // namespace

double pair_integral_fixed(const WfemSpace& space, int i, int j, int k, int l, int n)
{
    return PairKernel(space, i, j, n).elements(k, l);
}

double pair_integral_oracle(const WfemSpace& space, int i, int j, int k, int l, double tol)
{
    const auto& mesh = space.mesh;
    std::vector<double> kinks = delta_breakpoints(space.weight);
    kinks.insert(kinks.end(), mesh.nodes.begin(), mesh.nodes.end());
    return adaptive_energy_integral([&](double x) { return weighted_basis_eval(space, i, x); },
                                    [&](double x) { return weighted_basis_eval(space, j, x); }, space.s(),
                                    mesh.left(k), mesh.right(k), mesh.left(l), mesh.right(l), tol, kinks);
}

double escalated_pair_integral(const WfemSpace& space, int i, int j, int k, int l, int n, double tol,
                               PairStats* stats)
{
    auto fixed = [&](int order) { return pair_integral_fixed(space, i, j, k, l, order); };
    auto oracle = [&](double estimate) {
        return pair_integral_oracle(space, i, j, k, l, std::max(1e-13, 1e-3 * tol * std::abs(estimate)));
    };
    return escalate(fixed, oracle, n, tol, stats, [&] {
        return "pair (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ", K=" + std::to_string(k) +
               ", L=" + std::to_string(l) + ")";
    });
}

double escalate(const std::function<double(int)>& fixed, const std::function<double(double)>& oracle, int n,
                double tol, PairStats* stats, const std::function<std::string()>& label)
{
    PairStats local;
    double coarse = fixed(n);
    double fine = fixed(2 * n);
    local.evaluations = 1;
    double result = fine;
    double disc = relative_change(coarse, fine);
    if (!converged(coarse, fine, tol)) {
        ++local.escalations;
        const double finer = fixed(4 * n);
        disc = relative_change(fine, finer);
        result = finer;
        if (!converged(fine, finer, tol)) {
            ++local.oracle_fallbacks;
            try {
                result = oracle(finer);
            } catch (const ConvergenceError& err) {
                throw AssemblyError("quadrature did not converge for " + label() + ": " + err.what());
            }
            disc = relative_change(finer, result);
        }
    }
    local.max_discrepancy = disc;
    if (stats)
        stats->merge(local);
    return result;
}

double singular_pair_integral(const WfemSpace& space, int i, int j, int k, int l, int n, PairStats* stats)
{
    if (i < 0 || j < 0 || i >= space.n_dofs() || j >= space.n_dofs() || k < 0 || l < 0 ||
        k >= space.mesh.n_elems || l >= space.mesh.n_elems)
        throw ArgumentError("singular_pair_integral: index out of range");
    return escalated_pair_integral(space, i, j, k, l, n, QuadSettings{}.escalation_tol, stats);
}

} // namespace wfem
