#include "wfem/error_norms.hpp"

#include "pieces.hpp"

#include "wfem/adaptive.hpp"
#include "wfem/errors.hpp"

#include <cmath>
#include <iostream>

namespace wfem
{

namespace
{

std::vector<double> rates_of(const std::vector<ErrorRow>& rows, double s, bool hs)
{
    std::vector<double> out;
    for (const auto& r : rows) {
        if (r.s != s)
            continue;
        const auto& rate = hs ? r.rate_hs : r.rate_l2;
        if (rate)
            out.push_back(*rate);
    }
    return out;
}

} // namespace

std::vector<double> ErrorReport::rates_hs(double s) const
{
    return rates_of(rows, s, true);
}

std::vector<double> ErrorReport::rates_l2(double s) const
{
    return rates_of(rows, s, false);
}

void ErrorReport::compute_rates()
{
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].rate_hs.reset();
        rows[k].rate_l2.reset();
        if (k == 0 || rows[k - 1].s != rows[k].s)
            continue;
        const auto& prev = rows[k - 1];
        const double dlh = std::log(rows[k].h) - std::log(prev.h);
        if (prev.err_hs > 0.0 && rows[k].err_hs > 0.0)
            rows[k].rate_hs = (std::log(rows[k].err_hs) - std::log(prev.err_hs)) / dlh;
        if (prev.err_l2 > 0.0 && rows[k].err_l2 > 0.0)
            rows[k].rate_l2 = (std::log(rows[k].err_l2) - std::log(prev.err_l2)) / dlh;
    }
}

double l2_error(const DiscreteSolution& sol, const RealFunction& u_exact, const QuadSettings& settings)
{
    const auto& sp = sol.space;
    const auto& mesh = sp.mesh;
    double sum = 0.0;
    for (int e = 0; e < mesh.n_elems; ++e) {
        for (const auto& P : detail::element_pieces(sp, e)) {
            auto sq = [&](double x) {
                const double uh = sol.coeffs[e] * detail::phi_local(sp, e, e, x) +
                                  sol.coeffs[e + 1] * detail::phi_local(sp, e + 1, e, x);
                const double d = uh - u_exact(x);
                return d * d;
            };
            sum += detail::integrate_piece_graded(P, sq, sq, 0.0, settings.load_order, settings.graded_panels,
                                                  settings.grading);
        }
    }
    return std::sqrt(sum);
}

EnergyError hs_error_energy(const DiscreteSolution& sol, const LoadVector& b, double lin_f_ustar)
{
    if (b.values.size() != sol.coeffs.size())
        throw ArgumentError("hs_error_energy: dimension mismatch");
    EnergyError out;
    out.raw_square = lin_f_ustar - b.values.dot(sol.coeffs);
    if (out.raw_square < -1e-10 * std::abs(lin_f_ustar))
        throw InconsistencyError("hs_error_energy: squared error " + std::to_string(out.raw_square) +
                                 " is significantly negative; the load vector or the stiffness matrix is inaccurate");
    if (out.raw_square < 0.0) {
        out.clamped = true;
        if (out.raw_square < -1e-12)
            std::cerr << "warning: hs_error_energy clamped a negative squared error " << out.raw_square << '\n';
    }
    out.error = std::sqrt(std::max(0.0, out.raw_square));
    return out;
}

EnergyError hs_error_energy(const WfemSpace& space, const DiscreteSolution& sol, const RealFunction& f,
                            double lin_f_ustar, const QuadSettings& settings)
{
    return hs_error_energy(sol, assemble_load(space, f, settings), lin_f_ustar);
}

double hs_seminorm_direct(const RealFunction& v, double a, double b, double s, double tol,
                          const std::vector<double>& breakpoints)
{
    const FracParams params = make_frac_params(s, 1);
    const double dbl = adaptive_energy_integral(v, v, s, a, b, a, b, tol / params.c_norm, breakpoints);
    auto k = [&](double x) {
        const double vx = v(x);
        return vx * vx * killing_potential(x, params, a, b);
    };
    const double value = 0.5 * params.c_norm * dbl + adaptive_oracle_integral(k, a, b, 0.5 * tol, breakpoints);
    return std::sqrt(std::max(0.0, value));
}

std::vector<double> observed_rates(const std::vector<double>& errors, const std::vector<double>& hs)
{
    if (errors.size() != hs.size() || errors.size() < 2)
        throw ArgumentError("observed_rates: need equal lengths >= 2");
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k] > 0.0) || !(hs[k] > 0.0))
            throw DomainError("observed_rates: errors and mesh sizes must be positive");
        if (k > 0 && !(hs[k] < hs[k - 1]))
            throw ArgumentError("observed_rates: mesh sizes must be strictly decreasing");
    }
    std::vector<double> rates;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k)
        rates.push_back((std::log(errors[k + 1]) - std::log(errors[k])) / (std::log(hs[k + 1]) - std::log(hs[k])));
    return rates;
}

double constant_rhs_energy(double s)
{
    return ball_solution_constant(1, s) * std::sqrt(std::numbers::pi) * gamma(s + 1.0) / gamma(s + 1.5);
}

} // namespace wfem
