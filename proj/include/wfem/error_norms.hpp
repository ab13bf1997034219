#ifndef WFEM_ERROR_NORMS_HPP
#define WFEM_ERROR_NORMS_HPP

#include "wfem/assembly.hpp"
#include "wfem/basis.hpp"

#include <optional>
#include <vector>

namespace wfem
{

struct ErrorRow
{
    double s = 0.0;
    int level = 0;
    double h = 0.0;
    int n_dofs = 0;
    double err_hs = 0.0;
    double err_l2 = 0.0;
    std::optional<double> rate_hs; ///< empty on the first level of each s
    std::optional<double> rate_l2;
};

/// Rows ordered by (s, level); h strictly decreasing within each s.
struct ErrorReport
{
    std::vector<ErrorRow> rows;

    std::vector<double> rates_hs(double s) const;
    std::vector<double> rates_l2(double s) const;
    /// Fills rate_hs / rate_l2 of every row from the incremental ratio within its s group.
    void compute_rates();
};

/// (integral over (a,b) of (u_h - u)^2)^{1/2}. Pieces touching the boundary use geometric panels.
double l2_error(const DiscreteSolution& sol, const RealFunction& u_exact, const QuadSettings& settings = {});

struct EnergyError
{
    double error = 0.0;      ///< sqrt(max(0, raw_square))
    double raw_square = 0.0; ///< lin_f_ustar - b^T c before clamping
    bool clamped = false;
};

/// [u - u_h]_{H^s} from the energy identity [u - u_h]^2 = int f u - b^T c.
/// Throws InconsistencyError below -1e-10 |lin_f_ustar|; warns and clamps below -1e-12.
EnergyError hs_error_energy(const DiscreteSolution& sol, const LoadVector& b, double lin_f_ustar);
EnergyError hs_error_energy(const WfemSpace& space, const DiscreteSolution& sol, const RealFunction& f,
                            double lin_f_ustar, const QuadSettings& settings = {});

/// [v]_{H^s} for v supported in [a, b]: (C/2) double integral over (a,b)^2 plus the
/// exterior potential of (a,b), by the adaptive oracle to absolute tolerance tol.
double hs_seminorm_direct(const RealFunction& v, double a, double b, double s, double tol,
                          const std::vector<double>& breakpoints = {});

/// rate[k] = (log e[k+1] - log e[k]) / (log h[k+1] - log h[k]).
std::vector<double> observed_rates(const std::vector<double>& errors, const std::vector<double>& hs);

/// int over (-1,1) of c_{1,s} (1 - x^2)^s: the energy of the f = 1 solution on (-1, 1).
double constant_rhs_energy(double s);

} // namespace wfem

#endif // WFEM_ERROR_NORMS_HPP
