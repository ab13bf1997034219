#ifndef WFEM_ADAPTIVE_HPP
#define WFEM_ADAPTIVE_HPP

#include <functional>
#include <vector>

namespace wfem
{

/// Globally adaptive bisection with a fixed-order Gauss-Legendre panel rule.
/// Panel error = |one panel - two half panels|; the panel with the largest error is split next.
/// Deliberately independent of the singular rules used in assembly so it can serve as an oracle.
struct AdaptiveOptions
{
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int order = 10;
    long max_panels = 1'000'000;
};

struct AdaptiveResult
{
    double value = 0.0;
    double error = 0.0;
    long panels = 0;
};

/// Throws ConvergenceError (carrying the best estimate and its error bound) when the
/// panel budget runs out. Breakpoints inside (lo, hi) seed the initial partition.
AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                                  const AdaptiveOptions& opts, const std::vector<double>& breakpoints = {});

double adaptive_oracle_integral(const std::function<double(double)>& f, double lo, double hi, double tol,
                                const std::vector<double>& breakpoints = {});

/// Iterated integral over [xlo, xhi] x [ylo, yhi]. The inner y-integral is split at y = x
/// (when diagonal is set) and at the given y breakpoints.
double adaptive_oracle_integral(const std::function<double(double, double)>& f, double xlo, double xhi, double ylo,
                                double yhi, double tol, const std::vector<double>& x_breakpoints = {},
                                const std::vector<double>& y_breakpoints = {}, bool diagonal = true);

/// Same region, with the integrand written as g(x, t) for y = x + t. The inner integral runs over
/// t in [ylo - x, yhi - x] split at t = 0, so a diagonal singularity sits where doubles are dense.
double adaptive_oracle_integral_relative(const std::function<double(double, double)>& g, double xlo, double xhi,
                                         double ylo, double yhi, double tol,
                                         const std::vector<double>& x_breakpoints = {},
                                         const std::vector<double>& y_breakpoints = {});

/// Integral over [xlo, xhi] x [ylo, yhi] of (u(x) - u(y)) (v(x) - v(y)) |x - y|^{-1-2s}.
/// Rows are integrated in t = y - x. In |t| < tau the integrand is replaced by its leading term
/// u'(x) v'(x) |t|^{1-2s}, integrated exactly, with tau = 1e-6 times the distance from x to the
/// nearest kink and derivatives from central differences. Below that scale doubles cannot resolve
/// the differences, yet for s near 1 the region still carries a visible share of the integral.
double adaptive_energy_integral(const std::function<double(double)>& u, const std::function<double(double)>& v,
                                double s, double xlo, double xhi, double ylo, double yhi, double tol,
                                const std::vector<double>& kinks = {});

} // namespace wfem

#endif // WFEM_ADAPTIVE_HPP
