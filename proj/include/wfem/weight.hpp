#ifndef WFEM_WEIGHT_HPP
#define WFEM_WEIGHT_HPP

#include "wfem/special_functions.hpp"

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace wfem
{

enum class WeightKind
{
    poly2,      ///< R^2 - |x - x0|^2
    poly4,      ///< R^4 - |x - x0|^4
    exact_dist, ///< R - |x - x0|, the distance to the complement of (x0 - R, x0 + R)
};

/// Regularized distance to the boundary of (x0 - R, x0 + R).
struct WeightFn
{
    WeightKind kind = WeightKind::poly4;
    double R = 1.0;
    double x0 = 0.0;
    double sigma = std::numeric_limits<double>::infinity();

    double a() const noexcept { return x0 - R; }
    double b() const noexcept { return x0 + R; }
};

/// Weight vanishing exactly on the boundary of (a, b).
WeightFn make_weight(WeightKind kind, double a, double b);

WeightKind parse_weight_kind(std::string_view name);
std::string_view to_string(WeightKind kind) noexcept;

double delta_eval(const WeightFn& w, double x) noexcept;
double delta_pow_s(const WeightFn& w, double s, double x) noexcept;

/// delta(x) / (x - a) and delta(x) / (b - x), evaluated without cancellation.
/// Smooth on the half of the interval adjacent to the respective endpoint.
double delta_over_left(const WeightFn& w, double x) noexcept;
double delta_over_right(const WeightFn& w, double x) noexcept;

/// delta(x) - delta(y) without cancellation for nearby x, y in [a, b].
double delta_difference(const WeightFn& w, double x, double y) noexcept;

/// delta(x)^s - delta(y)^s, relative-accurate when x and y are close. Requires delta(y) > 0
/// unless delta(x) = 0 too.
double delta_pow_difference(const WeightFn& w, double s, double x, double y) noexcept;

/// Closed-form derivative of delta of order 0, 1 or 2 inside the interval.
/// exact_dist uses the average of the one-sided values at x0.
double delta_derivative(const WeightFn& w, double x, int order);

/// Interior points where delta is not smooth.
std::vector<double> delta_breakpoints(const WeightFn& w);

struct WeightDiagnostic
{
    double comparability = 0.0;         ///< empirical c with d/c <= delta <= c d
    std::vector<double> derivative_sup; ///< sup |D^j delta| delta^{j - sigma}, j = 1, 2 (only j > sigma)
    double holder_seminorm = 0.0;       ///< Hoelder quotient of D^k delta, k = ceil(sigma) - 1
    bool comparability_ok = true;
    bool regularity_ok = true;
    bool derivative_ok = true;
    std::string message;

    bool passed() const noexcept { return comparability_ok && regularity_ok && derivative_ok; }
};

WeightDiagnostic check_weight_assumption(const WeightFn& w, double sigma, int n_samples);

/// C_{1,s} times the integral of |x - y|^{-1-2s} over y outside (a, b):
/// C_{1,s} / (2s) ((x - a)^{-2s} + (b - x)^{-2s}).
double killing_potential(double x, const FracParams& params, double a, double b);

} // namespace wfem

#endif // WFEM_WEIGHT_HPP
