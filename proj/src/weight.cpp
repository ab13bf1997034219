#include "wfem/weight.hpp"

#include "wfem/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wfem
{

WeightFn make_weight(WeightKind kind, double a, double b)
{
    if (!(a < b))
        throw ArgumentError("make_weight: need a < b");
    WeightFn w;
    w.kind = kind;
    w.R = 0.5 * (b - a);
    w.x0 = 0.5 * (a + b);
    w.sigma = kind == WeightKind::exact_dist ? 1.0 : std::numeric_limits<double>::infinity();
    return w;
}

WeightKind parse_weight_kind(std::string_view name)
{
    if (name == "poly2")
        return WeightKind::poly2;
    if (name == "poly4")
        return WeightKind::poly4;
    if (name == "dist" || name == "exact_dist")
        return WeightKind::exact_dist;
    throw ArgumentError("unknown weight kind '" + std::string(name) + "' (expected poly2, poly4 or dist)");
}

std::string_view to_string(WeightKind kind) noexcept
{
    switch (kind) {
    case WeightKind::poly2:
        return "poly2";
    case WeightKind::poly4:
        return "poly4";
    case WeightKind::exact_dist:
        return "dist";
    }
    return "?";
}

double delta_eval(const WeightFn& w, double x) noexcept
{
    const double z = std::abs(x - w.x0);
    if (z >= w.R)
        return 0.0;
    switch (w.kind) {
    case WeightKind::poly2:
        return (w.R - z) * (w.R + z);
    case WeightKind::poly4:
        return (w.R - z) * (w.R + z) * (w.R * w.R + z * z);
    case WeightKind::exact_dist:
        return w.R - z;
    }
    return 0.0;
}

double delta_pow_s(const WeightFn& w, double s, double x) noexcept
{
    const double d = delta_eval(w, x);
    return d > 0.0 ? std::pow(d, s) : 0.0;
}

double delta_over_left(const WeightFn& w, double x) noexcept
{
    // x - a = R + z with z = x - x0
    const double z = x - w.x0;
    switch (w.kind) {
    case WeightKind::poly2:
        return w.R - z;
    case WeightKind::poly4:
        return (w.R - z) * (w.R * w.R + z * z);
    case WeightKind::exact_dist:
        return z <= 0.0 ? 1.0 : (w.R - z) / (w.R + z);
    }
    return 0.0;
}

double delta_over_right(const WeightFn& w, double x) noexcept
{
    // b - x = R - z
    const double z = x - w.x0;
    switch (w.kind) {
    case WeightKind::poly2:
        return w.R + z;
    case WeightKind::poly4:
        return (w.R + z) * (w.R * w.R + z * z);
    case WeightKind::exact_dist:
        return z >= 0.0 ? 1.0 : (w.R + z) / (w.R - z);
    }
    return 0.0;
}

double delta_difference(const WeightFn& w, double x, double y) noexcept
{
    const double zx = x - w.x0;
    const double zy = y - w.x0;
    switch (w.kind) {
    case WeightKind::poly2:
        return (y - x) * (zy + zx);
    case WeightKind::poly4:
        return (y - x) * (zy + zx) * (zx * zx + zy * zy);
    case WeightKind::exact_dist:
        return std::abs(zy) - std::abs(zx);
    }
    return 0.0;
}

double delta_pow_difference(const WeightFn& w, double s, double x, double y) noexcept
{
    const double dy = delta_eval(w, y);
    if (dy <= 0.0)
        return delta_pow_s(w, s, x);
    const double q = delta_difference(w, x, y) / dy;
    return std::pow(dy, s) * std::expm1(s * std::log1p(q));
}

double delta_derivative(const WeightFn& w, double x, int order)
{
    if (order == 0)
        return delta_eval(w, x);
    if (order < 0 || order > 2)
        throw ArgumentError("delta_derivative: order must be 0, 1 or 2");
    const double z = x - w.x0;
    switch (w.kind) {
    case WeightKind::poly2:
        return order == 1 ? -2.0 * z : -2.0;
    case WeightKind::poly4:
        return order == 1 ? -4.0 * z * z * z : -12.0 * z * z;
    case WeightKind::exact_dist:
        if (order == 2)
            return 0.0;
        return z < 0.0 ? 1.0 : (z > 0.0 ? -1.0 : 0.0);
    }
    return 0.0;
}

std::vector<double> delta_breakpoints(const WeightFn& w)
{
    if (w.kind == WeightKind::exact_dist)
        return {w.x0};
    return {};
}

namespace
{

// Uniform interior points plus geometric clustering toward both endpoints.
std::vector<double> boundary_refined_grid(const WeightFn& w, int n)
{
    std::vector<double> xs;
    const double a = w.a();
    const double len = 2.0 * w.R;
    for (int k = 1; k < n; ++k)
        xs.push_back(a + len * k / n);
    const int n_geo = std::max(4, n / 2);
    for (int j = 1; j <= n_geo; ++j) {
        const double t = len * std::pow(0.5, 1.0 + 30.0 * j / n_geo);
        xs.push_back(a + t);
        xs.push_back(w.b() - t);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

struct GridSups
{
    double comparability = 0.0;
    double holder = 0.0;
    std::vector<double> growth;
};

GridSups grid_sups(const WeightFn& w, double sigma, int n)
{
    GridSups out;
    const auto xs = boundary_refined_grid(w, n);
    const double a = w.a();
    const double b = w.b();

    for (double x : xs) {
        const double dist = std::min(x - a, b - x);
        const double d = delta_eval(w, x);
        if (dist <= 0.0 || d <= 0.0)
            continue;
        out.comparability = std::max({out.comparability, d / dist, dist / d});
    }

    const int holder_order = std::isfinite(sigma) ? static_cast<int>(std::ceil(sigma)) - 1 : 1;
    const double holder_exp = std::isfinite(sigma) ? sigma - holder_order : 1.0;
    if (holder_order >= 0 && holder_order <= 2) {
        for (std::size_t k = 1; k < xs.size(); ++k) {
            const double dx = xs[k] - xs[k - 1];
            if (dx <= 0.0)
                continue;
            const double diff = std::abs(delta_derivative(w, xs[k], holder_order) -
                                         delta_derivative(w, xs[k - 1], holder_order));
            out.holder = std::max(out.holder, diff / std::pow(dx, holder_exp));
        }
    }

    for (int j = 1; j <= 2; ++j) {
        if (!(j > sigma))
            continue;
        double sup = 0.0;
        for (double x : xs) {
            const double d = delta_eval(w, x);
            if (d <= 0.0)
                continue;
            sup = std::max(sup, std::abs(delta_derivative(w, x, j)) * std::pow(d, j - sigma));
        }
        out.growth.push_back(sup);
    }
    return out;
}

// Monotone blow-up heuristic over three nested refinements.
bool blows_up(double coarse, double mid, double fine)
{
    constexpr double factor = 1.25;
    return mid > factor * coarse && fine > factor * mid;
}

} // namespace

WeightDiagnostic check_weight_assumption(const WeightFn& w, double sigma, int n_samples)
{
    if (n_samples < 10)
        throw ArgumentError("check_weight_assumption: need at least 10 samples");

    const GridSups g1 = grid_sups(w, sigma, n_samples);
    const GridSups g2 = grid_sups(w, sigma, 2 * n_samples);
    const GridSups g4 = grid_sups(w, sigma, 4 * n_samples);

    WeightDiagnostic diag;
    diag.comparability = g4.comparability;
    diag.holder_seminorm = g4.holder;
    diag.derivative_sup = g4.growth;

    diag.comparability_ok = std::isfinite(g4.comparability) &&
                            !blows_up(g1.comparability, g2.comparability, g4.comparability);
    diag.regularity_ok = std::isfinite(g4.holder) && !blows_up(g1.holder, g2.holder, g4.holder);
    for (std::size_t j = 0; j < g4.growth.size(); ++j) {
        if (!std::isfinite(g4.growth[j]) || blows_up(g1.growth[j], g2.growth[j], g4.growth[j]))
            diag.derivative_ok = false;
    }

    if (!diag.comparability_ok)
        diag.message += "delta is not comparable to the boundary distance; ";
    if (!diag.regularity_ok)
        diag.message += "Hoelder quotient of order sigma grows under refinement; ";
    if (!diag.derivative_ok)
        diag.message += "derivative growth bound |D^j delta| <= c_j delta^(sigma - j) violated; ";
    if (diag.passed())
        diag.message = "ok";
    return diag;
}

double killing_potential(double x, const FracParams& params, double a, double b)
{
    if (!(x > a && x < b))
        throw DomainError("killing_potential: x must lie strictly inside (a, b)");
    const double s = params.s;
    return params.c_norm / (2.0 * s) * (std::pow(x - a, -2.0 * s) + std::pow(b - x, -2.0 * s));
}

} // namespace wfem
