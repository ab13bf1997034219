#include "wfem/adaptive.hpp"

#include "wfem/errors.hpp"
#include "wfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <string>

namespace wfem
{

namespace
{

struct Panel
{
    double lo;
    double hi;
    double value;
    double error;

    bool operator<(const Panel& other) const noexcept { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, const QuadRule& rule, double lo, double hi)
{
    const double mid = 0.5 * (lo + hi);
    const double whole = integrate(rule, lo, hi, f);
    const double halves = integrate(rule, lo, mid, f) + integrate(rule, mid, hi, f);
    return Panel{lo, hi, halves, std::abs(whole - halves)};
}

// Rows of a 2D integral passing within ~1e-8 of a corner stall at the rounding floor of the
// integrand (an endpoint distance carries only 8 digits there). Such rows cover a negligible
// part of the outer range, so their best estimate is kept when the bound is small relative to it.
double row_integral(const std::function<double(double)>& row, double lo, double hi, const AdaptiveOptions& opts,
                    const std::vector<double>& breakpoints)
{
    try {
        return adaptive_integrate(row, lo, hi, opts, breakpoints).value;
    } catch (const ConvergenceError& e) {
        if (std::isfinite(e.estimate()) && e.error_bound() <= 1e-6 * std::abs(e.estimate()))
            return e.estimate();
        throw;
    }
}

AdaptiveOptions row_options(double tol, double width)
{
    AdaptiveOptions inner;
    inner.abs_tol = 0.1 * tol / width;
    inner.rel_tol = 1e-10;
    inner.max_panels = 20'000;
    return inner;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::vector<double> partition(double lo, double hi, const std::vector<double>& breakpoints)
{
    std::vector<double> pts{lo, hi};
    for (double p : breakpoints)
        if (p > lo && p < hi)
            pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

AdaptiveResult adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                                  const AdaptiveOptions& opts, const std::vector<double>& breakpoints)
{
    if (!(lo < hi))
        return AdaptiveResult{};
    const QuadRule& rule = gauss_legendre(opts.order);

    std::priority_queue<Panel> queue;
    std::vector<Panel> frozen; // too narrow to bisect further
    const auto pts = partition(lo, hi, breakpoints);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k)
        queue.push(evaluate_panel(f, rule, pts[k], pts[k + 1]));

    long panels = static_cast<long>(queue.size());
    auto totals = [&]() {
        double value = 0.0;
        double error = 0.0;
        auto copy = queue;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        for (const auto& p : frozen) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    double value = 0.0;
    double error = 0.0;
    std::tie(value, error) = totals();
    long since_resum = 0;
    double frozen_error = 0.0;
    while (!queue.empty()) {
        // frozen panels are at the resolution limit; only the refinable part is held to the tolerance
        if (error - frozen_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)))
            break;
        if (panels >= opts.max_panels) {
            std::tie(value, error) = totals();
            if (error - frozen_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value)))
                break;
            throw ConvergenceError("adaptive_integrate: panel budget of " + std::to_string(opts.max_panels) +
                                        " exhausted (estimate " + sci(value) + ", error bound " + sci(error) + ")",
                                   value, error);
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            frozen.push_back(worst);
            frozen_error += worst.error;
            continue;
        }
        const Panel left = evaluate_panel(f, rule, worst.lo, mid);
        const Panel right = evaluate_panel(f, rule, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++panels;
        if (++since_resum == 4096) {
            std::tie(value, error) = totals();
            since_resum = 0;
        }
    }
    std::tie(value, error) = totals();
    if (!std::isfinite(value))
        throw ConvergenceError("adaptive_integrate: non-finite integral estimate", value, error);
    return AdaptiveResult{value, error, panels};
}

double adaptive_oracle_integral(const std::function<double(double)>& f, double lo, double hi, double tol,
                                const std::vector<double>& breakpoints)
{
    AdaptiveOptions opts;
    opts.abs_tol = tol;
    return adaptive_integrate(f, lo, hi, opts, breakpoints).value;
}

double adaptive_oracle_integral(const std::function<double(double, double)>& f, double xlo, double xhi, double ylo,
                                double yhi, double tol, const std::vector<double>& x_breakpoints,
                                const std::vector<double>& y_breakpoints, bool diagonal)
{
    const AdaptiveOptions inner = row_options(tol, xhi - xlo);
    auto outer_integrand = [&](double x) {
        std::vector<double> bps = y_breakpoints;
        if (diagonal)
            bps.push_back(x);
        return row_integral([&](double y) { return f(x, y); }, ylo, yhi, inner, bps);
    };
    AdaptiveOptions outer;
    outer.abs_tol = tol;
    std::vector<double> xbps = x_breakpoints;
    if (diagonal) {
        // the inner integral is only piecewise smooth in x where the diagonal crosses y-breakpoints
        xbps.insert(xbps.end(), y_breakpoints.begin(), y_breakpoints.end());
        xbps.push_back(ylo);
        xbps.push_back(yhi);
    }
    return adaptive_integrate(outer_integrand, xlo, xhi, outer, xbps).value;
}

double adaptive_oracle_integral_relative(const std::function<double(double, double)>& g, double xlo, double xhi,
                                         double ylo, double yhi, double tol,
                                         const std::vector<double>& x_breakpoints,
                                         const std::vector<double>& y_breakpoints)
{
    const AdaptiveOptions inner = row_options(tol, xhi - xlo);
    auto outer_integrand = [&](double x) {
        auto row = [&](double t) { return g(x, t); };
        std::vector<double> bps{0.0};
        for (double p : y_breakpoints)
            bps.push_back(p - x);
        return row_integral(row, ylo - x, yhi - x, inner, bps);
    };
    AdaptiveOptions outer;
    outer.abs_tol = tol;
    // the inner integral is only piecewise smooth where the diagonal crosses a y-breakpoint
    std::vector<double> xbps = x_breakpoints;
    xbps.insert(xbps.end(), y_breakpoints.begin(), y_breakpoints.end());
    xbps.push_back(ylo);
    xbps.push_back(yhi);
    return adaptive_integrate(outer_integrand, xlo, xhi, outer, xbps).value;
}

double adaptive_energy_integral(const std::function<double(double)>& u, const std::function<double(double)>& v,
                                double s, double xlo, double xhi, double ylo, double yhi, double tol,
                                const std::vector<double>& kinks)
{
    std::vector<double> marks = kinks;
    marks.insert(marks.end(), {xlo, xhi, ylo, yhi});
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    const double scale = std::max({std::abs(xlo), std::abs(xhi), std::abs(ylo), std::abs(yhi), xhi - xlo, yhi - ylo});
    const double expo = 2.0 - 2.0 * s;
    auto power_primitive = [&](double t) { return std::copysign(std::pow(std::abs(t), expo), t) / expo; };

    const AdaptiveOptions inner = row_options(tol, xhi - xlo);
    auto outer_integrand = [&](double x) {
        const double ux = u(x);
        const double vx = v(x);
        auto row = [&](double t) {
            const double y = x + t;
            const double d = std::abs(y - x);
            if (d == 0.0)
                return 0.0;
            return (ux - u(y)) * (vx - v(y)) * std::pow(d, -1.0 - 2.0 * s);
        };
        const double lo = ylo - x;
        const double hi = yhi - x;
        std::vector<double> bps;
        for (double p : kinks)
            bps.push_back(p - x);
        if (!(lo < 0.0 && hi > 0.0) && !(lo == 0.0 || hi == 0.0))
            return row_integral(row, lo, hi, inner, bps);

        double dist = std::numeric_limits<double>::infinity();
        for (double m : marks)
            if (m != x)
                dist = std::min(dist, std::abs(m - x));
        const double tau = std::max(1e-6 * std::min(dist, scale), 1e-13 * scale);
        double sum = 0.0;
        if (lo < -tau)
            sum += row_integral(row, lo, -tau, inner, bps);
        if (hi > tau)
            sum += row_integral(row, tau, hi, inner, bps);
        const double du = (u(x + tau) - u(x - tau)) / (2.0 * tau);
        const double dv = (v(x + tau) - v(x - tau)) / (2.0 * tau);
        const double near_lo = std::max(lo, -tau);
        const double near_hi = std::min(hi, tau);
        if (near_hi > near_lo)
            sum += du * dv * (power_primitive(near_hi) - power_primitive(near_lo));
        return sum;
    };
    AdaptiveOptions outer;
    outer.abs_tol = tol;
    return adaptive_integrate(outer_integrand, xlo, xhi, outer, marks).value;
}

} // namespace wfem
