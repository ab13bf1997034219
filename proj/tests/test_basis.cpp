#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wfem/basis.hpp"
#include "wfem/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

using namespace wfem;

namespace
{

double sup_over(double lo, double hi, int n, const std::function<double(double)>& f)
{
    double m = 0.0;
    for (int k = 0; k <= n; ++k)
        m = std::max(m, std::abs(f(lo + (hi - lo) * k / n)));
    return m;
}

} // namespace

TEST_CASE("hat functions")
{
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 8);
    for (int i = 0; i < m.n_nodes(); ++i) {
        for (int j = 0; j < m.n_nodes(); ++j)
            CHECK(hat_eval(m, i, m.nodes[static_cast<std::size_t>(j)]) == (i == j ? 1.0 : 0.0));
        if (i > 0)
            CHECK(hat_eval(m, i, 0.5 * (m.nodes[i - 1] + m.nodes[i])) == doctest::Approx(0.5).epsilon(1e-15));
        if (i < m.n_elems)
            CHECK(hat_eval(m, i, 0.5 * (m.nodes[i] + m.nodes[i + 1])) == doctest::Approx(0.5).epsilon(1e-15));
    }
    CHECK(hat_eval(m, 0, -1.1) == 0.0);
    CHECK(hat_eval(m, 8, 1.1) == 0.0);
    CHECK(hat_eval(m, 4, 0.5) == 0.0);
}

TEST_CASE("weighted basis values")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 8, WeightKind::poly4, 0.4);
    CHECK(sp.n_dofs() == 9);
    CHECK(weighted_basis_eval(sp, 0, -1.0) == 0.0);
    CHECK(weighted_basis_eval(sp, 8, 1.0) == 0.0);
    CHECK(weighted_basis_eval(sp, 0, -1.5) == 0.0);
    for (int i = 1; i < 8; ++i) {
        const double x = sp.mesh.nodes[static_cast<std::size_t>(i)];
        CHECK(weighted_basis_eval(sp, i, x) == doctest::Approx(delta_pow_s(sp.weight, 0.4, x)).epsilon(1e-15));
    }
}

TEST_CASE("first basis function behaves like the distance to the power s")
{
    for (double s : {0.1, 0.4, 0.6}) {
        const WfemSpace sp = make_space(-1.0, 1.0, 8, WeightKind::poly4, s);
        const double d1 = 1e-8;
        const double d2 = 1e-10;
        const double slope = std::log(weighted_basis_eval(sp, 0, -1.0 + d1) / weighted_basis_eval(sp, 0, -1.0 + d2)) /
                             std::log(d1 / d2);
        CHECK(slope == doctest::Approx(s).epsilon(1e-6));
    }
}

TEST_CASE("partition of unity")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly4, 0.3);
    for (int k = 0; k <= 1000; ++k) {
        const double x = -1.0 + 2.0 * k / 1000.0;
        double sum = 0.0;
        for (int i = 0; i < sp.n_dofs(); ++i)
            sum += weighted_basis_eval(sp, i, x);
        CHECK(std::abs(sum - delta_pow_s(sp.weight, 0.3, x)) <= 1e-14);
    }
}

TEST_CASE("space validation")
{
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 4);
    CHECK_THROWS_AS(make_space(m, make_weight(WeightKind::poly2, -1.0, 2.0), 0.5), ArgumentError);
    CHECK_THROWS_AS(make_space(m, make_weight(WeightKind::poly2, -1.0, 1.0), 0.0), ArgumentError);
    CHECK_THROWS_AS(make_space(m, make_weight(WeightKind::poly2, -1.0, 1.0), 1.0), ArgumentError);
}

TEST_CASE("nodal interpolation")
{
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 4);
    const Eigen::VectorXd lin = interp_pl([](double x) { return 3.0 * x - 0.25; }, m);
    CHECK(sup_over(-1.0, 1.0, 997, [&](double x) { return eval_piecewise_linear(m, lin, x) - (3.0 * x - 0.25); }) <=
          1e-14);

    const Eigen::VectorXd sq = interp_pl([](double x) { return x * x; }, m);
    const double err = sup_over(-1.0, 1.0, 4000, [&](double x) { return eval_piecewise_linear(m, sq, x) - x * x; });
    // (x - x_k)(x_{k+1} - x) peaks at h^2 / 4 in the element midpoint
    CHECK(err == doctest::Approx(0.0625).epsilon(1e-12));

    CHECK_THROWS_AS(interp_pl([](double x) { return 1.0 / x; }, m), InputError);
    CHECK_THROWS_AS(interp_pl([](double) { return std::numeric_limits<double>::quiet_NaN(); }, m), InputError);
}

TEST_CASE("nodal interpolation error of the ball solution sits in the boundary elements")
{
    const double s = 0.4;
    const FracParams p = make_frac_params(s);
    const Mesh1D m = build_uniform_mesh(-1.0, 1.0, 16);
    auto u = [&](double x) { return ball_solution(x, p, 1.0, 0.0); };
    const Eigen::VectorXd ih = interp_pl(u, m);
    double worst = 0.0;
    double where = 0.0;
    for (int k = 0; k <= 4000; ++k) {
        const double x = -1.0 + 2.0 * k / 4000.0;
        const double e = std::abs(eval_piecewise_linear(m, ih, x) - u(x));
        if (e > worst) {
            worst = e;
            where = x;
        }
    }
    CHECK(1.0 - std::abs(where) <= m.h);
}

TEST_CASE("weighted interpolation")
{
    const double s = 0.4;
    const WfemSpace p2 = make_space(-1.0, 1.0, 8, WeightKind::poly2, s);
    const DiscreteSolution zero = interp_weighted([](double) { return 0.0; }, p2);
    CHECK(sup_over(-1.0, 1.0, 500, [&](double x) { return eval_solution(zero, x); }) == 0.0);

    const DiscreteSolution constant = interp_weighted([](double) { return 2.5; }, p2);
    for (int i = 0; i < p2.n_dofs(); ++i)
        CHECK(constant.coeffs[i] == 2.5);
    CHECK(sup_over(-1.0, 1.0, 999,
                   [&](double x) { return eval_solution(constant, x) - 2.5 * delta_pow_s(p2.weight, s, x); }) <=
          1e-15);

    // poly2 weight on the unit ball: the quotient of the ball solution is constant
    const double cs = ball_solution_constant(1, s);
    const DiscreteSolution ju = interp_weighted([&](double) { return cs; }, p2);
    CHECK(sup_over(-1.0, 1.0, 999,
                   [&](double x) { return eval_solution(ju, x) - ball_solution(x, p2.params, 1.0, 0.0); }) <= 1e-15);

    // the induced function is delta^s times the nodal interpolant of the quotient
    const WfemSpace p4 = make_space(-1.0, 1.0, 8, WeightKind::poly4, s);
    auto q = [](double x) { return std::cos(x) + x; };
    const DiscreteSolution jq = interp_weighted(q, p4);
    const Eigen::VectorXd iq = interp_pl(q, p4.mesh);
    for (int k = 0; k <= 333; ++k) {
        const double x = -1.0 + 2.0 * k / 333.0;
        CHECK(std::abs(eval_solution(jq, x) - delta_pow_s(p4.weight, s, x) * eval_piecewise_linear(p4.mesh, iq, x)) <=
              1e-15);
    }
    for (int i = 0; i < p4.n_dofs(); ++i) {
        const double x = p4.mesh.nodes[static_cast<std::size_t>(i)];
        CHECK(eval_solution(jq, x) == delta_pow_s(p4.weight, s, x) * q(x));
    }
    CHECK_THROWS_AS(interp_weighted([](double x) { return std::log(x + 1.0); }, p4), InputError);
}

TEST_CASE("weighted interpolation from values extrapolates the boundary quotient")
{
    const double s = 0.4;
    const WfemSpace p4 = make_space(-1.0, 1.0, 16, WeightKind::poly4, s);
    const FracParams& p = p4.params;
    auto u = [&](double x) { return ball_solution(x, p, 1.0, 0.0); };
    auto quotient = [&](double x) {
        const double z = 1.0 + x * x;
        return ball_solution_constant(1, s) * std::pow(z, -s);
    };
    const DiscreteSolution exact = interp_weighted(quotient, p4);
    const DiscreteSolution approx = interp_weighted_from_values(u, p4);
    for (int i = 1; i + 1 < p4.n_dofs(); ++i)
        CHECK(approx.coeffs[i] == doctest::Approx(exact.coeffs[i]).epsilon(1e-13));
    CHECK(approx.coeffs[0] == doctest::Approx(exact.coeffs[0]).epsilon(1e-3));
    CHECK(approx.coeffs[16] == doctest::Approx(exact.coeffs[16]).epsilon(1e-3));
}

TEST_CASE("evaluation of unit coefficient vectors")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 4, WeightKind::poly4, 0.25);
    for (int i = 0; i < sp.n_dofs(); ++i) {
        DiscreteSolution e{sp, Eigen::VectorXd::Unit(sp.n_dofs(), i)};
        const double x = sp.mesh.nodes[static_cast<std::size_t>(i)];
        CHECK(eval_solution(e, x) == delta_pow_s(sp.weight, 0.25, x));
        CHECK(eval_solution(e, x + 0.1) == doctest::Approx(weighted_basis_eval(sp, i, x + 0.1)).epsilon(1e-15));
        CHECK(eval_solution(e, 3.0) == 0.0);
    }
}
