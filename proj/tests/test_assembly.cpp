#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wfem/adaptive.hpp"
#include "wfem/assembly.hpp"
#include "wfem/error_norms.hpp"
#include "wfem/errors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace wfem;

namespace
{

// Gaussian elimination with partial pivoting, independent of the Cholesky path.
Eigen::VectorXd pivoted_elimination(Eigen::MatrixXd A, Eigen::VectorXd b)
{
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int r = k + 1; r < n; ++r)
            if (std::abs(A(r, k)) > std::abs(A(p, k)))
                p = r;
        A.row(k).swap(A.row(p));
        std::swap(b[k], b[p]);
        for (int r = k + 1; r < n; ++r) {
            const double m = A(r, k) / A(k, k);
            for (int c = k; c < n; ++c)
                A(r, c) -= m * A(k, c);
            b[r] -= m * b[k];
        }
    }
    Eigen::VectorXd x(n);
    for (int k = n - 1; k >= 0; --k) {
        double acc = b[k];
        for (int c = k + 1; c < n; ++c)
            acc -= A(k, c) * x[c];
        x[k] = acc / A(k, k);
    }
    return x;
}

double max_abs(const Eigen::VectorXd& v)
{
    return v.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("stiffness matrix is symmetric and positive definite")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly4, 0.5);
    const StiffnessMatrix A = assemble_stiffness(sp);
    REQUIRE(A.n() == 17);
    CHECK(A.symmetry_defect <= 1e-12);
    CHECK((A.entries - A.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(A.entries.llt().info() == Eigen::Success);
    CHECK(A.stats.max_discrepancy <= 1e-7);
    CHECK(A.stats.oracle_fallbacks == 0);
    for (int i = 0; i < A.n(); ++i)
        CHECK(A.entries(i, i) > 0.0);
}

TEST_CASE("assembled entries match the brute-force bilinear form")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 4, WeightKind::poly2, 0.5);
    const StiffnessMatrix A = assemble_stiffness(sp);
    for (int i = 0; i < 5; ++i) {
        for (int j = i; j < 5; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            const double want = bilinear_form_direct(sp, i, j, 1e-9);
            CHECK(std::abs(A.entries(i, j) - want) <= 1e-6 * std::abs(want));
        }
    }
}

TEST_CASE("single entries agree with the assembled matrix")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 8, WeightKind::poly4, 0.3);
    const StiffnessMatrix A = assemble_stiffness(sp);
    for (auto [i, j] : {std::pair{0, 0}, {0, 1}, {3, 4}, {2, 7}, {8, 8}})
        CHECK(stiffness_entry(sp, i, j) == A.entries(i, j));
    CHECK_THROWS_AS(stiffness_entry(sp, 0, 9), ArgumentError);
}

TEST_CASE("assembly is bit-reproducible across thread counts")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly4, 0.2);
    QuadSettings one;
    one.threads = 1;
    QuadSettings many;
    many.threads = 4;
    const StiffnessMatrix A1 = assemble_stiffness(sp, one);
    const StiffnessMatrix A4 = assemble_stiffness(sp, many);
    CHECK((A1.entries - A4.entries).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the exact solution lies in the discrete space")
{
    for (double s : {0.1, 0.25, 0.5, 0.75}) {
        CAPTURE(s);
        const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly2, s);
        const StiffnessMatrix A = assemble_stiffness(sp);
        const LoadVector b = assemble_load(sp, [](double) { return 1.0; });
        const double cs = ball_solution_constant(1, s);
        const Eigen::VectorXd r = A.entries * Eigen::VectorXd::Constant(17, cs) - b.values;
        CHECK(max_abs(r) <= 1e-8 * max_abs(b.values));

        const DiscreteSolution sol = solve_system(sp, A, b);
        for (int i = 0; i < 17; ++i)
            CHECK(std::abs(sol.coeffs[i] - cs) <= 1e-6 * cs);
        CHECK(galerkin_residual(A, b, sol) <= 1e-12);
    }
}

TEST_CASE("constant quotient: the full matrix sum is the energy of delta^s")
{
    const double s = 0.5;
    const WfemSpace sp = make_space(-1.0, 1.0, 8, WeightKind::poly2, s);
    const StiffnessMatrix A = assemble_stiffness(sp);
    const double quad = A.entries.sum();
    const double direct = hs_seminorm_direct([&](double x) { return delta_pow_s(sp.weight, s, x); }, -1.0, 1.0, s,
                                             1e-10, {0.0});
    CHECK(std::abs(quad - direct * direct) <= 1e-6 * quad);
}

TEST_CASE("load vectors")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 4, WeightKind::poly2, 0.5);
    const LoadVector zero = assemble_load(sp, [](double) { return 0.0; });
    CHECK(zero.n() == 5);
    CHECK(max_abs(zero.values) == 0.0);

    const LoadVector ones = assemble_load(sp, [](double) { return 1.0; });
    for (int i = 0; i < 5; ++i) {
        const double want = adaptive_oracle_integral([&](double x) { return weighted_basis_eval(sp, i, x); }, -1.0,
                                                     1.0, 1e-13, sp.mesh.nodes);
        CHECK(std::abs(ones.values[i] - want) <= 1e-10 * want);
    }

    // never samples the endpoints, where this f is infinite
    const LoadVector sing =
        assemble_load(sp, [](double x) { return std::pow((1.0 - x) * (1.0 + x), -0.25); });
    CHECK(sing.values.allFinite());

    const double eps = 1e-10;
    const WfemSpace shrunk = make_space(-1.0 + eps, 1.0 - eps, 32, WeightKind::poly4, 0.6);
    const FracParams p = make_frac_params(0.6);
    const LoadVector bonito = assemble_load(shrunk, [&](double x) { return bonito_rhs(x, p); });
    CHECK(bonito.values.allFinite());

    CHECK_THROWS_AS(assemble_load(sp, [](double x) { return x > 0.3 ? NAN : 1.0; }), InputError);
}

TEST_CASE("solver")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 4, WeightKind::poly2, 0.5);
    StiffnessMatrix D;
    D.entries = Eigen::Vector<double, 5>(1.0, 2.0, 4.0, 0.5, 8.0).asDiagonal();
    LoadVector b;
    b.values = Eigen::Vector<double, 5>(3.0, -1.0, 2.0, 7.0, 0.25);
    const DiscreteSolution x = solve_system(sp, D, b);
    for (int i = 0; i < 5; ++i)
        CHECK(x.coeffs[i] == doctest::Approx(b.values[i] / D.entries(i, i)).epsilon(1e-15));

    StiffnessMatrix bad;
    bad.entries = Eigen::MatrixXd::Identity(5, 5);
    bad.entries(2, 2) = -1.0;
    CHECK_THROWS_AS(solve_system(sp, bad, b), FactorizationError);
    LoadVector short_b;
    short_b.values = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(solve_system(sp, D, short_b), ArgumentError);
}

TEST_CASE("solver against pivoted elimination on random SPD systems")
{
    std::mt19937 rng(2024);
    std::normal_distribution<double> g;
    const WfemSpace sp = make_space(-1.0, 1.0, 7, WeightKind::poly2, 0.5);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd M(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                M(i, j) = g(rng);
        StiffnessMatrix A;
        A.entries = M * M.transpose() + 0.5 * Eigen::MatrixXd::Identity(8, 8);
        LoadVector b;
        b.values = Eigen::VectorXd(8);
        for (int i = 0; i < 8; ++i)
            b.values[i] = g(rng);
        const DiscreteSolution x = solve_system(sp, A, b);
        const Eigen::VectorXd ref = pivoted_elimination(A.entries, b.values);
        CHECK(max_abs(x.coeffs - ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
    }
}

TEST_CASE("Galerkin residual")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly4, 0.4);
    const StiffnessMatrix A = assemble_stiffness(sp);
    const LoadVector b = assemble_load(sp, [](double) { return 1.0; });
    DiscreteSolution sol = solve_system(sp, A, b);
    CHECK(galerkin_residual(A, b, sol) <= 1e-12);

    // quadratic-form identity a(u_h, u_h) = int f u_h
    const double energy = sol.coeffs.dot(A.entries * sol.coeffs);
    CHECK(std::abs(energy - b.values.dot(sol.coeffs)) <= 1e-10 * energy);

    DiscreteSolution bumped = sol;
    bumped.coeffs[5] += 1e-3;
    CHECK(galerkin_residual(A, b, bumped) > 1e-6);

    LoadVector zero;
    zero.values = Eigen::VectorXd::Zero(17);
    DiscreteSolution zsol{sp, Eigen::VectorXd::Zero(17)};
    CHECK(galerkin_residual(A, zero, zsol) == 0.0);
    zsol.coeffs[0] = 1.0;
    CHECK(galerkin_residual(A, zero, zsol) == doctest::Approx(A.entries.col(0).cwiseAbs().maxCoeff()));
}

TEST_CASE("linearity: doubling the load doubles the coefficients")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 16, WeightKind::poly4, 0.4);
    const StiffnessMatrix A = assemble_stiffness(sp);
    const LoadVector b = assemble_load(sp, [](double x) { return std::cos(x); });
    const LoadVector b2 = assemble_load(sp, [](double x) { return 2.0 * std::cos(x); });
    CHECK(b2.values == 2.0 * b.values);
    const DiscreteSolution u = solve_system(sp, A, b);
    const DiscreteSolution u2 = solve_system(sp, A, b2);
    CHECK(u2.coeffs == 2.0 * u.coeffs);
}

TEST_CASE("entries decay away from the diagonal")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 32, WeightKind::poly4, 0.3);
    const StiffnessMatrix A = assemble_stiffness(sp);
    for (int i = 4; i <= 28; i += 6) {
        for (int j = i + 2; j + 1 < 32; ++j)
            CHECK(std::abs(A.entries(i, j + 1)) <= 2.0 * std::abs(A.entries(i, j)));
        CHECK(std::abs(A.entries(i, i + 1)) < A.entries(i, i));
    }
}

TEST_CASE("stiffness input checks")
{
    const WfemSpace low = make_space(-1.0, 1.0, 4, WeightKind::poly4, 0.04);
    CHECK_THROWS_AS(assemble_stiffness(low), ArgumentError);
    const WfemSpace high = make_space(-1.0, 1.0, 4, WeightKind::poly4, 0.96);
    CHECK_THROWS_AS(assemble_stiffness(high), ArgumentError);
}

TEST_CASE("matrix dump")
{
    const WfemSpace sp = make_space(-1.0, 1.0, 4, WeightKind::poly4, 0.5);
    const StiffnessMatrix A = assemble_stiffness(sp);
    const auto path = std::filesystem::temp_directory_path() / "wfem_dump_test.txt";
    dump_matrix(A, path);
    std::ifstream in(path);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        int cols = 0;
        while (ls >> tok) {
            CHECK(std::stod(tok) == A.entries(rows, cols));
            CHECK(tok.find('e') != std::string::npos);
            ++cols;
        }
        CHECK(cols == 5);
        ++rows;
    }
    CHECK(rows == 5);
    std::filesystem::remove(path);
    CHECK_THROWS(dump_matrix(A, "/nonexistent-dir/x/y.txt"));
}
