#include "wfem/assembly.hpp"

#include "pair_integrals.hpp"
#include "pieces.hpp"

#include "wfem/adaptive.hpp"
#include "wfem/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <thread>

namespace wfem
{

using detail::Piece;

namespace
{

// Elements carrying hat i.
std::vector<int> support_elements(const Mesh1D& mesh, int i)
{
    std::vector<int> out;
    if (i - 1 >= 0)
        out.push_back(i - 1);
    if (i < mesh.n_elems)
        out.push_back(i);
    return out;
}

// Integral over S = [node elo, node ehi+1] of phi_i phi_j times the exterior potential of S.
// Both hats vanish at interior hull ends, so (x - p)^{-2s} meets a double zero there;
// at a or b the s-powers of the weight cancel it instead.
double hull_potential_fixed(const WfemSpace& sp, int i, int j, int elo, int ehi, int n)
{
    const double s = sp.s();
    const double p = sp.mesh.left(elo);
    const double q = sp.mesh.right(ehi);
    double sum = 0.0;
    for (int e = elo; e <= ehi; ++e) {
        if (!detail::dof_on_element(i, e) || !detail::dof_on_element(j, e))
            continue;
        for (const Piece& P : detail::element_pieces(sp, e)) {
            auto ai = [&](double x) { return detail::phi_reduced(sp, i, P, x); };
            auto aj = [&](double x) { return detail::phi_reduced(sp, j, P, x); };
            const double edge_b = P.at_b ? 2.0 * s : 0.0;
            const double edge_a = P.at_a ? 2.0 * s : 0.0;

            // (x - p)^{-2s}
            if (P.l == p) {
                if (P.at_a) {
                    sum += integrate(gauss_jacobi(n, edge_b, 0.0), P.l, P.r,
                                     [&](double x) { return ai(x) * aj(x); });
                } else {
                    sum += integrate(gauss_jacobi(n, edge_b, 2.0 - 2.0 * s), P.l, P.r, [&](double x) {
                        const double t = x - p;
                        return ai(x) / t * (aj(x) / t);
                    });
                }
            } else {
                sum += integrate(gauss_jacobi(n, edge_b, edge_a), P.l, P.r,
                                 [&](double x) { return ai(x) * aj(x) * std::pow(x - p, -2.0 * s); });
            }

            // (q - x)^{-2s}
            if (P.r == q) {
                if (P.at_b) {
                    sum += integrate(gauss_jacobi(n, 0.0, edge_a), P.l, P.r,
                                     [&](double x) { return ai(x) * aj(x); });
                } else {
                    sum += integrate(gauss_jacobi(n, 2.0 - 2.0 * s, edge_a), P.l, P.r, [&](double x) {
                        const double t = q - x;
                        return ai(x) / t * (aj(x) / t);
                    });
                }
            } else {
                sum += integrate(gauss_jacobi(n, edge_b, edge_a), P.l, P.r,
                                 [&](double x) { return ai(x) * aj(x) * std::pow(q - x, -2.0 * s); });
            }
        }
    }
    return sp.params.c_norm / (2.0 * s) * sum;
}

double hull_potential_oracle(const WfemSpace& sp, int i, int j, int elo, int ehi, double tol)
{
    const double p = sp.mesh.left(elo);
    const double q = sp.mesh.right(ehi);
    auto f = [&](double x) {
        return weighted_basis_eval(sp, i, x) * weighted_basis_eval(sp, j, x) *
               killing_potential(x, sp.params, p, q);
    };
    std::vector<double> bps(sp.mesh.nodes.begin(), sp.mesh.nodes.end());
    for (double b : delta_breakpoints(sp.weight))
        bps.push_back(b);
    return adaptive_oracle_integral(f, p, q, tol, bps);
}

} // namespace

double stiffness_entry(const WfemSpace& space, int i, int j, const QuadSettings& settings, PairStats* stats)
{
    if (i < 0 || j < 0 || i >= space.n_dofs() || j >= space.n_dofs())
        throw ArgumentError("stiffness_entry: dof index out of range");
    if (i > j)
        std::swap(i, j);
    const double C = space.params.c_norm;
    const int n = settings.order;
    const double tol = settings.escalation_tol;

    if (j - i >= 2) {
        double sum = 0.0;
        for (int k : support_elements(space.mesh, i))
            for (int l : support_elements(space.mesh, j))
                sum += escalated_pair_integral(space, i, j, k, l, n, tol, stats);
        return C * sum;
    }

    const int elo = std::max(0, i - 1);
    const int ehi = std::min(space.mesh.n_elems - 1, j);
    double sum = 0.0;
    for (int k = elo; k <= ehi; ++k)
        for (int l = k; l <= ehi; ++l)
            sum += (k == l ? 1.0 : 2.0) * escalated_pair_integral(space, i, j, k, l, n, tol, stats);

    const double potential = escalate(
        [&](int order) { return hull_potential_fixed(space, i, j, elo, ehi, order); },
        [&](double estimate) {
            return hull_potential_oracle(space, i, j, elo, ehi, std::max(1e-14, 1e-3 * tol * std::abs(estimate)));
        },
        n, tol, stats, [&] { return "exterior potential (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")"; });

    return 0.5 * C * sum + potential;
}

StiffnessMatrix assemble_stiffness(const WfemSpace& space, const QuadSettings& settings)
{
    const double s = space.s();
    if (!(s >= 0.05 && s <= 0.95))
        throw ArgumentError("assemble_stiffness: s must lie in [0.05, 0.95]");
    const auto start = std::chrono::steady_clock::now();
    const int N = space.n_dofs();

    std::vector<std::pair<int, int>> work;
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j)
            work.emplace_back(i, j);

    StiffnessMatrix A;
    A.entries = Eigen::MatrixXd::Zero(N, N);

    unsigned n_threads = settings.threads ? settings.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(work.size()));
    std::vector<PairStats> thread_stats(n_threads);
    std::vector<std::exception_ptr> errors(n_threads);
    std::atomic<std::size_t> next{0};

    auto worker = [&](unsigned t) {
        try {
            for (std::size_t k = next++; k < work.size(); k = next++) {
                const auto [i, j] = work[k];
                A.entries(i, j) = stiffness_entry(space, i, j, settings, &thread_stats[t]);
            }
        } catch (...) {
            errors[t] = std::current_exception();
            next = work.size();
        }
    };
    if (n_threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker, t);
        for (auto& th : pool)
            th.join();
    }
    for (auto& err : errors)
        if (err)
            std::rethrow_exception(err);
    for (const auto& st : thread_stats)
        A.stats.merge(st);

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < i; ++j)
            A.entries(i, j) = A.entries(j, i);

    const double scale = A.entries.cwiseAbs().maxCoeff();
    A.symmetry_defect = scale > 0.0 ? (A.entries - A.entries.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
    if (!A.entries.allFinite())
        throw AssemblyError("assemble_stiffness: non-finite entries");
    A.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return A;
}

LoadVector assemble_load(const WfemSpace& space, const RealFunction& f, const QuadSettings& settings)
{
    const double s = space.s();
    const auto& mesh = space.mesh;
    LoadVector b;
    b.values = Eigen::VectorXd::Zero(space.n_dofs());

    auto sample = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v))
            throw InputError("assemble_load: non-finite right-hand side at x = " + std::to_string(x));
        return v;
    };

    for (int e = 0; e < mesh.n_elems; ++e) {
        for (const Piece& P : detail::element_pieces(space, e)) {
            for (int i : {e, e + 1}) {
                auto full = [&](double x) { return sample(x) * detail::phi_local(space, i, e, x); };
                auto reduced = [&](double x) { return sample(x) * detail::phi_reduced(space, i, P, x); };
                b.values[i] += detail::integrate_piece_graded(P, full, reduced, s, settings.load_order,
                                                              settings.graded_panels, settings.grading);
            }
        }
    }
    return b;
}

DiscreteSolution solve_system(const WfemSpace& space, const StiffnessMatrix& A, const LoadVector& b)
{
    if (A.n() != space.n_dofs() || b.n() != space.n_dofs())
        throw ArgumentError("solve_system: dimension mismatch");
    if (!A.entries.allFinite() || !b.values.allFinite())
        throw FactorizationError("solve_system: non-finite system");
    Eigen::LLT<Eigen::MatrixXd> llt(A.entries);
    if (llt.info() != Eigen::Success)
        throw FactorizationError("solve_system: Cholesky failed, stiffness matrix is not positive definite");
    Eigen::VectorXd c = llt.solve(b.values);
    // one step of iterative refinement
    c += llt.solve(b.values - A.entries * c);
    return DiscreteSolution{space, std::move(c)};
}

double galerkin_residual(const StiffnessMatrix& A, const LoadVector& b, const DiscreteSolution& sol)
{
    if (A.n() != b.n() || sol.coeffs.size() != b.values.size())
        throw ArgumentError("galerkin_residual: dimension mismatch");
    const double r = (A.entries * sol.coeffs - b.values).cwiseAbs().maxCoeff();
    const double nb = b.values.cwiseAbs().maxCoeff();
    return nb > 0.0 ? r / nb : r;
}

void dump_matrix(const StiffnessMatrix& A, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("dump_matrix: cannot open '" + path.string() + "' for writing");
    char buf[40];
    for (int i = 0; i < A.n(); ++i) {
        for (int j = 0; j < A.n(); ++j) {
            std::snprintf(buf, sizeof buf, "%.16e", A.entries(i, j));
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("dump_matrix: write to '" + path.string() + "' failed");
}

double bilinear_form_direct(const WfemSpace& space, int i, int j, double tol)
{
    const double a = space.mesh.a;
    const double b = space.mesh.b;
    std::vector<double> bps(space.mesh.nodes.begin(), space.mesh.nodes.end());
    for (double p : delta_breakpoints(space.weight))
        bps.push_back(p);
    const double C = space.params.c_norm;
    const double dbl = adaptive_energy_integral([&](double x) { return weighted_basis_eval(space, i, x); },
                                                [&](double x) { return weighted_basis_eval(space, j, x); },
                                                space.s(), a, b, a, b, tol / C, bps);
    auto g = [&](double x) {
        return weighted_basis_eval(space, i, x) * weighted_basis_eval(space, j, x) *
               killing_potential(x, space.params, a, b);
    };
    return 0.5 * C * dbl + adaptive_oracle_integral(g, a, b, 0.5 * tol, bps);
}

} // namespace wfem
