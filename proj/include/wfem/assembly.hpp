#ifndef WFEM_ASSEMBLY_HPP
#define WFEM_ASSEMBLY_HPP

#include "wfem/basis.hpp"

#include <Eigen/Dense>

#include <filesystem>

namespace wfem
{

struct QuadSettings
{
    int order = 16;              ///< base points per direction for pair integrals
    int load_order = 24;         ///< points per panel for load vectors and L2 errors
    int graded_panels = 28;      ///< geometric panels on pieces touching the boundary
    double grading = 0.25;       ///< panel ratio toward the boundary
    double escalation_tol = 1e-7;
    unsigned threads = 0;        ///< 0: hardware concurrency
};

/// Self-convergence bookkeeping of the singular integrals.
struct PairStats
{
    double max_discrepancy = 0.0; ///< largest relative change between the last two orders used
    long evaluations = 0;
    long escalations = 0;
    long oracle_fallbacks = 0;

    void merge(const PairStats& other) noexcept;
};

/// Integral over K x L of (phi_i(x) - phi_i(y)) (phi_j(x) - phi_j(y)) |x - y|^{-1-2s}
/// for elements k, l, without the C_{1,s}/2 factor. Orders n, 2n (and 4n) are compared;
/// if they disagree beyond settings.escalation_tol the adaptive oracle takes over.
double singular_pair_integral(const WfemSpace& space, int i, int j, int k, int l, int n = 16,
                              PairStats* stats = nullptr);

/// a(phi_i, phi_j) through the hull decomposition: for |i - j| <= 1 the element pairs of the
/// supports' hull S plus the exterior potential of S; otherwise only the cross terms.
double stiffness_entry(const WfemSpace& space, int i, int j, const QuadSettings& settings = {},
                       PairStats* stats = nullptr);

struct StiffnessMatrix
{
    Eigen::MatrixXd entries;
    PairStats stats;
    double symmetry_defect = 0.0; ///< max |A - A^T| / max |A|
    double seconds = 0.0;

    int n() const noexcept { return static_cast<int>(entries.rows()); }
};

struct LoadVector
{
    Eigen::VectorXd values;

    int n() const noexcept { return static_cast<int>(values.size()); }
};

StiffnessMatrix assemble_stiffness(const WfemSpace& space, const QuadSettings& settings = {});

/// b_i = integral of f phi_i. f is sampled only at interior quadrature points.
LoadVector assemble_load(const WfemSpace& space, const RealFunction& f, const QuadSettings& settings = {});

/// Dense Cholesky. Throws FactorizationError when A is not numerically SPD.
DiscreteSolution solve_system(const WfemSpace& space, const StiffnessMatrix& A, const LoadVector& b);

/// ||A c - b||_inf / ||b||_inf, or the absolute residual when b = 0.
double galerkin_residual(const StiffnessMatrix& A, const LoadVector& b, const DiscreteSolution& sol);

/// Row-major text dump, 17 significant digits.
void dump_matrix(const StiffnessMatrix& A, const std::filesystem::path& path);

/// Brute-force a(phi_i, phi_j) = (C/2) double integral over (a,b)^2 plus the exterior potential
/// of (a,b), by the adaptive oracle with absolute tolerance tol.
double bilinear_form_direct(const WfemSpace& space, int i, int j, double tol);

} // namespace wfem

#endif // WFEM_ASSEMBLY_HPP
