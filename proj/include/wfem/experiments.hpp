#ifndef WFEM_EXPERIMENTS_HPP
#define WFEM_EXPERIMENTS_HPP

#include "wfem/error_norms.hpp"
#include "wfem/weight.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wfem
{

enum class ExperimentKind
{
    exact,          ///< f = 1 with the quadratic weight: the discrete solution is exact
    convergence_f1, ///< f = 1, rates against the explicit solution
    bonito,         ///< u = (1 - x^2)_+ with its hypergeometric right-hand side
    interp_demo     ///< pointwise profiles of the two interpolants
};

ExperimentKind parse_experiment_kind(std::string_view name);
std::string_view to_string(ExperimentKind kind) noexcept;

struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::convergence_f1;
    std::vector<double> s_values{0.1, 0.2, 0.4, 0.6};
    std::vector<int> levels{2, 3, 4, 5, 6}; ///< n_elems = 2^level
    WeightKind delta_kind = WeightKind::poly4;
    double epsilon = 0.0; ///< computational domain (-1 + epsilon, 1 - epsilon)
    int quad_order = 16;
    std::string out_path;
    std::string dump_matrix; ///< optional path stem for stiffness dumps
};

/// Defaults per experiment (weight, epsilon, s values and levels).
ExperimentConfig default_config(ExperimentKind kind);

/// JSON document with the ExperimentConfig field names; missing fields keep the experiment defaults.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws ArgumentError on s outside [0.05, 0.95], non-increasing levels, levels outside [1, 12],
/// negative epsilon or quad_order outside [4, 64].
void validate_config(const ExperimentConfig& cfg);

struct LevelDiagnostics
{
    double s = 0.0;
    int level = 0;
    double max_coeff_deviation = 0.0; ///< exact case only
    double symmetry_defect = 0.0;
    double residual = 0.0;
    double raw_energy_square = 0.0;
    bool clamped = false;
    double max_pair_discrepancy = 0.0;
    long escalations = 0;
    long oracle_fallbacks = 0;
    double seconds = 0.0;
};

struct ExperimentResult
{
    ErrorReport report;
    std::vector<LevelDiagnostics> diagnostics;
    std::vector<std::string> failures; ///< machine-readable breach lines
};

ExperimentResult run_exact_case(const ExperimentConfig& cfg);
ExperimentResult run_convergence_f1(const ExperimentConfig& cfg);
ExperimentResult run_bonito(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Columns s, x, u_star, ih_u, jh_poly2, jh_poly4, ih_quot_poly2, ih_quot_poly4 for the f = 1
/// solution on a 2001-point grid over (-1, 1); mesh of 2^levels.front() elements.
struct InterpDemo
{
    static constexpr std::array<std::string_view, 8> columns{"s",        "x",        "u_star",        "ih_u",
                                                             "jh_poly2", "jh_poly4", "ih_quot_poly2", "ih_quot_poly4"};
    std::vector<std::array<double, 8>> rows;
};

InterpDemo run_interp_demo(const ExperimentConfig& cfg);
void write_interp_demo(const InterpDemo& demo, const std::filesystem::path& path);

/// Sup errors of I_h u and J_h u (weight R^4 - x^4) over the two boundary elements, f = 1 solution on (-1, 1).
struct InterpComparison
{
    double sup_ih = 0.0;
    double sup_jh = 0.0;
};

InterpComparison compare_interpolants(double s, int n_elems, int samples_per_element = 2000);

/// CSV with header s,level,h,n_dofs,err_hs,err_l2,rate_hs,rate_l2; shortest round-trip numbers.
std::string format_report(const ErrorReport& report);
void emit_report(const ErrorReport& report, const std::filesystem::path& path);
ErrorReport parse_report(const std::string& csv);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double value);

} // namespace wfem

#endif // WFEM_EXPERIMENTS_HPP
