#include "wfem/experiments.hpp"

#include "wfem/assembly.hpp"
#include "wfem/errors.hpp"
#include "wfem/special_functions.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace wfem
{

ExperimentKind parse_experiment_kind(std::string_view name)
{
    if (name == "exact")
        return ExperimentKind::exact;
    if (name == "convergence_f1" || name == "convergence")
        return ExperimentKind::convergence_f1;
    if (name == "bonito")
        return ExperimentKind::bonito;
    if (name == "interp_demo" || name == "interp-demo")
        return ExperimentKind::interp_demo;
    throw ArgumentError("unknown experiment '" + std::string(name) +
                        "' (expected exact, convergence_f1, bonito or interp_demo)");
}

std::string_view to_string(ExperimentKind kind) noexcept
{
    switch (kind) {
    case ExperimentKind::exact:
        return "exact";
    case ExperimentKind::convergence_f1:
        return "convergence_f1";
    case ExperimentKind::bonito:
        return "bonito";
    case ExperimentKind::interp_demo:
        return "interp_demo";
    }
    return "?";
}

ExperimentConfig default_config(ExperimentKind kind)
{
    ExperimentConfig cfg;
    cfg.experiment = kind;
    switch (kind) {
    case ExperimentKind::exact:
        cfg.s_values = {0.1, 0.25, 0.5, 0.75};
        cfg.levels = {4};
        cfg.delta_kind = WeightKind::poly2;
        break;
    case ExperimentKind::convergence_f1:
        break;
    case ExperimentKind::bonito:
        cfg.epsilon = 1e-10;
        break;
    case ExperimentKind::interp_demo:
        cfg.s_values = {0.1, 0.4, 0.6};
        cfg.levels = {4};
        break;
    }
    return cfg;
}

ExperimentConfig parse_config_json(const std::string& text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& err) {
        throw ArgumentError(std::string("config: invalid JSON: ") + err.what());
    }
    if (!doc.is_object())
        throw ArgumentError("config: expected a JSON object");
    if (!doc.contains("experiment"))
        throw ArgumentError("config: missing field 'experiment'");
    try {
        ExperimentConfig cfg = default_config(parse_experiment_kind(doc.at("experiment").get<std::string>()));
        if (doc.contains("s_values"))
            cfg.s_values = doc.at("s_values").get<std::vector<double>>();
        if (doc.contains("levels"))
            cfg.levels = doc.at("levels").get<std::vector<int>>();
        if (doc.contains("delta_kind"))
            cfg.delta_kind = parse_weight_kind(doc.at("delta_kind").get<std::string>());
        if (doc.contains("epsilon"))
            cfg.epsilon = doc.at("epsilon").get<double>();
        if (doc.contains("quad_order"))
            cfg.quad_order = doc.at("quad_order").get<int>();
        if (doc.contains("out_path"))
            cfg.out_path = doc.at("out_path").get<std::string>();
        if (doc.contains("dump_matrix"))
            cfg.dump_matrix = doc.at("dump_matrix").get<std::string>();
        validate_config(cfg);
        return cfg;
    } catch (const nlohmann::json::exception& err) {
        throw ArgumentError(std::string("config: ") + err.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("config: cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

void validate_config(const ExperimentConfig& cfg)
{
    if (cfg.s_values.empty())
        throw ArgumentError("config: s_values is empty");
    for (double s : cfg.s_values)
        if (!(s >= 0.05 && s <= 0.95))
            throw ArgumentError("config: s = " + std::to_string(s) + " outside [0.05, 0.95]");
    if (cfg.levels.empty())
        throw ArgumentError("config: levels is empty");
    for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
        if (cfg.levels[k] < 1 || cfg.levels[k] > 12)
            throw ArgumentError("config: levels must lie in [1, 12]");
        if (k > 0 && cfg.levels[k] <= cfg.levels[k - 1])
            throw ArgumentError("config: levels must be strictly increasing");
    }
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 0.5))
        throw ArgumentError("config: epsilon must lie in [0, 0.5)");
    if (cfg.quad_order < 4 || cfg.quad_order > 64)
        throw ArgumentError("config: quad_order must lie in [4, 64]");
}

namespace
{

struct Problem
{
    RealFunction f;
    RealFunction u_exact;
    double lin_f_ustar;
};

std::string breach(std::string_view check, double s, int level, double value, double bound)
{
    std::ostringstream out;
    out << "FAIL check=" << check << " s=" << format_double(s) << " level=" << level
        << " value=" << format_double(value) << " bound=" << format_double(bound);
    return out.str();
}

std::filesystem::path dump_path(const std::string& stem, double s, int level)
{
    return stem + "_s" + format_double(s) + "_L" + std::to_string(level) + ".txt";
}

void run_level(const ExperimentConfig& cfg, double s, int level, const Problem& problem, ExperimentResult& out)
{
    const double a = -1.0 + cfg.epsilon;
    const double b = 1.0 - cfg.epsilon;
    const WfemSpace space = make_space(a, b, 1 << level, cfg.delta_kind, s);
    QuadSettings settings;
    settings.order = cfg.quad_order;

    const StiffnessMatrix A = assemble_stiffness(space, settings);
    if (!cfg.dump_matrix.empty())
        dump_matrix(A, dump_path(cfg.dump_matrix, s, level));
    const LoadVector rhs = assemble_load(space, problem.f, settings);
    const DiscreteSolution sol = solve_system(space, A, rhs);
    const EnergyError energy = hs_error_energy(sol, rhs, problem.lin_f_ustar);

    ErrorRow row;
    row.s = s;
    row.level = level;
    row.h = space.mesh.h;
    row.n_dofs = space.n_dofs();
    row.err_hs = energy.error;
    row.err_l2 = l2_error(sol, problem.u_exact, settings);
    out.report.rows.push_back(row);

    LevelDiagnostics diag;
    diag.s = s;
    diag.level = level;
    diag.symmetry_defect = A.symmetry_defect;
    diag.residual = galerkin_residual(A, rhs, sol);
    diag.raw_energy_square = energy.raw_square;
    diag.clamped = energy.clamped;
    diag.max_pair_discrepancy = A.stats.max_discrepancy;
    diag.escalations = A.stats.escalations;
    diag.oracle_fallbacks = A.stats.oracle_fallbacks;
    diag.seconds = A.seconds;
    if (cfg.experiment == ExperimentKind::exact) {
        const double c = ball_solution_constant(1, s);
        diag.max_coeff_deviation = ((sol.coeffs.array() - c).abs() / c).maxCoeff();
    }

    if (diag.symmetry_defect > 1e-12)
        out.failures.push_back(breach("symmetry", s, level, diag.symmetry_defect, 1e-12));
    if (diag.residual > 1e-10)
        out.failures.push_back(breach("galerkin_residual", s, level, diag.residual, 1e-10));
    if (diag.raw_energy_square < -1e-12)
        out.failures.push_back(breach("energy_square", s, level, diag.raw_energy_square, -1e-12));
    if (cfg.experiment == ExperimentKind::exact) {
        if (diag.max_coeff_deviation > 1e-4)
            out.failures.push_back(breach("exact_coefficients", s, level, diag.max_coeff_deviation, 1e-4));
        if (row.err_hs > 1e-5)
            out.failures.push_back(breach("exact_err_hs", s, level, row.err_hs, 1e-5));
        if (row.err_l2 > 1e-5)
            out.failures.push_back(breach("exact_err_l2", s, level, row.err_l2, 1e-5));
    }
    out.diagnostics.push_back(diag);
}

ExperimentResult run_family(const ExperimentConfig& cfg, const std::function<Problem(double)>& make_problem)
{
    validate_config(cfg);
    ExperimentResult out;
    for (double s : cfg.s_values) {
        const Problem problem = make_problem(s);
        for (int level : cfg.levels)
            run_level(cfg, s, level, problem, out);
    }
    out.report.compute_rates();
    return out;
}

Problem constant_rhs_problem(double s)
{
    const double c = ball_solution_constant(1, s);
    return Problem{[](double) { return 1.0; },
                   [c, s](double x) {
                       const double r = (1.0 - x) * (1.0 + x);
                       return r > 0.0 ? c * std::pow(r, s) : 0.0;
                   },
                   constant_rhs_energy(s)};
}

} // namespace

ExperimentResult run_exact_case(const ExperimentConfig& cfg)
{
    if (cfg.delta_kind != WeightKind::poly2 || cfg.epsilon != 0.0)
        throw ArgumentError("run_exact_case: requires the quadratic weight on (-1, 1)");
    return run_family(cfg, constant_rhs_problem);
}

ExperimentResult run_convergence_f1(const ExperimentConfig& cfg)
{
    if (cfg.epsilon != 0.0)
        throw ArgumentError("run_convergence_f1: the explicit solution lives on (-1, 1); epsilon must be 0");
    return run_family(cfg, constant_rhs_problem);
}

ExperimentResult run_bonito(const ExperimentConfig& cfg)
{
    if (!(cfg.epsilon > 0.0))
        throw ArgumentError("run_bonito: the right-hand side is unbounded at |x| = 1; epsilon must be positive");
    return run_family(cfg, [](double s) {
        const FracParams params = make_frac_params(s, 1);
        return Problem{[params](double x) { return bonito_rhs(x, params); },
                       [](double x) { return std::max(0.0, (1.0 - x) * (1.0 + x)); }, bonito_energy(s)};
    });
}

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    switch (cfg.experiment) {
    case ExperimentKind::exact:
        return run_exact_case(cfg);
    case ExperimentKind::convergence_f1:
        return run_convergence_f1(cfg);
    case ExperimentKind::bonito:
        return run_bonito(cfg);
    case ExperimentKind::interp_demo:
        break;
    }
    throw ArgumentError("run_experiment: interp_demo produces profiles, not an error report");
}

namespace
{

struct InterpSetup
{
    Mesh1D mesh;
    WfemSpace quad;   // weight 1 - x^2
    WfemSpace quartic; // weight 1 - x^4
    Eigen::VectorXd ih_u;
    Eigen::VectorXd quot_quad;
    Eigen::VectorXd quot_quartic;
    double c;
    double s;

    double u_star(double x) const
    {
        const double r = (1.0 - x) * (1.0 + x);
        return r > 0.0 ? c * std::pow(r, s) : 0.0;
    }
};

InterpSetup interp_setup(double s, int n_elems)
{
    InterpSetup st{build_uniform_mesh(-1.0, 1.0, n_elems),
                   make_space(-1.0, 1.0, n_elems, WeightKind::poly2, s),
                   make_space(-1.0, 1.0, n_elems, WeightKind::poly4, s),
                   {},
                   {},
                   {},
                   ball_solution_constant(1, s),
                   s};
    st.ih_u = interp_pl([&](double x) { return st.u_star(x); }, st.mesh);
    // u / delta^s in closed form: c for 1 - x^2, c (1 + x^2)^{-s} for 1 - x^4
    st.quot_quad = interp_weighted([&](double) { return st.c; }, st.quad).coeffs;
    st.quot_quartic = interp_weighted([&](double x) { return st.c * std::pow(1.0 + x * x, -s); }, st.quartic).coeffs;
    return st;
}

} // namespace

InterpDemo run_interp_demo(const ExperimentConfig& cfg)
{
    validate_config(cfg);
    const int n_elems = 1 << cfg.levels.front();
    InterpDemo demo;
    constexpr int n_points = 2001;
    for (double s : cfg.s_values) {
        const InterpSetup st = interp_setup(s, n_elems);
        const DiscreteSolution jq{st.quad, st.quot_quad};
        const DiscreteSolution j4{st.quartic, st.quot_quartic};
        for (int k = 0; k < n_points; ++k) {
            const double x = k == n_points - 1 ? 1.0 : -1.0 + 2.0 * k / (n_points - 1);
            demo.rows.push_back({s, x, st.u_star(x), eval_piecewise_linear(st.mesh, st.ih_u, x),
                                 eval_solution(jq, x), eval_solution(j4, x),
                                 eval_piecewise_linear(st.mesh, st.quot_quad, x),
                                 eval_piecewise_linear(st.mesh, st.quot_quartic, x)});
        }
    }
    return demo;
}

void write_interp_demo(const InterpDemo& demo, const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("interp demo: cannot open '" + path.string() + "' for writing");
    for (std::size_t c = 0; c < InterpDemo::columns.size(); ++c)
        out << (c ? "," : "") << InterpDemo::columns[c];
    out << '\n';
    for (const auto& row : demo.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_double(row[c]);
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("interp demo: write to '" + path.string() + "' failed");
}

InterpComparison compare_interpolants(double s, int n_elems, int samples_per_element)
{
    const InterpSetup st = interp_setup(s, n_elems);
    const DiscreteSolution j4{st.quartic, st.quot_quartic};
    InterpComparison cmp;
    for (int e : {0, n_elems - 1}) {
        const double l = st.mesh.left(e);
        const double r = st.mesh.right(e);
        for (int k = 0; k <= samples_per_element; ++k) {
            const double x = l + (r - l) * k / samples_per_element;
            const double u = st.u_star(x);
            cmp.sup_ih = std::max(cmp.sup_ih, std::abs(eval_piecewise_linear(st.mesh, st.ih_u, x) - u));
            cmp.sup_jh = std::max(cmp.sup_jh, std::abs(eval_solution(j4, x) - u));
        }
    }
    return cmp;
}

} // namespace wfem
