// Command-line driver for the weighted finite element experiments.

#include "wfem/errors.hpp"
#include "wfem/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <regex>

namespace
{

std::vector<int> parse_levels(const std::string& text)
{
    static const std::regex range(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, range))
        throw wfem::ArgumentError("--levels expects k_min..k_max, got '" + text + "'");
    const int lo = std::stoi(m[1]);
    const int hi = std::stoi(m[2]);
    if (lo > hi)
        throw wfem::ArgumentError("--levels: k_min exceeds k_max");
    std::vector<int> out;
    for (int k = lo; k <= hi; ++k)
        out.push_back(k);
    return out;
}

struct Flags
{
    std::vector<double> s;
    std::string levels;
    std::string delta;
    double epsilon = -1.0;
    int quad_order = 0;
    std::string out;
    std::string dump_matrix;
    std::string config;
};

void add_common(CLI::App* app, Flags& f)
{
    app->add_option("--s", f.s, "fractional order (repeatable)");
    app->add_option("--levels", f.levels, "mesh levels k_min..k_max, n_elems = 2^k");
    app->add_option("--delta", f.delta, "weight: poly2, poly4 or dist");
    app->add_option("--epsilon", f.epsilon, "domain shrink, (-1+eps, 1-eps)");
    app->add_option("--quad-order", f.quad_order, "base quadrature order per direction");
    app->add_option("--out", f.out, "CSV output path");
    app->add_option("--dump-matrix", f.dump_matrix, "path stem for stiffness matrix dumps");
    app->add_option("--config", f.config, "JSON config mirroring the experiment fields");
}

wfem::ExperimentConfig build_config(wfem::ExperimentKind kind, const Flags& f)
{
    wfem::ExperimentConfig cfg = wfem::default_config(kind);
    if (!f.config.empty()) {
        cfg = wfem::load_config(f.config);
        if (cfg.experiment != kind)
            throw wfem::ArgumentError("config experiment '" + std::string(wfem::to_string(cfg.experiment)) +
                                      "' does not match the subcommand");
    }
    if (!f.s.empty())
        cfg.s_values = f.s;
    if (!f.levels.empty())
        cfg.levels = parse_levels(f.levels);
    if (!f.delta.empty())
        cfg.delta_kind = wfem::parse_weight_kind(f.delta);
    if (f.epsilon >= 0.0)
        cfg.epsilon = f.epsilon;
    if (f.quad_order > 0)
        cfg.quad_order = f.quad_order;
    if (!f.out.empty())
        cfg.out_path = f.out;
    if (!f.dump_matrix.empty())
        cfg.dump_matrix = f.dump_matrix;
    wfem::validate_config(cfg);
    return cfg;
}

void print_summary(const wfem::ExperimentConfig& cfg, const wfem::ExperimentResult& res)
{
    std::printf("%s  delta=%s  epsilon=%g\n", std::string(wfem::to_string(cfg.experiment)).c_str(),
                std::string(wfem::to_string(cfg.delta_kind)).c_str(), cfg.epsilon);
    std::printf("%6s %5s %12s %6s %13s %13s %8s %8s %10s\n", "s", "level", "h", "n_dofs", "err_hs", "err_l2",
                "rate_hs", "rate_l2", "assembly_s");
    for (std::size_t k = 0; k < res.report.rows.size(); ++k) {
        const auto& r = res.report.rows[k];
        const auto& d = res.diagnostics[k];
        auto rate = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
        std::printf("%6.3g %5d %12.6g %6d %13.6e %13.6e %8.4f %8.4f %10.2f\n", r.s, r.level, r.h, r.n_dofs, r.err_hs,
                    r.err_l2, rate(r.rate_hs), rate(r.rate_l2), d.seconds);
        if (cfg.experiment == wfem::ExperimentKind::exact)
            std::printf("       max relative coefficient deviation %.3e\n", d.max_coeff_deviation);
    }
}

int run(wfem::ExperimentKind kind, const Flags& flags)
{
    const wfem::ExperimentConfig cfg = build_config(kind, flags);
    if (kind == wfem::ExperimentKind::interp_demo) {
        const auto demo = wfem::run_interp_demo(cfg);
        const std::string path = cfg.out_path.empty() ? "interp_demo.csv" : cfg.out_path;
        wfem::write_interp_demo(demo, path);
        std::printf("interp_demo: %zu rows written to %s\n", demo.rows.size(), path.c_str());
        return 0;
    }
    const wfem::ExperimentResult res = wfem::run_experiment(cfg);
    print_summary(cfg, res);
    if (!cfg.out_path.empty())
        wfem::emit_report(res.report, cfg.out_path);
    for (const auto& line : res.failures)
        std::cout << line << '\n';
    return res.failures.empty() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted finite elements for the fractional Laplacian on an interval"};
    app.require_subcommand(1);

    struct Sub
    {
        const char* name;
        const char* help;
        wfem::ExperimentKind kind;
        Flags flags;
        CLI::App* app = nullptr;
    };
    std::vector<Sub> subs{
        {"exact", "f = 1 with the quadratic weight: the discrete solution is exact", wfem::ExperimentKind::exact, {}},
        {"convergence", "f = 1 convergence study", wfem::ExperimentKind::convergence_f1, {}},
        {"bonito", "u = (1 - x^2)_+ convergence study", wfem::ExperimentKind::bonito, {}},
        {"interp-demo", "pointwise interpolation profiles", wfem::ExperimentKind::interp_demo, {}},
    };
    for (auto& sub : subs) {
        sub.app = app.add_subcommand(sub.name, sub.help);
        add_common(sub.app, sub.flags);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& sub : subs)
            if (sub.app->parsed())
                return run(sub.kind, sub.flags);
    } catch (const std::exception& err) {
        std::cout << "FAIL check=error message=\"" << err.what() << "\"\n";
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 1;
}
