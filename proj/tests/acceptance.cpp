// End-to-end acceptance: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "wfem/assembly.hpp"
#include "wfem/error_norms.hpp"
#include "wfem/experiments.hpp"
#include "wfem/special_functions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace wfem;

namespace
{

int failures = 0;

void verdict(int id, bool ok, const std::string& name, const std::string& detail)
{
    std::printf("%s criterion %d %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> family_s{0.1, 0.2, 0.4, 0.6};

// Observed rates between levels (j, j+1) for j = 2, 3, 4, and the asymptotic prediction.
const std::map<double, std::vector<double>> reference_f1{{0.1, {1.9914, 1.86733, 1.83477}},
                                                         {0.2, {1.87737, 1.73141, 1.73966}},
                                                         {0.4, {1.65643, 1.62081, 1.52709}},
                                                         {0.6, {1.42484, 1.430124, 1.38995}}};
const std::map<double, std::vector<double>> reference_parabola{{0.1, {1.7669, 1.72902, 1.67254}},
                                                             {0.2, {1.54577, 1.48647, 1.42748}},
                                                             {0.4, {1.20472, 1.14931, 1.11971}},
                                                             {0.6, {0.985209, 0.919176, 0.892579}}};
const std::map<double, double> predicted_parabola{{0.1, 1.4}, {0.2, 1.3}, {0.4, 1.1}, {0.6, 0.9}};

std::vector<LevelDiagnostics> all_diagnostics;
std::vector<std::string> structural_breaches;

void collect(const ExperimentResult& res)
{
    all_diagnostics.insert(all_diagnostics.end(), res.diagnostics.begin(), res.diagnostics.end());
    for (const auto& line : res.failures)
        if (line.find("check=exact_") == std::string::npos)
            structural_breaches.push_back(line);
}

void criterion_exactness()
{
    bool ok = true;
    std::ostringstream detail;
    for (double s : {0.1, 0.25, 0.5, 0.75}) {
        auto cfg = default_config(ExperimentKind::exact);
        cfg.s_values = {s};
        const auto t0 = std::chrono::steady_clock::now();
        ExperimentResult res;
        try {
            res = run_exact_case(cfg);
        } catch (const std::exception& err) {
            ok = false;
            detail << "s=" << s << " threw '" << err.what() << "'; ";
            continue;
        }
        const double secs = seconds_since(t0);
        collect(res);
        const double dev = res.diagnostics.front().max_coeff_deviation;
        ok = ok && dev <= 1e-4 && secs < 5.0;
        detail << "s=" << s << " dev=" << dev << " t=" << secs << "s; ";
    }
    verdict(1, ok, "exactness", detail.str());
}

void criteria_f1_rates()
{
    auto cfg = default_config(ExperimentKind::convergence_f1);
    cfg.s_values = family_s;
    cfg.levels = {2, 3, 4, 5, 6};
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentResult res;
    try {
        res = run_convergence_f1(cfg);
    } catch (const std::exception& err) {
        verdict(2, false, "H^s rates", std::string("threw ") + err.what());
        verdict(3, false, "L2 rates", "no data");
        return;
    }
    const double secs = seconds_since(t0);
    collect(res);

    bool ok2 = secs < 600.0;
    bool ok3 = true;
    std::ostringstream d2, d3;
    d2 << "t=" << secs << "s; ";
    for (double s : family_s) {
        const auto hs = res.report.rates_hs(s);
        const auto l2 = res.report.rates_l2(s);
        const auto& ref = reference_f1.at(s);
        double worst_pred = 0.0;
        for (std::size_t k = hs.size() - 2; k < hs.size(); ++k)
            worst_pred = std::max(worst_pred, std::abs(hs[k] - (2.0 - s)));
        double worst_table = 0.0;
        for (std::size_t k = 0; k < ref.size(); ++k)
            worst_table = std::max(worst_table, std::abs(hs[k] - ref[k]));
        ok2 = ok2 && worst_pred <= 0.10 && worst_table <= 0.10;
        d2 << "s=" << s << " finest=" << hs.back() << " |vs 2-s|<=" << worst_pred << " |vs table|<=" << worst_table
           << "; ";
        ok3 = ok3 && l2.back() >= 1.85 && l2.back() <= 2.15;
        d3 << "s=" << s << " L2 finest=" << l2.back() << "; ";
    }
    verdict(2, ok2, "H^s rates", d2.str());
    verdict(3, ok3, "L2 rates", d3.str());
}

void criterion_parabola()
{
    auto cfg = default_config(ExperimentKind::bonito);
    cfg.s_values = family_s;
    cfg.levels = {2, 3, 4, 5, 6};
    ExperimentResult res;
    try {
        res = run_bonito(cfg);
    } catch (const std::exception& err) {
        verdict(4, false, "parabola rates", std::string("threw ") + err.what());
        return;
    }
    collect(res);
    bool ok = true;
    std::ostringstream detail;
    for (double s : family_s) {
        const auto hs = res.report.rates_hs(s);
        const auto& ref = reference_parabola.at(s);
        double worst_table = 0.0;
        for (std::size_t k = 0; k < ref.size(); ++k)
            worst_table = std::max(worst_table, std::abs(hs[k] - ref[k]));
        const double gap_pred = std::abs(hs.back() - predicted_parabola.at(s));
        ok = ok && worst_table <= 0.15 && gap_pred <= 0.15;
        detail << "s=" << s << " finest=" << hs.back() << " |vs table|<=" << worst_table
               << " |vs predicted|=" << gap_pred << "; ";
    }
    verdict(4, ok, "parabola rates", detail.str());
}

void criterion_oracle()
{
    bool ok = true;
    std::ostringstream detail;
    for (double s : {0.3, 0.5}) {
        const WfemSpace space = make_space(-1.0, 1.0, 4, WeightKind::poly4, s);
        const StiffnessMatrix A = assemble_stiffness(space);
        double worst = 0.0;
        for (int i = 0; i < A.n(); ++i)
            for (int j = i; j < A.n(); ++j) {
                const double ref = bilinear_form_direct(space, i, j, 1e-8 * std::abs(A.entries(i, i)));
                worst = std::max(worst, std::abs(A.entries(i, j) - ref) / std::abs(ref));
            }
        ok = ok && worst <= 1e-6;
        detail << "s=" << s << " max rel=" << worst << "; ";
    }
    const FracParams p = make_frac_params(0.5);
    const double u_star = hs_seminorm_direct([&](double x) { return ball_solution(x, p, 1.0, 0.0); }, -1.0, 1.0, 0.5,
                                             1e-8);
    const double gap = std::abs(u_star - std::sqrt(std::numbers::pi / 2.0));
    ok = ok && gap <= 1e-6;
    detail << "[u*] gap=" << gap;
    verdict(5, ok, "oracle equivalence", detail.str());
}

void criterion_structure()
{
    double sym = 0.0, res = 0.0, energy = 0.0;
    for (const auto& d : all_diagnostics) {
        sym = std::max(sym, d.symmetry_defect);
        res = std::max(res, d.residual);
        energy = std::min(energy, d.raw_energy_square);
    }
    // systems that failed to factorize never reach the diagnostics; 4 + 2 * 4 * 5 are expected
    const bool all_solved = all_diagnostics.size() == 44;
    std::ostringstream detail;
    detail << all_diagnostics.size() << " systems, max symmetry=" << sym << " max residual=" << res
           << " min raw energy=" << energy << " breaches=" << structural_breaches.size();
    verdict(6, all_solved && structural_breaches.empty() && sym <= 1e-12 && res <= 1e-10 && energy >= -1e-12,
            "structural properties", detail.str());
}

void criterion_interpolation()
{
    bool ok = true;
    std::ostringstream detail;
    for (int n : {16, 32}) {
        const auto cmp = compare_interpolants(0.4, n);
        const double factor = cmp.sup_ih / cmp.sup_jh;
        ok = ok && factor >= 5.0;
        detail << "n=" << n << " sup I_h=" << cmp.sup_ih << " sup J_h=" << cmp.sup_jh << " factor=" << factor << "; ";
    }
    verdict(7, ok, "interpolation comparison", detail.str());
}

void criterion_special_functions()
{
    double recurrence = 0.0;
    for (double x : {0.1, 0.37, 1.5, 2.25, 4.8, 7.3, -0.6, -2.4})
        recurrence = std::max(recurrence, std::abs(wfem::gamma(x + 1.0) - x * wfem::gamma(x)) / std::abs(x * wfem::gamma(x)));
    const double cn = std::abs(frac_lap_constant(1, 0.5) - 1.0 / std::numbers::pi);
    const double cb = std::abs(ball_solution_constant(1, 0.5) - 1.0);
    const double f = std::abs(gauss_2f1(1.0, 1.0, 2.0, 0.5) - 2.0 * std::numbers::ln2);
    const double rhs = std::abs(bonito_rhs(0.0, make_frac_params(0.5)) - 4.0 / std::numbers::pi);
    std::ostringstream detail;
    detail << "gamma recurrence=" << recurrence << " C=" << cn << " c=" << cb << " 2F1=" << f << " rhs=" << rhs;
    verdict(8, recurrence <= 1e-12 && cn <= 1e-12 && cb <= 1e-12 && f <= 1e-10 && rhs <= 1e-10,
            "special functions", detail.str());
}

} // namespace

int main()
{
    criterion_exactness();
    criteria_f1_rates();
    criterion_parabola();
    criterion_oracle();
    criterion_structure();
    criterion_interpolation();
    criterion_special_functions();
    std::printf("%s: %d criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
    return failures == 0 ? 0 : 1;
}
