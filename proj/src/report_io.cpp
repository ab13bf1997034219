#include "wfem/errors.hpp"
#include "wfem/experiments.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace wfem
{

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace
{

constexpr std::string_view header = "s,level,h,n_dofs,err_hs,err_l2,rate_hs,rate_l2";

double parse_double(std::string_view field, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw InputError("report line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    return v;
}

int parse_int(std::string_view field, std::size_t line)
{
    int v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw InputError("report line " + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
    return v;
}

} // namespace

std::string format_report(const ErrorReport& report)
{
    std::string out(header);
    out += '\n';
    for (const auto& r : report.rows) {
        out += format_double(r.s) + ',' + std::to_string(r.level) + ',' + format_double(r.h) + ',' +
               std::to_string(r.n_dofs) + ',' + format_double(r.err_hs) + ',' + format_double(r.err_l2) + ',' +
               (r.rate_hs ? format_double(*r.rate_hs) : "") + ',' + (r.rate_l2 ? format_double(*r.rate_l2) : "") +
               '\n';
    }
    return out;
}

void emit_report(const ErrorReport& report, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("emit_report: cannot open '" + path.string() + "' for writing");
    out << format_report(report);
    if (!out)
        throw std::runtime_error("emit_report: write to '" + path.string() + "' failed");
}

ErrorReport parse_report(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw InputError("report: missing or unexpected header");
    ErrorReport report;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        while (true) {
            const auto pos = rest.find(',');
            f.push_back(rest.substr(0, pos));
            if (pos == std::string_view::npos)
                break;
            rest.remove_prefix(pos + 1);
        }
        if (f.size() != 8)
            throw InputError("report line " + std::to_string(lineno) + ": expected 8 fields");
        ErrorRow r;
        r.s = parse_double(f[0], lineno);
        r.level = parse_int(f[1], lineno);
        r.h = parse_double(f[2], lineno);
        r.n_dofs = parse_int(f[3], lineno);
        r.err_hs = parse_double(f[4], lineno);
        r.err_l2 = parse_double(f[5], lineno);
        if (!f[6].empty())
            r.rate_hs = parse_double(f[6], lineno);
        if (!f[7].empty())
            r.rate_l2 = parse_double(f[7], lineno);
        report.rows.push_back(r);
    }
    return report;
}

} // namespace wfem
