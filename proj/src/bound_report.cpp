#include "prodsq/bound_report.hpp"

#include <charconv>
#include <cmath>

namespace prodsq {

std::string format_double(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::string bound_report_csv_header(const BoundReport& report)
{
    std::string header = "n,lhs";
    for (const auto& [name, value] : report.rhs_terms) header += "," + name;
    header += ",rhs_total,verdict,precision_flag";
    return header;
}

std::string bound_report_csv_row(const BoundReport& report)
{
    std::string row = std::to_string(report.n) + "," + format_double(report.lhs);
    for (const auto& [name, value] : report.rhs_terms) row += "," + format_double(value);
    row += "," + format_double(report.rhs_total);
    row += report.verdict ? ",true" : ",false";
    row += report.precision_flag ? ",true" : ",false";
    return row;
}

nlohmann::ordered_json to_json(const BoundReport& report)
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto& [name, value] : report.rhs_terms) terms[name] = value;
    return {
        {"n", std::to_string(report.n)},
        {"lhs", report.lhs},
        {"rhs_terms", terms},
        {"rhs_total", report.rhs_total},
        {"verdict", report.verdict},
        {"precision_flag", report.precision_flag},
    };
}

}  // namespace prodsq
