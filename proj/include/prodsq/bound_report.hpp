#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace prodsq {

// Both sides of an inequality evaluated at a concrete n.
struct BoundReport {
    std::uint64_t n = 0;
    double lhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_terms;
    double rhs_total = 0.0;
    bool verdict = false;
    // set when |lhs - rhs_total| fell below the precision guard
    bool precision_flag = false;
};

// Column header for the given report shape: n,lhs,<term names...>,rhs_total,verdict,precision_flag
std::string bound_report_csv_header(const BoundReport& report);
std::string bound_report_csv_row(const BoundReport& report);
nlohmann::ordered_json to_json(const BoundReport& report);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

}  // namespace prodsq
