// prodsq: command-line front end for the P_n = ∏(k²+1) square checks.
//
// Exit codes: 0 verified, 1 verification failure (JSON reason on stderr),
// 2 usage or configuration error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "prodsq/analytic_bounds.hpp"
#include "prodsq/certificates.hpp"
#include "prodsq/parallel_kernels.hpp"
#include "prodsq/prime_table.hpp"
#include "prodsq/product_square.hpp"

using namespace prodsq;
using ojson = nlohmann::ordered_json;

namespace {

enum class Format { table, csv, json };

struct RunConfig {
    u64 sieve_limit = kDefaultSieveLimit;
    u64 n_direct = 300;
    u64 target_hi = 1830;
    double precision_guard = kDefaultPrecisionGuard;
    Format format = Format::table;
    int jobs = 0;
    std::string out;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised for a failed verification; carries the stderr JSON payload.
struct VerificationFailure : std::runtime_error {
    VerificationFailure(std::string reason, ojson detail)
        : std::runtime_error(reason), payload(std::move(detail))
    {
        payload["error"] = what();
    }
    ojson payload;
};

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string dec(u64 v) { return std::to_string(v); }

PrimeTable make_table(const RunConfig& cfg) { return PrimeTable(cfg.sieve_limit); }

const char* method_of(const ScanRow& row)
{
    if (row.direct_checked && row.witness) return "direct+witness";
    if (row.direct_checked) return "direct";
    return "witness";
}

constexpr const char* kScanColumns = "n,status,b,witness_p,witness_alpha,method";

std::string scan_csv_row(const ScanRow& row)
{
    std::string s = dec(row.n) + "," + std::string(to_string(row.status)) + ",";
    if (row.root) s += row.root->get_str();
    s += ",";
    if (row.witness) s += dec(row.witness->p) + "," + dec(row.witness->alpha);
    else s += ",";
    return s + "," + method_of(row);
}

ojson scan_json_row(const ScanRow& row)
{
    ojson j;
    j["n"] = dec(row.n);
    j["status"] = std::string(to_string(row.status));
    j["b"] = row.root ? ojson(row.root->get_str()) : ojson(nullptr);
    if (row.witness)
        j["witness"] = {{"p", dec(row.witness->p)}, {"alpha", dec(row.witness->alpha)}};
    else
        j["witness"] = nullptr;
    j["method"] = method_of(row);
    return j;
}

std::string scan_text_row(const ScanRow& row)
{
    std::ostringstream os;
    os << "n=" << row.n << ": ";
    switch (row.status) {
    case SquareStatus::square: os << "square, b=" << row.root->get_str(); break;
    case SquareStatus::non_square:
        if (row.witness)
            os << "non-square, witness p=" << row.witness->p << ", alpha=" << row.witness->alpha;
        else
            os << "non-square (direct)";
        break;
    case SquareStatus::unknown: os << "unknown (no witness found, beyond --n-direct)"; break;
    }
    return os.str();
}

void emit_rows(const std::vector<ScanRow>& rows, const RunConfig& cfg)
{
    Output out(cfg.out);
    auto& os = out.stream();
    switch (cfg.format) {
    case Format::table:
        for (const auto& r : rows) os << scan_text_row(r) << "\n";
        break;
    case Format::csv:
        os << kScanColumns << "\n";
        for (const auto& r : rows) os << scan_csv_row(r) << "\n";
        break;
    case Format::json: {
        ojson arr = ojson::array();
        for (const auto& r : rows) arr.push_back(scan_json_row(r));
        os << arr.dump(2) << "\n";
        break;
    }
    }
}

void require_consistent(const std::vector<ScanRow>& rows)
{
    for (const auto& r : rows) {
        if (r.status == SquareStatus::square && r.witness)
            throw VerificationFailure("witness-contradicts-square",
                                      {{"n", dec(r.n)}, {"witness_p", dec(r.witness->p)}});
    }
    for (const auto& r : rows)
        if (r.status == SquareStatus::unknown)
            throw VerificationFailure("undetermined", {{"n", dec(r.n)}});
}

int cmd_check(const RunConfig& cfg, u64 n, bool witness_only)
{
    if (n < 1) throw UsageError("check: n must be >= 1");
    const PrimeTable table = make_table(cfg);
    ScanRow row;
    if (witness_only) {
        row.n = n;
        row.witness = find_nonsquare_witness(n, table);
        row.status = row.witness ? SquareStatus::non_square : SquareStatus::unknown;
    } else {
        row = scan_serial(n, n, cfg.n_direct, table).front();
    }
    emit_rows({row}, cfg);
    require_consistent({row});
    return 0;
}

int cmd_scan(const RunConfig& cfg, u64 lo, u64 hi)
{
    if (lo < 1 || lo > hi) throw UsageError("scan: need 1 <= lo <= hi");
    const PrimeTable table = make_table(cfg);
    const auto rows = scan_parallel(lo, hi, cfg.n_direct, table, cfg.jobs);
    emit_rows(rows, cfg);
    require_consistent(rows);
    return 0;
}

void emit_report(const BoundReport& report, const RunConfig& cfg)
{
    Output out(cfg.out);
    auto& os = out.stream();
    switch (cfg.format) {
    case Format::table:
        os << std::setprecision(17);
        os << "n             " << report.n << "\n";
        os << "lhs           " << report.lhs << "\n";
        for (const auto& [name, v] : report.rhs_terms) os << "  " << name << " = " << v << "\n";
        os << "rhs_total     " << report.rhs_total << "\n";
        os << "verdict       " << (report.verdict ? "true" : "false") << "\n";
        os << "precision     " << (report.precision_flag ? "guarded (high precision used)" : "ok") << "\n";
        break;
    case Format::csv: os << bound_report_csv_header(report) << "\n" << bound_report_csv_row(report) << "\n"; break;
    case Format::json: os << to_json(report).dump(2) << "\n"; break;
    }
}

int cmd_bounds_threshold(const RunConfig& cfg)
{
    const PrimeTable table = make_table(cfg);
    const ThresholdResult t = find_threshold(table, cfg.precision_guard);
    Output out(cfg.out);
    auto& os = out.stream();
    switch (cfg.format) {
    case Format::table:
        os << "crossing at n=" << t.threshold << "\n" << std::setprecision(17);
        os << "restricted_log_sum(" << t.threshold - 1 << ") = " << t.sum_before << " <= " << t.constant << "\n";
        os << "restricted_log_sum(" << t.threshold << ") = " << t.sum_at << " > " << t.constant << "\n";
        os << "high precision path: " << (t.high_precision_used ? "used" : "not needed") << "\n";
        break;
    case Format::csv:
        os << "threshold,sum_before,constant,sum_at,high_precision_used\n";
        os << t.threshold << "," << format_double(t.sum_before) << "," << format_double(t.constant) << ","
           << format_double(t.sum_at) << "," << (t.high_precision_used ? "true" : "false") << "\n";
        break;
    case Format::json:
        os << ojson{{"threshold", dec(t.threshold)},
                    {"sum_before", t.sum_before},
                    {"constant", t.constant},
                    {"sum_at", t.sum_at},
                    {"high_precision_used", t.high_precision_used}}
                  .dump(2)
           << "\n";
        break;
    }
    return 0;
}

int cmd_bounds_asymptotic(const RunConfig& cfg, const std::vector<u64>& ns)
{
    const PrimeTable table = make_table(cfg);
    const auto rows = log_sum_asymptotic_report(table, ns);
    Output out(cfg.out);
    auto& os = out.stream();
    if (cfg.format == Format::json) {
        ojson arr = ojson::array();
        for (const auto& [n, d] : rows) arr.push_back({{"n", dec(n)}, {"deviation", d}});
        os << arr.dump(2) << "\n";
        return 0;
    }
    os << "n,deviation\n";
    for (const auto& [n, d] : rows) os << n << "," << format_double(d) << "\n";
    return 0;
}

int cmd_chain(const RunConfig& cfg, u64 max_n)
{
    if (max_n < 4) throw UsageError("chain: --max must be >= 4");
    if (cfg.sieve_limit < 2 * max_n + 2) throw UsageError("chain: --sieve-limit must be >= 2*max+2");
    const PrimeTable table = make_table(cfg);
    const VerificationReport report = full_verification(max_n, std::min(cfg.n_direct, max_n), table, cfg.jobs);
    if (!report.ok) {
        ojson detail;
        if (report.uncovered) detail["uncovered"] = dec(*report.uncovered);
        throw VerificationFailure(report.failure, detail);
    }

    const ojson chain_json = to_json(report.chain);
    if (!cfg.out.empty()) {
        Output file(cfg.out);
        file.stream() << chain_json.dump(2) << "\n";
    }
    auto& os = std::cout;
    switch (cfg.format) {
    case Format::table:
        for (const auto& c : report.chain.certificates)
            os << "p=" << c.p << " (m=" << c.m << ")  covers [" << c.lo << ", " << c.hi << "]\n";
        os << "verified: every n in [" << report.chain.target_lo << ", " << max_n << "] covered by "
           << report.chain.certificates.size() << " certificates; direct checks n<=" << report.direct.size()
           << " found the single square P_3 = 10^2\n";
        break;
    case Format::csv:
        os << "p,m,lo,hi,next_root\n";
        for (const auto& c : report.chain.certificates)
            os << c.p << "," << c.m << "," << c.lo << "," << c.hi << "," << c.next_root << "\n";
        break;
    case Format::json:
        if (cfg.out.empty()) os << chain_json.dump(2) << "\n";
        break;
    }
    return 0;
}

int cmd_chain_verify(const RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read chain file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw VerificationFailure("malformed-chain-file", {{"detail", e.what()}});
    }
    CoverageChain chain;
    try {
        chain = chain_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw VerificationFailure("malformed-chain-file", {{"detail", e.what()}});
    }
    for (std::size_t i = 0; i < chain.certificates.size(); ++i) {
        const auto v = verify_certificate(chain.certificates[i]);
        if (!v)
            throw VerificationFailure("certificate-rejected",
                                      {{"index", dec(i)}, {"reason", std::string(to_string(v.reason))}});
    }
    if (const auto gap = chain.first_gap())
        throw VerificationFailure("coverage-gap", {{"uncovered", dec(*gap)}});
    (void)cfg;
    std::cout << "chain file verified: " << chain.certificates.size() << " certificates cover ["
              << chain.target_lo << ", " << chain.target_hi << "]\n";
    return 0;
}

int cmd_angles(const RunConfig& cfg, u64 n)
{
    if (n < 1) throw UsageError("angles: n must be >= 1");
    const double s = angle_sum(n);
    const double ratio = s / std::numbers::pi;
    Output out(cfg.out);
    auto& os = out.stream();
    switch (cfg.format) {
    case Format::table:
        os << std::setprecision(17) << "sum_{k=1}^{" << n << "} arctan(1/k) = " << s << " = " << ratio
           << " * pi\n";
        break;
    case Format::csv: os << "n,angle_sum,ratio_to_pi\n" << n << "," << format_double(s) << "," << format_double(ratio) << "\n"; break;
    case Format::json: os << ojson{{"n", dec(n)}, {"angle_sum", s}, {"ratio_to_pi", ratio}}.dump(2) << "\n"; break;
    }
    return 0;
}

u64 sieve_limit_default()
{
    if (const char* env = std::getenv("PRODSQ_SIEVE_LIMIT")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("PRODSQ_SIEVE_LIMIT is not a natural number: ") + env);
    }
    return kDefaultSieveLimit;
}

}  // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    try {
        cfg.sieve_limit = sieve_limit_default();
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    CLI::App app{"Exact checks that ∏_{k=1}^n (k²+1) is a perfect square only for n = 3"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--sieve-limit", cfg.sieve_limit, "Sieve primes up to this bound (env PRODSQ_SIEVE_LIMIT)")
        ->check(CLI::Range(u64{2}, u64{2'000'000'000}));
    app.add_option("--n-direct", cfg.n_direct, "Largest n tested by direct big-integer isqrt");
    app.add_option("--precision-guard", cfg.precision_guard,
                   "Margins below this trigger high-precision re-evaluation")
        ->check(CLI::NonNegativeNumber);
    const std::map<std::string, Format> formats{{"table", Format::table}, {"csv", Format::csv}, {"json", Format::json}};
    app.add_option_function<std::string>(
           "--format", [&](const std::string& name) { cfg.format = formats.at(name); }, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->default_str("table");
    app.add_option("--jobs", cfg.jobs, "OpenMP threads for scans (0 = default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", cfg.out, "Write output to this file");

    u64 check_n = 0;
    bool witness_only = false;
    auto* check = app.add_subcommand("check", "Square status of P_n. CSV columns: " + std::string(kScanColumns));
    check->add_option("n", check_n)->required();
    check->add_flag("--witness-only", witness_only, "Only search for a non-square witness prime");

    u64 witness_n = 0;
    auto* witness = app.add_subcommand("witness", "Alias of check --witness-only");
    witness->add_option("n", witness_n)->required();

    u64 scan_lo = 0, scan_hi = 0;
    auto* scan = app.add_subcommand("scan", "Square status for every n in [lo, hi]. CSV columns: " +
                                                std::string(kScanColumns));
    scan->add_option("lo", scan_lo)->required();
    scan->add_option("hi", scan_hi)->required();

    bool threshold = false;
    u64 report_n = 0;
    std::vector<u64> asymptotic_ns;
    auto* bounds = app.add_subcommand(
        "bounds",
        "--threshold: CSV threshold,sum_before,constant,sum_at,high_precision_used; "
        "--report n: CSV n,lhs,<3 rhs terms>,rhs_total,verdict,precision_flag; "
        "--asymptotic n...: CSV n,deviation");
    auto* opt_threshold = bounds->add_flag("--threshold", threshold, "Find where the restricted log sum crosses 4+log2/4");
    auto* opt_report = bounds->add_option("--report", report_n, "Evaluate the conditional inequality at n");
    auto* opt_asym = bounds->add_option("--asymptotic", asymptotic_ns, "Report Σ log p/(p−1) − log n");
    opt_threshold->excludes(opt_report)->excludes(opt_asym);
    opt_report->excludes(opt_asym);
    bounds->require_option(1);

    u64 chain_max = 0;
    std::string verify_path;
    auto* chain = app.add_subcommand("chain", "Build and verify a covering certificate chain. CSV columns: p,m,lo,hi,next_root");
    auto* opt_max = chain->add_option("--max", chain_max, "Cover every n in [4, max]");
    auto* opt_verify = chain->add_option("--verify", verify_path, "Verify an existing chain file instead");
    opt_max->excludes(opt_verify);
    chain->require_option(1);

    u64 angles_n = 0;
    auto* angles = app.add_subcommand("angles", "Σ_{k<=n} arctan(1/k) and its ratio to π. CSV columns: n,angle_sum,ratio_to_pi");
    angles->add_option("n", angles_n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*check) return cmd_check(cfg, check_n, witness_only);
        if (*witness) return cmd_check(cfg, witness_n, true);
        if (*scan) return cmd_scan(cfg, scan_lo, scan_hi);
        if (*bounds) {
            if (threshold) return cmd_bounds_threshold(cfg);
            if (*opt_report) {
                const PrimeTable table = make_table(cfg);
                emit_report(conditional_inequality_report(table, report_n, cfg.precision_guard), cfg);
                return 0;
            }
            return cmd_bounds_asymptotic(cfg, asymptotic_ns);
        }
        if (*chain) return *opt_verify ? cmd_chain_verify(cfg, verify_path) : cmd_chain(cfg, chain_max);
        if (*angles) return cmd_angles(cfg, angles_n);
    } catch (const VerificationFailure& e) {
        std::cerr << e.payload.dump() << "\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
