#include "prodsq/certificates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "prodsq/valuations.hpp"

namespace prodsq {

namespace {

bool prime_via_table(u64 n, const PrimeTable& table)
{
    return n <= table.limit() ? table.is_prime(n) : is_prime(n);
}

// Smallest m >= 2 with m² − m >= x.
u64 smallest_root_reaching(u64 x)
{
    u64 m = static_cast<u64>(std::sqrt(static_cast<double>(x)));
    m = std::max<u64>(m, 2);
    while (m > 2 && m * (m - 1) >= x) --m;
    while (m * (m - 1) < x) ++m;
    return m;
}

u64 parse_decimal(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (!v.is_string()) throw std::invalid_argument(std::string("field '") + key + "' must be a decimal string");
    const auto& s = v.get_ref<const std::string&>();
    u64 out = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument(std::string("field '") + key + "' is not a natural number: " + s);
    return out;
}

}  // namespace

CoverageGap::CoverageGap(u64 gap_lo, u64 gap_hi)
    : std::runtime_error("no covering prime for n in [" + std::to_string(gap_lo) + ", " + std::to_string(gap_hi) +
                         "]"),
      gap_lo_(gap_lo),
      gap_hi_(gap_hi)
{
}

std::optional<std::size_t> CoverageChain::covering(u64 n) const
{
    for (std::size_t i = 0; i < certificates.size(); ++i)
        if (certificates[i].covers(n)) return i;
    return std::nullopt;
}

std::optional<u64> CoverageChain::first_gap() const
{
    auto sorted = certificates;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    u64 frontier = target_lo - 1;
    for (const auto& c : sorted) {
        if (frontier >= target_hi) break;
        if (c.lo > frontier + 1) return frontier + 1;
        frontier = std::max(frontier, c.hi);
    }
    if (frontier < target_hi) return frontier + 1;
    return std::nullopt;
}

std::optional<NonSquareCertificate> covering_prime(u64 m)
{
    if (m < 2) throw std::invalid_argument("covering_prime: m must be >= 2");
    if (m > (1ULL << 31)) throw std::out_of_range("covering_prime: m too large");
    const u64 p = m * m + 1;
    if (!is_prime(p)) return std::nullopt;
    return NonSquareCertificate{p, m, m, p - m - 1, p - m};
}

CoverageChain build_chain(u64 target_hi, const PrimeTable& table)
{
    if (target_hi < 4) throw std::invalid_argument("build_chain: target_hi must be >= 4");
    if (target_hi > kMaxValuationN) throw std::out_of_range("build_chain: target_hi too large");

    CoverageChain chain;
    chain.target_hi = target_hi;
    u64 frontier = chain.target_lo - 1;
    while (frontier < target_hi) {
        const u64 max_m = frontier + 1;
        std::optional<u64> pick;
        for (u64 m = smallest_root_reaching(target_hi); m <= max_m; ++m) {
            if (prime_via_table(m * m + 1, table)) {
                pick = m;
                break;
            }
        }
        if (!pick) {
            const u64 floor_m = smallest_root_reaching(frontier + 1);
            for (u64 m = max_m; m >= floor_m && m >= 2; --m) {
                if (prime_via_table(m * m + 1, table)) {
                    pick = m;
                    break;
                }
            }
        }
        if (!pick) throw CoverageGap(frontier + 1, target_hi);
        const auto cert = covering_prime(*pick);
        chain.certificates.push_back(*cert);
        frontier = cert->hi;
    }
    return chain;
}

std::string_view to_string(CertificateFailure reason)
{
    switch (reason) {
    case CertificateFailure::none: return "none";
    case CertificateFailure::root_too_small: return "root-too-small";
    case CertificateFailure::not_m_squared_plus_one: return "p-not-m-squared-plus-one";
    case CertificateFailure::not_prime: return "p-not-prime";
    case CertificateFailure::not_one_mod_four: return "p-not-1-mod-4";
    case CertificateFailure::lo_mismatch: return "lo-not-m";
    case CertificateFailure::empty_interval: return "empty-interval";
    case CertificateFailure::second_root_inside: return "second-root-inside-interval";
    case CertificateFailure::valuation_not_one: return "valuation-not-one";
    case CertificateFailure::hi_not_maximal: return "hi-not-p-minus-m-minus-1";
    case CertificateFailure::next_root_mismatch: return "next-root-mismatch";
    }
    return "unknown";
}

CertificateVerdict verify_certificate(const NonSquareCertificate& c)
{
    auto fail = [](CertificateFailure r) { return CertificateVerdict{false, r}; };
    if (c.m < 2) return fail(CertificateFailure::root_too_small);
    if (c.m > (1ULL << 31) || c.p != c.m * c.m + 1) return fail(CertificateFailure::not_m_squared_plus_one);
    if (!is_prime(c.p)) return fail(CertificateFailure::not_prime);
    if (c.p % 4 != 1) return fail(CertificateFailure::not_one_mod_four);
    if (c.lo != c.m) return fail(CertificateFailure::lo_mismatch);
    if (c.lo > c.hi) return fail(CertificateFailure::empty_interval);
    if (c.p - c.m <= c.hi) return fail(CertificateFailure::second_root_inside);
    // m² + 1 = p, so the first factor is p¹ and not p²
    const bool single_factor = (static_cast<u128>(c.m) * c.m + 1) % (static_cast<u128>(c.p) * c.p) != 0;
    if (!single_factor || c.hi > kMaxValuationN || alpha_exact(c.p, c.hi, c.m).alpha != 1)
        return fail(CertificateFailure::valuation_not_one);
    if (c.hi != c.p - c.m - 1) return fail(CertificateFailure::hi_not_maximal);
    if (c.next_root != c.p - c.m) return fail(CertificateFailure::next_root_mismatch);
    return {true, CertificateFailure::none};
}

VerificationReport full_verification(u64 target_hi, u64 n_direct, const PrimeTable& table, int jobs)
{
    VerificationReport report;
    try {
        report.chain = build_chain(target_hi, table);
    } catch (const CoverageGap& gap) {
        report.failure = gap.what();
        report.uncovered = gap.gap_lo();
        return report;
    }

    for (std::size_t i = 0; i < report.chain.certificates.size(); ++i) {
        const auto verdict = verify_certificate(report.chain.certificates[i]);
        if (!verdict) {
            report.failure = "certificate " + std::to_string(i) + " (p=" +
                             std::to_string(report.chain.certificates[i].p) +
                             ") rejected: " + std::string(to_string(verdict.reason));
            return report;
        }
    }

    for (u64 n = report.chain.target_lo; n <= target_hi; ++n) {
        const auto idx = report.chain.covering(n);
        if (!idx) {
            report.failure = "n=" + std::to_string(n) + " is not covered by any certificate";
            report.uncovered = n;
            return report;
        }
        report.coverage.push_back(*idx);
    }

    const u64 direct_hi = std::max<u64>(3, n_direct);
    report.direct = scan_parallel(1, direct_hi, direct_hi, table, jobs);
    for (const auto& row : report.direct) {
        const bool expect_square = row.n == 3;
        const bool is_square = row.status == SquareStatus::square;
        if (expect_square != is_square) {
            report.failure = "direct check: P_" + std::to_string(row.n) + (is_square ? " is" : " is not") +
                             " a perfect square";
            return report;
        }
        if (expect_square && *row.root != 10) {
            report.failure = "direct check: P_3 root is " + row.root->get_str() + ", expected 10";
            return report;
        }
    }

    report.ok = true;
    return report;
}

nlohmann::ordered_json to_json(const NonSquareCertificate& c)
{
    return {
        {"p", std::to_string(c.p)},
        {"m", std::to_string(c.m)},
        {"lo", std::to_string(c.lo)},
        {"hi", std::to_string(c.hi)},
        {"next_root", std::to_string(c.next_root)},
    };
}

nlohmann::ordered_json to_json(const CoverageChain& chain)
{
    nlohmann::ordered_json certs = nlohmann::ordered_json::array();
    for (const auto& c : chain.certificates) certs.push_back(to_json(c));
    return {
        {"target_lo", std::to_string(chain.target_lo)},
        {"target_hi", std::to_string(chain.target_hi)},
        {"certificates", certs},
    };
}

NonSquareCertificate certificate_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw std::invalid_argument("certificate must be a JSON object");
    return {parse_decimal(j, "p"), parse_decimal(j, "m"), parse_decimal(j, "lo"), parse_decimal(j, "hi"),
            parse_decimal(j, "next_root")};
}

CoverageChain chain_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw std::invalid_argument("chain must be a JSON object");
    CoverageChain chain;
    chain.target_lo = parse_decimal(j, "target_lo");
    chain.target_hi = parse_decimal(j, "target_hi");
    if (!j.contains("certificates") || !j.at("certificates").is_array())
        throw std::invalid_argument("chain: 'certificates' must be an array");
    for (const auto& c : j.at("certificates")) chain.certificates.push_back(certificate_from_json(c));
    return chain;
}

}  // namespace prodsq
