#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "prodsq/modular.hpp"
#include "prodsq/parallel_kernels.hpp"
#include "prodsq/prime_table.hpp"

namespace prodsq {

/// Proof that P_n is not a square for every n in [lo, hi].
///
/// p = m² + 1 is prime, so p divides k² + 1 exactly for k ≡ ±m (mod p). The
/// first such k is m, which contributes exactly one factor of p; the next is
/// p − m. Every n with m <= n < p − m therefore has v_p(P_n) = 1.
struct NonSquareCertificate {
    u64 p = 0;
    u64 m = 0;
    u64 lo = 0;
    u64 hi = 0;
    u64 next_root = 0;

    bool covers(u64 n) const { return lo <= n && n <= hi; }
    friend bool operator==(const NonSquareCertificate&, const NonSquareCertificate&) = default;
};

struct CoverageChain {
    u64 target_lo = 4;
    u64 target_hi = 0;
    std::vector<NonSquareCertificate> certificates;

    // index of the first certificate covering n
    std::optional<std::size_t> covering(u64 n) const;
    // first n in [target_lo, target_hi] not covered by any certificate
    std::optional<u64> first_gap() const;
};

class CoverageGap : public std::runtime_error {
public:
    CoverageGap(u64 gap_lo, u64 gap_hi);
    u64 gap_lo() const { return gap_lo_; }
    u64 gap_hi() const { return gap_hi_; }

private:
    u64 gap_lo_;
    u64 gap_hi_;
};

// Certificate for p = m² + 1 if that is prime. Requires m >= 2.
std::optional<NonSquareCertificate> covering_prime(u64 m);

/// Greedy chain covering [4, target_hi].
///
/// At each step the admissible roots are m <= frontier + 1 with m² + 1 prime
/// and m² − m > frontier. If one of them already reaches target_hi the
/// smallest such m is taken; otherwise the one with the largest hi. Throws
/// CoverageGap if no admissible root exists.
CoverageChain build_chain(u64 target_hi, const PrimeTable& table);

enum class CertificateFailure {
    none,
    root_too_small,
    not_m_squared_plus_one,
    not_prime,
    not_one_mod_four,
    lo_mismatch,
    empty_interval,
    second_root_inside,
    valuation_not_one,
    hi_not_maximal,
    next_root_mismatch,
};

std::string_view to_string(CertificateFailure reason);

struct CertificateVerdict {
    bool ok = false;
    CertificateFailure reason = CertificateFailure::none;
    explicit operator bool() const { return ok; }
};

// Re-derives every certificate invariant from the raw numbers.
CertificateVerdict verify_certificate(const NonSquareCertificate& cert);

struct VerificationReport {
    bool ok = false;
    std::string failure;  // empty when ok
    CoverageChain chain;
    // coverage[i] = index into chain.certificates covering n = chain.target_lo + i
    std::vector<std::size_t> coverage;
    // direct big-integer checks for n = 1 .. max(3, n_direct)
    std::vector<ScanRow> direct;
    std::optional<u64> uncovered;
};

/// Builds and verifies a chain for [4, target_hi] and confirms by direct
/// big-integer checks that P_1, P_2 and P_4..P_{n_direct} are non-squares and
/// P_3 = 10².
VerificationReport full_verification(u64 target_hi, u64 n_direct, const PrimeTable& table, int jobs = 0);

nlohmann::ordered_json to_json(const NonSquareCertificate& cert);
nlohmann::ordered_json to_json(const CoverageChain& chain);
// Throw std::invalid_argument on malformed input.
NonSquareCertificate certificate_from_json(const nlohmann::json& j);
CoverageChain chain_from_json(const nlohmann::json& j);

}  // namespace prodsq
