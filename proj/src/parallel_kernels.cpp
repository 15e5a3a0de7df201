#include "prodsq/parallel_kernels.hpp"

#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include "prodsq/valuations.hpp"

namespace prodsq {

namespace {

constexpr u64 kScanBlock = 16;

void require_scan_range(u64 lo, u64 hi)
{
    if (lo < 1 || lo > hi) throw std::invalid_argument("scan: need 1 <= lo <= hi");
    if (hi > kMaxValuationN) throw std::out_of_range("scan: hi too large");
}

ScanRow classify(u64 n, const mpz_class& product, u64 n_direct, const PrimeTable& table)
{
    ScanRow row;
    row.n = n;
    row.witness = find_nonsquare_witness(n, table);
    if (n <= n_direct) {
        row.direct_checked = true;
        row.root = is_perfect_square(product);
        row.status = row.root ? SquareStatus::square : SquareStatus::non_square;
    } else {
        row.status = row.witness ? SquareStatus::non_square : SquareStatus::unknown;
    }
    return row;
}

void multiply_factor(mpz_class& product, u64 k)
{
    product *= static_cast<unsigned long>(k * k + 1);
}

int thread_count(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

}  // namespace

std::string_view to_string(SquareStatus status)
{
    switch (status) {
    case SquareStatus::square: return "square";
    case SquareStatus::non_square: return "non-square";
    case SquareStatus::unknown: return "unknown";
    }
    return "unknown";
}

std::vector<ScanRow> scan_serial(u64 lo, u64 hi, u64 n_direct, const PrimeTable& table)
{
    require_scan_range(lo, hi);
    std::vector<ScanRow> rows;
    rows.reserve(hi - lo + 1);
    mpz_class product = product_pn(lo - 1).value;
    for (u64 n = lo; n <= hi; ++n) {
        multiply_factor(product, n);
        rows.push_back(classify(n, product, n_direct, table));
    }
    return rows;
}

std::vector<ScanRow> scan_parallel(u64 lo, u64 hi, u64 n_direct, const PrimeTable& table, int jobs)
{
    require_scan_range(lo, hi);
    const u64 count = hi - lo + 1;
    const auto blocks = static_cast<long long>((count + kScanBlock - 1) / kScanBlock);
    std::vector<ScanRow> rows(count);

    // blocks get more expensive with n, so hand them out dynamically
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count(jobs))
    for (long long b = 0; b < blocks; ++b) {
        const u64 first = lo + static_cast<u64>(b) * kScanBlock;
        const u64 last = std::min(hi, first + kScanBlock - 1);
        mpz_class product = product_pn(first - 1).value;
        for (u64 n = first; n <= last; ++n) {
            multiply_factor(product, n);
            rows[n - lo] = classify(n, product, n_direct, table);
        }
    }
    return rows;
}

std::vector<OracleMismatch> alpha_oracle_sweep_serial(std::span<const u64> primes, u64 n_max)
{
    std::vector<OracleMismatch> mismatches;
    for (u64 p : primes) {
        for (u64 n = 0; n <= n_max; ++n) {
            const u64 exact = alpha_exact(p, n).alpha;
            const u64 brute = alpha_bruteforce(p, n);
            if (exact != brute) mismatches.push_back({p, n, exact, brute});
        }
    }
    return mismatches;
}

std::vector<OracleMismatch> alpha_oracle_sweep_parallel(std::span<const u64> primes, u64 n_max, int jobs)
{
    for (u64 p : primes)
        if (!is_prime(p)) throw std::invalid_argument("alpha_oracle_sweep: non-prime input");
    if (n_max > kMaxValuationN) throw std::out_of_range("alpha_oracle_sweep: n_max too large");
    const auto np = static_cast<long long>(primes.size());
    const auto width = static_cast<long long>(n_max + 1);
    std::vector<OracleMismatch> slots(static_cast<std::size_t>(np * width));
    std::vector<unsigned char> bad(slots.size(), 0);

#pragma omp parallel for collapse(2) schedule(dynamic, 64) num_threads(thread_count(jobs))
    for (long long i = 0; i < np; ++i) {
        for (long long n = 0; n < width; ++n) {
            const u64 p = primes[static_cast<std::size_t>(i)];
            const u64 exact = alpha_exact(p, static_cast<u64>(n)).alpha;
            const u64 brute = alpha_bruteforce(p, static_cast<u64>(n));
            if (exact != brute) {
                const auto idx = static_cast<std::size_t>(i * width + n);
                slots[idx] = {p, static_cast<u64>(n), exact, brute};
                bad[idx] = 1;
            }
        }
    }

    std::vector<OracleMismatch> mismatches;
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (bad[i]) mismatches.push_back(slots[i]);
    return mismatches;
}

}  // namespace prodsq
