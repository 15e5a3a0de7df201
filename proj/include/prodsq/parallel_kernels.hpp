#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "prodsq/product_square.hpp"

namespace prodsq {

// Each kernel has an OpenMP version and a serial reference that the tests and
// the benchmark compare against. Output order never depends on scheduling.
// jobs <= 0 means the OpenMP default thread count.

enum class SquareStatus { square, non_square, unknown };

std::string_view to_string(SquareStatus status);

struct ScanRow {
    u64 n = 0;
    SquareStatus status = SquareStatus::unknown;
    std::optional<mpz_class> root;  // b with b² = P_n when square
    std::optional<Witness> witness;
    bool direct_checked = false;    // P_n tested with isqrt
};

// Status of P_n for n in [lo, hi]: direct isqrt for n <= n_direct, witness
// search for every n. Requires 1 <= lo <= hi.
std::vector<ScanRow> scan_serial(u64 lo, u64 hi, u64 n_direct, const PrimeTable& table);
std::vector<ScanRow> scan_parallel(u64 lo, u64 hi, u64 n_direct, const PrimeTable& table, int jobs = 0);

struct OracleMismatch {
    u64 p = 0;
    u64 n = 0;
    u64 exact = 0;
    u64 brute = 0;
};

// alpha_exact vs alpha_bruteforce for every p in primes and 0 <= n <= n_max.
std::vector<OracleMismatch> alpha_oracle_sweep_serial(std::span<const u64> primes, u64 n_max);
std::vector<OracleMismatch> alpha_oracle_sweep_parallel(std::span<const u64> primes, u64 n_max, int jobs = 0);

}  // namespace prodsq
