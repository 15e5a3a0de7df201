#pragma once

#include <utility>
#include <vector>

#include "prodsq/bound_report.hpp"
#include "prodsq/prime_table.hpp"

namespace prodsq {

inline constexpr double kDefaultPrecisionGuard = 1e-9;
// working precision of the re-evaluation path
inline constexpr long kHighPrecisionBits = 256;

// Σ_{p<=n, p≢1 (mod 4)} log p/(p−1), compensated double summation.
double restricted_log_sum(const PrimeTable& table, u64 n);

// Same sum evaluated with MPFR at kHighPrecisionBits and rounded to double.
// Mostly useful to see how far the double path drifts.
double restricted_log_sum_high_precision(const PrimeTable& table, u64 n);

// 4 + (log 2)/4
double bound_constant();

struct ThresholdResult {
    u64 threshold = 0;
    double sum_before = 0.0;  // restricted_log_sum(threshold - 1)
    double sum_at = 0.0;      // restricted_log_sum(threshold)
    double constant = 0.0;
    bool high_precision_used = false;
};

/// Smallest n with restricted_log_sum(n) > bound_constant().
///
/// The sum only moves at primes ≢ 1 (mod 4), so the answer is such a prime.
/// When either side of the crossing lies within `guard` of the constant, the
/// comparison is redone with MPFR before it is accepted.
/// Throws std::out_of_range if table.limit() < 4000 or no crossing is found.
ThresholdResult find_threshold(const PrimeTable& table, double guard = kDefaultPrecisionGuard);

/// Both sides of
///   (n−1)·Σ_{p<=n, p≢1 (4)} log p/(p−1) < (n+1)·log2/4 + log(n²+1)·π(n) + Σ_{n<p<2n} log p,
/// which has to hold whenever P_n is a square. A false verdict means P_n is not
/// a square. Requires 2n <= table.limit().
BoundReport conditional_inequality_report(const PrimeTable& table, u64 n, double guard = kDefaultPrecisionGuard);

// Σ_{n<p<2n} log p summed directly over the primes of the interval.
double interval_theta_sum(const PrimeTable& table, u64 n);

// (n, Σ_{p<=n} log p/(p−1) − log n) for each requested n.
std::vector<std::pair<u64, double>> log_sum_asymptotic_report(const PrimeTable& table,
                                                              const std::vector<u64>& n_values);

// Σ_{k=1}^n arctan(1/k)
double angle_sum(u64 n);

}  // namespace prodsq
