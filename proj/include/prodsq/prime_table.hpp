#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "prodsq/modular.hpp"

namespace prodsq {

inline constexpr u64 kDefaultSieveLimit = 10'000'000;

/// Sorted primes up to a limit, built once by a sieve of Eratosthenes.
///
/// Immutable after construction; concurrent readers need no locking.
/// Queries for n above limit() throw std::out_of_range.
class PrimeTable {
public:
    explicit PrimeTable(u64 limit);

    u64 limit() const { return limit_; }
    std::span<const u64> primes() const { return primes_; }

    // Primes p with lo <= p <= hi (hi clamped to limit()).
    std::span<const u64> primes_in(u64 lo, u64 hi) const;

    bool is_prime(u64 n) const;

    // #{p <= n}
    u64 pi(u64 n) const;
    // #{p <= n : p ≡ a (mod b)}; requires b >= 2, a < b.
    u64 pi_mod(u64 n, u64 a, u64 b) const;

    // ϑ(n) = Σ_{p<=n} log p
    double theta(u64 n) const;
    // ψ(n) = Σ_{p^m<=n} log p
    double psi(u64 n) const;

    // Smallest prime in the open interval (n, 2n). Requires n > 1 and 2n <= limit().
    u64 bertrand_witness(u64 n) const;

private:
    void require_in_range(u64 n, const char* what) const;

    u64 limit_;
    std::vector<u64> primes_;
    std::vector<double> theta_prefix_;
    std::vector<std::uint32_t> one_mod4_prefix_;
};

PrimeTable build_prime_table(u64 limit);

// Largest x with x^k <= n.
u64 integer_root(u64 n, unsigned k);

}  // namespace prodsq
