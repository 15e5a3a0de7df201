#pragma once

#include <optional>

#include <gmpxx.h>

#include "prodsq/modular.hpp"
#include "prodsq/prime_table.hpp"

namespace prodsq {

struct ProductValue {
    u64 n = 0;
    mpz_class value;  // ∏_{k=1}^n (k^2 + 1); 1 for n = 0
};

ProductValue product_pn(u64 n);

// ⌊√N⌋ by Newton iteration from a power-of-two overestimate. N must be >= 0.
mpz_class isqrt(const mpz_class& N);

// b with b² = N, if any. Residues mod 64 and mod 63 reject most non-squares
// before isqrt runs.
std::optional<mpz_class> is_perfect_square(const mpz_class& N);

// P_n > (n!)^2
bool check_factorial_bound(u64 n);

struct Witness {
    u64 p = 0;
    u64 alpha = 0;
};

/// A prime p ≡ 1 (mod 4) with v_p(P_n) odd, or nullopt if none is found.
///
/// Primes of the form m²+1 with m <= n <= m²−m are tried first, smallest m
/// first; on that interval v_p(P_n) = 1. Otherwise primes ≡ 1 (mod 4) up to
/// min(n²+1, table.limit()) are scanned in ascending order. nullopt does not
/// mean P_n is a square.
std::optional<Witness> find_nonsquare_witness(u64 n, const PrimeTable& table);

}  // namespace prodsq
