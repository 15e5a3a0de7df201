#pragma once

#include <cstdint>

namespace prodsq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m);

// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 inverse_mod(u64 a, u64 m);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument
/// unless p is an odd prime.
int legendre_symbol(std::int64_t a, u64 p);

/// The smaller square root of -1 modulo a prime p ≡ 1 (mod 4).
///
/// Below `kSqrtEnumerationCutoff` the root is found by enumeration; above it,
/// r = c^((p-1)/4) for a quadratic non-residue c. Returns min(r, p - r).
u64 sqrt_minus_one(u64 p);

inline constexpr u64 kSqrtEnumerationCutoff = 10'000;

/// A square root of -1 modulo p^level.
struct RootLift {
    u64 p = 0;
    unsigned level = 1;
    u64 root = 0;

    u64 modulus() const;
    bool valid() const;
};

/// Lifts a root of x^2 + 1 ≡ 0 (mod p^j) to one modulo p^(j+1).
///
/// With m = p^j and t = (r^2 + 1)/m, the correction y solves
/// 2·r·y ≡ -t (mod p) and the new root is r + m·y. The result is congruent
/// to the input modulo p^j. Throws std::overflow_error if p^(j+1) does not
/// fit in 64 bits and std::invalid_argument for an invalid input lift.
RootLift hensel_lift(const RootLift& lift);

// Lift of sqrt_minus_one(p) to the requested level.
RootLift root_of_minus_one(u64 p, unsigned level);

}  // namespace prodsq
