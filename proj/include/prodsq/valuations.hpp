#pragma once

#include <vector>

#include "prodsq/bound_report.hpp"
#include "prodsq/modular.hpp"
#include "prodsq/prime_table.hpp"

namespace prodsq {

// Valuations of P_n = ∏_{k=1}^n (k^2 + 1) and of n!.
//
// alpha = v_p(P_n), beta = v_p(n!). For p ≡ 1 (mod 4) the level-j count is
// the number of k in [1, n] with p^j | k^2 + 1, i.e. k ≡ ±r_j (mod p^j) where
// r_j is the Hensel-lifted root of -1. Levels run while p^j <= n^2 + 1.
// n is limited to kMaxValuationN so that n^2 + 1 fits in 64 bits.

inline constexpr u64 kMaxValuationN = 1ULL << 31;

struct LevelCount {
    unsigned level = 0;
    u64 count = 0;
};

struct ValuationProfile {
    u64 p = 0;
    u64 n = 0;
    u64 alpha = 0;
    u64 beta = 0;
    std::vector<LevelCount> per_level;
};

// Legendre's formula Σ_j ⌊n/p^j⌋.
u64 beta_factorial(u64 p, u64 n);

ValuationProfile alpha_exact(u64 p, u64 n);

// Same as alpha_exact but reuses a precomputed level-1 root r (r^2 ≡ -1 mod p);
// ignored for p = 2 and p ≡ 3 (mod 4).
ValuationProfile alpha_exact(u64 p, u64 n, u64 level1_root);

// Σ_k v_p(k^2 + 1) by repeated division. Independent of the lifting path.
u64 alpha_bruteforce(u64 p, u64 n);

// Σ_{p^j <= n^2+1} 2⌈n/p^j⌉; requires p ≡ 1 (mod 4).
u64 alpha_upper_bound(u64 p, u64 n);

// #{k in [1, n] : k ≡ r (mod m)} for 0 < r < m.
inline u64 count_residue(u64 n, u64 r, u64 m) { return r <= n ? (n - r) / m + 1 : 0; }

/// ½α_p − β_p against log(n²+1)/log p for p ≡ 1 (mod 4).
///
/// The verdict is decided in exact integer arithmetic: with h = α − 2β the
/// inequality holds iff h <= 0 or p^h <= (n²+1)². lhs/rhs are reported as
/// doubles for display.
BoundReport check_half_alpha_bound(u64 p, u64 n);

struct SquaredPrimeCheck {
    u64 n = 0;
    bool verdict = true;
    // every prime with alpha >= 2 and its alpha
    std::vector<std::pair<u64, u64>> checked;
};

// For every prime p with v_p(P_n) >= 2, checks p < 2n. Needs n^2 + 1 <= table.limit().
SquaredPrimeCheck check_p_squared_theorem(u64 n, const PrimeTable& table);

}  // namespace prodsq
