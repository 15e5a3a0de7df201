#include "prodsq/valuations.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace prodsq {

namespace {

void require_prime(u64 p, const char* what)
{
    if (!is_prime(p)) throw std::invalid_argument(std::string(what) + ": p=" + std::to_string(p) + " is not prime");
}

void require_n(u64 n, const char* what)
{
    if (n > kMaxValuationN)
        throw std::out_of_range(std::string(what) + ": n=" + std::to_string(n) + " too large for 64-bit k^2+1");
}

}  // namespace

u64 beta_factorial(u64 p, u64 n)
{
    if (p < 2) throw std::invalid_argument("beta_factorial: p must be >= 2");
    u64 total = 0;
    for (u64 pk = p; pk <= n; pk *= p) {
        total += n / pk;
        if (pk > n / p) break;
    }
    return total;
}

ValuationProfile alpha_exact(u64 p, u64 n)
{
    require_prime(p, "alpha_exact");
    if (p % 4 == 1 && n > 0) return alpha_exact(p, n, sqrt_minus_one(p));
    return alpha_exact(p, n, 0);
}

ValuationProfile alpha_exact(u64 p, u64 n, u64 level1_root)
{
    require_n(n, "alpha_exact");
    ValuationProfile prof;
    prof.p = p;
    prof.n = n;
    prof.beta = beta_factorial(p, n);
    if (n == 0) return prof;

    if (p == 2) {
        // k^2 + 1 ≡ 1 or 2 (mod 4): only odd k contribute, each exactly once
        prof.alpha = (n + 1) / 2;
        prof.per_level.push_back({1, prof.alpha});
        return prof;
    }
    if (p % 4 == 3) return prof;

    const u64 bound = n * n + 1;
    RootLift lift{p, 1, level1_root};
    if (!lift.valid()) throw std::invalid_argument("alpha_exact: level-1 root is not a square root of -1");
    u64 m = p;
    while (m <= bound) {
        const u64 c = count_residue(n, lift.root, m) + count_residue(n, m - lift.root, m);
        prof.per_level.push_back({lift.level, c});
        prof.alpha += c;
        if (m > bound / p) break;
        lift = hensel_lift(lift);
        m *= p;
    }
    return prof;
}

u64 alpha_bruteforce(u64 p, u64 n)
{
    if (p < 2) throw std::invalid_argument("alpha_bruteforce: p must be >= 2");
    require_n(n, "alpha_bruteforce");
    u64 total = 0;
    for (u64 k = 1; k <= n; ++k) {
        u64 v = k * k + 1;
        while (v % p == 0) {
            v /= p;
            ++total;
        }
    }
    return total;
}

u64 alpha_upper_bound(u64 p, u64 n)
{
    if (p % 4 != 1) throw std::invalid_argument("alpha_upper_bound: p must be ≡ 1 (mod 4)");
    require_prime(p, "alpha_upper_bound");
    require_n(n, "alpha_upper_bound");
    const u64 bound = n * n + 1;
    u64 total = 0;
    for (u64 pj = p; pj <= bound; pj *= p) {
        total += 2 * ((n + pj - 1) / pj);
        if (pj > bound / p) break;
    }
    return total;
}

BoundReport check_half_alpha_bound(u64 p, u64 n)
{
    if (p % 4 != 1) throw std::invalid_argument("check_half_alpha_bound: p must be ≡ 1 (mod 4)");
    const ValuationProfile prof = alpha_exact(p, n);
    const u64 bound = n * n + 1;

    BoundReport report;
    report.n = n;
    report.lhs = 0.5 * static_cast<double>(prof.alpha) - static_cast<double>(prof.beta);
    const double rhs = std::log(static_cast<double>(bound)) / std::log(static_cast<double>(p));
    report.rhs_terms.emplace_back("log(n^2+1)/log(p)", rhs);
    report.rhs_total = rhs;
    report.precision_flag = std::fabs(report.lhs - rhs) < 1e-9;

    const auto h = static_cast<long long>(prof.alpha) - 2 * static_cast<long long>(prof.beta);
    if (h <= 0) {
        report.verdict = true;
    } else {
        mpz_class lhs_pow, rhs_sq = mpz_class(std::to_string(bound));
        mpz_ui_pow_ui(lhs_pow.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(h));
        rhs_sq *= rhs_sq;
        report.verdict = lhs_pow <= rhs_sq;
    }
    return report;
}

SquaredPrimeCheck check_p_squared_theorem(u64 n, const PrimeTable& table)
{
    require_n(n, "check_p_squared_theorem");
    const u64 bound = n * n + 1;
    if (bound > table.limit())
        throw std::out_of_range("check_p_squared_theorem: n^2+1=" + std::to_string(bound) + " exceeds sieve limit");

    SquaredPrimeCheck result;
    result.n = n;
    for (u64 p : table.primes_in(2, bound)) {
        if (p != 2 && p % 4 != 1) continue;
        const u64 alpha = alpha_exact(p, n).alpha;
        if (alpha < 2) continue;
        result.checked.emplace_back(p, alpha);
        if (p >= 2 * n) result.verdict = false;
    }
    return result;
}

}  // namespace prodsq
