#include "prodsq/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prodsq/compensated_sum.hpp"

namespace prodsq {

PrimeTable::PrimeTable(u64 limit) : limit_(limit)
{
    if (limit < 2) throw std::invalid_argument("PrimeTable: limit must be >= 2");

    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }

    const double estimate = 1.3 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    primes_.reserve(static_cast<std::size_t>(estimate) + 8);
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes_.push_back(i);

    theta_prefix_.reserve(primes_.size());
    one_mod4_prefix_.reserve(primes_.size());
    CompensatedSum theta;
    std::uint32_t ones = 0;
    for (u64 p : primes_) {
        theta += std::log(static_cast<double>(p));
        theta_prefix_.push_back(theta.value());
        if (p % 4 == 1) ++ones;
        one_mod4_prefix_.push_back(ones);
    }
}

PrimeTable build_prime_table(u64 limit) { return PrimeTable(limit); }

void PrimeTable::require_in_range(u64 n, const char* what) const
{
    if (n > limit_)
        throw std::out_of_range(std::string(what) + ": n=" + std::to_string(n) + " exceeds sieve limit " +
                                std::to_string(limit_));
}

std::span<const u64> PrimeTable::primes_in(u64 lo, u64 hi) const
{
    hi = std::min(hi, limit_);
    if (lo > hi) return {};
    auto first = std::lower_bound(primes_.begin(), primes_.end(), lo);
    auto last = std::upper_bound(first, primes_.end(), hi);
    return {first, last};
}

bool PrimeTable::is_prime(u64 n) const
{
    require_in_range(n, "is_prime");
    return std::binary_search(primes_.begin(), primes_.end(), n);
}

u64 PrimeTable::pi(u64 n) const
{
    require_in_range(n, "pi");
    return static_cast<u64>(std::upper_bound(primes_.begin(), primes_.end(), n) - primes_.begin());
}

u64 PrimeTable::pi_mod(u64 n, u64 a, u64 b) const
{
    if (b < 2 || a >= b) throw std::invalid_argument("pi_mod: need b >= 2 and 0 <= a < b");
    const u64 count = pi(n);
    if (b == 4 && a == 1) return count == 0 ? 0 : one_mod4_prefix_[count - 1];
    return static_cast<u64>(
        std::count_if(primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(count),
                      [&](u64 p) { return p % b == a; }));
}

double PrimeTable::theta(u64 n) const
{
    const u64 count = pi(n);
    return count == 0 ? 0.0 : theta_prefix_[count - 1];
}

double PrimeTable::psi(u64 n) const
{
    require_in_range(n, "psi");
    // ψ(n) = ϑ(n) + ϑ(n^(1/2)) + ϑ(n^(1/3)) + ...
    CompensatedSum sum;
    for (unsigned k = 1;; ++k) {
        const u64 root = integer_root(n, k);
        if (root < 2) break;
        sum += theta(root);
    }
    return sum.value();
}

u64 PrimeTable::bertrand_witness(u64 n) const
{
    if (n <= 1) throw std::invalid_argument("bertrand_witness: n must be > 1");
    require_in_range(2 * n, "bertrand_witness");
    auto it = std::upper_bound(primes_.begin(), primes_.end(), n);
    if (it == primes_.end() || *it >= 2 * n)
        throw std::logic_error("bertrand_witness: no prime in (n, 2n) for n=" + std::to_string(n));
    return *it;
}

u64 integer_root(u64 n, unsigned k)
{
    if (k == 0) throw std::invalid_argument("integer_root: k must be >= 1");
    if (k == 1 || n < 2) return n;
    auto pow_le = [&](u64 x) {
        u128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            acc *= x;
            if (acc > n) return false;
        }
        return true;
    };
    u64 x = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    while (x > 0 && !pow_le(x)) --x;
    while (pow_le(x + 1)) ++x;
    return x;
}

}  // namespace prodsq
