#include "prodsq/product_square.hpp"

#include <array>
#include <stdexcept>

#include "prodsq/valuations.hpp"

namespace prodsq {

namespace {

template <std::size_t M>
constexpr std::array<bool, M> square_residues()
{
    std::array<bool, M> table{};
    for (std::size_t x = 0; x < M; ++x) table[(x * x) % M] = true;
    return table;
}

constexpr auto kSquaresMod64 = square_residues<64>();
constexpr auto kSquaresMod63 = square_residues<63>();

}  // namespace

ProductValue product_pn(u64 n)
{
    if (n > kMaxValuationN) throw std::out_of_range("product_pn: n too large");
    ProductValue result{n, mpz_class(1)};
    // multiply in pairs to halve the number of bignum multiplications
    u64 k = 1;
    for (; k + 1 <= n; k += 2) {
        const u128 pair = static_cast<u128>(k * k + 1) * ((k + 1) * (k + 1) + 1);
        if (pair >> 64) {
            result.value *= static_cast<unsigned long>(k * k + 1);
            result.value *= static_cast<unsigned long>((k + 1) * (k + 1) + 1);
        } else {
            result.value *= static_cast<unsigned long>(pair);
        }
    }
    if (k <= n) result.value *= static_cast<unsigned long>(k * k + 1);
    return result;
}

mpz_class isqrt(const mpz_class& N)
{
    if (sgn(N) < 0) throw std::domain_error("isqrt: negative argument");
    if (N < 2) return N;
    const std::size_t bits = mpz_sizeinbase(N.get_mpz_t(), 2);
    mpz_class x = 1;
    x <<= static_cast<mp_bitcnt_t>((bits + 1) / 2);  // x >= √N
    for (;;) {
        mpz_class y = (x + N / x) >> 1;
        if (y >= x) return x;
        x = std::move(y);
    }
}

std::optional<mpz_class> is_perfect_square(const mpz_class& N)
{
    if (sgn(N) < 0) return std::nullopt;
    const unsigned long r64 = mpz_fdiv_ui(N.get_mpz_t(), 64);
    if (!kSquaresMod64[r64]) return std::nullopt;
    const unsigned long r63 = mpz_fdiv_ui(N.get_mpz_t(), 63);
    if (!kSquaresMod63[r63]) return std::nullopt;
    mpz_class root = isqrt(N);
    if (root * root == N) return root;
    return std::nullopt;
}

bool check_factorial_bound(u64 n)
{
    if (n < 1) throw std::invalid_argument("check_factorial_bound: n must be >= 1");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
    return product_pn(n).value > fact * fact;
}

std::optional<Witness> find_nonsquare_witness(u64 n, const PrimeTable& table)
{
    if (n < 1) throw std::invalid_argument("find_nonsquare_witness: n must be >= 1");
    if (n > kMaxValuationN) throw std::out_of_range("find_nonsquare_witness: n too large");

    // m^2 - m >= n  <=>  m >= (1 + sqrt(4n + 1)) / 2
    u64 m = 2;
    while (m * m - m < n) ++m;
    for (; m <= n; ++m) {
        const u64 p = m * m + 1;
        if (!is_prime(p)) continue;
        const u64 alpha = alpha_exact(p, n, m).alpha;
        if (alpha % 2 == 1) return Witness{p, alpha};
    }

    for (u64 p : table.primes_in(5, n * n + 1)) {
        if (p % 4 != 1) continue;
        const u64 alpha = alpha_exact(p, n).alpha;
        if (alpha % 2 == 1) return Witness{p, alpha};
    }
    return std::nullopt;
}

}  // namespace prodsq
