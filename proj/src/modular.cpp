#include "prodsq/modular.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

namespace prodsq {

u64 pow_mod(u64 base, u64 exp, u64 m)
{
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 inverse_mod(u64 a, u64 m)
{
    // extended Euclid on signed 128-bit to avoid overflow in the coefficients
    __int128 old_r = static_cast<__int128>(a % m), r = m;
    __int128 old_s = 1, s = 0;
    while (r != 0) {
        const __int128 q = old_r / r;
        __int128 tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("inverse_mod: argument not invertible");
    __int128 inv = old_s % static_cast<__int128>(m);
    if (inv < 0) inv += m;
    return static_cast<u64>(inv);
}

bool is_prime(u64 n)
{
    if (n < 2) return false;
    static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 b : kBases) {
        if (n == b) return true;
        if (n % b == 0) return false;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kBases) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int legendre_symbol(std::int64_t a, u64 p)
{
    if (p % 2 == 0 || !is_prime(p))
        throw std::invalid_argument("legendre_symbol: p=" + std::to_string(p) + " is not an odd prime");
    const auto sp = static_cast<__int128>(p);
    __int128 r = static_cast<__int128>(a) % sp;
    if (r < 0) r += sp;
    if (r == 0) return 0;
    const u64 e = pow_mod(static_cast<u64>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

u64 sqrt_minus_one(u64 p)
{
    if (p % 4 != 1 || !is_prime(p))
        throw std::invalid_argument("sqrt_minus_one: p=" + std::to_string(p) + " is not a prime ≡ 1 (mod 4)");
    u64 r = 0;
    if (p < kSqrtEnumerationCutoff) {
        for (u64 x = 1; x <= p / 2; ++x) {
            if ((x * x + 1) % p == 0) return x;
        }
        throw std::logic_error("sqrt_minus_one: enumeration found no root");
    }
    for (u64 c = 2;; ++c) {
        if (legendre_symbol(static_cast<std::int64_t>(c), p) == -1) {
            r = pow_mod(c, (p - 1) / 4, p);
            break;
        }
    }
    if (mul_mod(r, r, p) != p - 1) throw std::logic_error("sqrt_minus_one: exponentiation failed");
    return r <= p - r ? r : p - r;
}

u64 RootLift::modulus() const
{
    u64 m = 1;
    for (unsigned i = 0; i < level; ++i) {
        if (m > std::numeric_limits<u64>::max() / p) throw std::overflow_error("RootLift: p^level overflows");
        m *= p;
    }
    return m;
}

bool RootLift::valid() const
{
    if (level < 1 || p < 3) return false;
    const u64 m = modulus();
    if (root == 0 || root >= m) return false;
    return (static_cast<u128>(root) * root + 1) % m == 0;
}

RootLift hensel_lift(const RootLift& lift)
{
    if (!lift.valid()) throw std::invalid_argument("hensel_lift: input is not a root of x^2+1 mod p^j");
    const u64 m = lift.modulus();
    if (m > std::numeric_limits<u64>::max() / lift.p) throw std::overflow_error("hensel_lift: p^(j+1) overflows");
    const u64 next_mod = m * lift.p;
    const u64 p = lift.p;

    const u128 sq = static_cast<u128>(lift.root) * lift.root + 1;
    const u64 t = static_cast<u64>((sq / m) % p);
    // 2·r·y ≡ -t (mod p)
    const u64 inv = inverse_mod(mul_mod(2, lift.root % p, p), p);
    const u64 y = mul_mod((p - t) % p, inv, p);
    const u64 root = static_cast<u64>((static_cast<u128>(m) * y + lift.root) % next_mod);
    return RootLift{p, lift.level + 1, root};
}

RootLift root_of_minus_one(u64 p, unsigned level)
{
    if (level < 1) throw std::invalid_argument("root_of_minus_one: level must be >= 1");
    RootLift lift{p, 1, sqrt_minus_one(p)};
    while (lift.level < level) lift = hensel_lift(lift);
    return lift;
}

}  // namespace prodsq
