#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "prodsq/modular.hpp"
#include "prodsq/prime_table.hpp"

using namespace prodsq;

namespace {

const PrimeTable& table_1e6()
{
    static const PrimeTable table(1'000'000);
    return table;
}

}  // namespace

TEST_CASE("build_prime_table")
{
    const auto t10 = build_prime_table(10);
    CHECK(std::vector<u64>(t10.primes().begin(), t10.primes().end()) == std::vector<u64>{2, 3, 5, 7});
    const auto t2 = build_prime_table(2);
    REQUIRE(t2.primes().size() == 1);
    CHECK(t2.primes()[0] == 2);
    CHECK(build_prime_table(100).primes().size() == oracle::count_primes(100));
    CHECK(oracle::count_primes(100) == 25);
    CHECK_THROWS_AS(build_prime_table(1), std::invalid_argument);
    CHECK_THROWS_AS(build_prime_table(0), std::invalid_argument);
}

TEST_CASE("table lists exactly the primes, strictly increasing")
{
    const PrimeTable t(20'000);
    u64 prev = 0;
    for (u64 p : t.primes()) {
        CHECK(p > prev);
        prev = p;
    }
    std::size_t idx = 0;
    for (u64 k = 2; k <= t.limit(); ++k) {
        if (oracle::is_prime(k)) {
            REQUIRE(idx < t.primes().size());
            CHECK(t.primes()[idx++] == k);
        }
    }
    CHECK(idx == t.primes().size());
}

TEST_CASE("pi and pi_mod")
{
    const PrimeTable t(1000);
    CHECK(t.pi(1) == 0);
    CHECK(t.pi(10) == 4);
    CHECK(t.pi(100) == 25);
    CHECK(t.pi_mod(4, 1, 4) == 0);
    CHECK(t.pi_mod(10, 1, 4) == 1);
    CHECK(t.pi_mod(13, 1, 4) == 2);
    CHECK(t.pi_mod(1000, 3, 4) == oracle::count_primes(1000, 3, 4));
    CHECK(t.pi_mod(1000, 2, 6) == 1);  // only 2 ≡ 2 (mod 6)
    CHECK_THROWS_AS(t.pi(1001), std::out_of_range);
    CHECK_THROWS_AS(t.pi_mod(1001, 1, 4), std::out_of_range);
    CHECK_THROWS_AS(t.pi_mod(10, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(t.pi_mod(10, 0, 1), std::invalid_argument);
}

TEST_CASE("sieve agrees with trial-division recount at random n")
{
    const PrimeTable t(200'000);
    std::mt19937_64 rng(20241018);
    std::uniform_int_distribution<u64> dist(0, t.limit());
    // the recount is incremental so 100 samples stay cheap
    std::vector<u64> samples(100);
    for (auto& n : samples) n = dist(rng);
    std::sort(samples.begin(), samples.end());
    u64 count = 0, k = 1, count1 = 0;
    for (u64 n : samples) {
        for (; k < n; ) {
            ++k;
            if (oracle::is_prime(k)) {
                ++count;
                if (k % 4 == 1) ++count1;
            }
        }
        CHECK(t.pi(n) == count);
        CHECK(t.pi_mod(n, 1, 4) == count1);
    }
}

TEST_CASE("is_prime matches trial division")
{
    for (u64 n = 0; n < 20'000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
    CHECK(is_prime(2'305'843'009'213'693'951ULL));    // 2^61 − 1
    CHECK_FALSE(is_prime(3'215'031'751ULL));          // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime(341));                       // base-2 Fermat pseudoprime
    CHECK(is_prime(18'446'744'073'709'551'557ULL));   // largest 64-bit prime
}

TEST_CASE("legendre_symbol")
{
    CHECK(legendre_symbol(-1, 5) == 1);
    CHECK(legendre_symbol(-1, 3) == -1);
    CHECK(legendre_symbol(10, 5) == 0);
    CHECK_THROWS_AS(legendre_symbol(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(legendre_symbol(3, 15), std::invalid_argument);

    SUBCASE("agrees with enumeration of squares")
    {
        for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 101ULL})
            for (long long a = -30; a <= 30; ++a) CHECK(legendre_symbol(a, p) == oracle::residue_symbol(a, p));
    }
}

TEST_CASE("quadratic reciprocity for odd primes up to 200")
{
    const PrimeTable t(200);
    for (u64 p : t.primes()) {
        for (u64 q : t.primes()) {
            if (p == 2 || q == 2 || p == q) continue;
            const int expected = (((p - 1) / 2) * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
            CHECK(legendre_symbol(static_cast<long long>(p), q) * legendre_symbol(static_cast<long long>(q), p) ==
                  expected);
        }
    }
}

TEST_CASE("-1 is a residue exactly for p ≡ 1 (mod 4), p <= 10^4")
{
    const PrimeTable t(10'000);
    for (u64 p : t.primes()) {
        if (p == 2) continue;
        CHECK((legendre_symbol(-1, p) == 1) == (p % 4 == 1));
    }
}

TEST_CASE("sqrt_minus_one")
{
    CHECK(sqrt_minus_one(5) == 2);
    CHECK(sqrt_minus_one(17) == 4);
    CHECK(sqrt_minus_one(101) == 10);
    CHECK_THROWS_AS(sqrt_minus_one(7), std::invalid_argument);
    CHECK_THROWS_AS(sqrt_minus_one(21), std::invalid_argument);  // ≡ 1 mod 4 but composite
    CHECK_THROWS_AS(sqrt_minus_one(2), std::invalid_argument);

    SUBCASE("both sides of the enumeration cutoff give the canonical root")
    {
        const PrimeTable t(30'000);
        for (u64 p : t.primes_in(9'000, 30'000)) {
            if (p % 4 != 1) continue;
            const u64 r = sqrt_minus_one(p);
            CHECK((r * r + 1) % p == 0);
            CHECK(r <= p - r);
            if (p > 20'000) continue;
            CHECK(r == oracle::roots_of_minus_one(p).front());
        }
    }
    SUBCASE("large prime")
    {
        const u64 p = 1'000'000'009ULL;  // ≡ 1 (mod 4)
        const u64 r = sqrt_minus_one(p);
        CHECK(mul_mod(r, r, p) == p - 1);
    }
}

TEST_CASE("hensel_lift")
{
    const auto a = hensel_lift(RootLift{5, 1, 2});
    CHECK(a.level == 2);
    CHECK(a.root == 7);
    const auto b = hensel_lift(RootLift{13, 1, 5});
    CHECK(b.level == 2);
    CHECK(b.root == 70);
    CHECK(4901 == 29 * 169);

    SUBCASE("zero correction leaves the root unchanged")
    {
        // 239² + 1 = 2·13⁴, so 239 is already a root modulo 13⁴
        const auto c = hensel_lift(RootLift{13, 3, 239});
        CHECK(c.level == 4);
        CHECK(c.root == 239);
    }
    SUBCASE("rejects an invalid lift")
    {
        CHECK_THROWS_AS(hensel_lift(RootLift{5, 1, 1}), std::invalid_argument);
        CHECK_THROWS_AS(hensel_lift(RootLift{5, 2, 0}), std::invalid_argument);
    }
    SUBCASE("overflow is reported")
    {
        CHECK_THROWS_AS(root_of_minus_one(1'000'000'009ULL, 4), std::overflow_error);
    }
}

TEST_CASE("lifted roots are the only two roots mod p^j")
{
    const PrimeTable t(500);
    for (u64 p : t.primes()) {
        if (p % 4 != 1) continue;
        RootLift lift{p, 1, sqrt_minus_one(p)};
        for (unsigned j = 1; j <= 4; ++j) {
            if (j > 1) {
                const auto next = hensel_lift(lift);
                CHECK(next.root % lift.modulus() == lift.root);
                lift = next;
            }
            const u64 m = lift.modulus();
            CHECK((static_cast<u128>(lift.root) * lift.root + 1) % m == 0);
            if (m > 1'000'000) continue;
            const auto roots = oracle::roots_of_minus_one(m);
            REQUIRE(roots.size() == 2);
            const u64 lo = std::min(lift.root, m - lift.root), hi = std::max(lift.root, m - lift.root);
            CHECK(roots[0] == lo);
            CHECK(roots[1] == hi);
        }
    }
}

TEST_CASE("chebyshev theta and psi")
{
    const PrimeTable t(10'000);
    CHECK(t.theta(1) == 0.0);
    CHECK(t.theta(2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(t.theta(10) == doctest::Approx(5.3471075307174685).epsilon(1e-14));
    CHECK(t.psi(2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(t.psi(4) == doctest::Approx(2.4849066497880004).epsilon(1e-14));
    CHECK(t.psi(10) == doctest::Approx(7.832014180505469).epsilon(1e-14));
    CHECK_THROWS_AS(t.theta(10'001), std::out_of_range);
    CHECK_THROWS_AS(t.psi(10'001), std::out_of_range);

    SUBCASE("psi agrees with the von Mangoldt sum")
    {
        for (u64 n : {1ULL, 8ULL, 9ULL, 27ULL, 64ULL, 100ULL, 997ULL, 1024ULL, 5000ULL})
            CHECK(t.psi(n) == doctest::Approx(oracle::psi(n)).epsilon(1e-12));
    }
    SUBCASE("theta <= psi <= pi(n) log n")
    {
        for (u64 n = 1; n <= t.limit(); ++n) {
            const double th = t.theta(n), ps = t.psi(n);
            CHECK(th <= ps);
            if (n >= 2) CHECK(ps <= static_cast<double>(t.pi(n)) * std::log(static_cast<double>(n)) * (1 + 1e-12));
        }
    }
}

TEST_CASE("compensated theta stays accurate over many terms")
{
    // ϑ(10^6) from a long-double direct sum
    const auto& t = table_1e6();
    long double direct = 0;
    for (u64 p : t.primes()) direct += std::log(static_cast<long double>(p));
    CHECK(std::fabs(t.theta(1'000'000) - static_cast<double>(direct)) / static_cast<double>(direct) < 1e-13);
}

TEST_CASE("bertrand_witness")
{
    const PrimeTable t(100'000);
    CHECK(t.bertrand_witness(2) == 3);
    CHECK(t.bertrand_witness(10) == 11);
    CHECK_THROWS_AS(t.bertrand_witness(1), std::invalid_argument);
    CHECK_THROWS_AS(t.bertrand_witness(50'001), std::out_of_range);
    for (u64 n = 2; n <= t.limit() / 2; ++n) {
        const u64 p = t.bertrand_witness(n);
        CHECK(p > n);
        CHECK(p < 2 * n);
    }
}

TEST_CASE("prime number theorem ratio band")
{
    const auto& t = table_1e6();
    for (u64 n : {1'000ULL, 10'000ULL, 100'000ULL, 1'000'000ULL}) {
        const double ratio = static_cast<double>(t.pi(n)) * std::log(static_cast<double>(n)) / static_cast<double>(n);
        CHECK(ratio >= 1.0);
        CHECK(ratio <= 1.3);
    }
}

TEST_CASE("integer_root")
{
    CHECK(integer_root(26, 2) == 5);
    CHECK(integer_root(27, 3) == 3);
    CHECK(integer_root(26, 3) == 2);
    CHECK(integer_root(1, 5) == 1);
    CHECK(integer_root(18'446'744'073'709'551'615ULL, 2) == 4'294'967'295ULL);
}
