#include <doctest.h>

#include "cpic/errors.hpp"
#include "cpic/numbers.hpp"

using namespace cpic;

TEST_SUITE("numbers") {

TEST_CASE("denominators in lowest terms") {
    CHECK(denom(Rational(4, 9)) == 9);
    CHECK(denom(Rational(0)) == 1);
    CHECK(denom(Rational(-3, 6)) == 2);
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational(-1, 2).str() == "-1/2");
    CHECK(Rational(4).str() == "4");
}

TEST_CASE("rational parsing rejects junk") {
    CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rational::parse("a"), InputError);
    CHECK_THROWS_AS(Rational::parse("1/-2"), InputError);
}

TEST_CASE("q-adic valuation") {
    CHECK(v_q(2, Rational(12)) == Valuation(Rational(2)));
    CHECK(v_q(2, Rational(3, 4)) == Valuation(Rational(-2)));
    CHECK(v_q(2, Rational(0)).is_infinite());
    CHECK(v_q(3, Rational(5)) == Valuation(Rational(0)));
    CHECK(Valuation::infinity() > Valuation(Rational(1000)));
    CHECK_THROWS_AS(v_q(4, Rational(8)), InputError);
}

TEST_CASE("gcd with a power of d") {
    CHECK(gcd_inf(12, 2) == 4);
    CHECK(gcd_inf(18, 3) == 9);
    for (long n = 1; n <= 60; ++n) {
        CHECK(gcd_inf(n, 1) == 1);
        for (long d = 1; d <= 12; ++d) {
            Int g = gcd_inf(n, d);
            CHECK(n % g == 0);
            CHECK(gcd(Int(n) / g, Int(d)) == 1);
            // minimal such divisor
            for (const auto& h : divisors(g))
                if (h != g) CHECK(gcd(Int(n) / h, Int(d)) != 1);
        }
    }
}

TEST_CASE("totient") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(12) == 4);
    for (long n = 1; n <= 200; ++n) {
        long c = 0;
        for (long k = 1; k <= n; ++k)
            if (gcd(Int(k), Int(n)) == 1) ++c;
        CHECK(euler_phi(n) == c);
    }
}

TEST_CASE("legendre symbol against brute force") {
    CHECK(legendre(-1, 19) == -1);
    CHECK(legendre(-2, 7) == -1);
    for (long q : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 97L}) {
        CHECK(legendre(1, q) == 1);
        for (long a = -20; a <= 20; ++a) {
            long r = ((a % q) + q) % q;
            int expected = 0;
            if (r != 0) {
                expected = -1;
                for (long x = 1; x < q; ++x)
                    if (x * x % q == r) expected = 1;
            }
            CHECK(legendre(a, q) == expected);
        }
    }
    CHECK_THROWS_AS(legendre(3, 2), InputError);
    CHECK_THROWS_AS(legendre(3, 9), InputError);
}

TEST_CASE("lcm, divisors, factorization") {
    CHECK(lcm_all({9, 2, 3}) == 18);
    CHECK_THROWS_AS(lcm_all({}), InputError);
    CHECK(divisors(12) == std::vector<Int>{1, 2, 3, 4, 6, 12});
    auto f = factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, unsigned long>{2, 3});
    CHECK(f[2] == std::pair<Int, unsigned long>{5, 1});
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
    CHECK(multiplicity(2, 48) == 4);
}

TEST_CASE("floor and ceil of rationals") {
    CHECK(floor(Rational(-7, 3)) == -3);
    CHECK(ceil(Rational(-7, 3)) == -2);
    CHECK(floor(Rational(4)) == 4);
}

}
