#include "doctest.h"

#include <random>

#include "kh/bigint.hpp"
#include "kh/rational.hpp"

using kh::BigInt;
using kh::Rational;

TEST_CASE("small arithmetic matches int64") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000000ll, 1000000000ll);
    for (int i = 0; i < 2000; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).to_i64() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_i64() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_i64() == a * b);
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(BigInt(a), BigInt(b), q, r);
            CHECK(q.to_i64() == a / b);
            CHECK(r.to_i64() == a % b);
        }
        CHECK((BigInt(a) == BigInt(b)) == (a == b));
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("multi-limb divmod identity") {
    std::mt19937_64 rng(11);
    auto rand_big = [&](int limbs) {
        BigInt x(0);
        for (int i = 0; i < limbs; ++i)
            x = x * BigInt(1ll << 32) + BigInt(static_cast<long long>(rng() & 0xffffffffull));
        if (rng() & 1) x = -x;
        return x;
    };
    for (int i = 0; i < 500; ++i) {
        BigInt a = rand_big(1 + static_cast<int>(rng() % 5));
        BigInt b = rand_big(1 + static_cast<int>(rng() % 3));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("string round trip and known products") {
    BigInt big = BigInt::from_string("123456789012345678901234567890");
    CHECK(big.to_string() == "123456789012345678901234567890");
    CHECK((big * BigInt(-1)).to_string() == "-123456789012345678901234567890");
    // 2^128
    BigInt two(2), p(1);
    for (int i = 0; i < 128; ++i) p = p * two;
    CHECK(p.to_string() == "340282366920938463463374607431768211456");
    CHECK(BigInt::from_string(p.to_string()) == p);
}

TEST_CASE("gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)).to_i64() == 6);
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)).to_i64() == 6);
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)).to_i64() == 5);
    BigInt a = BigInt::from_string("123456789123456789");
    CHECK(BigInt::gcd(a * BigInt(77), a * BigInt(121)) == a * BigInt(11));
}

TEST_CASE("rationals reduce and invert") {
    Rational r(BigInt(6), BigInt(-8));
    CHECK(r.to_string() == "-3/4");
    CHECK((r * r.inverse()).is_one());
    CHECK((Rational(1) / Rational(3) + Rational(2) / Rational(3)).is_one());
    CHECK((Rational(5) - Rational(5)).is_zero());
    CHECK_THROWS(Rational(1) / Rational(0));
}
