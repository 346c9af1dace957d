#include "doctest.h"

#include "kh/bracket.hpp"
#include "kh/laurent.hpp"

using kh::BigInt;
using kh::LaurentPoly;

TEST_CASE("basic algebra and canonical text") {
    LaurentPoly a = LaurentPoly::monomial(BigInt(1), "a", 1);
    LaurentPoly inv = LaurentPoly::monomial(BigInt(1), "a", -1);
    CHECK((a * inv).to_string() == "1");
    LaurentPoly loop = LaurentPoly::monomial(BigInt(-1), "a", 2);
    loop.add_term({-2}, BigInt(-1));
    CHECK(loop.to_string() == "-a^-2 - a^2");
    CHECK((loop - loop).is_zero());
    CHECK(loop.pow(0).to_string() == "1");
    CHECK(loop.pow(2).to_string() == "a^-4 + 2 + a^4");
    CHECK(loop.span("a") == 4);
}

TEST_CASE("variable unification and multivariate terms") {
    LaurentPoly q = LaurentPoly::monomial(BigInt(1), "q", 1);
    LaurentPoly g = LaurentPoly::monomial(BigInt(1), "g", 1);
    LaurentPoly s = q + g;
    CHECK(s.vars().size() == 2);
    CHECK(s.to_string() == "q + g");
    CHECK(((q + g) * (q - g)).to_string() == "q^2 - g^2");
}

TEST_CASE("substitution") {
    // M -> q g^-1 + q^-1 g applied to M^2
    LaurentPoly m2 = LaurentPoly::monomial(BigInt(1), "M", 2);
    LaurentPoly val = LaurentPoly::term(BigInt(1), {"g", "q"}, {-1, 1});
    val.add_term({1, -1}, BigInt(1));
    LaurentPoly inv;  // not used for nonnegative exponents
    LaurentPoly r = m2.substitute("M", val, inv);
    CHECK(r.to_string() == "g^-2*q^2 + 2 + g^2*q^-2");
}

TEST_CASE("exact division by the loop value") {
    LaurentPoly loop = LaurentPoly::monomial(BigInt(-1), "a", 2);
    loop.add_term({-2}, BigInt(-1));
    LaurentPoly num = loop.pow(3);
    LaurentPoly q;
    REQUIRE(kh::exact_divide(num, loop, "a", q));
    CHECK(q == loop.pow(2));
    // and a non-divisible case
    LaurentPoly one = LaurentPoly::constant(BigInt(1), {"a"});
    CHECK_FALSE(kh::exact_divide(one, loop, "a", q));
    LaurentPoly z;
    CHECK(kh::exact_divide(z, loop, "a", q));
}
