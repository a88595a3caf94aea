#include "hlg/errors.hpp"
#include "hlg/padic.hpp"

#include <doctest.h>

#include <random>

using namespace hlg;
using namespace hlg::padic;

TEST_CASE("valuation basics") {
    CHECK(valuation(Rat(45), Int(3)).value == 2);
    CHECK(valuation(Rat(3, 4), Int(2)).value == -2);
    CHECK(valuation(Rat(1), Int(7)).value == 0);
    for (long p : {2, 3, 5, 7, 11, 97})
        CHECK(valuation(Rat(p), Int(p)).value == 1); // |p|_p = 1/p
    CHECK(valuation(Rat(0), Int(5)).infinite);
    CHECK_THROWS_AS(valuation(Rat(1), Int(6)), Error);
    CHECK_THROWS_WITH_AS(valuation(Rat(1), Int(9)), doctest::Contains("CompositeModulus"), Error);
}

TEST_CASE("valuation is multiplicative on random pairs") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
    const Int primes[] = {2, 3, 5, 7, 11, 13};
    int checked = 0;
    while (checked < 1000) {
        Rat r(num(rng), den(rng)), s(num(rng), den(rng));
        r.canonicalize();
        s.canonicalize();
        if (r == 0 || s == 0)
            continue;
        for (const Int& p : primes) {
            Rat rs = r * s;
            rs.canonicalize();
            CHECK(valuation(rs, p).value == valuation(r, p).value + valuation(s, p).value);
        }
        ++checked;
    }
}

TEST_CASE("product formula certificates") {
    auto res = verify_product_formula(Rat(3, 4));
    CHECK(res.holds);
    CHECK(res.product == 1);
    CHECK(res.certificate.exponents.at(Int(2)) == -2);
    CHECK(res.certificate.exponents.at(Int(3)) == 1);
    CHECK(res.certificate.archimedean == Rat(3, 4));
    CHECK(res.certificate.reconstruct() == Rat(3, 4));

    auto one = verify_product_formula(Rat(1));
    CHECK(one.holds);
    CHECK(one.certificate.exponents.empty());

    auto neg = verify_product_formula(Rat(-17));
    CHECK(neg.holds);
    CHECK(neg.certificate.exponents.at(Int(17)) == 1);
    CHECK(neg.certificate.archimedean == Rat(17));
    CHECK(neg.certificate.sign == -1);
    CHECK(neg.certificate.reconstruct() == Rat(-17));

    CHECK_THROWS_AS(verify_product_formula(Rat(0)), Error);
}

TEST_CASE("product formula on a dense small range") {
    for (long n = -60; n <= 60; ++n) {
        if (n == 0)
            continue;
        for (long d = 1; d <= 60; ++d) {
            Rat r(n, d);
            r.canonicalize();
            auto res = verify_product_formula(r);
            REQUIRE(res.holds);
            REQUIRE(res.certificate.reconstruct() == r);
        }
    }
}

TEST_CASE("hensel lifting examples") {
    Polynomial f({-2, 0, 1}); // x^2 - 2
    auto lift = hensel_lift(f, Int(7), Int(3), 1, 2);
    CHECK(lift.root == 10);
    CHECK(lift.derivative_valuation == 0);

    auto same = hensel_lift(f, Int(7), Int(3), 1, 1);
    CHECK(same.root == 3);

    // 2 is a quadratic non-residue mod 5, so no starting root works
    for (long r = 0; r < 5; ++r)
        CHECK_THROWS_AS(hensel_lift(f, Int(5), Int(r), 1, 3), Error);
}

TEST_CASE("hensel lifting to high precision, including a dyadic case") {
    Polynomial f({-2, 0, 1});
    auto lift = hensel_lift(f, Int(7), Int(3), 1, 30);
    Int mod = pow_int(Int(7), 30);
    CHECK(f(lift.root) % mod == 0);
    CHECK(lift.root % 7 == 3); // congruent to the seed mod p^{k-m}

    // x^2 - 17 at p = 2: f'(1) = 2, m = 1, so k = 3 > 2m applies
    Polynomial g({-17, 0, 1});
    auto dyadic = hensel_lift(g, Int(2), Int(1), 3, 10);
    CHECK(g(dyadic.root) % pow_int(Int(2), 10) == 0);
    CHECK(dyadic.derivative_valuation == 1);
    CHECK(dyadic.root % 4 == 1); // x = root mod p^{k-m}

    // the strong inequality k > 2m is required
    CHECK_THROWS_AS(hensel_lift(g, Int(2), Int(1), 2, 10), Error);
}

TEST_CASE("polynomial evaluation and derivative") {
    Polynomial f({1, -3, 0, 2}); // 2x^3 - 3x + 1
    CHECK(f(Int(2)) == 11);
    CHECK(f.derivative()(Int(2)) == 21); // 6x^2 - 3
}
