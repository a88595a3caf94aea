#include "hlg/cubic.hpp"
#include "hlg/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hlg;
using namespace hlg::cubic;

namespace {

DiagonalCubicForm C(long a, long b, long c) {
    return DiagonalCubicForm::from_coefficients(Int(a), Int(b), Int(c));
}

std::set<std::array<long, 3>> as_set(const std::vector<ProjectiveWitness>& ws) {
    std::set<std::array<long, 3>> out;
    for (const auto& w : ws)
        out.insert({w.x.get_si(), w.y.get_si(), w.z.get_si()});
    return out;
}

// slow oracle: primitive solutions mod p^6, two coordinates enumerated,
// the third tested against a precomputed value set
bool oracle_mod_p6(const DiagonalCubicForm& f, long p) {
    Int mod = pow_int(Int(p), 6);
    long m = static_cast<long>(mod.get_ui());
    const long a = f.normalized[0].get_si() % m, b = f.normalized[1].get_si() % m,
               c = f.normalized[2].get_si() % m;
    std::vector<bool> cz_any(m, false), cz_unit(m, false);
    for (long z = 0; z < m; ++z) {
        long z3 = static_cast<long>((__int128)z * z % m * z % m);
        long v = static_cast<long>(((__int128)c * z3 % m + m) % m);
        cz_any[v] = true;
        if (z % p != 0)
            cz_unit[v] = true;
    }
    for (long x = 0; x < m; ++x) {
        long x3 = static_cast<long>((__int128)x * x % m * x % m);
        long ax = static_cast<long>(((__int128)a * x3 % m + m) % m);
        for (long y = 0; y < m; ++y) {
            long y3 = static_cast<long>((__int128)y * y % m * y % m);
            long by = static_cast<long>(((__int128)b * y3 % m + m) % m);
            long need = ((-(ax + by)) % m + m) % m;
            bool prim_xy = (x % p != 0) || (y % p != 0);
            if (prim_xy ? cz_any[need] : cz_unit[need])
                return true;
        }
    }
    return false;
}

} // namespace

TEST_CASE("normalization strips cubes and common factors") {
    auto f = DiagonalCubicForm::from_coefficients(Int(16), Int(2), Int(54));
    CHECK(f.common_factor == 2);
    CHECK(f.normalized[0] == 1); // 8 = 2^3
    CHECK(f.cube_scaling[0] == 2);
    CHECK(f.normalized[1] == 1);
    CHECK(f.normalized[2] == 27 / 27); // 27 = 3^3
    CHECK(f.cube_scaling[2] == 3);
    CHECK_THROWS_AS(DiagonalCubicForm::from_coefficients(Int(0), Int(1), Int(1)), Error);
}

TEST_CASE("local solubility of Selmer's curve at its bad primes") {
    auto f = C(3, 4, 5);
    for (long p : {2, 3, 5}) {
        auto lv = cubic_local_solubility(f, Place::at_prime(Int(p)));
        CHECK_MESSAGE(lv.soluble, "should be soluble at ", p);
        CHECK(lv.witness_precision > 2 * lv.derivative_valuation);
        Int mod = pow_int(Int(p), lv.witness_precision);
        CHECK(f.evaluate_normalized(lv.witness[0], lv.witness[1], lv.witness[2]) % mod == 0);
    }
    CHECK(cubic_local_solubility(f, Place::at_real()).soluble);
}

TEST_CASE("good primes carry the Hasse-bound certificate") {
    auto f = C(1, 1, 1);
    for (long p : {7, 11, 13, 101}) {
        auto lv = cubic_local_solubility(f, Place::at_prime(Int(p)));
        CHECK(lv.soluble);
        CHECK(lv.method == "hasse-bound-hensel");
        Int v = f.evaluate_normalized(lv.witness[0], lv.witness[1], lv.witness[2]);
        CHECK(v % p == 0);
    }
}

TEST_CASE("a valuation-staircase cubic is locally insoluble") {
    // x^3 + 7 y^3 + 49 z^3: the three valuations are distinct mod 3
    auto f = C(1, 7, 49);
    auto lv = cubic_local_solubility(f, Place::at_prime(Int(7)));
    CHECK_FALSE(lv.soluble);
    CHECK(lv.exhausted_precision == 7); // 2 v_7(9 * 343) + 1
}

TEST_CASE("local decisions agree with the mod p^6 oracle") {
    for (long a = 1; a <= 4; ++a)
        for (long b = 1; b <= 4; ++b)
            for (long c = 1; c <= 4; ++c) {
                auto f = C(a, b, -c);
                Int prod = 3 * f.normalized[0] * f.normalized[1] * f.normalized[2];
                for (long p : {2, 3}) {
                    if (prod % p != 0)
                        continue;
                    bool decided = cubic_local_solubility(f, Place::at_prime(Int(p))).soluble;
                    CHECK_MESSAGE(decided == oracle_mod_p6(f, p), "at p=", p, " form ", a, ",", b,
                                  ",", -c);
                }
            }
}

TEST_CASE("global search finds exactly the known points") {
    auto only = cubic_global_search(C(60, 1, 1), 100);
    REQUIRE(only.size() == 1);
    CHECK(only[0].x == 0);
    CHECK(only[0].y == 1);
    CHECK(only[0].z == -1);

    auto perms = as_set(cubic_global_search(C(1, 1, 1), 10));
    CHECK(perms == std::set<std::array<long, 3>>{{0, 1, -1}, {1, -1, 0}, {1, 0, -1}});

    CHECK(cubic_global_search(C(3, 4, 5), 500).empty());
}

TEST_CASE("witnesses are exact, primitive, and sign-normalized") {
    auto ws = cubic_global_search(C(1, 2, -3), 30);
    REQUIRE_FALSE(ws.empty());
    for (const auto& w : ws) {
        CHECK(C(1, 2, -3).evaluate(w.x, w.y, w.z) == 0);
        Int g = 0;
        mpz_gcd(g.get_mpz_t(), w.x.get_mpz_t(), w.y.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.z.get_mpz_t());
        CHECK(g == 1);
        const Int& lead = w.x != 0 ? w.x : (w.y != 0 ? w.y : w.z);
        CHECK(lead > 0);
    }
}

TEST_CASE("search respects coefficient/coordinate symmetry") {
    auto base = cubic_global_search(C(1, 2, -9), 25);
    // swapping coefficients a and b must swap witness coordinates x and y
    auto swapped = cubic_global_search(C(2, 1, -9), 25);
    std::set<std::array<long, 3>> mapped;
    for (const auto& w : base) {
        Int x = w.y, y = w.x, z = w.z;
        const Int& lead = x != 0 ? x : (y != 0 ? y : z);
        if (lead < 0) {
            x = -x;
            y = -y;
            z = -z;
        }
        mapped.insert({x.get_si(), y.get_si(), z.get_si()});
    }
    CHECK(mapped == as_set(swapped));

    // negating a coefficient is absorbed by negating the coordinate
    auto negated = cubic_global_search(C(1, -2, -9), 25);
    std::set<std::array<long, 3>> mapped2;
    for (const auto& w : base) {
        Int x = w.x, y = -w.y, z = w.z;
        const Int& lead = x != 0 ? x : (y != 0 ? y : z);
        if (lead < 0) {
            x = -x;
            y = -y;
            z = -z;
        }
        mapped2.insert({x.get_si(), y.get_si(), z.get_si()});
    }
    CHECK(mapped2 == as_set(negated));
}

TEST_CASE("worker partitioning is deterministic") {
    auto one = cubic_global_search(C(1, 1, 1), 60, 1);
    auto four = cubic_global_search(C(1, 1, 1), 60, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i)
        CHECK(one[i] == four[i]);
}

TEST_CASE("companion suite at reduced height") {
    auto rep = selmer_companion_suite(300, true);
    REQUIRE(rep.entries.size() == 6);
    CHECK(rep.all_ok);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(rep.entries[i].everywhere_locally_soluble);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(rep.entries[i].rational_points.empty());
    REQUIRE(rep.entries[4].rational_points.size() == 1);
    CHECK(rep.entries[4].rational_points[0].x == 0);
    // the control curve must be flagged as having witnesses
    CHECK_FALSE(rep.entries[5].rational_points.empty());
    CHECK(rep.entries[5].assertion_ok);
}
