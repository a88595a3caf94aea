#include "hlg/errors.hpp"
#include "hlg/forms.hpp"

#include <doctest.h>

#include <set>

using namespace hlg;
using namespace hlg::forms;

namespace {

DiagonalQuadraticForm F(std::vector<long> cs) {
    std::vector<Int> v(cs.begin(), cs.end());
    return DiagonalQuadraticForm::from_coefficients(v);
}

} // namespace

TEST_CASE("chevalley zero exists and is nontrivial") {
    struct Case {
        std::vector<long> form;
        long p;
    } cases[] = {
        {{1, 1, 1}, 3}, {{1, 1, -1}, 7}, {{2, 3, -5}, 11}, {{1, 1, 1}, 2}, {{3, 5, 7}, 13},
    };
    for (const auto& c : cases) {
        auto form = F(c.form);
        auto x = chevalley_zero(form, Int(c.p));
        bool nontrivial = false;
        for (const Int& xi : x)
            nontrivial |= xi % c.p != 0;
        CHECK(nontrivial);
        CHECK(form.evaluate(x) % c.p == 0);
    }
    CHECK_THROWS_AS(chevalley_zero(F({1, 1}), Int(3)), Error);
}

TEST_CASE("hilbert symbol special values") {
    CHECK(hilbert_symbol(Int(-1), Int(-1), Place::at_real()) == -1);
    for (long b : {-7, -2, -1, 1, 2, 3, 10})
        for (auto v : {Place::at_real(), Place::at_prime(Int(2)), Place::at_prime(Int(3)),
                       Place::at_prime(Int(5))})
            CHECK(hilbert_symbol(Int(1), Int(b), v) == 1); // (1, b) splits via (1,0,1)
    CHECK(hilbert_symbol(Int(2), Int(7), Place::at_prime(Int(7))) == 1); // 2 = 3^2 mod 7
}

TEST_CASE("hilbert symbol agrees with the local solubility oracle") {
    for (long a = -12; a <= 12; ++a) {
        if (a == 0)
            continue;
        for (long b = -12; b <= 12; ++b) {
            if (b == 0)
                continue;
            std::set<Int> primes{Int(2)};
            for (const auto& [p, e] : factorize(Int(a) * b))
                primes.insert(p);
            std::vector<Place> places{Place::at_real()};
            for (const Int& p : primes)
                places.push_back(Place::at_prime(p));
            int prod = 1;
            for (const auto& v : places) {
                int s = hilbert_symbol(Int(a), Int(b), v);
                prod *= s;
                // z^2 = a x^2 + b y^2 has a nontrivial local zero iff s = +1
                auto lv = local_solubility(F({a, b, -1}), v);
                CHECK(lv.soluble == (s == 1));
            }
            CHECK(prod == 1); // product formula for the symbols
        }
    }
}

TEST_CASE("local solubility verdicts") {
    auto real_ok = local_solubility(F({2, 3, -5}), Place::at_real());
    CHECK(real_ok.soluble);
    auto real_bad = local_solubility(F({1, 2, 3}), Place::at_real());
    CHECK_FALSE(real_bad.soluble);

    auto at3 = local_solubility(F({1, 1, -3}), Place::at_prime(Int(3)));
    CHECK_FALSE(at3.soluble);
    CHECK(at3.exhausted_precision == 3); // 2 v_3(4 * 3) + 1

    auto at5 = local_solubility(F({5, 4, -3}), Place::at_prime(Int(5)));
    CHECK_FALSE(at5.soluble);

    // good odd prime: Chevalley + Hensel witness
    auto at7 = local_solubility(F({1, 1, -3}), Place::at_prime(Int(7)));
    CHECK(at7.soluble);
    CHECK(at7.derivative_valuation == 0);
    CHECK(at7.witness_precision == 1);
    CHECK(F({1, 1, -3}).evaluate_normalized(at7.witness) % 7 == 0);
}

TEST_CASE("local witnesses satisfy the strong Hensel inequality") {
    // soluble bad-prime cases produce certified witnesses
    struct Case {
        std::vector<long> form;
        long p;
    } cases[] = {{{1, 1, -2}, 2}, {{2, 3, -5}, 2}, {{2, 3, -5}, 3}, {{2, 3, -5}, 5},
                 {{1, 2, -3}, 3}, {{6, 10, -15}, 2}, {{6, 10, -15}, 3}, {{6, 10, -15}, 5}};
    for (const auto& c : cases) {
        auto form = F(c.form);
        auto lv = local_solubility(form, Place::at_prime(Int(c.p)));
        REQUIRE(lv.soluble);
        CHECK(lv.witness_precision > 2 * lv.derivative_valuation);
        Int mod = pow_int(Int(c.p), lv.witness_precision);
        CHECK(form.evaluate_normalized(lv.witness) % mod == 0);
        bool primitive = false;
        for (const Int& w : lv.witness)
            primitive |= w % c.p != 0;
        CHECK(primitive);
    }
}

TEST_CASE("Hasse-Minkowski decision with witnesses") {
    auto ok = hasse_minkowski_decide(F({1, 1, -2}));
    CHECK(ok.soluble);
    REQUIRE_FALSE(ok.witness.empty());
    CHECK(F({1, 1, -2}).evaluate(ok.witness) == 0);

    auto bad = hasse_minkowski_decide(F({1, 1, -3}));
    CHECK_FALSE(bad.soluble);
    bool three_obstructs = false;
    for (const auto& v : bad.obstructions)
        three_obstructs |= (!v.real && v.prime == 3);
    CHECK(three_obstructs);
    CHECK(bad.obstructions.size() % 2 == 0); // anisotropic places pair up

    auto easy = hasse_minkowski_decide(F({2, 3, -5}));
    CHECK(easy.soluble);
    CHECK(F({2, 3, -5}).evaluate(easy.witness) == 0);

    // squarefree normalization: witnesses map back through the scalings
    auto scaled = hasse_minkowski_decide(F({4, 9, -8}));
    CHECK(scaled.soluble);
    CHECK(F({4, 9, -8}).evaluate(scaled.witness) == 0);
}

TEST_CASE("Mordell box search") {
    auto w = mordell_search(Int(1), Int(1), Int(2));
    REQUIRE(w.has_value());
    CHECK((*w)[0] == 1);
    CHECK((*w)[1] == 1);
    CHECK((*w)[2] == 1);

    CHECK_FALSE(mordell_search(Int(5), Int(4), Int(3)).has_value());

    auto iso = mordell_search(Int(1), Int(1), Int(1));
    REQUIRE(iso.has_value());
    Int v = (*iso)[0] * (*iso)[0] + (*iso)[1] * (*iso)[1] - (*iso)[2] * (*iso)[2];
    CHECK(v == 0);
}

TEST_CASE("decision matches the complete-search oracle on a block") {
    for (long a = 1; a <= 8; ++a)
        for (long b = 1; b <= 8; ++b)
            for (long c = 1; c <= 8; ++c) {
                bool decided = hasse_minkowski_decide(F({a, b, -c})).soluble;
                bool found = mordell_search(Int(a), Int(b), Int(c)).has_value();
                CHECK_MESSAGE(decided == found, "disagreement at ", a, ",", b, ",", c);
            }
}

TEST_CASE("equivalence over Q by invariants") {
    CHECK(equivalent_over_q(F({1, 1}), F({1, 1})).equivalent);
    auto sig = equivalent_over_q(F({1, 1}), F({1, -1}));
    CHECK_FALSE(sig.equivalent);
    bool real_disagrees = false;
    for (const auto& d : sig.disagreements)
        real_disagrees |= d.find("REAL") != std::string::npos;
    CHECK(real_disagrees);
    CHECK(equivalent_over_q(F({1, 5}), F({5, 1})).equivalent);
    CHECK_THROWS_AS(equivalent_over_q(F({1, 1}), F({1, 1, 1})), Error);
}

TEST_CASE("equivalence behaves as an equivalence relation") {
    std::vector<std::vector<long>> forms = {{1, 1},  {1, -1}, {5, 1},  {1, 5},
                                            {2, 3},  {3, 2},  {1, 2},  {-1, -1},
                                            {6, 10}, {15, 1}, {2, -3}, {7, 11}};
    const auto n = forms.size();
    std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            eq[i][j] = equivalent_over_q(F(forms[i]), F(forms[j])).equivalent;
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(eq[i][i]);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(eq[i][j] == eq[j][i]);
            for (std::size_t k = 0; k < n; ++k)
                if (eq[i][j] && eq[j][k])
                    CHECK(eq[i][k]);
        }
    }
}

TEST_CASE("hasse symbol product over all places is +1") {
    for (const auto& form : {F({1, 1, -3}), F({2, 3, -5}), F({6, 10, 15}), F({-2, 7, 9, 5})}) {
        std::set<Int> primes{Int(2)};
        for (const Int& a : form.coefficients)
            for (const auto& [p, e] : factorize(a))
                primes.insert(p);
        std::vector<Place> places{Place::at_real()};
        for (const Int& p : primes)
            places.push_back(Place::at_prime(p));
        auto inv = invariants(form, places);
        int prod = 1;
        for (const auto& [v, s] : inv.hasse_symbols)
            prod *= s;
        CHECK(prod == 1);
    }
}

TEST_CASE("infinitesimal automorphisms of diagonal hypersurfaces") {
    std::vector<Int> fermat3{1, 1, 1};
    CHECK(infinitesimal_automorphisms(fermat3, 3).dimension == 0);

    std::vector<Int> quadric{1, 1, 1};
    CHECK(infinitesimal_automorphisms(quadric, 2).dimension == 3); // so(3)

    std::vector<Int> fermat4{1, 1, 1, 1};
    CHECK(infinitesimal_automorphisms(fermat4, 4).dimension == 0);

    // quadrics in more variables: dim so(n) = n(n-1)/2
    std::vector<Int> q4{1, 2, 3, 4};
    CHECK(infinitesimal_automorphisms(q4, 2).dimension == 6);

    std::vector<Int> singular{1, 0, 1};
    CHECK_THROWS_AS(infinitesimal_automorphisms(singular, 3), Error);
}

TEST_CASE("degree >= 3 diagonal forms have finite stabilizer (sampled)") {
    for (long a = 1; a <= 5; ++a)
        for (long b = 1; b <= 5; ++b) {
            std::vector<Int> f3{a, b, (a + b) % 5 + 1};
            CHECK(infinitesimal_automorphisms(f3, 3).dimension == 0);
            CHECK(infinitesimal_automorphisms(f3, 4).dimension == 0);
        }
}
