#include <doctest.h>

#include <random>

#include "qh/novikov.hpp"

using namespace qh;

namespace {

Laurent random_laurent(std::mt19937_64& rng) {
    std::vector<int> exps;
    const int terms = static_cast<int>(rng() % 5);
    for (int i = 0; i < terms; ++i) exps.push_back(static_cast<int>(rng() % 33) - 16);
    return Laurent::from_exponents(std::move(exps));
}

} // namespace

TEST_CASE("Laurent addition cancels in characteristic two") {
    const Laurent a = Laurent::parse("t + 1");
    const Laurent b = Laurent::parse("t + t^-1");
    CHECK((a + b) == Laurent::parse("1 + t^-1"));
    CHECK((a + a).is_zero());
    CHECK((Laurent::zero() + Laurent::parse("t^3")) == Laurent::parse("t^3"));
}

TEST_CASE("Laurent multiplication adds exponents") {
    CHECK((Laurent::monomial(2) * Laurent::monomial(-1)) == Laurent::monomial(1));
    const Laurent one_plus_t = Laurent::parse("1 + t");
    CHECK((one_plus_t * one_plus_t) == Laurent::parse("1 + t^2"));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 64; ++trial) {
        const Laurent x = random_laurent(rng);
        CHECK((Laurent::one() * x) == x);
    }
}

TEST_CASE("valuation is max of negated exponents, -infinity at zero") {
    CHECK(*Laurent::parse("t^2 + t^-1").valuation() == 1);
    CHECK(*Laurent::one().valuation() == 0);
    CHECK_FALSE(Laurent::zero().valuation().has_value());
}

TEST_CASE("ring laws hold on random triples") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 1200; ++trial) {
        const Laurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        CHECK((a + b) == (b + a));
        CHECK((a * b) == (b * a));
        CHECK(((a + b) + c) == (a + (b + c)));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));

        // Valuation laws: multiplicative on nonzero inputs, ultrametric on sums.
        if (!a.is_zero() && !b.is_zero())
            CHECK(*(a * b).valuation() == *a.valuation() + *b.valuation());
        const auto va = a.valuation(), vb = b.valuation(), vsum = (a + b).valuation();
        if (va && vb) {
            const long long cap = std::max(*va, *vb);
            if (vsum) CHECK(*vsum <= cap);
            if (*va != *vb) {
                REQUIRE(vsum.has_value());
                CHECK(*vsum == cap);
            }
        }
    }
}

TEST_CASE("gamma embedding is a degree-preserving ring map") {
    const MonotoneContext cp2(3, 3, Rational(1, 2));  // N_L = n+1 for CP^2
    CHECK(embed_gamma(GammaElement::parse("s"), cp2) == Laurent::monomial(2));

    const MonotoneContext even(2, 2, Rational(1, 2));
    CHECK(embed_gamma(GammaElement::parse("s"), even) == Laurent::monomial(2));
    const MonotoneContext coarse(4, 2, Rational(1, 2));
    CHECK(embed_gamma(GammaElement::parse("s^-1"), coarse) == Laurent::monomial(-1));

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const GammaElement g1{random_laurent(rng)}, g2{random_laurent(rng)};
        CHECK(embed_gamma(GammaElement{g1.poly * g2.poly}, even) ==
              embed_gamma(g1, even) * embed_gamma(g2, even));
        // deg s^j = -2 C_M on both sides of the embedding.
        for (int j : g1.poly.support())
            CHECK(-j * 2 * even.chern_min ==
                  -(j * even.gamma_embedding_exponent()) * even.maslov_min);
    }

    const MonotoneContext exact(kInfiniteMaslov, 1, Rational(1));
    CHECK_THROWS_AS(embed_gamma(GammaElement::parse("s"), exact), context_mismatch);
}

TEST_CASE("monotone context invariants") {
    CHECK_THROWS_AS(MonotoneContext(1, 1, Rational(1)), bad_parameters);
    CHECK_THROWS_AS(MonotoneContext(3, 2, Rational(1)), bad_parameters);  // 3 does not divide 4
    CHECK_THROWS_AS(MonotoneContext(2, 1, Rational(-1)), bad_parameters);
    const MonotoneContext ctx(3, 3, Rational(1, 2));
    CHECK(ctx.area() == Rational(3, 2));
    const MonotoneContext exact(kInfiniteMaslov, 1, Rational(1));
    CHECK(exact.area() == Rational(0));
    CHECK(MonotoneContext::from_string(ctx.to_string()) == ctx);
}

TEST_CASE("textual round trip is bit exact") {
    const Laurent x = Laurent::parse("t^-1 + 1 + t^2");
    CHECK(x.to_string() == "t^-1 + 1 + t^2");
    CHECK(Laurent::parse(x.to_string()) == x);
    CHECK(Laurent::zero().to_string() == "0");
    CHECK(Laurent::parse("0").is_zero());

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Laurent a = random_laurent(rng);
        CHECK(Laurent::parse(a.to_string()) == a);
        const GammaElement g{a};
        CHECK(GammaElement::parse(g.to_string()) == g);
    }
}
