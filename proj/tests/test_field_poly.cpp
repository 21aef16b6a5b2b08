#include <doctest.h>

#include <random>
#include <set>

#include "palcount/errors.hpp"
#include "palcount/poly.hpp"

using namespace palcount;

TEST_CASE("field construction validates its inputs") {
    CHECK_THROWS_AS(FieldSpec::make(4), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(FieldSpec::make(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 0, 1}), std::invalid_argument);  // (x+1)^2
    CHECK_THROWS_AS(FieldSpec::make(2, 2, {1, 1, 2}), std::invalid_argument);  // not monic

    auto f4 = FieldSpec::make(2, 2);
    CHECK(f4->q() == 4);
    CHECK(f4->modulus() == std::vector<int>{1, 1, 1});  // first irreducible in search order

    auto f9 = FieldSpec::make(3, 2);
    CHECK(f9->q() == 9);
    CHECK(f9->modulus().size() == 3);
}

TEST_CASE("field arithmetic satisfies the axioms on full small fields") {
    for (auto field : {FieldSpec::make(2), FieldSpec::make(5), FieldSpec::make(2, 2),
                       FieldSpec::make(3, 2)}) {
        const std::int64_t q = field->q();
        for (std::int64_t a = 0; a < q; ++a) {
            FieldElement ea = field->element(a);
            CHECK(field->add(ea, field->zero()) == ea);
            CHECK(field->mul(ea, field->one()) == ea);
            CHECK(field->add(ea, field->neg(ea)) == field->zero());
            if (a != 0) {
                CHECK(field->mul(ea, field->inv(ea)) == field->one());
                CHECK(field->pow(ea, q - 1) == field->one());
            }
            for (std::int64_t b = 0; b < q; ++b) {
                FieldElement eb = field->element(b);
                CHECK(field->add(ea, eb) == field->add(eb, ea));
                CHECK(field->mul(ea, eb) == field->mul(eb, ea));
                for (std::int64_t c = 0; c < q; ++c) {
                    FieldElement ec = field->element(c);
                    CHECK(field->mul(ea, field->add(eb, ec)) ==
                          field->add(field->mul(ea, eb), field->mul(ea, ec)));
                }
            }
        }
        CHECK_THROWS_AS(field->inv(field->zero()), std::invalid_argument);
    }
}

TEST_CASE("poly_mul matches the stated products") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    Poly x1_2 = Poly::from_ints(f2, {1, 1});
    CHECK(poly_mul(x1_2, x1_2) == Poly::from_ints(f2, {1, 0, 1}));   // (x+1)^2 = x^2+1
    CHECK(poly_mul(x1_2, Poly::one(f2)) == x1_2);
    Poly a = Poly::from_ints(f3, {1, 1});
    Poly b = Poly::from_ints(f3, {2, 1});
    CHECK(poly_mul(a, b) == Poly::from_ints(f3, {2, 0, 1}));         // x^2+2
    CHECK_THROWS_AS(poly_mul(x1_2, a), std::invalid_argument);
    CHECK(poly_mul(Poly::zero(f2), x1_2).is_zero());
}

TEST_CASE("reciprocal reverses coefficients and needs f(0) != 0 to involute") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    CHECK(reciprocal(Poly::from_ints(f2, {1, 1, 0, 1})) == Poly::from_ints(f2, {1, 0, 1, 1}));
    Poly pal = Poly::from_ints(f2, {1, 1, 1});
    CHECK(reciprocal(pal) == pal);
    // x^2+2x loses its degree under reversal, so the involution fails
    Poly g = Poly::from_ints(f3, {0, 2, 1});
    Poly rg = reciprocal(g);
    CHECK(rg == Poly::from_ints(f3, {1, 2}));
    CHECK(reciprocal(rg) == Poly::from_ints(f3, {2, 1}));
    CHECK(reciprocal(rg) != g);
    CHECK_THROWS_AS(reciprocal(Poly::zero(f2)), std::invalid_argument);
}

TEST_CASE("reciprocal is an involution away from zero constant terms") {
    std::mt19937 rng(7);
    for (auto field : {FieldSpec::make(2), FieldSpec::make(5)}) {
        const std::int64_t q = field->q();
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<FieldElement> c(1 + rng() % 9);
            for (auto& e : c) e = field->element(std::int64_t(rng() % std::uint64_t(q)));
            c[0] = field->element(1 + std::int64_t(rng() % std::uint64_t(q - 1)));
            c.back() = field->element(1 + std::int64_t(rng() % std::uint64_t(q - 1)));
            Poly f(field, c);
            CHECK(reciprocal(reciprocal(f)) == f);
        }
    }
}

TEST_CASE("self-reciprocal test recognizes palindromes") {
    auto f2 = FieldSpec::make(2);
    CHECK(is_self_reciprocal(Poly::from_ints(f2, {1, 0, 0, 1, 0, 0, 1})));
    CHECK_FALSE(is_self_reciprocal(Poly::from_ints(f2, {1, 1, 0, 1})));
    CHECK(is_self_reciprocal(Poly::from_ints(f2, {1, 1})));
    auto f3 = FieldSpec::make(3);
    CHECK_THROWS_AS(is_self_reciprocal(Poly::from_ints(f3, {1, 2})), std::invalid_argument);
}

TEST_CASE("irreducibility matches known cases") {
    auto f2 = FieldSpec::make(2);
    CHECK(is_irreducible(Poly::from_ints(f2, {1, 1, 1})));
    CHECK_FALSE(is_irreducible(Poly::from_ints(f2, {1, 0, 1})));
    CHECK(is_irreducible(Poly::from_ints(f2, {1, 0, 0, 1, 0, 0, 1})));  // x^6+x^3+1
    CHECK(is_irreducible(Poly::from_ints(f2, {0, 1})));                 // x
    CHECK_THROWS_AS(is_irreducible(Poly::one(f2)), std::invalid_argument);
    CHECK_THROWS_AS(is_irreducible(Poly::from_ints(f2, {1, 0})), std::invalid_argument);
}

TEST_CASE("irreducibility transfers to the reciprocal") {
    std::mt19937 rng(11);
    for (auto field : {FieldSpec::make(2), FieldSpec::make(3), FieldSpec::make(2, 2)}) {
        const std::int64_t q = field->q();
        for (int checked = 0; checked < 60; ++checked) {
            std::vector<FieldElement> c(2 + rng() % 8, field->zero());
            for (auto& e : c) e = field->element(std::int64_t(rng() % std::uint64_t(q)));
            c[0] = field->one();  // unit constant keeps the reciprocal monic
            c.back() = field->one();
            Poly f(field, c);
            CHECK(is_irreducible(f) == is_irreducible(reciprocal(f)));
        }
    }
}

TEST_CASE("self-reciprocal polynomials of odd degree above 1 are reducible") {
    for (auto field : {FieldSpec::make(2), FieldSpec::make(3)}) {
        for (int d = 3; d <= 7; d += 2) {
            enumerate_monic(field, d, std::nullopt, std::nullopt, [&](const Poly& f) {
                if (is_self_reciprocal(f)) CHECK_FALSE(is_irreducible(f));
                return true;
            });
        }
    }
}

TEST_CASE("monic enumeration respects windows, order, and counts") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);

    std::vector<Poly> all;
    enumerate_monic(f2, 2, std::nullopt, std::nullopt, [&](const Poly& f) {
        all.push_back(f);
        return true;
    });
    REQUIRE(all.size() == 4);
    CHECK(all[0] == Poly::from_ints(f2, {0, 0, 1}));
    CHECK(all[1] == Poly::from_ints(f2, {1, 0, 1}));
    CHECK(all[2] == Poly::from_ints(f2, {0, 1, 1}));
    CHECK(all[3] == Poly::from_ints(f2, {1, 1, 1}));

    int count = 0;
    std::vector<FieldElement> lead{f2->element(1)};
    enumerate_monic(f2, 4, lead, std::nullopt, [&](const Poly& f) {
        CHECK(f.coeff(3) == f2->element(1));
        ++count;
        return true;
    });
    CHECK(count == 8);

    count = 0;
    std::vector<FieldElement> lead3{f3->element(0)};
    std::vector<FieldElement> end3{f3->element(2)};
    enumerate_monic(f3, 3, lead3, end3, [&](const Poly& f) {
        CHECK(f.coeff(2) == f3->element(0));
        CHECK(f.coeff(0) == f3->element(2));
        ++count;
        return true;
    });
    CHECK(count == 3);  // only the x-coefficient is free

    // no duplicates, exactly q^d items
    std::set<std::vector<FieldElement>> seen;
    enumerate_monic(f3, 4, std::nullopt, std::nullopt, [&](const Poly& f) {
        seen.insert(f.coeffs());
        return true;
    });
    CHECK(seen.size() == 81);

    std::vector<FieldElement> big(3, f2->element(1));
    CHECK_THROWS_AS(enumerate_monic(f2, 4, big, big, [](const Poly&) { return true; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(enumerate_monic(f2, 2, big, std::nullopt, [](const Poly&) { return true; }),
                    std::invalid_argument);
}

TEST_CASE("coefficient windows read zero out of range") {
    auto f2 = FieldSpec::make(2);
    Poly f = Poly::from_ints(f2, {1, 1, 0, 0, 0, 1});  // x^5+x+1
    CHECK(leading_coeffs(f, 2) == std::vector<FieldElement>{f2->element(0), f2->element(0)});
    Poly g = Poly::from_ints(f2, {1, 1});
    CHECK(leading_coeffs(g, 1) == std::vector<FieldElement>{f2->element(1)});
    CHECK(ending_coeffs(g, 2) == std::vector<FieldElement>{f2->element(1), f2->element(1)});
    CHECK(leading_coeffs(g, 2) == std::vector<FieldElement>{f2->element(1), f2->element(0)});
}

TEST_CASE("polynomial literals parse both forms") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    CHECK(parse_poly(f2, "1011") == Poly::from_ints(f2, {1, 1, 0, 1}));
    CHECK(parse_poly(f3, "1012") == Poly::from_ints(f3, {2, 1, 0, 1}));
    CHECK(parse_poly(f2, "[1,1,0,1]") == Poly::from_ints(f2, {1, 1, 0, 1}));
    CHECK(format_poly(Poly::from_ints(f2, {1, 1, 0, 1})) == "1011");
    auto f4 = FieldSpec::make(2, 2);
    CHECK(format_poly(Poly::from_ints(f4, {3, 1})) == "[3,1]");
    CHECK(parse_poly(f4, "[3,1]") == Poly::from_ints(f4, {3, 1}));
    CHECK_THROWS_AS(parse_poly(f2, "10121"), std::invalid_argument);  // digit 2 over F_2
    CHECK_THROWS_AS(parse_poly(f2, ""), std::invalid_argument);
}
