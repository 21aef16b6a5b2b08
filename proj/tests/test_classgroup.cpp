#include <doctest.h>

#include <random>
#include <set>

#include "palcount/classgroup.hpp"
#include "palcount/errors.hpp"
#include "palcount/sripm.hpp"

using namespace palcount;

namespace {

GroupPtr e12_q2() {
    auto f2 = FieldSpec::make(2);
    std::vector<Poly> gens{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1, 0, 1})};
    return decompose(f2, 1, 2, gens);
}

}  // namespace

TEST_CASE("class_of reads the windows") {
    auto f2 = FieldSpec::make(2);
    GroupPtr G = e12_q2();

    ClassLabel xi1 = class_of(Poly::from_ints(f2, {1, 1, 1}), 1, 2);  // x^2+x+1
    CHECK(xi1 == G->generators()[0]);
    ClassLabel id = class_of(Poly::from_ints(f2, {1, 0, 1}), 1, 2);   // x^2+1
    CHECK(id == identity_label(f2, 1, 2));

    ClassLabel xi2 = class_of(Poly::from_ints(f2, {1, 1, 0, 0, 0, 1}), 2, 3);  // x^5+x+1
    CHECK(xi2.leading == std::vector<FieldElement>{f2->element(0), f2->element(0)});
    CHECK(xi2.ending ==
          std::vector<FieldElement>{f2->element(1), f2->element(1), f2->element(0)});

    CHECK_THROWS_AS(class_of(Poly::from_ints(f2, {0, 1}), 1, 2), std::invalid_argument);
    auto f3 = FieldSpec::make(3);
    CHECK_THROWS_AS(class_of(Poly::from_ints(f3, {1, 1, 2}), 1, 2), std::invalid_argument);
}

TEST_CASE("class multiplication follows the published relations") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    GroupPtr G2 = e12_q2();
    ClassLabel xi1 = G2->generators()[0];
    CHECK(class_mul(xi1, xi1) == identity_label(f2, 1, 2));  // order 2
    ClassLabel some = G2->label_at(1);
    CHECK(class_mul(some, identity_label(f2, 1, 2)) == some);

    GroupPtr G3 = paper_basis_group(f3, 1, 2);
    ClassLabel y1 = G3->generators()[0];
    CHECK(class_mul(class_mul(y1, y1), y1) == identity_label(f3, 1, 2));  // order 3

    CHECK_THROWS_AS(class_mul(xi1, y1), std::invalid_argument);
}

TEST_CASE("class powers and inverses") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    GroupPtr G3 = paper_basis_group(f3, 1, 2);
    ClassLabel xi2 = G3->generators()[1];
    CHECK(class_pow(xi2, 6) == identity_label(f3, 1, 2));
    CHECK(class_pow(xi2, 3) != identity_label(f3, 1, 2));
    CHECK(class_pow(xi2, 0) == identity_label(f3, 1, 2));

    GroupPtr G23 = paper_basis_group(f2, 2, 3);
    ClassLabel xi1 = G23->generators()[0];
    CHECK(class_inv(xi1) == class_pow(xi1, 3));  // order-4 generator
    CHECK(class_mul(xi1, class_inv(xi1)) == identity_label(f2, 2, 3));
    CHECK(class_pow(xi1, -1) == class_inv(xi1));
}

TEST_CASE("decompose finds the published structures") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);

    GroupPtr a = decompose(f2, 1, 2);
    CHECK(a->order() == 4);
    CHECK(a->orders() == std::vector<std::int64_t>{2, 2});

    std::vector<Poly> gens3{Poly::from_ints(f3, {1, 1}), Poly::from_ints(f3, {2, 1, 0, 1})};
    GroupPtr b = decompose(f3, 1, 2, gens3);
    CHECK(b->order() == 18);
    CHECK(b->orders() == std::vector<std::int64_t>{3, 6});

    std::vector<Poly> gens2{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1, 0, 0, 0, 1})};
    GroupPtr c = decompose(f2, 2, 3, gens2);
    CHECK(c->order() == 16);
    CHECK(c->orders() == std::vector<std::int64_t>{4, 4});

    // a dependent pair cannot serve as a basis
    std::vector<Poly> bad{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1})};
    CHECK_THROWS_AS(decompose(f2, 1, 2, bad), std::invalid_argument);

    // the group-size formula across shapes
    for (auto [field, l, t, want] :
         {std::tuple{f2, 3, 0, std::int64_t(8)}, std::tuple{f3, 1, 1, std::int64_t(6)},
          std::tuple{f3, 0, 2, std::int64_t(6)}, std::tuple{f2, 2, 2, std::int64_t(8)}}) {
        CHECK(decompose(field, l, t)->order() == want);
    }
}

TEST_CASE("exponent lookup matches the published table") {
    auto f2 = FieldSpec::make(2);
    GroupPtr G = e12_q2();
    CHECK(G->exponent_of(identity_label(f2, 1, 2)) == std::vector<int>{0, 0});
    ClassLabel x3x2 = class_of(Poly::from_ints(f2, {1, 0, 1, 1}), 1, 2);  // x^3+x^2+1
    CHECK(G->exponent_of(x3x2) == std::vector<int>{1, 1});

    GroupPtr G23 = paper_basis_group(f2, 2, 3);
    CHECK(G23->exponent_of(G23->generators()[0]) == std::vector<int>{1, 0});

    ClassLabel bad = identity_label(f2, 1, 2);
    bad.ending[0] = f2->element(0);
    CHECK_THROWS_AS(G->exponent_of(bad), std::invalid_argument);
}

TEST_CASE("degree class sets match the published listings") {
    auto f2 = FieldSpec::make(2);
    GroupPtr G23 = paper_basis_group(f2, 2, 3);

    auto d1 = G23->classes_of_degree(1);
    REQUIRE(d1.size() == 1);
    CHECK(d1[0] == class_of(Poly::from_ints(f2, {1, 1}), 2, 3));
    CHECK(G23->exponent_of(d1[0]) == std::vector<int>{1, 0});

    auto d3 = G23->classes_of_degree(3);
    std::set<std::pair<int, int>> exps;
    for (const auto& lab : d3) {
        auto e = G23->exponent_of(lab);
        exps.insert({e[0], e[1]});
    }
    CHECK(exps == std::set<std::pair<int, int>>{{0, 0}, {1, 1}, {2, 3}, {3, 0}});

    GroupPtr G12 = e12_q2();
    CHECK(G12->classes_of_degree(2).size() == 2);

    // d >= l+t covers the whole group; below it the class map is injective
    CHECK(G23->classes_of_degree(5).size() == size_t(G23->order()));
    for (int d = 1; d < 5; ++d) {
        auto cls = G23->classes_of_degree(d);
        std::int64_t monic = 1;
        for (int i = 0; i < d - 1; ++i) monic *= 2;
        CHECK(std::int64_t(cls.size()) == monic);  // (q-1) q^(d-1) with q = 2
    }
}

TEST_CASE("group axioms hold on random triples") {
    std::mt19937 rng(23);
    for (auto [field, l, t] : {std::tuple{FieldSpec::make(3), 2, 1},
                               std::tuple{FieldSpec::make(2, 2), 1, 1},
                               std::tuple{FieldSpec::make(5), 1, 2}}) {
        GroupPtr G = decompose(field, l, t);
        for (int rep = 0; rep < 32; ++rep) {
            ClassLabel x = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            ClassLabel y = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            ClassLabel z = G->label_at(std::int64_t(rng() % std::uint64_t(G->order())));
            CHECK(class_mul(x, y) == class_mul(y, x));
            CHECK(class_mul(class_mul(x, y), z) == class_mul(x, class_mul(y, z)));
            CHECK(class_mul(x, class_inv(x)) == identity_label(field, l, t));
        }
    }
}

TEST_CASE("preimage solver agrees with the scan route") {
    auto f3 = FieldSpec::make(3);
    GroupPtr G = paper_basis_group(f3, 1, 2);
    for (std::int64_t k = 1; k <= 12; ++k)
        for (std::int64_t li = 0; li < G->order(); ++li) {
            ClassLabel eps = G->label_at(li);
            CHECK(pow_preimages(*G, k, G->exponent_of(eps)) == pow_preimages_scan(*G, k, eps));
        }
}
