#include <doctest.h>

#include <cmath>
#include <complex>

#include "palcount/charsum.hpp"
#include "palcount/errors.hpp"
#include "palcount/sripm.hpp"

using namespace palcount;
using doctest::Approx;

TEST_CASE("mobius and divisors") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(2) == -1);
    CHECK(mobius(30) == -1);
    CHECK(divisors(1) == std::vector<std::uint64_t>{1});
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(20) == std::vector<std::uint64_t>{1, 2, 4, 5, 10, 20});
    CHECK_THROWS_AS(mobius(0), std::invalid_argument);
    CHECK_THROWS_AS(divisors(0), std::invalid_argument);
}

TEST_CASE("character coefficients over the published groups") {
    auto f2 = FieldSpec::make(2);
    std::vector<Poly> gens{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1, 0, 1})};
    GroupPtr G = decompose(f2, 1, 2, gens);
    auto eng = engine_for(G);

    for (int j1 = 0; j1 < 2; ++j1)
        for (int j2 = 0; j2 < 2; ++j2) {
            std::vector<int> e{j1, j2};
            std::complex<double> c1 = eng->c_coeff(1, G->element(e));
            CHECK(c1.real() == Approx(j1 == 0 ? 1.0 : -1.0));
            CHECK(c1.imag() == Approx(0.0));
        }
    // trivial character counts the degree-d classes
    CHECK(eng->c_coeff(2, identity_label(f2, 1, 2)).real() == Approx(2.0));
    CHECK_THROWS_AS(eng->c_coeff(3, identity_label(f2, 1, 2)), std::invalid_argument);

    // E^{2,0}: c(1; xi^j) = 1 + i^j
    GroupPtr G20 = paper_basis_group(f2, 2, 0);
    for (int j = 0; j < 4; ++j) {
        std::vector<int> e{j};
        std::complex<double> c = eng == nullptr ? 0.0 : c_coeff(G20, 1, G20->element(e));
        std::complex<double> want = 1.0 + std::pow(std::complex<double>(0, 1), j);
        CHECK(std::abs(c - want) < 1e-9);
    }
}

TEST_CASE("character polynomials match the published factors") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    std::vector<Poly> gens{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1, 0, 1})};
    GroupPtr G2 = decompose(f2, 1, 2, gens);
    GroupPtr G3 = paper_basis_group(f3, 1, 2);

    std::vector<int> e10{1, 0};
    CharPoly p1 = char_poly(G2, G2->element(e10));  // 1 - z (for either xi2 power)
    REQUIRE(p1.degree() == 2);
    CHECK(std::abs(p1.coeffs[1] - std::complex<double>(-1, 0)) < 1e-9);
    CHECK(std::abs(p1.coeffs[2]) < 1e-9);

    std::vector<int> e01{0, 1};
    CharPoly p2 = char_poly(G2, G2->element(e01));  // 1 + z + 2z^2
    CHECK(std::abs(p2.coeffs[1] - std::complex<double>(1, 0)) < 1e-9);
    CHECK(std::abs(p2.coeffs[2] - std::complex<double>(2, 0)) < 1e-9);

    std::vector<int> e01_3{0, 1};
    CharPoly p3 = char_poly(G3, G3->element(e01_3));  // 1 + 3z^2
    CHECK(std::abs(p3.coeffs[1]) < 1e-9);
    CHECK(std::abs(p3.coeffs[2] - std::complex<double>(3, 0)) < 1e-9);
}

TEST_CASE("power sums follow the Newton recurrence") {
    CharPoly one_minus_z{{1.0, -1.0}};
    for (int n = 1; n <= 10; ++n) CHECK(power_sum(one_minus_z, n).real() == Approx(1.0));

    CharPoly p{{1.0, 1.0, 2.0}};
    CHECK(power_sum(p, 1).real() == Approx(-1.0));
    CHECK(power_sum(p, 2).real() == Approx(-3.0));
    // cross-check against the factorization (1 + sqrt2 e^{i th} z)(1 + sqrt2 e^{-i th} z)
    const double th = std::acos(1.0 / (2.0 * std::sqrt(2.0)));
    for (int n = 1; n <= 12; ++n) {
        double want = 2.0 * std::pow(-std::sqrt(2.0), n) * std::cos(n * th);
        CHECK(power_sum(p, n).real() == Approx(want).epsilon(1e-9));
        CHECK(power_sum(p, n).imag() == Approx(0.0));
    }
    CharPoly constant{{1.0}};
    CHECK(power_sum(constant, 5) == std::complex<double>(0.0, 0.0));
    CHECK_THROWS_AS(power_sum(CharPoly{{2.0, 1.0}}, 1), std::invalid_argument);
}

TEST_CASE("F values over E^{1,2} at q=2") {
    auto f2 = FieldSpec::make(2);
    std::vector<Poly> gens{Poly::from_ints(f2, {1, 1}), Poly::from_ints(f2, {1, 1, 0, 1})};
    GroupPtr G = decompose(f2, 1, 2, gens);

    std::vector<int> e10{1, 0};
    CHECK(F_value(G, 1, G->element(e10)) == Approx(1.0));
    CHECK(F_value(G, 1, identity_label(f2, 1, 2)) == Approx(0.0));

    for (int n = 1; n <= 16; ++n) {
        double sum = 0.0;
        for (std::int64_t li = 0; li < G->order(); ++li) sum += F_value(G, n, G->label_at(li));
        CHECK(sum == Approx(std::pow(2.0, n) - 1.0).epsilon(1e-9));
    }
}

TEST_CASE("per-class irreducible counts hit the published values") {
    auto f2 = FieldSpec::make(2);
    auto f3 = FieldSpec::make(3);
    GroupPtr G3 = paper_basis_group(f3, 1, 2);
    GroupPtr G2 = paper_basis_group(f2, 2, 3);

    CHECK(I_count(G3, 8, identity_label(f3, 1, 2)).count == 42);
    std::vector<int> e23{0, 3};
    CHECK(I_count(G3, 12, G3->element(e23)).count == 2504);
    std::vector<int> e1{1, 0};
    CHECK(I_count(G2, 7, G2->element(e1)).count == 2);
}

TEST_CASE("count partitions tie the engine to the totals") {
    for (auto [field, l, t] :
         {std::tuple{FieldSpec::make(2), 1, 2}, std::tuple{FieldSpec::make(3), 1, 2},
          std::tuple{FieldSpec::make(2), 2, 3}, std::tuple{FieldSpec::make(2, 2), 1, 1},
          std::tuple{FieldSpec::make(5), 2, 0}}) {
        GroupPtr G = decompose(field, l, t);
        auto eng = engine_for(G);
        for (int n = 1; n <= 8; ++n) {
            std::int64_t sum = 0;
            for (std::int64_t li = 0; li < G->order(); ++li)
                sum += eng->I_count(n, G->label_at(li)).count;
            std::int64_t want = I_total(*field, n).count - ((t > 0 && n == 1) ? 1 : 0);
            CHECK(sum == want);
        }
    }
}

TEST_CASE("I_total and I_trace closed forms") {
    auto f2 = FieldSpec::make(2);
    CHECK(I_total(*f2, 3).count == 2);
    CHECK(I_total(*f2, 1).count == 2);
    CHECK(I_total(*f2, 4).count == 3);

    CHECK(I_trace(*f2, 4, f2->element(1)).count == 2);
    CHECK(I_trace(*f2, 4, f2->element(0)).count == 1);
    for (auto field : {FieldSpec::make(2), FieldSpec::make(3), FieldSpec::make(2, 2)}) {
        for (int n = 1; n <= 10; ++n) {
            std::int64_t sum = 0;
            for (std::int64_t c = 0; c < field->q(); ++c)
                sum += I_trace(*field, n, field->element(c)).count;
            CHECK(sum == I_total(*field, n).count);
        }
    }
}

TEST_CASE("the exact-range guard rejects oversized q^n") {
    auto f2 = FieldSpec::make(2);
    GroupPtr G = cached_group(f2, 1, 2);
    CHECK_THROWS_AS(I_count(G, 60, identity_label(f2, 1, 2)), guard_error);
    // the pure-integer total is immune to the float guard at the same size
    CHECK(I_total(*f2, 60).count > 0);
    // counts past the 64-bit range are refused outright
    auto f3 = FieldSpec::make(3);
    CHECK_THROWS_AS(I_total(*f3, 50), guard_error);
}

TEST_CASE("residuals are tracked and tiny at desk scale") {
    auto f3 = FieldSpec::make(3);
    GroupPtr G = paper_basis_group(f3, 1, 2);
    auto eng = engine_for(G);
    double worst = 0.0;
    for (int n = 1; n <= 20; ++n)
        for (std::int64_t li = 0; li < G->order(); ++li)
            worst = std::max(worst, eng->I_count(n, G->label_at(li)).residual);
    CHECK(worst < 1e-6);
}
