#include "northcott/nf.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace nlab;

namespace {
AlgNumber q(long p, long den = 1) { return AlgNumber::rational(Rat(p, den)); }
}

TEST_CASE("field specs validate their parameters", "[nf]") {
    CHECK(FieldSpec::rationals().degree == 1);
    CHECK(FieldSpec::quadratic(10).degree == 2);
    CHECK(FieldSpec::cyclotomic(5).degree == 4);
    CHECK(FieldSpec::cyclotomic(12).degree == 4);
    CHECK(FieldSpec::cyclotomic(40).degree == 16);
    CHECK_THROWS_AS(FieldSpec::quadratic(0), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::quadratic(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::quadratic(12), std::invalid_argument);  // not squarefree
    CHECK_THROWS_AS(FieldSpec::cyclotomic(2), std::invalid_argument);
}

TEST_CASE("cyclotomic polynomials match hand values", "[nf]") {
    // oracle: hardcoded Phi_5 and Phi_12
    auto phi5 = detail::cyclotomic_poly(5);
    CHECK(phi5 == std::vector<Int>{1, 1, 1, 1, 1});
    auto phi12 = detail::cyclotomic_poly(12);
    CHECK(phi12 == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("quadratic arithmetic is exact", "[nf]") {
    FieldSpec F = FieldSpec::quadratic(2);
    AlgNumber s(F, {Rat(1), Rat(1)});   // 1 + sqrt 2
    AlgNumber t(F, {Rat(1), Rat(-1)});  // 1 - sqrt 2
    CHECK((s * t) == AlgNumber::of(F, Rat(-1)));
    CHECK((s + t) == AlgNumber::of(F, Rat(2)));
    CHECK((s * inverse(s)) == AlgNumber::one(F));
    CHECK_THROWS_AS(inverse(AlgNumber::zero(F)), std::domain_error);
}

TEST_CASE("cyclotomic arithmetic reduces mod Phi_n", "[nf]") {
    FieldSpec F = FieldSpec::cyclotomic(5);
    AlgNumber z = AlgNumber::gen(F);
    CHECK(pow(z, 5) == AlgNumber::one(F));
    // 1 + z + z^2 + z^3 + z^4 = 0
    AlgNumber sum = AlgNumber::one(F) + z + pow(z, 2) + pow(z, 3) + pow(z, 4);
    CHECK(sum.is_zero());
    CHECK((z * inverse(z)) == AlgNumber::one(F));
    CHECK(inverse(z) == pow(z, 4));
}

TEST_CASE("coerce lifts rationals only", "[nf]") {
    FieldSpec F = FieldSpec::quadratic(10);
    AlgNumber two = coerce(q(2), F);
    CHECK(two.field == F);
    CHECK(two.c[0] == 2);
    AlgNumber root(F, {Rat(0), Rat(1)});
    CHECK_THROWS_AS(coerce(root, FieldSpec::cyclotomic(5)), std::invalid_argument);
}

TEST_CASE("galois group acts correctly", "[nf]") {
    FieldSpec F = FieldSpec::cyclotomic(5);
    auto G = galois_group(F);
    CHECK(G.size() == 4);
    AlgNumber z = AlgNumber::gen(F);
    Automorphism s2 = Automorphism::make(F, 2);
    CHECK(apply_auto(s2, z) == pow(z, 2));
    // composition: sigma_2 o sigma_2 = sigma_4
    CHECK(apply_auto(s2.compose(s2), z) == pow(z, 4));
    // automorphisms fix Q
    CHECK(apply_auto(s2, coerce(q(7, 3), F)) == coerce(q(7, 3), F));
}

TEST_CASE("minimal polynomial of zeta5 + zeta5^-1 is x^2 + x - 1", "[nf]") {
    FieldSpec F = FieldSpec::cyclotomic(5);
    AlgNumber z = AlgNumber::gen(F);
    AlgNumber x = z + pow(z, 4);
    IntPoly m = minimal_polynomial(x);
    CHECK(m.c == std::vector<Int>{-1, 1, 1});
    // oracle: substitute back
    CHECK(eval_poly(m, x).is_zero());
}

TEST_CASE("minimal polynomial of sqrt(10) and a shifted root", "[nf]") {
    FieldSpec F = FieldSpec::quadratic(10);
    AlgNumber r(F, {Rat(0), Rat(1)});
    CHECK(minimal_polynomial(r).c == std::vector<Int>{-10, 0, 1});
    AlgNumber s(F, {Rat(2), Rat(1)});  // 2 + sqrt 10, root of x^2 - 4x - 6
    CHECK(minimal_polynomial(s).c == std::vector<Int>{-6, -4, 1});
    CHECK(minimal_polynomial(q(3, 2)).c == std::vector<Int>{-3, 2});
}

TEST_CASE("house matches hand values", "[nf]") {
    CHECK(house(q(-7)).value == Catch::Approx(7.0));
    FieldSpec F = FieldSpec::quadratic(10);
    AlgNumber s(F, {Rat(2), Rat(1)});
    CHECK(house(s).value == Catch::Approx(2.0 + std::sqrt(10.0)));
    // conjugates of zeta5 + zeta5^-1 are 2cos(2pi k/5); the largest modulus is
    // the golden ratio
    FieldSpec C5 = FieldSpec::cyclotomic(5);
    AlgNumber z = AlgNumber::gen(C5);
    CHECK(house(z + pow(z, 4)).value == Catch::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-9));
}

TEST_CASE("root of unity detection is exact", "[nf]") {
    CHECK(root_of_unity_order(q(-1)) == 2);
    CHECK(root_of_unity_order(q(1)) == 1);
    CHECK(!root_of_unity_order(q(2)));
    FieldSpec F = FieldSpec::cyclotomic(6);
    AlgNumber z = AlgNumber::gen(F);
    CHECK(root_of_unity_order(z) == 6);
    CHECK(root_of_unity_order(-z) == 3);
    // (1+sqrt5)/2 has house > 1: rejected by the prefilter
    FieldSpec Q5 = FieldSpec::quadratic(5);
    CHECK(!root_of_unity_order(AlgNumber(Q5, {Rat(1, 2), Rat(1, 2)})));
    // -1/2 + sqrt(-3)/2 is a primitive cube root of unity
    FieldSpec Qm3 = FieldSpec::quadratic(-3);
    CHECK(root_of_unity_order(AlgNumber(Qm3, {Rat(-1, 2), Rat(1, 2)})) == 3);
}

TEST_CASE("weil height: rationals and roots of unity", "[nf]") {
    CHECK(weil_height(q(0)).exact);
    CHECK(weil_height(q(1)).value == 0.0);
    CHECK(weil_height(q(-1)).exact);
    auto h = weil_height(q(3, 2));
    CHECK(h.value == Catch::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(weil_height(q(6, 4)).value == Catch::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("weil height: golden ratio oracle", "[nf]") {
    // h((1+sqrt5)/2) = (1/2) log((1+sqrt5)/2) = 0.24060591252...
    FieldSpec F = FieldSpec::quadratic(5);
    AlgNumber phi(F, {Rat(1, 2), Rat(1, 2)});
    auto h = weil_height(phi);
    double expect = 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::fabs(h.value - expect) <= h.radius + 1e-12);
}

TEST_CASE("weil height: quadratic integers", "[nf]") {
    FieldSpec F = FieldSpec::quadratic(10);
    AlgNumber r(F, {Rat(0), Rat(1)});  // sqrt 10
    auto h = weil_height(r);
    CHECK(std::fabs(h.value - 0.5 * std::log(10.0)) <= h.radius + 1e-12);
    AlgNumber s(F, {Rat(2), Rat(1)});  // both conjugate moduli exceed 1: h = (1/2) log 6
    auto hs = weil_height(s);
    CHECK(std::fabs(hs.value - 0.5 * std::log(6.0)) <= hs.radius + 1e-12);
    // imaginary quadratic: h((1 + sqrt(-5))/2) -- minpoly 2x^2-2x+3... use 1+sqrt(-5),
    // minpoly x^2 - 2x + 6, |roots|^2 = 6 both > 1: h = (1/2) log 6
    FieldSpec Fm = FieldSpec::quadratic(-5);
    AlgNumber t(Fm, {Rat(1), Rat(1)});
    auto ht = weil_height(t);
    CHECK(std::fabs(ht.value - 0.5 * std::log(6.0)) <= ht.radius + 1e-12);
}

TEST_CASE("weil height: cyclotomic element via embeddings", "[nf]") {
    // x = zeta5 + zeta5^-1 has minpoly x^2+x-1: h = (1/2) log phi (the golden ratio)
    FieldSpec F = FieldSpec::cyclotomic(5);
    AlgNumber z = AlgNumber::gen(F);
    AlgNumber x = z + pow(z, 4);
    auto h = weil_height(x);
    double expect = 0.5 * std::log((1.0 + std::sqrt(5.0)) / 2.0);
    CHECK(std::fabs(h.value - expect) <= h.radius + 1e-9);
    // 1 + zeta5: conjugates 1 + zeta5^k; product is Phi_5(-(-1)) = Phi_5(-1) = 1,
    // h = (1/4) sum log+ |1+zeta^k| = (1/4)(log|1+z| + log|1+z^4|) since the other two
    // conjugates have modulus < 1
    AlgNumber y = AlgNumber::one(F) + z;
    auto hy = weil_height(y);
    double c1 = std::abs(1.0 + std::polar(1.0, 2 * M_PI / 5));
    double expect_y = 2.0 * std::log(c1) / 4.0;
    CHECK(std::fabs(hy.value - expect_y) <= hy.radius + 1e-9);
}

TEST_CASE("embeddings carry certified radii", "[nf]") {
    FieldSpec F = FieldSpec::cyclotomic(7);
    AlgNumber z = AlgNumber::gen(F);
    auto e = embeddings(z + pow(z, 6));
    REQUIRE(e.values.size() == 6);
    for (auto& v : e.values) CHECK(std::fabs(v.imag()) <= e.radius + 1e-12);
}

TEST_CASE("scaled reals survive huge exponents", "[nf]") {
    Int big = 1;
    for (int i = 0; i < 2000; ++i) big *= 10;  // 10^2000
    ScaledReal s = ScaledReal::from_int(big);
    CHECK(s.log_abs() == Catch::Approx(2000.0 * std::log(10.0)).epsilon(1e-12));
    ScaledReal t = ScaledReal::from_rat(Rat(Int(1), big));
    CHECK(t.log_abs() == Catch::Approx(-2000.0 * std::log(10.0)).epsilon(1e-12));
    CHECK((s * t).log_abs() == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("exact sign of p + q sqrt(D)", "[nf]") {
    CHECK(sign_plus_sqrt(Rat(3), Rat(-1), Rat(10)) < 0);    // 3 < sqrt 10
    CHECK(sign_plus_sqrt(Rat(4), Rat(-1), Rat(10)) > 0);    // 4 > sqrt 10
    CHECK(sign_plus_sqrt(Rat(2), Rat(-1), Rat(4)) == 0);    // 2 = sqrt 4
    CHECK(sign_plus_sqrt(Rat(-7), Rat(2), Rat(10)) < 0);    // 2 sqrt 10 < 7
}
