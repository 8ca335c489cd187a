#include <catch2/catch_amalgamated.hpp>

#include <northcott/dynamics.hpp>

using namespace nlab;

namespace {

AlgNumber q(long n) { return AlgNumber::rational(Rat(n)); }

Point pt(long x, long y) { return Point(q(x), q(y)); }

}  // namespace

TEST_CASE("orbit: 2-torsion falls into the fixed point O", "[dynamics]") {
    Curve C = Curve::over_q(0, 1, 0);  // y^2 = x^3 + x
    auto f = Endomorphism::scalar_map(C, 2);
    OrbitRecord rec = orbit(f, pt(0, 0), 10);
    REQUIRE(rec.iterates.size() == 2);
    CHECK(rec.iterates[0] == pt(0, 0));
    CHECK(rec.iterates[1] == Point::infinity());
    CHECK(rec.cycle_found);
    CHECK(rec.cycle_entry == 1);
    CHECK(rec.period == 1);
    CHECK_FALSE(rec.truncated);
}

TEST_CASE("orbit: 3-torsion point gives a 2-cycle under doubling", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 1);  // y^2 = x^3 + 1
    auto f = Endomorphism::scalar_map(C, 2);
    // 2(0,1) = (0,-1), 2(0,-1) = (0,1)
    OrbitRecord rec = orbit(f, pt(0, 1), 10);
    REQUIRE(rec.iterates.size() == 2);
    CHECK(rec.iterates[1] == pt(0, -1));
    CHECK(rec.cycle_found);
    CHECK(rec.cycle_entry == 0);
    CHECK(rec.period == 2);
}

TEST_CASE("orbit: non-torsion orbit truncates with strictly growing heights", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);  // y^2 = x^3 + 17
    auto f = Endomorphism::scalar_map(C, 2);
    OrbitRecord rec = orbit(f, pt(2, 5), 3);
    CHECK(rec.truncated);
    CHECK_FALSE(rec.cycle_found);
    REQUIRE(rec.iterates.size() == 4);
    for (auto& P : rec.iterates) CHECK(on_curve(C, P));
    for (size_t j = 1; j < rec.heights.size(); ++j)
        CHECK(rec.heights[j].value > rec.heights[j - 1].value);
}

TEST_CASE("orbit: rejects points off the curve and degree-0 maps", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f = Endomorphism::scalar_map(C, 2);
    CHECK_THROWS_AS(orbit(f, pt(1, 1), 5), std::invalid_argument);
    auto zero = Endomorphism::scalar_map(C, 0);
    CHECK_THROWS_AS(orbit(zero, pt(2, 5), 5), std::invalid_argument);
}

TEST_CASE("classify_preperiodic: torsion vs wandering", "[dynamics]") {
    Curve C1 = Curve::over_q(0, 1, 0);
    auto f1 = Endomorphism::scalar_map(C1, 2);
    CHECK(classify_preperiodic(f1, pt(0, 0)) == PreperiodicVerdict::Preperiodic);
    CHECK(classify_preperiodic(f1, Point::infinity()) == PreperiodicVerdict::Preperiodic);

    Curve C2 = Curve::over_q(0, 0, 17);
    auto f2 = Endomorphism::scalar_map(C2, 2);
    CHECK(classify_preperiodic(f2, pt(2, 5)) == PreperiodicVerdict::Wandering);

    auto deg1 = Endomorphism::scalar_map(C2, 1);
    CHECK_THROWS_AS(classify_preperiodic(deg1, pt(2, 5)), std::invalid_argument);
}

TEST_CASE("preimages_double: kernel of doubling on a full 2-torsion curve", "[dynamics]") {
    Curve C = Curve::over_q(0, -1, 0);  // y^2 = x^3 - x, full rational 2-torsion
    PreimageSet pre = preimages_double(C, Point::infinity());
    CHECK(pre.complete);
    REQUIRE(pre.points.size() == 4);
    for (auto& Q : pre.points) CHECK(mul(C, 2, Q) == Point::infinity());
}

TEST_CASE("preimages_double: forward consistency", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    Point Q = pt(-2, 3);
    Point P = mul(C, 2, Q);
    PreimageSet pre = preimages_double(C, P);
    CHECK(pre.complete);
    bool found = false;
    for (auto& R : pre.points) {
        CHECK(mul(C, 2, R) == P);
        if (R == Q) found = true;
    }
    CHECK(found);
}

TEST_CASE("preimages_double: a point with no rational halves", "[dynamics]") {
    Curve C = Curve::over_q(0, -1, 0);
    // (0,0) is 2-torsion; its halves are 4-torsion, none rational here
    PreimageSet pre = preimages_double(C, pt(0, 0));
    CHECK(pre.complete);
    CHECK(pre.points.empty());
}

TEST_CASE("back_chain: recovers a constructed chain of halvings", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f = Endomorphism::scalar_map(C, 2);
    Point Q = pt(-2, 3);
    Point P0 = mul(C, 4, Q);
    BackChain bc = back_chain(f, P0, 2);
    CHECK(bc.exhausted_depth);
    REQUIRE(bc.chain.size() == 3);
    CHECK(bc.chain[0] == P0);
    for (size_t j = 1; j < bc.chain.size(); ++j)
        CHECK(mul(C, 2, bc.chain[j]) == bc.chain[j - 1]);
    REQUIRE(bc.heights.size() == 3);
}

TEST_CASE("back_chain: argument validation", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f3 = Endomorphism::scalar_map(C, 3);
    CHECK_THROWS_AS(back_chain(f3, pt(2, 5), 1), std::invalid_argument);
    auto f = Endomorphism::scalar_map(C, 2);
    CHECK_THROWS_AS(back_chain(f, pt(2, 5), -1), std::invalid_argument);
}

TEST_CASE("decay_check: quarter decay along a doubling chain", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f = Endomorphism::scalar_map(C, 2);
    Point Q = pt(-2, 3);
    BackChain bc = back_chain(f, mul(C, 4, Q), 2);
    REQUIRE(bc.chain.size() == 3);
    DecayCheck dc = decay_check(bc, 4);
    CHECK(dc.pass);
    REQUIRE(dc.residuals.size() == 2);

    // torsion chains decay trivially: every height is exactly zero
    Curve Ct = Curve::over_q(0, -1, 0);
    auto ft = Endomorphism::scalar_map(Ct, 2);
    BackChain bt = back_chain(ft, Point::infinity(), 1);
    DecayCheck dt = decay_check(bt, 4);
    CHECK(dt.pass);

    CHECK_THROWS_AS(decay_check(bc, 1), std::invalid_argument);
}

TEST_CASE("height_growth_check: vacuous when the start is too small", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f = Endomorphism::scalar_map(C, 2);
    std::vector<Point> calib = {pt(-2, 3), pt(2, 5), pt(4, 9), pt(8, 23)};
    GrowthCheck gc = height_growth_check(f, pt(-2, 3), 3, calib);
    CHECK(gc.vacuous);
    GrowthCheck gi = height_growth_check(f, Point::infinity(), 3, calib);
    CHECK(gi.vacuous);
}

TEST_CASE("height_growth_check: doubling beats g = 7/2 from a large start", "[dynamics]") {
    Curve C = Curve::over_q(0, 0, 17);
    auto f = Endomorphism::scalar_map(C, 2);
    std::vector<Point> calib = {pt(-2, 3), pt(2, 5), pt(4, 9), pt(8, 23)};
    Point big = mul(C, 8, pt(-2, 3));
    GrowthCheck gc = height_growth_check(f, big, 3, calib);
    CHECK_FALSE(gc.vacuous);
    CHECK(gc.g == 3.5);
    CHECK(gc.pass);
    REQUIRE(gc.lhs.size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(gc.lhs[j] > gc.rhs[j]);
}

namespace {

// (n, sqrt(n^3 + n)) on y^2 = x^3 + x, placed in its own quadratic field
Point cm_sample(const Curve& C, long n) {
    Int rad = Int(n) * n * n + n, d, s;
    squarefree_decompose(rad, d, s);
    FieldSpec F = FieldSpec::quadratic(d.get_si());
    Point P(AlgNumber::of(F, Rat(n)), AlgNumber(F, {Rat(0), Rat(s)}));
    if (!on_curve(C.base_change(F), P)) throw std::logic_error("cm_sample off curve");
    return P;
}

}  // namespace

TEST_CASE("height_growth_check: degree-2 CM map with g = 3/2", "[dynamics]") {
    Curve C = Curve::over_q(0, 1, 0);  // y^2 = x^3 + x, CM by i
    auto f = Endomorphism::cm_map(C, 1, 1);
    REQUIRE(f.degree() == 2);
    // x-values stay rational under the x-map of [1] + [1] o iota
    std::vector<Point> calib;
    for (long n = 2; n <= 11; ++n) calib.push_back(cm_sample(C, n));

    GrowthCheck gc = height_growth_check(f, cm_sample(C, 100), 3, calib);
    CHECK_FALSE(gc.vacuous);
    CHECK(gc.g == 1.5);
    CHECK(gc.pass);
    REQUIRE(gc.lhs.size() == 3);
    for (int j = 0; j < 3; ++j) CHECK(gc.lhs[j] > gc.rhs[j]);

    // a small start fails the hypothesis h(P) >= 2 B_est
    GrowthCheck gv = height_growth_check(f, cm_sample(C, 2), 3, calib);
    CHECK(gv.vacuous);
}
