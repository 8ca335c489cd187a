#include <catch2/catch_amalgamated.hpp>

#include <northcott/io.hpp>

using namespace nlab;

TEST_CASE("parse_field: the three field kinds", "[io]") {
    CHECK(parse_field("Q") == FieldSpec::rationals());
    CHECK(parse_field(" Q(sqrt,10) ") == FieldSpec::quadratic(10));
    CHECK(parse_field("Q(sqrt,-5)") == FieldSpec::quadratic(-5));
    CHECK(parse_field("Q(zeta,12)") == FieldSpec::cyclotomic(12));
    CHECK(parse_field("Q").str() == "Q");
    CHECK(parse_field("Q(sqrt,10)").str() == "Q(sqrt,10)");
    CHECK(parse_field("Q(zeta,5)").str() == "Q(zeta,5)");
}

TEST_CASE("parse_field: malformed literals report a position", "[io]") {
    CHECK_THROWS_AS(parse_field("R"), ParseError);
    CHECK_THROWS_AS(parse_field("Q(sqrt)"), ParseError);
    CHECK_THROWS_AS(parse_field("Q(cube,2)"), ParseError);
    CHECK_THROWS_AS(parse_field("Q(sqrt,1)"), ParseError);   // not squarefree > 1
    CHECK_THROWS_AS(parse_field("Q(sqrt,1/2)"), ParseError); // non-integer parameter
    try {
        parse_field("Q(cube,2)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos == 2);
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("parse_element: rationals", "[io]") {
    FieldSpec Q = FieldSpec::rationals();
    CHECK(parse_element(Q, "3/2").rat() == Rat(3, 2));
    CHECK(parse_element(Q, "-7").rat() == Rat(-7));
    CHECK(parse_element(Q, "+5").rat() == Rat(5));
    CHECK(parse_element(Q, "4/6").rat() == Rat(2, 3));  // canonicalized
    CHECK_THROWS_AS(parse_element(Q, "1.5"), ParseError);
    CHECK_THROWS_AS(parse_element(Q, ""), ParseError);
    CHECK_THROWS_AS(parse_element(Q, "1/0"), ParseError);
}

TEST_CASE("parse_element: quadratic term forms", "[io]") {
    FieldSpec F = FieldSpec::quadratic(10);
    CHECK(parse_element(F, "2") == AlgNumber(F, {Rat(2), Rat(0)}));
    CHECK(parse_element(F, "sqrt") == AlgNumber(F, {Rat(0), Rat(1)}));
    CHECK(parse_element(F, "-sqrt") == AlgNumber(F, {Rat(0), Rat(-1)}));
    CHECK(parse_element(F, "1/2+3*sqrt") == AlgNumber(F, {Rat(1, 2), Rat(3)}));
    CHECK(parse_element(F, "2-sqrt") == AlgNumber(F, {Rat(2), Rat(-1)}));
    CHECK(parse_element(F, "-1/3-2/5*sqrt") == AlgNumber(F, {Rat(-1, 3), Rat(-2, 5)}));
    CHECK(parse_element(F, "1+sqrt+1") == AlgNumber(F, {Rat(2), Rat(1)}));  // terms sum
    CHECK_THROWS_AS(parse_element(F, "3sqrt"), ParseError);     // missing '*'
    CHECK_THROWS_AS(parse_element(F, "sqrt(2)"), ParseError);   // trailing text
    CHECK_THROWS_AS(parse_element(F, "1+"), ParseError);
}

TEST_CASE("parse_element: cyclotomic coefficient vectors", "[io]") {
    FieldSpec F = FieldSpec::cyclotomic(5);  // degree 4
    AlgNumber a = parse_element(F, "[1,0,-1/2,3]");
    CHECK(a == AlgNumber(F, {Rat(1), Rat(0), Rat(-1, 2), Rat(3)}));
    CHECK_THROWS_AS(parse_element(F, "[1,2,3]"), ParseError);    // arity
    CHECK_THROWS_AS(parse_element(F, "1"), ParseError);          // not bracketed
    CHECK_THROWS_AS(parse_element(F, "[1,2,3,x]"), ParseError);  // bad coefficient
}

TEST_CASE("parse_curve and parse_point", "[io]") {
    Curve C = parse_curve("0,-7,10 over Q");
    CHECK(C.field == FieldSpec::rationals());
    CHECK(C.a.rat() == Rat(0));
    CHECK(C.b.rat() == Rat(-7));
    CHECK(C.c.rat() == Rat(10));

    Point P = parse_point(C.field, "(1,2)");
    CHECK(on_curve(C, P));
    CHECK(parse_point(C.field, " inf ") == Point::infinity());

    Curve Cq = parse_curve("2*sqrt-2*sqrt,100,0 over Q(sqrt,10)");
    CHECK(Cq.a.is_zero());
    Point Pq = parse_point(Cq.field, "(20,100)");
    CHECK(on_curve(Cq, Pq));

    // y = sqrt(10) as a coordinate
    Curve Cx = parse_curve("0,100,0 over Q(sqrt,10)");
    Point Ps = parse_point(Cx.field, "(2,sqrt)");
    CHECK_FALSE(on_curve(Cx, Ps));  // wrong curve: 2^3 + 200 != 10
    Curve Ctrue = parse_curve("0,1,0 over Q(sqrt,10)");
    CHECK(on_curve(Ctrue, parse_point(Ctrue.field, "(2,-sqrt)")));

    CHECK_THROWS_AS(parse_curve("0,-7 over Q"), ParseError);
    CHECK_THROWS_AS(parse_curve("0,-7,10"), ParseError);
    CHECK_THROWS_AS(parse_curve("0,0,0 over Q"), ParseError);  // singular
    CHECK_THROWS_AS(parse_point(C.field, "(1,2,3)"), ParseError);
    CHECK_THROWS_AS(parse_point(C.field, "1,2"), ParseError);
}

TEST_CASE("parse_map", "[io]") {
    Curve C = parse_curve("0,1,0 over Q");
    Endomorphism m2 = parse_map(C, "[2]");
    CHECK(m2.scalar);
    CHECK(m2.m == 2);
    CHECK(m2.degree() == 4);
    Endomorphism cm = parse_map(C, "cm(1,1)");
    CHECK_FALSE(cm.scalar);
    CHECK(cm.ca == 1);
    CHECK(cm.cb == 1);
    CHECK(cm.degree() == 2);
    CHECK_THROWS_AS(parse_map(C, "[1/2]"), ParseError);
    CHECK_THROWS_AS(parse_map(C, "double"), ParseError);
    Curve Cbad = parse_curve("0,0,1 over Q");
    CHECK_THROWS_AS(parse_map(Cbad, "cm(1,1)"), ParseError);  // no CM by i
}

TEST_CASE("parse_extension", "[io]") {
    ExtensionSpec e = parse_extension("Q(sqrt,10)/Q");
    CHECK(e.L == FieldSpec::quadratic(10));
    CHECK(e.group.size() == 2);
    ExtensionSpec ec = parse_extension("Q(zeta,5)/Q");
    CHECK(ec.group.size() == 4);
    CHECK_THROWS_AS(parse_extension("Q(sqrt,10)"), ParseError);
    CHECK_THROWS_AS(parse_extension("Q(sqrt,10)/Q(sqrt,2)"), ParseError);
}

TEST_CASE("json emission round-trips through the parser", "[io]") {
    FieldSpec F = FieldSpec::quadratic(10);
    AlgNumber a(F, {Rat(1, 2), Rat(-3)});
    json j = to_json(a);
    CHECK(j["field"] == "Q(sqrt,10)");
    CHECK(j["coeffs"][0] == "1/2");
    CHECK(j["coeffs"][1] == "-3");
    FieldSpec F2 = parse_field(j["field"].get<std::string>());
    AlgNumber b(F2, {Rat(std::string(j["coeffs"][0])), Rat(std::string(j["coeffs"][1]))});
    CHECK(a == b);

    CHECK(to_json(Point::infinity()) == json("inf"));
    json jp = to_json(Point(AlgNumber::rational(Rat(1)), AlgNumber::rational(Rat(2))));
    CHECK(jp["x"] == "1");
    CHECK(jp["y"] == "2");

    json jh = to_json(HeightEstimate::exactly(0.0));
    CHECK(jh["value"] == 0.0);
    CHECK(jh["exact"] == true);
}

TEST_CASE("csv_escape and sig12", "[io]") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(sig12(0.0) == 0.0);
    CHECK(sig12(1.0 / 3.0) == 0.333333333333);
    CHECK(fmt12(2.5) == "2.5");
}
