#pragma once

// Aggregate invariant battery behind `verify-suite`: one quick check per
// module-level property, each returning a named pass/fail.

#include "northcott/dynamics.hpp"
#include "northcott/galois.hpp"
#include "northcott/io.hpp"
#include "northcott/northcott.hpp"

#include <functional>

namespace nlab {

struct VerifyItem {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifySuite {
    std::vector<VerifyItem> items;
    bool all_pass = true;

    void add(const std::string& name, bool pass, std::string detail = "") {
        items.push_back({name, pass, std::move(detail)});
        if (!pass) all_pass = false;
    }
};

namespace detail {

// brute-force oracle for mult_dep_test over |m|,|n| <= 20
inline bool mult_dep_brute(const Rat& x, const Rat& y) {
    auto powr = [](const Rat& q, int e) {
        Rat r = 1;
        Rat base = e < 0 ? Rat(1) / q : q;
        for (int i = 0; i < std::abs(e); ++i) r *= base;
        return r;
    };
    for (int m = -20; m <= 20; ++m)
        for (int n = -20; n <= 20; ++n) {
            if (m == 0 && n == 0) continue;
            if (powr(x, m) * powr(y, n) == 1) return true;
        }
    return false;
}

// brute-force bounded enumeration over Q (independent of enumerate_bounded)
inline std::vector<Point> enum_brute_q(const Curve& C, double T) {
    long H = (long)std::ceil(std::exp(T) - 1e-9);
    if (H < 1) H = 1;
    std::vector<Point> pts;
    pts.push_back(Point::infinity());
    for (long q = 1; q <= H; ++q)
        for (long p = -H; p <= H; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            AlgNumber x = AlgNumber::rational(Rat(p, q));
            Rat out;
            if (!rat_sqrt(C.rhs(x).rat(), out)) continue;
            pts.emplace_back(x, AlgNumber::rational(out));
            if (out != 0) pts.emplace_back(x, AlgNumber::rational(-out));
        }
    std::sort(pts.begin(), pts.end(), nlab::detail::point_order);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace detail

inline VerifySuite run_verify_suite(double tol = 1e-6) {
    VerifySuite s;
    Curve Ex = Curve::over_q(0, 1, 0);    // y^2 = x^3 + x
    Curve Emx = Curve::over_q(0, -1, 0);  // y^2 = x^3 - x
    Curve E1 = Curve::over_q(0, 0, 1);    // y^2 = x^3 + 1
    Curve E17 = Curve::over_q(0, 0, 17);  // y^2 = x^3 + 17

    // heights: parallelogram law on a rank-2 curve
    {
        Curve E = Curve::over_q(0, -7, 10);
        Point P(AlgNumber::rational(1), AlgNumber::rational(2));
        Point Q(AlgNumber::rational(2), AlgNumber::rational(2));
        auto r = check_parallelogram(E, P, Q, tol);
        s.add("heights.parallelogram", r.pass, "residual " + fmt12(r.residual));
    }
    // heights: homogeneity hhat(2P) = 4 hhat(P)
    {
        Point P(AlgNumber::rational(-2), AlgNumber::rational(3));
        auto h1 = canonical_height(E17, P, tol);
        auto h2 = canonical_height(E17, mul(E17, 2, P), tol);
        double resid = std::fabs(h2.h.value - 4 * h1.h.value);
        s.add("heights.homogeneity", resid <= h2.h.radius + 4 * h1.h.radius + 1e-14,
              "residual " + fmt12(resid));
    }
    // heights: torsion <=> zero canonical height
    {
        Point T(AlgNumber::rational(0), AlgNumber::rational(0));
        bool zero = canonical_height(Ex, T, tol).h.exact;
        FieldSpec F = FieldSpec::quadratic(10);
        Point P(AlgNumber::of(F, 2), AlgNumber(F, {Rat(0), Rat(1)}));
        auto t = torsion_test(Ex.base_change(F), P);
        s.add("heights.torsion_dichotomy",
              zero && t.verdict == TorsionVerdict::NonTorsionCertified);
    }
    // curve: m-torsion counts over the algebraic closure
    {
        bool ok = true;
        for (const Curve* C : {&Ex, &Emx, &E1})
            ok = ok && torsion_count_qbar(*C, 2) == 4 && torsion_count_qbar(*C, 3) == 9;
        s.add("curve.torsion_count_qbar", ok);
    }
    // galois: twist kernel transfer round trip at d = 10
    {
        FieldSpec F = FieldSpec::quadratic(10);
        ExtensionSpec ext = ExtensionSpec::quadratic_over_q(10);
        Curve EL = Ex.base_change(F);
        Point P(AlgNumber::of(F, 2), AlgNumber(F, {Rat(0), Rat(1)}));
        Point T(AlgNumber::of(F, 0), AlgNumber::of(F, 0));
        auto r = kernel_iso_check(ext, Ex, {Point::infinity(), P, neg(P), add(EL, P, T)});
        s.add("galois.kernel_iso", r.pass);
    }
    // northcott: enumeration oracle equivalence at T = log 6
    {
        bool ok = true;
        for (const Curve* C : {&Ex, &Emx}) {
            auto got = enumerate_bounded(*C, FieldSpec::rationals(), std::log(6.0));
            ok = ok && got == detail::enum_brute_q(*C, std::log(6.0));
        }
        s.add("northcott.enumeration_oracle", ok);
    }
    // northcott: k-threshold minimality and the family bound
    {
        bool ok = kab_min_k(0, 1) == 8;
        auto fam = qtr_family(0, 1, 8, 3);
        for (auto& fp : fam.points) ok = ok && fp.bound_ok && fp.totally_positive;
        ok = ok && fam.distinct;
        s.add("northcott.family_bound", ok);
    }
    // northcott: multiplicative dependence vs brute force
    {
        bool ok = true;
        std::vector<std::pair<Rat, Rat>> cases = {
            {4, 8}, {2, 3}, {-1, 1}, {Rat(2, 3), Rat(9, 4)}, {Rat(4, 9), Rat(8, 27)}, {6, 12}};
        for (auto& [x, y] : cases) ok = ok && mult_dep_test(x, y) == detail::mult_dep_brute(x, y);
        s.add("northcott.mult_dep_oracle", ok);
    }
    // dynamics: backward-chain decay on the fixture Q, 2Q, 4Q
    {
        Point Q(AlgNumber::rational(-2), AlgNumber::rational(3));
        BackChain bc;
        bc.base = mul(E17, 4, Q);
        bc.chain = {bc.base, mul(E17, 2, Q), Q};
        for (auto& R : bc.chain) bc.heights.push_back(canonical_height(E17, R, tol));
        s.add("dynamics.decay", decay_check(bc, 4, tol).pass);
    }
    // dynamics: preperiodic points of [2] in a box are exactly the torsion set
    {
        auto box = enumerate_bounded(Emx, FieldSpec::rationals(), std::log(4.0));
        Endomorphism f = Endomorphism::scalar_map(Emx, 2);
        std::vector<Point> pre;
        for (auto& P : box)
            if (classify_preperiodic(f, P, tol) == PreperiodicVerdict::Preperiodic)
                pre.push_back(P);
        std::vector<Point> torsion = {Point::infinity(),
                                      Point(AlgNumber::rational(-1), AlgNumber::rational(0)),
                                      Point(AlgNumber::rational(0), AlgNumber::rational(0)),
                                      Point(AlgNumber::rational(1), AlgNumber::rational(0))};
        std::sort(torsion.begin(), torsion.end(), nlab::detail::point_order);
        s.add("dynamics.preperiodic_finiteness", pre == torsion);
    }
    return s;
}

}  // namespace nlab
