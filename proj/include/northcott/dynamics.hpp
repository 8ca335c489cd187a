#pragma once

// Forward orbits with exact cycle detection, preperiodicity classification,
// rational backward orbits under doubling, canonical-height decay along a
// backward chain, and the chained height-growth inequality.

#include "northcott/heights.hpp"

#include <optional>
#include <vector>

namespace nlab {

// ----------------------------------------------------------------- orbits

struct OrbitRecord {
    Point start;
    Endomorphism map = Endomorphism::scalar_map(Curve::over_q(0, 0, 1), 1);
    std::vector<Point> iterates;         // iterates[0] = start
    std::vector<HeightEstimate> heights;  // naive heights
    bool cycle_found = false;
    int cycle_entry = -1;  // first index of the repeated point
    int period = 0;
    bool truncated = false;  // stopped at max_iter (or the size guard) without a repeat
};

namespace detail {

// coordinate-size guard for forward orbits: doubling squares the digit
// count, so unbounded iteration is not an option
inline bool point_too_big(const Point& P, size_t digit_cap = 20000) {
    if (P.inf) return false;
    size_t total = 0;
    for (const Rat& r : P.x.c)
        total += mpz_sizeinbase(r.get_num().get_mpz_t(), 10) +
                 mpz_sizeinbase(r.get_den().get_mpz_t(), 10);
    return total > digit_cap;
}

}  // namespace detail

inline OrbitRecord orbit(const Endomorphism& f, const Point& P, int max_iter) {
    if (f.degree() < 1) throw std::invalid_argument("orbit: map must have degree >= 1");
    if (!on_curve(f.curve, P)) throw std::invalid_argument("orbit: point not on curve");
    OrbitRecord rec;
    rec.start = P;
    rec.map = f;
    Point cur = P;
    for (int i = 0; i <= max_iter; ++i) {
        for (int j = 0; j < (int)rec.iterates.size(); ++j)
            if (rec.iterates[j] == cur) {
                rec.cycle_found = true;
                rec.cycle_entry = j;
                rec.period = i - j;
                return rec;
            }
        rec.iterates.push_back(cur);
        rec.heights.push_back(naive_height(f.curve, cur));
        if (i == max_iter || detail::point_too_big(cur)) {
            rec.truncated = true;
            return rec;
        }
        cur = endo_eval(f, cur);
    }
    return rec;
}

enum class PreperiodicVerdict { Preperiodic, Wandering, Unknown };

// for a degree >= 2 endomorphism of an elliptic curve:
// preperiodic <=> hhat = 0 <=> torsion
inline PreperiodicVerdict classify_preperiodic(const Endomorphism& f, const Point& P,
                                               double tol = 1e-6) {
    if (f.degree() < 2)
        throw std::invalid_argument("classify_preperiodic: degree >= 2 required");
    (void)tol;
    auto t = torsion_test(f.curve, P, kTorsionNmax);
    switch (t.verdict) {
        case TorsionVerdict::Torsion: return PreperiodicVerdict::Preperiodic;
        case TorsionVerdict::NonTorsionCertified: return PreperiodicVerdict::Wandering;
        default: return PreperiodicVerdict::Unknown;
    }
}

// -------------------------------------------------------------- preimages

struct PreimageSet {
    std::vector<Point> points;
    bool complete = true;  // over Q the quartic factoring is a decision procedure
};

// all rational Q with 2Q = P (C over Q)
inline PreimageSet preimages_double(const Curve& C, const Point& P) {
    if (C.field.kind != FieldKind::Rational)
        throw std::invalid_argument("preimages_double: curve must be over Q");
    if (!on_curve(C, P)) throw std::invalid_argument("preimages_double: point not on curve");
    const FieldSpec F = FieldSpec::rationals();
    PreimageSet out;
    auto verify = [&](const Point& Q) {
        if (mul(C, 2, Q) == P) out.points.push_back(Q);
    };
    if (P.inf) {
        // kernel of doubling: O and the rational 2-torsion
        out.points.push_back(Point::infinity());
        std::vector<AlgNumber> cubic = {C.c, C.b, C.a, AlgNumber::rational(Rat(1))};
        RootSearch rs = roots_in_field(cubic, F);
        out.complete = rs.complete;
        for (auto& r : rs.roots) verify(Point(r, AlgNumber::rational(Rat(0))));
        return out;
    }
    // x(2Q) = P.x: quartic num(x) - x_P * 4 (x^3 + a x^2 + b x + c) = 0
    const Rat a = C.a.rat(), b = C.b.rat(), c = C.c.rat(), xp = P.x.rat();
    std::vector<Rat> q(5);
    q[4] = 1;
    q[3] = -4 * xp;
    q[2] = -2 * b - 4 * xp * a;
    q[1] = -8 * c - 4 * xp * b;
    q[0] = b * b - 4 * a * c - 4 * xp * c;
    std::vector<AlgNumber> poly;
    for (auto& co : q) poly.push_back(AlgNumber::rational(co));
    RootSearch rs = roots_in_field(poly, F);
    out.complete = rs.complete;
    for (auto& x : rs.roots) {
        auto y = sqrt_in_field(C.rhs(x));
        if (!y) continue;
        verify(Point(x, *y));
        if (!y->is_zero()) verify(Point(x, -*y));
    }
    return out;
}

// ------------------------------------------------------------- back chains

struct BackChain {
    Point base;                      // Q_0
    std::vector<Point> chain;        // chain[j] = Q_j, f(Q_j) = Q_{j-1}
    std::vector<CanonicalHeightResult> heights;
    bool exhausted_depth = false;    // stopped at the requested depth, not at a dead end
};

namespace detail {

// longest chain of rational halvings, depth-first
inline bool extend_chain(const Curve& C, std::vector<Point>& chain, int depth,
                         std::vector<Point>& best) {
    if ((int)chain.size() - 1 == depth) {
        best = chain;
        return true;
    }
    if (chain.size() > best.size()) best = chain;
    auto pre = preimages_double(C, chain.back());
    for (auto& Q : pre.points) {
        if (Q == chain.back()) continue;  // O halves to itself; avoid a trivial loop
        chain.push_back(Q);
        if (extend_chain(C, chain, depth, best)) return true;
        chain.pop_back();
    }
    return false;
}

}  // namespace detail

// longest rational chain Q_0 = P0, Q_1, Q_2, ... with 2 Q_j = Q_{j-1},
// up to the requested depth (f = [2] over Q only)
inline BackChain back_chain(const Endomorphism& f, const Point& P0, int depth,
                            double tol = 1e-6) {
    if (!f.scalar || f.m != 2)
        throw std::invalid_argument("back_chain: only f = [2] has preimage support");
    if (f.curve.field.kind != FieldKind::Rational)
        throw std::invalid_argument("back_chain: curve must be over Q");
    if (depth < 0) throw std::invalid_argument("back_chain: depth must be >= 0");
    BackChain bc;
    bc.base = P0;
    std::vector<Point> chain = {P0}, best = {P0};
    detail::extend_chain(f.curve, chain, depth, best);
    bc.chain = best;
    bc.exhausted_depth = (int)best.size() - 1 == depth;
    for (auto& Q : bc.chain) bc.heights.push_back(canonical_height(f.curve, Q, tol));
    return bc;
}

// ------------------------------------------------------------ decay check

struct DecayCheck {
    bool pass = true;
    std::vector<double> residuals;  // |hhat(Q_j) - hhat(Q_0)/d^j| per step
};

// hhat(Q_j) = hhat(Q_0) / d^j within the propagated radii
inline DecayCheck decay_check(const BackChain& chain, long d, double tol = 1e-6) {
    if (d < 2) throw std::invalid_argument("decay_check: map degree must be >= 2");
    DecayCheck r;
    if (chain.heights.empty()) return r;
    const HeightEstimate& h0 = chain.heights[0].h;
    double scale = 1;
    for (size_t j = 1; j < chain.heights.size(); ++j) {
        scale *= (double)d;
        const HeightEstimate& hj = chain.heights[j].h;
        double resid = std::fabs(hj.value - h0.value / scale);
        r.residuals.push_back(resid);
        if (resid > hj.radius + h0.radius / scale + 1e-14) r.pass = false;
    }
    return r;
}

// ----------------------------------------------------- chained height growth

struct GrowthCheck {
    bool pass = true;
    bool vacuous = false;  // h(P) < 2 B_est: the hypothesis of the chained bound fails
    double B_est = 0;
    double g = 0;          // d - 1/2
    double hP = 0;
    std::vector<double> lhs;  // h(f^{(n)} P) per step
    std::vector<double> rhs;  // g^n h(P) per step
};

namespace detail {

// x-coordinate iteration for f, tracking only heights; for the CM maps with
// |a| = |b| = 1 the image x picks up a factor of i which a Weil height
// ignores, so the recursion alternates between x and x/i values in the
// point's own field
struct XIter {
    const Endomorphism& f;
    AlgNumber x;
    bool i_factor = false;  // true iff the true x-coordinate is i * x

    XIter(const Endomorphism& f_, const AlgNumber& x0) : f(f_), x(x0) {}

    void step() {
        if (f.scalar) {
            if (f.m != 2) throw std::invalid_argument("XIter: scalar maps limited to [2]");
            detail::XDoubler dbl(f.curve, x.field);
            x = dbl(x);
            return;
        }
        if (std::abs(f.ca) != 1 || std::abs(f.cb) != 1)
            throw std::invalid_argument("XIter: CM maps limited to a + b i with |a| = |b| = 1");
        // x((1 + i) P) = -i (x^2 + b) / (2 x); with x -> i u the i-factor flips
        const AlgNumber b = coerce(f.curve.b, x.field);
        if (x.is_zero()) throw std::domain_error("XIter: hit a 2-torsion x");
        AlgNumber u2 = x * x;
        if (!i_factor) {
            x = -(u2 + b) / (Rat(2) * x);
            i_factor = true;
        } else {
            x = (u2 * Rat(-1) + b) / (Rat(2) * x) * Rat(-1);
            i_factor = false;
        }
    }
};

}  // namespace detail

// verify h(f^{(n)}(P)) > g^n h(P) with g = d - 1/2, provided h(P) >= 2 B_est;
// B_est is the largest observed |h(f(Q)) - d h(Q)| over the calibration sample
inline GrowthCheck height_growth_check(const Endomorphism& f, const Point& P, int n,
                                       const std::vector<Point>& calibration,
                                       double tol = 1e-6) {
    const long d = f.degree();
    if (d < 2) throw std::invalid_argument("height_growth_check: degree >= 2 required");
    if (calibration.empty())
        throw std::invalid_argument("height_growth_check: calibration sample empty");
    if (n < 1) throw std::invalid_argument("height_growth_check: n must be >= 1");
    GrowthCheck r;
    r.g = (double)d - 0.5;

    for (auto& Q : calibration) {
        if (Q.inf) continue;
        HeightEstimate h = weil_height(Q.x);
        detail::XIter it(f, Q.x);
        it.step();
        HeightEstimate hf = weil_height(it.x);
        r.B_est = std::max(r.B_est, std::fabs(hf.value - (double)d * h.value) + hf.radius +
                                        (double)d * h.radius);
    }

    if (P.inf) { r.vacuous = true; return r; }
    HeightEstimate hP = weil_height(P.x);
    r.hP = hP.value;
    if (hP.value < 2.0 * r.B_est) {
        r.vacuous = true;
        return r;
    }
    detail::XIter it(f, P.x);
    double bound = hP.value;
    for (int j = 1; j <= n; ++j) {
        it.step();
        HeightEstimate h = weil_height(it.x);
        bound *= r.g;
        r.lhs.push_back(h.value);
        r.rhs.push_back(bound);
        if (!(h.value - h.radius > bound)) r.pass = false;
    }
    (void)tol;
    return r;
}

}  // namespace nlab
