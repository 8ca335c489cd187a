#pragma once

// Bounded-height point enumeration, the shifted-curve family of totally real
// points of height <= log 2, the k-threshold inequality behind it,
// multiplicative dependence of rational coordinates, and the (+-p, sqrt(+-p(p^2+1)))
// demo points.

#include "northcott/curve.hpp"
#include "northcott/heights.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <vector>

namespace nlab {

// ----------------------------------------------------------- enumeration

struct SearchBox {
    double T = 0;  // height bound
    long H = 1;    // numerator/denominator bound, ceil(exp(T))

    static SearchBox from_bound(double T) {
        if (T < 0) throw std::invalid_argument("SearchBox: T must be >= 0");
        SearchBox b;
        b.T = T;
        b.H = (long)std::ceil(std::exp(T) - 1e-9);
        if (b.H < 1) b.H = 1;
        return b;
    }
};

namespace detail {

// deterministic order: height, then lexicographic coordinates
inline bool point_order(const Point& p, const Point& q) {
    if (p.inf != q.inf) return p.inf;  // O first (height 0)
    if (p.inf) return false;
    auto key = [](const Point& P) {
        std::vector<Rat> k;
        for (auto& v : P.x.c) k.push_back(v);
        for (auto& v : P.y.c) k.push_back(v);
        return k;
    };
    HeightEstimate hp = weil_height(p.x), hq = weil_height(q.x);
    if (std::fabs(hp.value - hq.value) > hp.radius + hq.radius + 1e-12)
        return hp.value < hq.value;
    return key(p) < key(q);
}

inline void push_affine(const Curve& C, const AlgNumber& x, std::vector<Point>& out) {
    AlgNumber r = C.rhs(x);
    auto y = sqrt_in_field(r);
    if (!y) return;
    out.emplace_back(x, *y);
    if (!y->is_zero()) out.emplace_back(x, -*y);
}

}  // namespace detail

// all F-points of C whose x lies in the search box (complete within the box)
inline std::vector<Point> enumerate_bounded(const Curve& C, const FieldSpec& F, double T) {
    if (F.kind == FieldKind::Cyclotomic)
        throw std::invalid_argument("enumerate_bounded: cyclotomic box enumeration unsupported");
    SearchBox box = SearchBox::from_bound(T);
    Curve CF = C.field == F ? C : C.base_change(F);
    const long H = box.H;

    std::vector<Rat> xs;
    for (long q = 1; q <= H; ++q)
        for (long p = -H; p <= H; ++p) {
            if (std::gcd(std::abs(p), q) != 1) continue;
            xs.emplace_back(p, q);
        }

    std::vector<Point> pts;
    pts.push_back(Point::infinity());
    unsigned nthreads = std::min<unsigned>(thread_cap(), 8);
    auto worker = [&](size_t lo, size_t hi) {
        std::vector<Point> local;
        for (size_t i = lo; i < hi; ++i) {
            if (F.kind == FieldKind::Rational) {
                detail::push_affine(CF, AlgNumber::rational(xs[i]), local);
            } else {
                // x = u + v sqrt(d), both coordinates from the box
                for (long vq = 1; vq <= H; ++vq)
                    for (long vp = -H; vp <= H; ++vp) {
                        if (std::gcd(std::abs(vp), vq) != 1) continue;
                        AlgNumber x(F, {xs[i], Rat(vp, vq)});
                        detail::push_affine(CF, x, local);
                    }
            }
        }
        return local;
    };
    if (nthreads <= 1 || xs.size() < 64) {
        auto local = worker(0, xs.size());
        pts.insert(pts.end(), local.begin(), local.end());
    } else {
        std::vector<std::future<std::vector<Point>>> futs;
        size_t chunk = (xs.size() + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            size_t lo = std::min(xs.size(), (size_t)t * chunk);
            size_t hi = std::min(xs.size(), lo + chunk);
            if (lo < hi) futs.push_back(std::async(std::launch::async, worker, lo, hi));
        }
        for (auto& f : futs) {
            auto local = f.get();
            pts.insert(pts.end(), local.begin(), local.end());
        }
    }
    std::sort(pts.begin(), pts.end(), detail::point_order);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// ------------------------------------------------------------ k threshold

// minimal k >= 1 with k^3 + k*a + b > 8 + 12k + 2(3k^2 + |a|)
inline long kab_min_k(const Rat& a, const Rat& b) {
    if (4 * a * a * a + 27 * b * b == 0)
        throw std::invalid_argument("kab_min_k: singular curve (4a^3 + 27b^2 = 0)");
    Rat absa = a < 0 ? -a : a;
    auto holds = [&](long k) {
        Rat lhs = Rat(k) * k * k + Rat(k) * a + b;
        Rat rhs = 8 + 12 * Rat(k) + 2 * (3 * Rat(k) * k + absa);
        return lhs > rhs;
    };
    // once k^3 > 6k^2 + 12k + 8 + |a|(k+2) + |b|, the inequality holds for
    // all larger k, so the scan below terminates
    for (long k = 1;; ++k) {
        if (holds(k)) return k;
        if (k > 100 && Rat(k) * k * k > 6 * Rat(k) * k + 12 * Rat(k) + 8 + absa * (Rat(k) + 2) + (b < 0 ? -b : b) + 1)
            throw std::logic_error("kab_min_k: scan bound exceeded");
    }
}

// -------------------------------------------------- totally real family

struct FamilyPoint {
    long n = 0;            // conductor: x = zeta_n + zeta_n^{-1}
    AlgNumber x;
    IntPoly x_minpoly;
    HeightEstimate h;      // naive height of x
    bool bound_ok = false;       // h <= log 2
    bool totally_positive = false;  // cubic value at x positive in every embedding
    bool y_is_square_in_base = false;  // whether y already lives in Q(zeta_n)
};

struct FamilyRecord {
    long k = 0;
    Rat a, b;
    // E_k: y^2 = x^3 + 3k x^2 + (3k^2+a) x + (k^3+ak+b), over Q
    Curve shifted = Curve::over_q(0, 0, 1);
    std::vector<FamilyPoint> points;
    double height_bound = 0;  // log 2
    bool distinct = false;
};

// N points zeta_n + zeta_n^{-1} (n over odd primes >= 5) on E_k, all of
// naive height <= log 2; y is recorded symbolically (square flag), the
// height only needs x
inline FamilyRecord qtr_family(const Rat& a, const Rat& b, long k, int N) {
    if (N < 1) throw std::invalid_argument("qtr_family: N must be >= 1");
    {
        Rat lhs = Rat(k) * k * k + Rat(k) * a + b;
        Rat absa = a < 0 ? -a : a;
        Rat rhs = 8 + 12 * Rat(k) + 2 * (3 * Rat(k) * k + absa);
        if (!(lhs > rhs)) {
            std::ostringstream os;
            os << "qtr_family: k=" << k << " too small: conjugate inequality fails ("
               << lhs << " <= " << rhs << "); minimal admissible k is " << kab_min_k(a, b);
            throw std::invalid_argument(os.str());
        }
    }
    FamilyRecord rec;
    rec.k = k;
    rec.a = a;
    rec.b = b;
    rec.height_bound = std::log(2.0);
    rec.shifted = shift_curve(Curve::over_q(0, a, b), k);

    auto primes = first_odd_primes(N + 1);  // starts at 3; conductors start at 5
    for (int j = 0; j < N; ++j) {
        long n = primes[j + 1];
        FieldSpec F = FieldSpec::cyclotomic(n);
        AlgNumber z = AlgNumber::gen(F);
        AlgNumber x = z + pow(z, n - 1);

        FamilyPoint fp;
        fp.n = n;
        fp.x = x;
        fp.x_minpoly = minimal_polynomial(x);
        fp.h = weil_height(x, &fp.x_minpoly);
        fp.bound_ok = fp.h.value + fp.h.radius <= rec.height_bound + 1e-12;

        Curve Ek = rec.shifted.base_change(F);
        AlgNumber v = Ek.rhs(x);
        // the conjugate inequality leaves a margin >> 1e-6, so a modest
        // precision suffices even at degree ~200; the positivity test below
        // still compares against the certified radius
        Embeddings emb = embeddings(v, 1e-6);
        fp.totally_positive = true;
        for (auto& z2 : emb.values)
            if (!(z2.real() > emb.radius)) fp.totally_positive = false;
        if (!fp.totally_positive)
            throw std::logic_error("qtr_family: cubic value not totally positive");
        auto ysq = sqrt_in_field(v);
        fp.y_is_square_in_base = ysq.has_value();
        rec.points.push_back(std::move(fp));
    }
    rec.distinct = true;
    for (size_t i = 0; i < rec.points.size(); ++i)
        for (size_t j2 = i + 1; j2 < rec.points.size(); ++j2)
            if (rec.points[i].x_minpoly == rec.points[j2].x_minpoly) rec.distinct = false;
    return rec;
}

// ------------------------------------------------ multiplicative dependence

// true iff x^m y^n = 1 for some (m,n) != (0,0); exact, via prime-exponent
// vectors (any sign obstruction disappears after doubling the exponents)
inline bool mult_dep_test(const Rat& x, const Rat& y) {
    if (x == 0 || y == 0) throw std::invalid_argument("mult_dep_test: zero input");
    auto exps = [](const Rat& q) {
        std::vector<std::pair<Int, long>> v;
        for (auto& [p, e] : factorize(q.get_num())) v.emplace_back(p, (long)e);
        for (auto& [p, e] : factorize(q.get_den())) {
            bool found = false;
            for (auto& [p2, e2] : v)
                if (p2 == p) { e2 -= (long)e; found = true; }
            if (!found) v.emplace_back(p, -(long)e);
        }
        std::erase_if(v, [](auto& pe) { return pe.second == 0; });
        return v;
    };
    auto vx = exps(x), vy = exps(y);
    if (vx.empty() || vy.empty()) return true;  // a unit (+-1) on one side
    // rank <= 1: all 2x2 minors over the union of primes vanish
    std::vector<Int> primes;
    auto get = [](const std::vector<std::pair<Int, long>>& v, const Int& p) {
        for (auto& [q, e] : v)
            if (q == p) return e;
        return 0L;
    };
    for (auto& [p, e] : vx) primes.push_back(p);
    for (auto& [p, e] : vy)
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    for (size_t i = 0; i < primes.size(); ++i)
        for (size_t j = i + 1; j < primes.size(); ++j) {
            long a1 = get(vx, primes[i]), a2 = get(vx, primes[j]);
            long b1 = get(vy, primes[i]), b2 = get(vy, primes[j]);
            if (a1 * b2 != a2 * b1) return false;
        }
    return true;
}

// --------------------------------------------------------------- cc demo

struct CcPoint {
    long p = 0;
    int sign = +1;          // the point (sign*p, sqrt(sign*p(p^2+1)))
    long d = 0;             // squarefree part: field Q(sqrt d)
    Point point;
    HeightEstimate h;       // = log p exactly
};

struct CcDemo {
    Curve curve = Curve::over_q(0, 1, 0);  // y^2 = x^3 + x
    std::vector<CcPoint> points;
};

// the points (+-p, sqrt(+-p(p^2+1))) on y^2 = x^3 + x, of height log p
inline CcDemo cc_points_demo(const std::vector<long>& p_list) {
    CcDemo demo;
    for (long p : p_list) {
        for (int sign : {+1, -1}) {
            Int m = Int(sign) * Int(p) * (Int(p) * p + 1);  // y^2 value at x = sign*p
            Int d, s;
            squarefree_decompose(m, d, s);
            FieldSpec F = FieldSpec::quadratic(d.get_si());
            Point P(AlgNumber::of(F, Rat(sign * p)), AlgNumber(F, {Rat(0), Rat(s)}));
            if (!on_curve(demo.curve.base_change(F), P))
                throw std::logic_error("cc_points_demo: point not on curve");
            CcPoint cp;
            cp.p = p;
            cp.sign = sign;
            cp.d = d.get_si();
            cp.point = P;
            cp.h = HeightEstimate::exactly(std::log((double)p));
            demo.points.push_back(std::move(cp));
        }
    }
    return demo;
}

}  // namespace nlab
