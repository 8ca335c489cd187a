#pragma once

// Weierstrass curves y^2 = x^3 + a x^2 + b x + c over the supported fields:
// group law, scalar multiplication, quadratic twists, shift isomorphisms,
// division polynomials, torsion search, and CM endomorphisms.

#include "northcott/nf.hpp"

#include <functional>
#include <optional>
#include <set>

namespace nlab {

// -------------------------------------------------------------------- Curve

struct Curve {
    FieldSpec field;
    AlgNumber a, b, c;

    Curve(AlgNumber a_, AlgNumber b_, AlgNumber c_)
        : field(a_.field), a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        if (b.field != field || c.field != field)
            throw std::invalid_argument("Curve: coefficient field mismatch");
        if (discriminant().is_zero())
            throw std::invalid_argument("Curve: singular (cubic has a repeated root)");
    }

    static Curve over_q(const Rat& a, const Rat& b, const Rat& c) {
        return Curve(AlgNumber::rational(a), AlgNumber::rational(b), AlgNumber::rational(c));
    }

    // discriminant of x^3 + a x^2 + b x + c
    AlgNumber discriminant() const {
        Rat r18(18), r4(4), r27(27);
        return r18 * a * b * c - r4 * (a * a * a) * c + (a * a) * (b * b) -
               r4 * (b * b * b) - r27 * (c * c);
    }

    // the cubic x^3 + a x^2 + b x + c evaluated at x
    AlgNumber rhs(const AlgNumber& x) const {
        return ((x + a) * x + b) * x + c;
    }

    // same curve with coefficients coerced into a bigger field (rational coeffs only)
    Curve base_change(const FieldSpec& F) const {
        return Curve(coerce(a, F), coerce(b, F), coerce(c, F));
    }

    bool operator==(const Curve& o) const {
        return field == o.field && a == o.a && b == o.b && c == o.c;
    }

    std::string str() const {
        return a.str() + "," + b.str() + "," + c.str() + " over " + field.str();
    }
};

// -------------------------------------------------------------------- Point

struct Point {
    bool inf = true;
    AlgNumber x, y;

    Point() = default;
    Point(AlgNumber x_, AlgNumber y_) : inf(false), x(std::move(x_)), y(std::move(y_)) {
        if (x.field != y.field) throw std::invalid_argument("Point: coordinate field mismatch");
    }

    static Point infinity() { return Point(); }

    const FieldSpec& field() const {
        if (inf) throw std::domain_error("Point: infinity has no field");
        return x.field;
    }

    bool operator==(const Point& o) const {
        if (inf || o.inf) return inf == o.inf;
        return x == o.x && y == o.y;
    }
    bool operator!=(const Point& o) const { return !(*this == o); }

    std::string str() const {
        return inf ? "inf" : "(" + x.str() + "," + y.str() + ")";
    }
};

inline bool on_curve(const Curve& C, const Point& P) {
    if (P.inf) return true;
    Curve CC = C.field == P.field() ? C : C.base_change(P.field());
    return (P.y * P.y - CC.rhs(P.x)).is_zero();
}

inline Point neg(const Point& P) {
    if (P.inf) return P;
    return Point(P.x, -P.y);
}

inline Point add(const Curve& C, const Point& P, const Point& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const FieldSpec& F = P.field();
    if (Q.field() != F) throw std::invalid_argument("add: point field mismatch");
    Curve CC = C.field == F ? C : C.base_change(F);
    AlgNumber lambda = AlgNumber::zero(F);
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return Point::infinity();
        // tangent: (3x^2 + 2a x + b) / (2y)
        Rat r2(2), r3(3);
        AlgNumber num = r3 * (P.x * P.x) + r2 * (CC.a * P.x) + CC.b;
        lambda = num / (r2 * P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    AlgNumber x3 = lambda * lambda - CC.a - P.x - Q.x;
    AlgNumber y3 = lambda * (P.x - x3) - P.y;
    return Point(x3, y3);
}

inline Point sub(const Curve& C, const Point& P, const Point& Q) {
    return add(C, P, neg(Q));
}

inline Point mul(const Curve& C, long m, const Point& P) {
    if (P.inf || m == 0) return Point::infinity();
    Point base = m < 0 ? neg(P) : P;
    unsigned long k = m < 0 ? (unsigned long)(-m) : (unsigned long)m;
    Point acc = Point::infinity();
    while (k) {
        if (k & 1) acc = add(C, acc, base);
        k >>= 1;
        if (k) base = add(C, base, base);
    }
    return acc;
}

// order of P if it divides into nmax additions, else nullopt
inline std::optional<long> torsion_order_upto(const Curve& C, const Point& P, long nmax) {
    if (P.inf) return 1;
    Point acc = P;
    for (long k = 1; k <= nmax; ++k) {
        if (acc.inf) return k;
        acc = add(C, acc, P);
    }
    return std::nullopt;
}

// -------------------------------------------------------------------- twist

inline Curve twist(const Curve& C, const AlgNumber& d) {
    if (d.field != C.field) throw std::invalid_argument("twist: field mismatch");
    if (d.is_zero()) throw std::invalid_argument("twist: d must be nonzero");
    return Curve(d * C.a, d * d * C.b, d * d * d * C.c);
}

// square root of v inside the field F of v, if one exists.  The designated
// root is the one with positive leading coordinate (principal branch for
// positive rationals).
inline std::optional<AlgNumber> sqrt_in_field(const AlgNumber& v) {
    const FieldSpec& F = v.field;
    if (v.is_zero()) return AlgNumber::zero(F);
    if (F.kind == FieldKind::Rational || v.is_rational()) {
        Rat s;
        if (rat_sqrt(v.is_rational() ? v.c[0] : v.rat(), s))
            return AlgNumber::of(F, s);
        if (F.kind == FieldKind::Quadratic) {
            // v = d * s^2 gives root s*sqrt(d)
            Rat t = v.c[0] / Rat(F.d);
            if (rat_sqrt(t, s)) return AlgNumber(F, {Rat(0), s});
        }
        if (F.kind == FieldKind::Cyclotomic && F.n % 4 == 0) {
            Rat t = -v.c[0];
            if (rat_sqrt(t, s)) {
                // root = s * i, i = zeta^(n/4)
                auto ctx = detail::cyclo_ctx(F.n);
                std::vector<Rat> out(F.degree, Rat(0));
                const auto& red = ctx->pow[F.n / 4];
                for (int i = 0; i < F.degree; ++i) out[i] = Rat(red[i]) * s;
                return AlgNumber(F, out);
            }
        }
        return std::nullopt;
    }
    if (F.kind == FieldKind::Quadratic) {
        // y = u + w sqrt(d), y^2 = A + B sqrt(d) with B != 0:
        // u^2 = (A +- t)/2 where t^2 = A^2 - d B^2
        const Rat& A = v.c[0];
        const Rat& B = v.c[1];
        Rat N = A * A - Rat(F.d) * B * B, t;
        if (!rat_sqrt(N, t)) return std::nullopt;
        for (int s = 0; s < 2; ++s) {
            Rat u2 = (A + (s ? -t : t)) / 2, u;
            if (u2 != 0 && rat_sqrt(u2, u)) {
                Rat w = B / (2 * u);
                AlgNumber r(F, {u, w});
                if ((r * r - v).is_zero()) {
                    if (r.c[0] < 0 || (r.c[0] == 0 && r.c[1] < 0)) r = -r;
                    return r;
                }
            }
        }
        return std::nullopt;
    }
    return std::nullopt;  // general cyclotomic square roots unsupported
}

// whether sqrt_in_field is a complete decision procedure over F
inline bool sqrt_decision_complete(const FieldSpec& F) {
    return F.kind != FieldKind::Cyclotomic;
}

// image of P under the twist isomorphism (x,y) -> (dx, d^{3/2} y), where the
// target field must contain a square root of d
inline Point twist_map(const Curve& C, const AlgNumber& d, const Point& P,
                       const FieldSpec& target_field) {
    if (P.inf) return P;
    AlgNumber dt = coerce(d, target_field);
    auto root = sqrt_in_field(dt);
    if (!root)
        throw std::invalid_argument("twist_map: sqrt(d) not representable in target field");
    AlgNumber x = coerce(P.x, target_field);
    AlgNumber y = coerce(P.y, target_field);
    Point img(dt * x, dt * (*root) * y);  // d^{3/2} = d * sqrt(d)
    Curve T = twist(C, d);
    if (!on_curve(T, img)) throw std::logic_error("twist_map: image not on twist");
    return img;
}

// ---------------------------------------------------------- shift isomorphism
//
// For C in short form y^2 = x^3 + b x + c (a = 0),
// E_k: y^2 = x^3 + 3k x^2 + (3k^2 + b) x + (k^3 + bk + c),
// isomorphism (x, y) on C -> (x - k, y) on E_k.

inline Curve shift_curve(const Curve& C, long k) {
    if (!C.a.is_zero()) throw std::invalid_argument("shift_curve: needs short form a = 0");
    const FieldSpec& F = C.field;
    Rat rk(k);
    AlgNumber ak = AlgNumber::of(F, 3 * rk);
    AlgNumber bk = AlgNumber::of(F, 3 * rk * rk) + C.b;
    AlgNumber ck = AlgNumber::of(F, rk * rk * rk) + C.b * Rat(k) + C.c;
    return Curve(ak, bk, ck);
}

inline Point shift_image(const Point& P, long k) {
    if (P.inf) return P;
    return Point(P.x - AlgNumber::of(P.field(), Rat(k)), P.y);
}

inline Point shift_preimage(const Point& P, long k) {
    if (P.inf) return P;
    return Point(P.x + AlgNumber::of(P.field(), Rat(k)), P.y);
}

// -------------------------------------------------------- division polynomials

// x-polynomial whose roots are the x-coordinates of the nonzero m-torsion
struct DivisionPoly {
    std::vector<AlgNumber> xpart;  // little-endian over the curve's field
    bool has_y_factor;             // true for even m (the 2-torsion half)

    int degree() const { return (int)xpart.size() - 1; }
};

namespace detail {

using FPoly = std::vector<AlgNumber>;  // dense, little-endian

inline FPoly fp_mul(const FPoly& p, const FPoly& q) {
    if (p.empty() || q.empty()) return {};
    const FieldSpec& F = p[0].field;
    FPoly r(p.size() + q.size() - 1, AlgNumber::zero(F));
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i].is_zero()) continue;
        for (size_t j = 0; j < q.size(); ++j) {
            if (q[j].is_zero()) continue;
            r[i + j] = r[i + j] + p[i] * q[j];
        }
    }
    return r;
}

inline FPoly fp_add(FPoly p, const FPoly& q) {
    if (p.size() < q.size()) p.resize(q.size(), AlgNumber::zero(q[0].field));
    for (size_t i = 0; i < q.size(); ++i) p[i] = p[i] + q[i];
    while (p.size() > 1 && p.back().is_zero()) p.pop_back();
    return p;
}

inline FPoly fp_neg(FPoly p) {
    for (auto& x : p) x = -x;
    return p;
}

inline FPoly fp_scale(FPoly p, const Rat& s) {
    for (auto& x : p) x = x * s;
    return p;
}

// exact division by a monic divisor; throws if the remainder is nonzero
inline FPoly fp_divexact_monic(FPoly p, const FPoly& d) {
    if ((int)p.size() < (int)d.size()) throw std::logic_error("fp_divexact: degree too small");
    FPoly q(p.size() - d.size() + 1, AlgNumber::zero(p[0].field));
    for (int i = (int)q.size() - 1; i >= 0; --i) {
        AlgNumber coef = p[i + d.size() - 1];
        q[i] = coef;
        if (coef.is_zero()) continue;
        for (size_t j = 0; j < d.size(); ++j) p[i + j] = p[i + j] - coef * d[j];
    }
    for (auto& r : p)
        if (!r.is_zero()) throw std::logic_error("fp_divexact: nonzero remainder");
    return q;
}

// division polynomial psi_m = y^e * f_m(x) with e = m+1 mod 2; returns per-m
// pairs (f, e) computed with y^2 -> cubic substitution
struct PsiTable {
    std::vector<std::pair<FPoly, int>> psi;  // psi[m]
    FPoly cubic;                             // x^3 + a x^2 + b x + c

    explicit PsiTable(const Curve& C, int mmax) {
        const FieldSpec& F = C.field;
        auto num = [&](long v) { return AlgNumber::of(F, Rat(v)); };
        cubic = {C.c, C.b, C.a, AlgNumber::one(F)};
        // b-invariants for a1 = a3 = 0
        AlgNumber b2 = Rat(4) * C.a;
        AlgNumber b4 = Rat(2) * C.b;
        AlgNumber b6 = Rat(4) * C.c;
        AlgNumber b8 = Rat(4) * C.a * C.c - C.b * C.b;
        psi.resize(std::max(mmax + 3, 5));
        psi[0] = {{AlgNumber::zero(F)}, 0};
        psi[1] = {{AlgNumber::one(F)}, 0};
        psi[2] = {{num(2)}, 1};
        psi[3] = {{b8, Rat(3) * b6, Rat(3) * b4, b2, num(3)}, 0};
        psi[4] = {{b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, Rat(10) * b8,
                   Rat(10) * b6, Rat(5) * b4, b2, num(2)},
                  1};
        psi[4].first = fp_scale(psi[4].first, 2);
        for (int m = 5; m < (int)psi.size(); ++m) {
            if (m % 2 == 1) {
                int k = (m - 1) / 2;  // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
                psi[m] = combine(psi[k + 2], cube(psi[k]), psi[k - 1], cube(psi[k + 1]));
            } else {
                int k = m / 2;  // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / psi_2
                auto t = combine(psi[k + 2], square(psi[k - 1]), psi[k - 2], square(psi[k + 1]));
                auto prod = mulp(psi[k], t);
                // prod = psi_2 * psi_m = 2 y^2 f_m, reduced to 2 * cubic * f_m:
                // divide out 2 * cubic and restore the single y factor
                if (prod.second != 0) throw std::logic_error("psi recursion parity");
                psi[m] = {fp_scale(fp_divexact_monic(prod.first, cubic), Rat(1, 2)), 1};
            }
        }
    }

    std::pair<FPoly, int> mulp(const std::pair<FPoly, int>& p, const std::pair<FPoly, int>& q) {
        FPoly f = fp_mul(p.first, q.first);
        int e = p.second + q.second;
        while (e >= 2) {
            f = fp_mul(f, cubic);
            e -= 2;
        }
        return {f, e};
    }
    std::pair<FPoly, int> square(const std::pair<FPoly, int>& p) { return mulp(p, p); }
    std::pair<FPoly, int> cube(const std::pair<FPoly, int>& p) { return mulp(mulp(p, p), p); }

    // A*B - C*D with matching parities
    std::pair<FPoly, int> combine(const std::pair<FPoly, int>& A, const std::pair<FPoly, int>& B,
                                  const std::pair<FPoly, int>& C, const std::pair<FPoly, int>& D) {
        auto ab = mulp(A, B);
        auto cd = mulp(C, D);
        if (ab.second != cd.second) throw std::logic_error("psi recursion parity");
        return {fp_add(ab.first, fp_neg(cd.first)), ab.second};
    }
};

}  // namespace detail

inline DivisionPoly division_polynomial(const Curve& C, int m) {
    if (m < 1) throw std::invalid_argument("division_polynomial: m >= 1");
    if (m == 1) return {{AlgNumber::one(C.field)}, false};
    detail::PsiTable tab(C, m);
    auto [f, e] = tab.psi[m];
    if (e == 1) {
        // even m: x-coordinates of nonzero m-torsion are roots of cubic * (psi_m / y)
        return {detail::fp_mul(tab.cubic, f), true};
    }
    return {f, false};
}

// number of m-torsion points over the algebraic closure, counted exactly via
// squarefreeness of the division data (no numerics)
inline long torsion_count_qbar(const Curve& C, int m);

// ------------------------------------------------- polynomial root search

// result of a root search that may be incomplete over the given field
struct RootSearch {
    std::vector<AlgNumber> roots;
    bool complete = true;
};

namespace detail {

// exact gcd degree of integer polynomials via rational-coefficient Euclid
inline std::vector<Rat> qpoly_mod(std::vector<Rat> a, const std::vector<Rat>& b) {
    while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
        Rat f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        while (a.size() > 1 && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    return a;
}

inline int qpoly_gcd_degree(std::vector<Rat> a, std::vector<Rat> b) {
    while (!(b.size() == 1 && b[0] == 0)) {
        auto r = qpoly_mod(a, b);
        a = b;
        b = r;
    }
    return (int)a.size() - 1;
}

// rational roots of an integer polynomial (primitive), with multiplicity-free output
inline std::vector<Rat> rational_roots(const IntPoly& p) {
    std::vector<Rat> out;
    // strip x = 0 roots
    size_t low = 0;
    while (low < p.c.size() && p.c[low] == 0) ++low;
    if (low > 0) out.push_back(0);
    std::vector<Int> c(p.c.begin() + low, p.c.end());
    if (c.size() <= 1) return out;
    auto divisors = [](const Int& n) {
        std::vector<Int> ds{1};
        for (auto& [q, e] : factorize(n)) {
            size_t sz = ds.size();
            Int pw = 1;
            for (unsigned i = 0; i < e; ++i) {
                pw *= q;
                for (size_t j = 0; j < sz; ++j) ds.push_back(ds[j] * pw);
            }
        }
        return ds;
    };
    std::vector<Int> ps = divisors(c.front());
    std::vector<Int> qs = divisors(c.back());
    std::set<Rat> seen;
    for (auto& pn : ps)
        for (auto& qd : qs)
            for (int s = -1; s <= 1; s += 2) {
                Rat r(s * pn, qd);
                r.canonicalize();
                if (seen.count(r)) continue;
                seen.insert(r);
                // Horner
                Rat acc = 0;
                for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + Rat(*it);
                if (acc == 0) out.push_back(r);
            }
    return out;
}

// deflate poly over Q by (x - r)
inline std::vector<Rat> deflate(const std::vector<Rat>& c, const Rat& r) {
    std::vector<Rat> q(c.size() - 1);
    Rat carry = c.back();
    for (long i = (long)c.size() - 2; i >= 0; --i) {
        q[i] = carry;
        carry = c[i] + carry * r;
    }
    if (carry != 0) throw std::logic_error("deflate: not a root");
    return q;
}

}  // namespace detail

// roots of a polynomial with coefficients in field F, searched inside F.
// Rational-root extraction plus degree<=2 factor handling; unresolved
// higher-degree irreducible parts flag the search incomplete.
inline RootSearch roots_in_field(const std::vector<AlgNumber>& poly, const FieldSpec& F) {
    RootSearch rs;
    // only rational-coefficient polynomials are searched; others: incomplete
    std::vector<Rat> c;
    for (auto& a : poly) {
        if (!a.is_rational()) { rs.complete = false; return rs; }
        c.push_back(a.c[0]);
    }
    while (c.size() > 1 && c.back() == 0) c.pop_back();
    if (c.size() <= 1) { rs.complete = false; return rs; }  // zero or constant

    std::vector<Rat> rc = c;
    IntPoly ip = IntPoly::from_rational_coeffs(rc);
    std::vector<Rat> work(ip.c.size());
    for (size_t i = 0; i < ip.c.size(); ++i) work[i] = Rat(ip.c[i]);
    for (const Rat& r : detail::rational_roots(ip)) {
        std::vector<Rat> w = work;
        while (true) {  // extract with multiplicity
            Rat acc = 0;
            for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * r + *it;
            if (acc != 0) break;
            w = detail::deflate(w, r);
            if (std::find_if(rs.roots.begin(), rs.roots.end(), [&](const AlgNumber& x) {
                    return x.is_rational() && x.c[0] == r;
                }) == rs.roots.end())
                rs.roots.push_back(AlgNumber::of(F, r));
            if (w.size() <= 1) break;
        }
        work = w;
    }
    auto solve_quadratic = [&](const Rat& A, const Rat& B, const Rat& C2) {
        // roots of A x^2 + B x + C2 inside F
        AlgNumber disc = AlgNumber::of(F, B * B - 4 * A * C2);
        auto root = sqrt_in_field(disc);
        if (!root) {
            if (!sqrt_decision_complete(F)) rs.complete = false;
            return;  // no root in F (certified for Q and quadratic fields)
        }
        AlgNumber inv2A = AlgNumber::of(F, Rat(1) / (2 * A));
        AlgNumber r1 = (AlgNumber::of(F, -B) + *root) * inv2A;
        AlgNumber r2 = (AlgNumber::of(F, -B) - *root) * inv2A;
        rs.roots.push_back(r1);
        if (r2 != r1) rs.roots.push_back(r2);
    };
    int d = (int)work.size() - 1;
    if (d == 0) return rs;
    if (d == 1) {
        rs.roots.push_back(AlgNumber::of(F, -work[0] / work[1]));
        return rs;
    }
    if (d == 2) {
        solve_quadratic(work[2], work[1], work[0]);
        // completeness: either found both roots in F or certified none exist
        return rs;
    }
    if (d == 4 && F.kind == FieldKind::Rational) {
        // attempt a split into two rational quadratics (no rational roots remain):
        // depress x -> x - p/4, then factor x^4 + px^2 + qx + r
        Rat lead = work[4];
        std::vector<Rat> m(5);
        for (int i = 0; i <= 4; ++i) m[i] = work[i] / lead;
        Rat shift = m[3] / 4;
        // t = x + shift: expand m(t - shift)
        std::vector<Rat> dep(5, Rat(0));
        for (int i = 0; i <= 4; ++i) {
            // add m[i] * (t - shift)^i
            std::vector<Rat> binom{1};
            for (int j = 0; j < i; ++j) {
                std::vector<Rat> nb(binom.size() + 1, Rat(0));
                for (size_t t0 = 0; t0 < binom.size(); ++t0) {
                    nb[t0 + 1] += binom[t0];
                    nb[t0] += binom[t0] * (-shift);
                }
                binom = nb;
            }
            for (size_t t0 = 0; t0 < binom.size(); ++t0) dep[t0] += m[i] * binom[t0];
        }
        Rat p = dep[2], q = dep[1], r = dep[0];
        auto push_from_quadratics = [&](const Rat& u, const Rat& v, const Rat& w) {
            // (t^2 + u t + v)(t^2 - u t + w); roots in t, then x = t - shift
            auto add_quad = [&](const Rat& uu, const Rat& vv) {
                AlgNumber disc = AlgNumber::of(F, uu * uu - 4 * vv);
                auto root = sqrt_in_field(disc);
                if (!root) return;
                AlgNumber half = AlgNumber::of(F, Rat(1, 2));
                AlgNumber r1 = (AlgNumber::of(F, -uu) + *root) * half;
                AlgNumber r2 = (AlgNumber::of(F, -uu) - *root) * half;
                for (auto& t0 : {r1, r2}) {
                    AlgNumber xr = t0 - AlgNumber::of(F, shift);
                    if (std::find(rs.roots.begin(), rs.roots.end(), xr) == rs.roots.end())
                        rs.roots.push_back(xr);
                }
            };
            add_quad(u, v);
            add_quad(-u, w);
        };
        if (q == 0) {
            // biquadratic: t^2 roots of z^2 + p z + r
            Rat disc = p * p - 4 * r, s;
            if (rat_sqrt(disc, s)) {
                for (int sg = -1; sg <= 1; sg += 2) {
                    Rat z = (-p + sg * s) / 2;
                    AlgNumber root2 = AlgNumber::of(F, z);
                    auto t0 = sqrt_in_field(root2);
                    if (t0) {
                        for (auto& tt : {*t0, -*t0}) {
                            AlgNumber xr = tt - AlgNumber::of(F, shift);
                            if (std::find(rs.roots.begin(), rs.roots.end(), xr) == rs.roots.end())
                                rs.roots.push_back(xr);
                        }
                    }
                }
                return rs;
            }
            // over Q the rational-root scan was already exhaustive
            if (F.kind != FieldKind::Rational) rs.complete = false;
            return rs;
        }
        // resolvent in z = u^2: z^3 + 2p z^2 + (p^2 - 4r) z - q^2 = 0
        std::vector<Rat> res{-q * q, p * p - 4 * r, 2 * p, Rat(1)};
        IntPoly rip = IntPoly::from_rational_coeffs(res);
        for (const Rat& z : detail::rational_roots(rip)) {
            if (z <= 0) continue;
            Rat u;
            if (!rat_sqrt(z, u)) continue;
            Rat w_minus_v = q / u;
            Rat w_plus_v = p + z;
            Rat v = (w_plus_v - w_minus_v) / 2;
            Rat w = (w_plus_v + w_minus_v) / 2;
            push_from_quadratics(u, v, w);
            return rs;
        }
        if (F.kind != FieldKind::Rational) rs.complete = false;
        return rs;
    }
    // residual factor of degree >= 3 with no rational roots: complete over Q
    // (the rational-root scan decides Q), undecided over larger fields
    if (F.kind != FieldKind::Rational) rs.complete = false;
    return rs;
}

// ---------------------------------------------------------- torsion search

struct TorsionSearch {
    std::vector<Point> points;  // includes the point at infinity
    bool complete = true;
};

inline TorsionSearch torsion_points(const Curve& C, int m, const FieldSpec& F) {
    if (m < 1) throw std::invalid_argument("torsion_points: m >= 1");
    TorsionSearch out;
    out.points.push_back(Point::infinity());
    if (m == 1) return out;
    Curve CF = C.field == F ? C : C.base_change(F);
    DivisionPoly dp = division_polynomial(CF, m);
    RootSearch rs = roots_in_field(dp.xpart, F);
    out.complete = rs.complete;
    for (const AlgNumber& x : rs.roots) {
        AlgNumber rhs = CF.rhs(x);
        if (rhs.is_zero()) {
            Point P(x, AlgNumber::zero(F));
            if (mul(CF, m, P).inf) out.points.push_back(P);
            continue;
        }
        auto y = sqrt_in_field(rhs);
        if (!y) {
            if (!sqrt_decision_complete(F)) out.complete = false;
            continue;
        }
        for (const Point& P : {Point(x, *y), Point(x, -*y)}) {
            if (mul(CF, m, P).inf &&
                std::find(out.points.begin(), out.points.end(), P) == out.points.end())
                out.points.push_back(P);
        }
    }
    return out;
}

inline long torsion_count_qbar(const Curve& C, int m) {
    if (m == 1) return 1;
    DivisionPoly dp = division_polynomial(C, m);
    // rational-coefficient case: count distinct roots exactly via gcd(f, f')
    std::vector<Rat> f;
    for (auto& a : dp.xpart) {
        if (!a.is_rational())
            throw std::invalid_argument("torsion_count_qbar: curve must have rational coefficients");
        f.push_back(a.c[0]);
    }
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    std::vector<Rat> fp(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) fp[i - 1] = Rat((long)i) * f[i];
    int g = detail::qpoly_gcd_degree(f, fp);
    long distinct = (long)f.size() - 1 - g;
    if (g != 0) throw std::logic_error("torsion_count_qbar: division data not squarefree");
    // count points: x-roots of the cubic give y = 0 (one point);
    // other x-roots give two points; plus the point at infinity
    std::vector<Rat> cubic{C.c.rat(), C.b.rat(), C.a.rat(), Rat(1)};
    long on_two_torsion = detail::qpoly_gcd_degree(f, cubic);
    return 1 + on_two_torsion + 2 * (distinct - on_two_torsion);
}

// ------------------------------------------------------------ endomorphisms

// a scalar [m] or a Gaussian-integer CM combination [a] + [b] o iota on
// y^2 = x^3 + bx, where iota(x, y) = (-x, i y)
struct Endomorphism {
    Curve curve;
    bool scalar = true;
    long m = 1;       // scalar multiplier
    long ca = 0, cb = 0;  // CM pair: [ca] + [cb] o iota

    static Endomorphism scalar_map(const Curve& C, long m) {
        Endomorphism f{C};
        f.scalar = true;
        f.m = m;
        return f;
    }

    static Endomorphism cm_map(const Curve& C, long a_int, long b_int) {
        if (!C.a.is_zero() || !C.c.is_zero())
            throw std::invalid_argument("CM endomorphism needs a curve y^2 = x^3 + bx");
        Endomorphism f{C};
        f.scalar = false;
        f.ca = a_int;
        f.cb = b_int;
        return f;
    }

    long degree() const { return scalar ? m * m : ca * ca + cb * cb; }

    std::string str() const {
        if (scalar) return "[" + std::to_string(m) + "]";
        return "cm(" + std::to_string(ca) + "," + std::to_string(cb) + ")";
    }
};

inline bool has_zeta4(const FieldSpec& F) {
    return F.kind == FieldKind::Cyclotomic && F.n % 4 == 0;
}

inline AlgNumber zeta4_element(const FieldSpec& F) {
    if (!has_zeta4(F)) throw std::invalid_argument("field does not contain zeta_4");
    auto ctx = detail::cyclo_ctx(F.n);
    std::vector<Rat> out(F.degree, Rat(0));
    const auto& red = ctx->pow[F.n / 4];
    for (int i = 0; i < F.degree; ++i) out[i] = Rat(red[i]);
    return AlgNumber(F, out);
}

inline Point iota_image(const Point& P) {
    if (P.inf) return P;
    AlgNumber i4 = zeta4_element(P.field());
    return Point(-P.x, i4 * P.y);
}

inline Point endo_eval(const Endomorphism& f, const Point& P) {
    if (P.inf) return P;
    if (!on_curve(f.curve, P)) throw std::invalid_argument("endo_eval: point not on curve");
    if (f.scalar) return mul(f.curve, f.m, P);
    if (!has_zeta4(P.field()))
        throw std::invalid_argument("endo_eval: CM form needs zeta_4 in the point's field");
    Point aP = mul(f.curve, f.ca, P);
    Point bP = mul(f.curve, f.cb, P);
    return add(f.curve, aP, iota_image(bP));
}

}  // namespace nlab
