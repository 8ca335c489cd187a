#pragma once

// Galois action on points, the trace map T_{L/F}, its kernel, and the
// kernel <-> quadratic-twist transfer.

#include "northcott/curve.hpp"

#include <vector>

namespace nlab {

// a finite Galois extension L/F given by the subgroup of Gal(L/Q) fixing F;
// F-membership is "fixed by every listed automorphism"
struct ExtensionSpec {
    FieldSpec L;
    std::vector<Automorphism> group;  // Gal(L/F), must contain the identity
    std::string F_name = "Q";

    static ExtensionSpec quadratic_over_q(long d) {
        ExtensionSpec e;
        e.L = FieldSpec::quadratic(d);
        e.group = galois_group(e.L);
        return e;
    }

    static ExtensionSpec cyclotomic_over_q(long n) {
        ExtensionSpec e;
        e.L = FieldSpec::cyclotomic(n);
        e.group = galois_group(e.L);
        return e;
    }

    // subgroup of (Z/n)^x given by exponents; F is the fixed field
    static ExtensionSpec cyclotomic_subgroup(long n, const std::vector<long>& exponents,
                                             std::string fixed_field_name) {
        ExtensionSpec e;
        e.L = FieldSpec::cyclotomic(n);
        for (long k : exponents) e.group.push_back(Automorphism::make(e.L, k));
        e.F_name = std::move(fixed_field_name);
        e.validate_group();
        return e;
    }

    void validate_group() const {
        bool has_id = false;
        for (auto& s : group) {
            if (s.is_identity()) has_id = true;
            for (auto& t : group) {
                auto st = s.compose(t);
                if (std::find(group.begin(), group.end(), st) == group.end())
                    throw std::invalid_argument("ExtensionSpec: automorphisms not closed");
            }
        }
        if (!has_id) throw std::invalid_argument("ExtensionSpec: identity missing");
    }

    long extension_degree() const { return (long)group.size(); }

    bool in_f(const AlgNumber& a) const {
        for (auto& s : group)
            if (apply_auto(s, a) != a) return false;
        return true;
    }
};

inline Point conjugate_point(const Point& P, const Automorphism& sigma) {
    if (P.inf) return P;
    return Point(apply_auto(sigma, P.x), apply_auto(sigma, P.y));
}

inline bool curve_is_stable(const Curve& C, const Automorphism& sigma) {
    return apply_auto(sigma, C.a) == C.a && apply_auto(sigma, C.b) == C.b &&
           apply_auto(sigma, C.c) == C.c;
}

// T_{L/F}(P) = sum over Gal(L/F) of P^sigma; lands in E(F)
inline Point trace_map(const ExtensionSpec& ext, const Curve& C, const Point& P) {
    Curve CL = C.field == ext.L ? C : C.base_change(ext.L);
    for (auto& s : ext.group)
        if (!curve_is_stable(CL, s))
            throw std::invalid_argument("trace_map: curve not defined over the fixed field");
    if (!P.inf && P.field() != ext.L)
        throw std::invalid_argument("trace_map: point not in E(L)");
    if (!on_curve(CL, P)) throw std::invalid_argument("trace_map: point not on curve");
    Point acc = Point::infinity();
    for (auto& s : ext.group) acc = add(CL, acc, conjugate_point(P, s));
    if (!acc.inf && !(ext.in_f(acc.x) && ext.in_f(acc.y)))
        throw std::logic_error("trace_map: trace not F-rational");
    return acc;
}

inline bool kernel_test(const ExtensionSpec& ext, const Curve& C, const Point& P) {
    return trace_map(ext, C, P).inf;
}

// For quadratic L = F(sqrt d) over F = Q and a zero-trace P = (alpha, gamma sqrt d)
// with alpha, gamma in Q, the twist isomorphism sends P to (d alpha, d^2 gamma)
// in E_d(Q).
inline Point twist_transfer(const ExtensionSpec& ext, const Curve& C, const Point& P) {
    if (ext.L.kind != FieldKind::Quadratic)
        throw std::invalid_argument("twist_transfer: quadratic extensions only");
    if (!kernel_test(ext, C, P))
        throw std::invalid_argument("twist_transfer: point must have zero trace");
    if (P.inf) return P;
    const Rat d(ext.L.d);
    if (P.x.c[1] != 0 || P.y.c[0] != 0)
        throw std::logic_error("twist_transfer: zero-trace point not of the form (alpha, gamma sqrt d)");
    Rat alpha = P.x.c[0];
    Rat gamma = P.y.c[1];
    Point img(AlgNumber::rational(d * alpha), AlgNumber::rational(d * d * gamma));
    Curve T = twist(C, AlgNumber::rational(d));
    if (!on_curve(T, img)) throw std::logic_error("twist_transfer: image not on twist");
    return img;
}

// inverse of twist_transfer: Q = (x, y) on E_d(Q) maps to (x/d, (y/d^2) sqrt d),
// a zero-trace point of E(L)
inline Point transfer_inverse(const Curve& C, long d, const Point& Q) {
    FieldSpec L = FieldSpec::quadratic(d);
    if (Q.inf) return Q;
    Rat rd(d);
    Rat x = Q.x.rat() / rd;
    Rat gamma = Q.y.rat() / (rd * rd);
    Point P(AlgNumber(L, {x, Rat(0)}), AlgNumber(L, {Rat(0), gamma}));
    if (!on_curve(C.base_change(L), P))
        throw std::logic_error("transfer_inverse: preimage not on curve");
    return P;
}

struct KernelIsoCheck {
    bool pass = true;
    bool injective = true;
    bool homomorphism = true;
    bool round_trip = true;
    std::string detail;
};

// transfer is injective and a homomorphism on the sample, and the round trip
// through transfer_inverse is the identity
inline KernelIsoCheck kernel_iso_check(const ExtensionSpec& ext, const Curve& C,
                                       const std::vector<Point>& sample) {
    KernelIsoCheck r;
    Curve CL = C.base_change(ext.L);
    Curve T = twist(C, AlgNumber::rational(Rat(ext.L.d)));
    std::vector<Point> images;
    for (auto& P : sample) {
        if (!kernel_test(ext, C, P))
            throw std::invalid_argument("kernel_iso_check: sample point not in the kernel");
        Point img = twist_transfer(ext, C, P);
        if (transfer_inverse(C, ext.L.d, img) != P) r.round_trip = false;
        images.push_back(img);
    }
    for (size_t i = 0; i < sample.size(); ++i)
        for (size_t j = i + 1; j < sample.size(); ++j)
            if (sample[i] != sample[j] && images[i] == images[j]) r.injective = false;
    for (size_t i = 0; i < sample.size(); ++i)
        for (size_t j = 0; j < sample.size(); ++j) {
            Point s = add(CL, sample[i], sample[j]);
            if (!kernel_test(ext, C, s)) { r.homomorphism = false; continue; }
            if (twist_transfer(ext, C, s) != add(T, images[i], images[j]))
                r.homomorphism = false;
        }
    r.pass = r.injective && r.homomorphism && r.round_trip;
    return r;
}

}  // namespace nlab
