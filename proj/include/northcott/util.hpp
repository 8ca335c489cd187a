#pragma once

// Small shared utilities: scaled floating point for log-scale work on huge
// rationals, integer factoring helpers, and the thread cap.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace nlab {

using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Rat& q) { return sgn(q.get_num()); }

// value = m * 2^e with |m| in [0.5, 1) or m == 0.  Survives magnitudes far
// beyond double range; used wherever we need log|x| of a huge rational.
struct ScaledReal {
    double m = 0.0;
    long long e = 0;

    ScaledReal() = default;
    ScaledReal(double mm, long long ee) { set(mm, ee); }

    void set(double mm, long long ee) {
        if (mm == 0.0) { m = 0.0; e = 0; return; }
        int k;
        m = std::frexp(mm, &k);
        e = ee + k;
    }

    static ScaledReal from_int(const Int& z) {
        if (z == 0) return {};
        long exp2;
        double d = mpz_get_d_2exp(&exp2, z.get_mpz_t());
        return ScaledReal(d, exp2);
    }
    static ScaledReal from_rat(const Rat& q) {
        if (q == 0) return {};
        ScaledReal n = from_int(q.get_num());
        ScaledReal d = from_int(q.get_den());
        return n / d;
    }
    static ScaledReal from_double(double d) { return ScaledReal(d, 0); }

    bool zero() const { return m == 0.0; }
    int sign() const { return m > 0 ? 1 : (m < 0 ? -1 : 0); }

    ScaledReal operator*(const ScaledReal& o) const {
        return ScaledReal(m * o.m, e + o.e);
    }
    ScaledReal operator/(const ScaledReal& o) const {
        if (o.zero()) throw std::domain_error("ScaledReal: division by zero");
        return ScaledReal(m / o.m, e - o.e);
    }
    ScaledReal operator+(const ScaledReal& o) const {
        if (zero()) return o;
        if (o.zero()) return *this;
        long long d = e - o.e;
        if (d > 128) return *this;
        if (d < -128) return o;
        if (d >= 0) return ScaledReal(m + std::ldexp(o.m, (int)-d), e);
        return ScaledReal(std::ldexp(m, (int)d) + o.m, o.e);
    }
    ScaledReal operator-() const { ScaledReal r = *this; r.m = -r.m; return r; }
    ScaledReal operator-(const ScaledReal& o) const { return *this + (-o); }

    ScaledReal abs() const { return ScaledReal(std::fabs(m), e); }

    ScaledReal sqrt_abs() const {
        if (zero()) return {};
        double mm = std::fabs(m);
        long long ee = e;
        if (ee & 1) { mm *= 2.0; ee -= 1; }
        return ScaledReal(std::sqrt(mm), ee / 2);
    }

    // natural log of |value|; requires nonzero
    double log_abs() const {
        if (zero()) throw std::domain_error("ScaledReal: log of zero");
        return std::log(std::fabs(m)) + (double)e * M_LN2;
    }

    double to_double() const {
        if (zero()) return 0.0;
        if (e > 1020) return m > 0 ? HUGE_VAL : -HUGE_VAL;
        if (e < -1020) return 0.0;
        return std::ldexp(m, (int)e);
    }

    // three-way compare, adequate away from ties (exact paths handle ties)
    int cmp(const ScaledReal& o) const {
        ScaledReal d = *this - o;
        return d.sign();
    }
    bool operator<(const ScaledReal& o) const { return cmp(o) < 0; }
    bool operator>(const ScaledReal& o) const { return cmp(o) > 0; }
};

// sign of p + q*sqrt(D) for rationals p, q and rational D > 0, exact
inline int sign_plus_sqrt(const Rat& p, const Rat& q, const Rat& D) {
    if (D < 0) throw std::domain_error("sign_plus_sqrt: negative radicand");
    int sp = sgn(p), sq = sgn(q);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    Rat t = p * p - q * q * D;
    int st = sgn(t);
    return st == 0 ? 0 : st * sp;
}

// exact rational square root, if it exists
inline bool rat_sqrt(const Rat& q, Rat& out) {
    if (q < 0) return false;
    if (q == 0) { out = 0; return true; }
    const Int& n = q.get_num();
    const Int& d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    out = Rat(sn, sd);
    return true;
}

// trial-division factorization; fine at desk scale
inline std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    std::vector<std::pair<Int, unsigned>> f;
    if (n < 0) n = -n;
    if (n <= 1) return f;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) f.emplace_back(p, e);
    };
    strip(2);
    for (Int p = 3; p * p <= n; p += 2) strip(p);
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

// n = s^2 * d with d squarefree (sign carried by d)
inline void squarefree_decompose(const Int& n, Int& d, Int& s) {
    if (n == 0) { d = 0; s = 1; return; }
    d = n < 0 ? -1 : 1;
    s = 1;
    for (auto& [p, e] : factorize(n)) {
        for (unsigned i = 0; i + 1 < e; i += 2) s *= p;
        if (e & 1) d *= p;
    }
}

inline bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    Int d, s;
    squarefree_decompose(n, d, s);
    return s == 1;
}

inline unsigned thread_cap() {
    if (const char* env = std::getenv("NORTHCOTT_LAB_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return (unsigned)v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

inline std::vector<long> first_odd_primes(int count) {
    std::vector<long> ps;
    for (long n = 3; (int)ps.size() < count; n += 2) {
        bool prime = true;
        for (long p = 3; p * p <= n; p += 2)
            if (n % p == 0) { prime = false; break; }
        if (prime) ps.push_back(n);
    }
    return ps;
}

}  // namespace nlab
