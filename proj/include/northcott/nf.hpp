#pragma once

// Exact arithmetic in Q, quadratic fields Q(sqrt d) and cyclotomic fields
// Q(zeta_n), together with heights and houses of algebraic numbers and the
// Galois action.

#include "northcott/util.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>

namespace nlab {

// ---------------------------------------------------------------- FieldSpec

enum class FieldKind { Rational, Quadratic, Cyclotomic };

inline long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

struct FieldSpec {
    FieldKind kind = FieldKind::Rational;
    long d = 0;  // quadratic: squarefree, != 0, 1
    long n = 0;  // cyclotomic: n >= 3
    int degree = 1;

    static FieldSpec rationals() { return {}; }

    static FieldSpec quadratic(long d) {
        if (d == 0 || d == 1 || !is_squarefree(Int(d)))
            throw std::invalid_argument("quadratic field needs squarefree d != 0, 1");
        FieldSpec f;
        f.kind = FieldKind::Quadratic;
        f.d = d;
        f.degree = 2;
        return f;
    }

    static FieldSpec cyclotomic(long n) {
        if (n < 3) throw std::invalid_argument("cyclotomic field needs n >= 3");
        FieldSpec f;
        f.kind = FieldKind::Cyclotomic;
        f.n = n;
        f.degree = (int)euler_phi(n);
        return f;
    }

    bool operator==(const FieldSpec& o) const {
        return kind == o.kind && d == o.d && n == o.n;
    }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const {
        switch (kind) {
            case FieldKind::Rational: return "Q";
            case FieldKind::Quadratic: return "Q(sqrt," + std::to_string(d) + ")";
            case FieldKind::Cyclotomic: return "Q(zeta," + std::to_string(n) + ")";
        }
        return "?";
    }
};

// ----------------------------------------------------- cyclotomic machinery

namespace detail {

// polynomials over Z, dense little-endian
using ZPoly = std::vector<Int>;

inline ZPoly zpoly_xn_minus_1(long n) {
    ZPoly p(n + 1, Int(0));
    p[0] = -1;
    p[n] = 1;
    return p;
}

// exact division, both monic-led; quotient returned, remainder must be zero
inline ZPoly zpoly_exact_div(ZPoly num, const ZPoly& den) {
    ZPoly q(num.size() - den.size() + 1, Int(0));
    for (long i = (long)q.size() - 1; i >= 0; --i) {
        Int c = num[i + den.size() - 1] / den.back();
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j)
            num[i + j] -= c * den[j];
    }
    for (auto& c : num)
        if (c != 0) throw std::logic_error("zpoly_exact_div: nonzero remainder");
    return q;
}

inline ZPoly cyclotomic_poly(long n) {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    std::vector<ZPoly> memo(n + 1);
    memo[1] = {Int(-1), Int(1)};
    for (long m = 2; m <= n; ++m) {
        if (n % m != 0) continue;
        ZPoly p = zpoly_xn_minus_1(m);
        for (long dd = 1; dd < m; ++dd)
            if (m % dd == 0) p = zpoly_exact_div(std::move(p), memo[dd]);
        memo[m] = std::move(p);
    }
    return memo[n];
}

struct CycloCtx {
    long n;
    int deg;
    ZPoly phi;                           // Phi_n, monic, degree deg
    std::vector<std::vector<Int>> pow;   // pow[t] = x^t mod Phi_n, t < max(n, 2deg-1)

    explicit CycloCtx(long n_) : n(n_) {
        phi = cyclotomic_poly(n);
        deg = (int)phi.size() - 1;
        long tmax = std::max<long>(n, 2L * deg - 1);
        pow.resize(tmax);
        std::vector<Int> cur(deg, Int(0));
        cur[0] = 1;
        pow[0] = cur;
        for (long t = 1; t < tmax; ++t) {
            // multiply by x, reduce
            Int lead = cur[deg - 1];
            for (int i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
            cur[0] = 0;
            if (lead != 0)
                for (int i = 0; i < deg; ++i) cur[i] -= lead * phi[i];
            pow[t] = cur;
        }
    }
};

inline std::shared_ptr<const CycloCtx> cyclo_ctx(long n) {
    static std::mutex mtx;
    static std::map<long, std::shared_ptr<const CycloCtx>> cache;
    std::lock_guard<std::mutex> lk(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const CycloCtx>(n);
    cache.emplace(n, ctx);
    return ctx;
}

}  // namespace detail

// ---------------------------------------------------------------- AlgNumber

struct AlgNumber {
    FieldSpec field;
    std::vector<Rat> c;  // power-basis coordinates, length = field.degree

    AlgNumber() : field(FieldSpec::rationals()), c(1, Rat(0)) {}

    AlgNumber(FieldSpec f, std::vector<Rat> coords) : field(f), c(std::move(coords)) {
        if ((int)c.size() != field.degree)
            throw std::invalid_argument("AlgNumber: coordinate length mismatch");
        for (auto& x : c) x.canonicalize();
    }

    static AlgNumber rational(const Rat& q) {
        return AlgNumber(FieldSpec::rationals(), {q});
    }
    static AlgNumber of(const FieldSpec& f, const Rat& q) {
        std::vector<Rat> v(f.degree, Rat(0));
        v[0] = q;
        return AlgNumber(f, v);
    }
    static AlgNumber zero(const FieldSpec& f) { return of(f, 0); }
    static AlgNumber one(const FieldSpec& f) { return of(f, 1); }
    // generator: sqrt(d) or zeta_n (throws for Q)
    static AlgNumber gen(const FieldSpec& f) {
        if (f.kind == FieldKind::Rational)
            throw std::invalid_argument("Q has no generator");
        std::vector<Rat> v(f.degree, Rat(0));
        v[1] = 1;
        return AlgNumber(f, v);
    }

    bool is_zero() const {
        return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x == 0; });
    }
    bool is_rational() const {
        return std::all_of(c.begin() + 1, c.end(), [](const Rat& x) { return x == 0; });
    }
    const Rat& rat() const {
        if (!is_rational()) throw std::domain_error("AlgNumber: not rational");
        return c[0];
    }

    bool operator==(const AlgNumber& o) const { return field == o.field && c == o.c; }
    bool operator!=(const AlgNumber& o) const { return !(*this == o); }

    std::string str() const {
        std::ostringstream os;
        if (field.kind == FieldKind::Rational) {
            os << c[0];
        } else if (field.kind == FieldKind::Quadratic) {
            os << c[0] << "+" << c[1] << "*sqrt(" << field.d << ")";
        } else {
            os << "[";
            for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
            os << "]";
        }
        return os.str();
    }
};

inline void require_same_field(const AlgNumber& a, const AlgNumber& b) {
    if (a.field != b.field) throw std::invalid_argument("field mismatch");
}

inline AlgNumber operator+(const AlgNumber& a, const AlgNumber& b) {
    require_same_field(a, b);
    std::vector<Rat> v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.c[i] + b.c[i];
    return AlgNumber(a.field, std::move(v));
}

inline AlgNumber operator-(const AlgNumber& a, const AlgNumber& b) {
    require_same_field(a, b);
    std::vector<Rat> v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.c[i] - b.c[i];
    return AlgNumber(a.field, std::move(v));
}

inline AlgNumber operator-(const AlgNumber& a) {
    std::vector<Rat> v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = -a.c[i];
    return AlgNumber(a.field, std::move(v));
}

inline AlgNumber operator*(const AlgNumber& a, const AlgNumber& b) {
    require_same_field(a, b);
    const FieldSpec& F = a.field;
    switch (F.kind) {
        case FieldKind::Rational:
            return AlgNumber(F, {a.c[0] * b.c[0]});
        case FieldKind::Quadratic: {
            Rat u = a.c[0] * b.c[0] + Rat(F.d) * a.c[1] * b.c[1];
            Rat v = a.c[0] * b.c[1] + a.c[1] * b.c[0];
            return AlgNumber(F, {u, v});
        }
        case FieldKind::Cyclotomic: {
            auto ctx = detail::cyclo_ctx(F.n);
            int deg = ctx->deg;
            std::vector<Rat> conv(2 * deg - 1, Rat(0));
            for (int i = 0; i < deg; ++i) {
                if (a.c[i] == 0) continue;
                for (int j = 0; j < deg; ++j) {
                    if (b.c[j] == 0) continue;
                    conv[i + j] += a.c[i] * b.c[j];
                }
            }
            std::vector<Rat> out(deg, Rat(0));
            for (int t = 0; t < deg; ++t) out[t] = conv[t];
            for (int t = deg; t < 2 * deg - 1; ++t) {
                if (conv[t] == 0) continue;
                const auto& red = ctx->pow[t];
                for (int i = 0; i < deg; ++i)
                    if (red[i] != 0) out[i] += conv[t] * Rat(red[i]);
            }
            return AlgNumber(F, std::move(out));
        }
    }
    throw std::logic_error("unreachable");
}

inline AlgNumber operator*(const AlgNumber& a, const Rat& q) {
    std::vector<Rat> v(a.c.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = a.c[i] * q;
    return AlgNumber(a.field, std::move(v));
}
inline AlgNumber operator*(const Rat& q, const AlgNumber& a) { return a * q; }

inline AlgNumber inverse(const AlgNumber& a) {
    if (a.is_zero()) throw std::domain_error("division by zero");
    const FieldSpec& F = a.field;
    switch (F.kind) {
        case FieldKind::Rational:
            return AlgNumber(F, {Rat(1) / a.c[0]});
        case FieldKind::Quadratic: {
            Rat norm = a.c[0] * a.c[0] - Rat(F.d) * a.c[1] * a.c[1];
            if (norm == 0) throw std::logic_error("quadratic field: zero norm for nonzero element");
            return AlgNumber(F, {a.c[0] / norm, -a.c[1] / norm});
        }
        case FieldKind::Cyclotomic: {
            // solve (mult-by-a matrix) * x = e_0 by Gaussian elimination
            auto ctx = detail::cyclo_ctx(F.n);
            int deg = ctx->deg;
            // columns: a * zeta^j
            std::vector<std::vector<Rat>> M(deg, std::vector<Rat>(deg + 1, Rat(0)));
            AlgNumber basis = AlgNumber::one(F);
            AlgNumber zeta = AlgNumber::gen(F);
            for (int j = 0; j < deg; ++j) {
                AlgNumber col = a * basis;
                for (int i = 0; i < deg; ++i) M[i][j] = col.c[i];
                basis = basis * zeta;
            }
            M[0][deg] = 1;
            // elimination
            for (int col = 0, row = 0; col < deg && row < deg; ++col, ++row) {
                int piv = -1;
                for (int r = row; r < deg; ++r)
                    if (M[r][col] != 0) { piv = r; break; }
                if (piv < 0) throw std::logic_error("cyclotomic inverse: singular matrix");
                std::swap(M[piv], M[row]);
                Rat p = M[row][col];
                for (int k = col; k <= deg; ++k) M[row][k] /= p;
                for (int r = 0; r < deg; ++r) {
                    if (r == row || M[r][col] == 0) continue;
                    Rat f = M[r][col];
                    for (int k = col; k <= deg; ++k) M[r][k] -= f * M[row][k];
                }
            }
            std::vector<Rat> x(deg);
            for (int i = 0; i < deg; ++i) x[i] = M[i][deg];
            return AlgNumber(F, std::move(x));
        }
    }
    throw std::logic_error("unreachable");
}

inline AlgNumber operator/(const AlgNumber& a, const AlgNumber& b) {
    return a * inverse(b);
}

enum class ArithOp { Add, Sub, Mul, Div };

inline AlgNumber arith(const AlgNumber& a, const AlgNumber& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div: return a / b;
    }
    throw std::logic_error("unreachable");
}

inline AlgNumber pow(const AlgNumber& a, long e) {
    if (e < 0) return inverse(pow(a, -e));
    AlgNumber r = AlgNumber::one(a.field);
    AlgNumber base = a;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// embed a rational into a (possibly bigger) field; identity on same field
inline AlgNumber coerce(const AlgNumber& a, const FieldSpec& target) {
    if (a.field == target) return a;
    if (a.is_rational()) return AlgNumber::of(target, a.c[0]);
    throw std::invalid_argument("coerce: only rational values embed across fields");
}

// ------------------------------------------------------------- Automorphism

struct Automorphism {
    FieldSpec field;
    long k = 1;  // quadratic: +1 id, -1 conj; cyclotomic: zeta -> zeta^k, gcd(k,n)=1

    static Automorphism identity(const FieldSpec& f) { return {f, 1}; }

    static Automorphism make(const FieldSpec& f, long k) {
        Automorphism s{f, k};
        switch (f.kind) {
            case FieldKind::Rational:
                if (k != 1) throw std::invalid_argument("Q has only the identity");
                break;
            case FieldKind::Quadratic:
                if (k != 1 && k != -1)
                    throw std::invalid_argument("quadratic automorphism: k must be +-1");
                break;
            case FieldKind::Cyclotomic: {
                long kk = ((k % f.n) + f.n) % f.n;
                if (std::gcd(kk, f.n) != 1)
                    throw std::invalid_argument("cyclotomic automorphism: gcd(k,n) != 1");
                s.k = kk;
                break;
            }
        }
        return s;
    }

    bool is_identity() const { return k == 1; }

    Automorphism compose(const Automorphism& o) const {
        if (field != o.field) throw std::invalid_argument("field mismatch");
        if (field.kind == FieldKind::Cyclotomic)
            return make(field, (k * o.k) % field.n);
        return make(field, k * o.k);
    }

    bool operator==(const Automorphism& o) const { return field == o.field && k == o.k; }
};

inline AlgNumber apply_auto(const Automorphism& s, const AlgNumber& a) {
    if (s.field != a.field) throw std::invalid_argument("field mismatch");
    switch (s.field.kind) {
        case FieldKind::Rational:
            return a;
        case FieldKind::Quadratic:
            return s.k == 1 ? a : AlgNumber(a.field, {a.c[0], -a.c[1]});
        case FieldKind::Cyclotomic: {
            if (s.k == 1) return a;
            auto ctx = detail::cyclo_ctx(s.field.n);
            int deg = ctx->deg;
            std::vector<Rat> out(deg, Rat(0));
            out[0] = a.c[0];
            for (int j = 1; j < deg; ++j) {
                if (a.c[j] == 0) continue;
                long t = ((long)j * s.k) % s.field.n;
                const auto& red = ctx->pow[t];
                for (int i = 0; i < deg; ++i)
                    if (red[i] != 0) out[i] += a.c[j] * Rat(red[i]);
            }
            return AlgNumber(a.field, std::move(out));
        }
    }
    throw std::logic_error("unreachable");
}

inline std::vector<Automorphism> galois_group(const FieldSpec& f) {
    switch (f.kind) {
        case FieldKind::Rational:
            throw std::invalid_argument("galois_group: field must be quadratic or cyclotomic");
        case FieldKind::Quadratic:
            return {Automorphism::make(f, 1), Automorphism::make(f, -1)};
        case FieldKind::Cyclotomic: {
            std::vector<Automorphism> g;
            for (long k = 1; k < f.n; ++k)
                if (std::gcd(k, f.n) == 1) g.push_back(Automorphism::make(f, k));
            return g;
        }
    }
    throw std::logic_error("unreachable");
}

// ------------------------------------------------------------------ IntPoly

struct IntPoly {
    std::vector<Int> c;  // little-endian, primitive, positive leading coefficient

    int degree() const { return (int)c.size() - 1; }

    static IntPoly from_rational_coeffs(const std::vector<Rat>& rc) {
        Int lcm = 1;
        for (auto& q : rc) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
        std::vector<Int> v(rc.size());
        for (size_t i = 0; i < rc.size(); ++i) {
            Rat t = rc[i] * Rat(lcm);
            t.canonicalize();
            v[i] = t.get_num();
        }
        while (v.size() > 1 && v.back() == 0) v.pop_back();
        Int g = 0;
        for (auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g > 1)
            for (auto& x : v) x /= g;
        if (v.back() < 0)
            for (auto& x : v) x = -x;
        IntPoly p;
        p.c = std::move(v);
        return p;
    }

    std::string str() const {
        std::ostringstream os;
        for (int i = degree(); i >= 0; --i) {
            if (c[i] == 0 && degree() > 0) continue;
            if (os.tellp() > 0) os << (c[i] >= 0 ? " + " : " - ");
            else if (c[i] < 0) os << "-";
            Int a = c[i] < 0 ? Int(-c[i]) : c[i];
            if (i == 0 || a != 1) os << a;
            if (i == 0 && a == 1 && degree() > 0 && os.tellp() == 0) os << a;
            if (i > 0) {
                if (a != 1) os << "*";
                os << "x";
                if (i > 1) os << "^" << i;
            }
        }
        if (os.tellp() == 0) os << "0";
        return os.str();
    }

    bool operator==(const IntPoly& o) const { return c == o.c; }
};

// evaluate an integer polynomial at a field element, exactly
inline AlgNumber eval_poly(const IntPoly& p, const AlgNumber& a) {
    AlgNumber acc = AlgNumber::zero(a.field);
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * a + AlgNumber::of(a.field, Rat(p.c[i]));
    return acc;
}

inline IntPoly minimal_polynomial(const AlgNumber& a) {
    const int deg = a.field.degree;
    // echelon rows over Q with tracked combinations of the powers 1, a, a^2, ...
    std::vector<std::vector<Rat>> rows;    // reduced coordinate rows
    std::vector<std::vector<Rat>> combos;  // combos[i][j]: coefficient of a^j
    std::vector<int> pivots;
    AlgNumber p = AlgNumber::one(a.field);
    for (int k = 0; k <= deg; ++k) {
        std::vector<Rat> r = p.c;
        std::vector<Rat> combo(k + 1, Rat(0));
        combo[k] = 1;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (r[pivots[i]] == 0) continue;
            Rat f = r[pivots[i]];
            for (int j = 0; j < deg; ++j) r[j] -= f * rows[i][j];
            for (size_t j = 0; j < combos[i].size(); ++j) combo[j] -= f * combos[i][j];
        }
        int piv = -1;
        for (int j = 0; j < deg; ++j)
            if (r[j] != 0) { piv = j; break; }
        if (piv < 0) {
            IntPoly m = IntPoly::from_rational_coeffs(combo);
            if (!eval_poly(m, a).is_zero())
                throw std::logic_error("minimal_polynomial: verification failed");
            return m;
        }
        Rat f = r[piv];
        for (int j = 0; j < deg; ++j) r[j] /= f;
        for (auto& x : combo) x /= f;
        rows.push_back(std::move(r));
        combos.push_back(std::move(combo));
        pivots.push_back(piv);
        p = p * a;
    }
    throw std::logic_error("minimal_polynomial: no dependence up to field degree");
}

// --------------------------------------------------------------- embeddings

struct Embeddings {
    std::vector<std::complex<double>> values;  // one per field embedding
    double radius;                             // common certified error radius
};

namespace detail {

// scaled evaluation of sum c_j * zeta^(j*k): returns magnitude-safe data
struct ScaledEmbedding {
    std::complex<double> v;  // value * 2^-e
    long long e;
    double abs_err;          // absolute error of v (at scale 2^-e)
};

inline std::vector<ScaledEmbedding> cyclo_embeddings_scaled(const AlgNumber& a) {
    const long n = a.field.n;
    const int deg = a.field.degree;
    long long E = 0;
    std::vector<ScaledReal> sc(deg);
    for (int j = 0; j < deg; ++j) {
        sc[j] = ScaledReal::from_rat(a.c[j]);
        if (!sc[j].zero()) E = std::max(E, sc[j].e);
    }
    std::vector<double> cd(deg, 0.0);
    for (int j = 0; j < deg; ++j)
        if (!sc[j].zero()) cd[j] = std::ldexp(sc[j].m, (int)std::max<long long>(sc[j].e - E, -1080));
    double csum = 0;
    for (double x : cd) csum += std::fabs(x);
    double err = (deg + 4) * csum * 1e-15 + 1e-290;
    std::vector<ScaledEmbedding> out;
    for (long k = 1; k < n; ++k) {
        if (std::gcd(k, n) != 1) continue;
        std::complex<double> z = 0;
        for (int j = deg - 1; j >= 0; --j) {
            double ang = 2.0 * M_PI * ((double)(((long long)j * k) % n)) / (double)n;
            z += cd[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out.push_back({z, E, err});
    }
    return out;
}

}  // namespace detail

inline Embeddings embeddings(const AlgNumber& a, double precision = 1e-10) {
    if (precision <= 0) throw std::invalid_argument("embeddings: precision must be positive");
    Embeddings E;
    switch (a.field.kind) {
        case FieldKind::Rational: {
            ScaledReal v = ScaledReal::from_rat(a.c[0]);
            E.values = {std::complex<double>(v.to_double(), 0)};
            E.radius = std::fabs(v.to_double()) * 1e-14 + 1e-300;
            break;
        }
        case FieldKind::Quadratic: {
            double u = ScaledReal::from_rat(a.c[0]).to_double();
            double v = ScaledReal::from_rat(a.c[1]).to_double();
            double ad = std::fabs((double)a.field.d);
            double s = std::sqrt(ad);
            if (a.field.d > 0)
                E.values = {std::complex<double>(u + v * s, 0), std::complex<double>(u - v * s, 0)};
            else
                E.values = {std::complex<double>(u, v * s), std::complex<double>(u, -v * s)};
            E.radius = (std::fabs(u) + std::fabs(v) * s) * 1e-13 + 1e-300;
            break;
        }
        case FieldKind::Cyclotomic: {
            auto se = detail::cyclo_embeddings_scaled(a);
            E.radius = 0;
            for (auto& s : se) {
                if (s.e > 1000 || s.e < -1000)
                    throw std::domain_error("embeddings: value out of double range");
                double scale = std::ldexp(1.0, (int)s.e);
                E.values.push_back(s.v * scale);
                E.radius = std::max(E.radius, s.abs_err * scale);
            }
            break;
        }
    }
    if (E.radius > precision)
        throw std::domain_error("embeddings: requested precision not attainable");
    return E;
}

// ----------------------------------------------------------- HeightEstimate

struct HeightEstimate {
    double value = 0;
    double radius = 0;  // certified |value - true| <= radius
    bool exact = false;

    static HeightEstimate exactly(double v) { return {v, 0, true}; }
    static HeightEstimate approx(double v, double r) { return {v, r, false}; }
};

// -------------------------------------------------------------------- house

// max |conjugate| as a ScaledReal, with relative error bound
inline ScaledReal house_scaled(const AlgNumber& a, double& rel_err) {
    rel_err = 1e-12;
    switch (a.field.kind) {
        case FieldKind::Rational:
            return ScaledReal::from_rat(a.c[0]).abs();
        case FieldKind::Quadratic: {
            ScaledReal u = ScaledReal::from_rat(a.c[0]).abs();
            ScaledReal v = ScaledReal::from_rat(a.c[1]).abs();
            ScaledReal sd = ScaledReal::from_int(Int(std::abs(a.field.d))).sqrt_abs();
            if (a.field.d > 0) return u + v * sd;  // |u| + |v| sqrt(d) is the max conjugate modulus
            return (u * u + v * v * sd * sd).sqrt_abs();
        }
        case FieldKind::Cyclotomic: {
            auto se = detail::cyclo_embeddings_scaled(a);
            ScaledReal best;
            double err = 1e-300;
            for (auto& s : se) {
                ScaledReal m(std::abs(s.v), s.e);
                if (best.zero() || m > best) best = m;
                if (std::abs(s.v) > 0) err = std::max(err, s.abs_err / std::abs(s.v));
            }
            rel_err = std::max(1e-12, err * 2);
            return best;
        }
    }
    throw std::logic_error("unreachable");
}

inline HeightEstimate house(const AlgNumber& a) {
    if (a.is_zero()) return HeightEstimate::exactly(0);
    double rel;
    ScaledReal h = house_scaled(a, rel);
    double v = h.to_double();
    return HeightEstimate::approx(v, std::fabs(v) * rel + 1e-300);
}

// ---------------------------------------------------- root-of-unity testing

inline std::optional<long> root_of_unity_order(const AlgNumber& a) {
    if (a.is_zero()) return std::nullopt;
    if (a.is_rational()) {
        if (a.c[0] == 1) return 1;
        if (a.c[0] == -1) return 2;
        return std::nullopt;
    }
    // prefilter: every conjugate of a root of unity has modulus 1
    double rel;
    ScaledReal h = house_scaled(a, rel);
    double hv = h.to_double();
    if (!(hv > 1.0 - 1e-6 && hv < 1.0 + 1e-6)) return std::nullopt;
    long bound;
    if (a.field.kind == FieldKind::Quadratic) bound = 6;
    else bound = (a.field.n % 2 == 0) ? a.field.n : 2 * a.field.n;
    AlgNumber p = a;
    const AlgNumber one = AlgNumber::one(a.field);
    for (long m = 1; m <= bound; ++m) {
        if (p == one) return m;
        p = p * a;
    }
    return std::nullopt;
}

inline bool is_root_of_unity(const AlgNumber& a) {
    return root_of_unity_order(a).has_value();
}

// -------------------------------------------------------------- Weil height

namespace detail {

inline double log_plus(const ScaledReal& x) {
    if (x.zero()) return 0;
    double l = x.log_abs();
    return l > 0 ? l : 0;
}

// degree-2 primitive integer polynomial A x^2 + B x + C with irrational roots:
// sum of log+|root| with tiny relative error, no catastrophic cancellation
inline double quad_logplus_sum(const Int& A, const Int& B, const Int& C) {
    Int disc = B * B - 4 * A * C;
    ScaledReal sA = ScaledReal::from_int(A);
    if (disc < 0) {
        // complex pair, |r|^2 = C/A
        ScaledReal m2 = ScaledReal::from_int(C) / sA;
        double l = m2.log_abs();
        return l > 0 ? l : 0;
    }
    Int absB = B < 0 ? Int(-B) : B;
    Int absC = C < 0 ? Int(-C) : C;
    // |r_max| = (|B| + sqrt(disc)) / (2A), |r_min| = 2|C| / (|B| + sqrt(disc))
    // exact comparisons against 1 via sign_plus_sqrt
    int max_gt_1 = sign_plus_sqrt(Rat(absB) - Rat(2 * A), Rat(1), Rat(disc));
    int min_gt_1 = sign_plus_sqrt(Rat(2 * absC) - Rat(absB), Rat(-1), Rat(disc));
    ScaledReal sq = ScaledReal::from_int(disc).sqrt_abs();
    ScaledReal top = ScaledReal::from_int(absB) + sq;
    double out = 0;
    if (max_gt_1 > 0 && min_gt_1 > 0) {
        // both outside unit circle: sum = log|C/A|
        out = (ScaledReal::from_int(absC) / sA).log_abs();
    } else if (max_gt_1 > 0) {
        out = (top / (ScaledReal::from_int(Int(2)) * sA)).log_abs();
    }
    return out;
}

}  // namespace detail

// minpoly_hint, if given, must be the minimal polynomial of a (skips the
// in-field recomputation, which dominates at large cyclotomic degree)
inline HeightEstimate weil_height(const AlgNumber& a, const IntPoly* minpoly_hint = nullptr) {
    if (a.is_zero()) return HeightEstimate::exactly(0);
    if (is_root_of_unity(a)) return HeightEstimate::exactly(0);
    if (a.is_rational()) {
        const Rat& q = a.c[0];
        Int n = q.get_num() < 0 ? Int(-q.get_num()) : q.get_num();
        const Int& d = q.get_den();
        Int mx = n > d ? n : d;
        if (mx == 1) return HeightEstimate::exactly(0);
        double v = ScaledReal::from_int(mx).log_abs();
        return HeightEstimate::approx(v, v * 1e-13 + 1e-300);
    }
    IntPoly m = minpoly_hint ? *minpoly_hint : minimal_polynomial(a);
    const int md = m.degree();
    if (md == 1) {
        // rational after all (shouldn't reach; handled above)
        Int n = m.c[0] < 0 ? Int(-m.c[0]) : m.c[0];
        Int mx = n > m.c[1] ? n : m.c[1];
        double v = mx == 1 ? 0.0 : ScaledReal::from_int(mx).log_abs();
        return HeightEstimate::approx(v, v * 1e-13 + 1e-300);
    }
    if (md == 2) {
        double s = detail::quad_logplus_sum(m.c[2], m.c[1], m.c[0]);
        double lead = m.c[2] == 1 ? 0.0 : ScaledReal::from_int(m.c[2]).log_abs();
        double v = (lead + s) / 2.0;
        return HeightEstimate::approx(v, std::fabs(v) * 1e-12 + 1e-300);
    }
    // general: average log+ over all field embeddings, plus lead term over minpoly degree
    auto se = detail::cyclo_embeddings_scaled(a);
    double sum = 0, err = 1e-300;
    for (auto& s : se) {
        double mag = std::abs(s.v);
        ScaledReal r(mag, s.e);
        sum += detail::log_plus(r);
        double m0 = std::max(mag, s.abs_err);
        err += s.abs_err / m0;  // log error bound per embedding
    }
    double lead = m.c[md] == 1 ? 0.0 : ScaledReal::from_int(m.c[md]).log_abs();
    double v = sum / a.field.degree + lead / md;
    return HeightEstimate::approx(v, err / a.field.degree + std::fabs(v) * 1e-12 + 1e-300);
}

}  // namespace nlab
