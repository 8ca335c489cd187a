#pragma once

// CLI literal parsing and report emission.
//
// Literals:
//   field:   Q | Q(sqrt,d) | Q(zeta,n)
//   element: p/q | p/q+r/s*sqrt | [c0,c1,...]   (sqrt denotes sqrt(d))
//   curve:   "a,b,c over <field>"
//   point:   inf | (x,y)
//   map:     [m] | cm(a,b)
//   ext:     L/Q  with L a field literal

#include "northcott/galois.hpp"
#include "northcott/heights.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>

namespace nlab {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& what, size_t pos_)
        : std::runtime_error("at position " + std::to_string(pos_) + ": " + what), pos(pos_) {}
};

namespace detail {

inline std::string trim(const std::string& s, size_t& offset) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) { offset += s.size(); return ""; }
    size_t b = s.find_last_not_of(" \t");
    offset += a;
    return s.substr(a, b - a + 1);
}

inline Rat parse_rat(const std::string& tok, size_t pos) {
    size_t p = pos;
    std::string t = trim(tok, p);
    if (t.empty()) throw ParseError("expected a rational number", p);
    for (size_t i = 0; i < t.size(); ++i) {
        char ch = t[i];
        bool ok = (ch >= '0' && ch <= '9') || ch == '/' || (i == 0 && (ch == '-' || ch == '+'));
        if (!ok) throw ParseError(std::string("unexpected character '") + ch + "' in rational", p + i);
    }
    try {
        Rat r(t[0] == '+' ? t.substr(1) : t);
        if (r.get_den() == 0) throw ParseError("zero denominator", p);
        r.canonicalize();
        return r;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("malformed rational '" + t + "'", p);
    }
}

// split at top-level commas (depth counts (), [])
inline std::vector<std::pair<std::string, size_t>> split_top(const std::string& s, size_t pos) {
    std::vector<std::pair<std::string, size_t>> parts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || (s[i] == ',' && depth == 0)) {
            parts.emplace_back(s.substr(start, i - start), pos + start);
            start = i + 1;
        } else if (s[i] == '(' || s[i] == '[') {
            ++depth;
        } else if (s[i] == ')' || s[i] == ']') {
            --depth;
            if (depth < 0) throw ParseError("unbalanced bracket", pos + i);
        }
    }
    if (depth != 0) throw ParseError("unbalanced bracket", pos + s.size());
    return parts;
}

}  // namespace detail

inline FieldSpec parse_field(const std::string& lit, size_t pos = 0) {
    size_t p = pos;
    std::string s = detail::trim(lit, p);
    if (s == "Q") return FieldSpec::rationals();
    if (s.rfind("Q(", 0) == 0 && s.back() == ')') {
        auto parts = detail::split_top(s.substr(2, s.size() - 3), p + 2);
        if (parts.size() == 2) {
            size_t kp = parts[0].second;
            std::string kind = detail::trim(parts[0].first, kp);
            Rat arg = detail::parse_rat(parts[1].first, parts[1].second);
            if (arg.get_den() != 1) throw ParseError("field parameter must be an integer", parts[1].second);
            long v = (long)arg.get_num().get_si();
            try {
                if (kind == "sqrt") return FieldSpec::quadratic(v);
                if (kind == "zeta") return FieldSpec::cyclotomic(v);
            } catch (const std::exception& e) {
                throw ParseError(e.what(), parts[1].second);
            }
            throw ParseError("unknown field kind '" + kind + "' (want sqrt or zeta)", kp);
        }
    }
    throw ParseError("malformed field literal '" + s + "' (want Q, Q(sqrt,d) or Q(zeta,n))", p);
}

inline AlgNumber parse_element(const FieldSpec& F, const std::string& lit, size_t pos = 0) {
    size_t p = pos;
    std::string s = detail::trim(lit, p);
    if (s.empty()) throw ParseError("empty element literal", p);
    if (F.kind == FieldKind::Cyclotomic) {
        if (s.front() != '[' || s.back() != ']')
            throw ParseError("cyclotomic element must be [c0,c1,...]", p);
        auto parts = detail::split_top(s.substr(1, s.size() - 2), p + 1);
        if ((int)parts.size() != F.degree)
            throw ParseError("expected " + std::to_string(F.degree) + " coefficients, got " +
                                 std::to_string(parts.size()),
                             p);
        std::vector<Rat> c;
        for (auto& [tok, tp] : parts) c.push_back(detail::parse_rat(tok, tp));
        return AlgNumber(F, c);
    }
    if (F.kind == FieldKind::Rational) return AlgNumber::rational(detail::parse_rat(s, p));

    // quadratic: signed terms, each a rational or [r/s*]sqrt
    Rat u = 0, v = 0;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        size_t start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        std::string term = s.substr(start, i - start);
        size_t tp = p + start;
        std::string t = detail::trim(term, tp);
        if (t.empty()) throw ParseError("empty term in element literal", tp);
        size_t sq = t.find("sqrt");
        if (sq == std::string::npos) {
            u += sign * detail::parse_rat(t, tp);
        } else {
            if (sq + 4 != t.size()) throw ParseError("trailing text after sqrt", tp + sq + 4);
            std::string coef = t.substr(0, sq);
            Rat b = 1;
            if (!coef.empty()) {
                if (coef.back() != '*') throw ParseError("expected '*' before sqrt", tp + sq - 1);
                b = detail::parse_rat(coef.substr(0, coef.size() - 1), tp);
            }
            v += sign * b;
        }
    }
    return AlgNumber(F, {u, v});
}

inline Curve parse_curve(const std::string& lit, size_t pos = 0) {
    size_t sep = lit.find(" over ");
    if (sep == std::string::npos)
        throw ParseError("curve literal must be 'a,b,c over <field>'", pos + lit.size());
    FieldSpec F = parse_field(lit.substr(sep + 6), pos + sep + 6);
    auto parts = detail::split_top(lit.substr(0, sep), pos);
    if (parts.size() != 3)
        throw ParseError("expected 3 curve coefficients, got " + std::to_string(parts.size()), pos);
    try {
        return Curve(parse_element(F, parts[0].first, parts[0].second),
                     parse_element(F, parts[1].first, parts[1].second),
                     parse_element(F, parts[2].first, parts[2].second));
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(e.what(), pos);
    }
}

inline Point parse_point(const FieldSpec& F, const std::string& lit, size_t pos = 0) {
    size_t p = pos;
    std::string s = detail::trim(lit, p);
    if (s == "inf") return Point::infinity();
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("point literal must be 'inf' or '(x,y)'", p);
    auto parts = detail::split_top(s.substr(1, s.size() - 2), p + 1);
    if (parts.size() != 2)
        throw ParseError("expected 2 point coordinates, got " + std::to_string(parts.size()), p);
    return Point(parse_element(F, parts[0].first, parts[0].second),
                 parse_element(F, parts[1].first, parts[1].second));
}

inline Endomorphism parse_map(const Curve& C, const std::string& lit, size_t pos = 0) {
    size_t p = pos;
    std::string s = detail::trim(lit, p);
    if (s.size() >= 3 && s.front() == '[' && s.back() == ']') {
        Rat m = detail::parse_rat(s.substr(1, s.size() - 2), p + 1);
        if (m.get_den() != 1) throw ParseError("scalar map must be an integer", p + 1);
        return Endomorphism::scalar_map(C, (long)m.get_num().get_si());
    }
    if (s.rfind("cm(", 0) == 0 && s.back() == ')') {
        auto parts = detail::split_top(s.substr(3, s.size() - 4), p + 3);
        if (parts.size() == 2) {
            Rat a = detail::parse_rat(parts[0].first, parts[0].second);
            Rat b = detail::parse_rat(parts[1].first, parts[1].second);
            if (a.get_den() != 1 || b.get_den() != 1)
                throw ParseError("cm parameters must be integers", p + 3);
            try {
                return Endomorphism::cm_map(C, (long)a.get_num().get_si(),
                                            (long)b.get_num().get_si());
            } catch (const std::exception& e) {
                throw ParseError(e.what(), p);
            }
        }
    }
    throw ParseError("malformed map literal '" + s + "' (want [m] or cm(a,b))", p);
}

inline ExtensionSpec parse_extension(const std::string& lit, size_t pos = 0) {
    size_t sep = lit.rfind('/');
    if (sep == std::string::npos)
        throw ParseError("extension literal must be '<field>/Q'", pos + lit.size());
    size_t bp = pos + sep + 1;
    std::string base = detail::trim(lit.substr(sep + 1), bp);
    if (base != "Q") throw ParseError("only extensions of Q are supported", bp);
    FieldSpec L = parse_field(lit.substr(0, sep), pos);
    ExtensionSpec e;
    e.L = L;
    e.group = galois_group(L);
    return e;
}

// ------------------------------------------------------------- emission

// round to 12 significant digits so emitted reports are stable across runs
inline double sig12(double v) {
    if (v == 0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string rat_str(const Rat& r) {
    return r.get_str();  // "p/q" or "p"
}

inline json to_json(const HeightEstimate& h) {
    return json{{"value", sig12(h.value)}, {"radius", sig12(h.radius)}, {"exact", h.exact}};
}

inline json to_json(const AlgNumber& a) {
    if (a.is_rational()) return rat_str(a.rat());
    json coeffs = json::array();
    for (auto& c : a.c) coeffs.push_back(rat_str(c));
    return json{{"field", a.field.str()}, {"coeffs", coeffs}};
}

inline json to_json(const Point& P) {
    if (P.inf) return "inf";
    return json{{"x", to_json(P.x)}, {"y", to_json(P.y)}};
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace nlab
