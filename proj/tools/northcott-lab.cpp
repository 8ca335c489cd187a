// northcott-lab: exact height experiments on elliptic curves over Q,
// quadratic, and cyclotomic fields.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage error.

#include "northcott/dynamics.hpp"
#include "northcott/io.hpp"
#include "northcott/northcott.hpp"
#include "northcott/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <map>

using namespace nlab;

namespace {

struct Options {
    std::string curve = "0,1,0 over Q";
    std::string field = "Q";
    std::string point = "inf";
    std::string map = "[2]";
    std::string ext;
    long d = 10;
    long k = 8;
    std::string a = "0", b = "1";
    int N = 5;
    double T = 0;
    double tol = 1e-6;
    int max = 50;
    int depth = 4;
    bool csv = false;
};

double now_ms(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

json wrap(const std::string& cmd, json payload, double ms) {
    json rep;
    rep["command"] = cmd;
    rep["version"] = "northcott-lab 1.0";
    rep["result"] = std::move(payload);
    rep["timing_ms"] = ms;  // ignorable: not part of the deterministic payload
    return rep;
}

void emit(const json& rep, const std::vector<std::string>& csv_lines, bool csv) {
    if (csv) {
        for (auto& line : csv_lines) std::cout << line << "\n";
    } else {
        std::cout << rep.dump(2) << "\n";
    }
}

int cmd_height(const Options& o, bool canonical) {
    auto t0 = std::chrono::steady_clock::now();
    Curve C = parse_curve(o.curve);
    Point P = parse_point(C.field, o.point);
    json payload;
    payload["curve"] = C.str();
    payload["point"] = to_json(P);
    std::vector<std::string> csv_lines = {"kind,value,radius,exact"};
    if (canonical) {
        auto r = canonical_height(C, P, o.tol);
        payload["hhat"] = to_json(r.h);
        payload["steps"] = r.steps;
        payload["budget_exhausted"] = r.budget_exhausted;
        csv_lines.push_back("hhat," + fmt12(r.h.value) + "," + fmt12(r.h.radius) + "," +
                            (r.h.exact ? "true" : "false"));
    } else {
        auto h = naive_height(C, P);
        payload["h"] = to_json(h);
        csv_lines.push_back("h," + fmt12(h.value) + "," + fmt12(h.radius) + "," +
                            (h.exact ? "true" : "false"));
    }
    emit(wrap(canonical ? "canonical-height" : "height", payload, now_ms(t0)), csv_lines, o.csv);
    return 0;
}

int cmd_trace(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    ExtensionSpec ext = o.ext.empty() ? ExtensionSpec::quadratic_over_q(o.d)
                                      : parse_extension(o.ext);
    Curve C = parse_curve(o.curve);
    Point P = parse_point(ext.L, o.point);
    Point tr = trace_map(ext, C, P);
    json payload;
    payload["curve"] = C.str();
    payload["extension"] = ext.L.str() + "/" + ext.F_name;
    payload["input"] = to_json(P);
    payload["trace"] = to_json(tr);
    payload["in_kernel"] = tr.inf;
    emit(wrap("trace", payload, now_ms(t0)), {"trace,in_kernel", tr.str() + "," + (tr.inf ? "true" : "false")},
         o.csv);
    return 0;
}

int cmd_twist_transfer(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    ExtensionSpec ext = ExtensionSpec::quadratic_over_q(o.d);
    Curve C = parse_curve(o.curve);
    Point P = parse_point(ext.L, o.point);
    Point tr = trace_map(ext, C, P);
    json payload;
    payload["curve"] = C.str();
    payload["d"] = o.d;
    payload["input"] = to_json(P);
    payload["trace"] = to_json(tr);
    payload["in_kernel"] = tr.inf;
    if (tr.inf) {
        Point img = twist_transfer(ext, C, P);
        payload["twist"] = twist(C, AlgNumber::rational(Rat(o.d))).str();
        payload["transfer"] = to_json(img);
    }
    emit(wrap("twist-transfer", payload, now_ms(t0)), {payload.dump()}, o.csv);
    return tr.inf ? 0 : 1;
}

int cmd_enumerate(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Curve C = parse_curve(o.curve);
    FieldSpec F = parse_field(o.field);
    auto pts = enumerate_bounded(C, F, o.T);
    json payload;
    payload["curve"] = C.str();
    payload["field"] = F.str();
    payload["T"] = sig12(o.T);
    payload["count"] = pts.size();
    json arr = json::array();
    std::vector<std::string> csv_lines = {"point,h"};
    for (auto& P : pts) {
        double h = P.inf ? 0.0 : weil_height(P.x).value;
        arr.push_back(json{{"point", to_json(P)}, {"h", sig12(h)}});
        csv_lines.push_back(csv_escape(P.str()) + "," + fmt12(h));
    }
    payload["points"] = arr;
    emit(wrap("enumerate", payload, now_ms(t0)), csv_lines, o.csv);
    return 0;
}

int cmd_qtr_family(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Rat a = detail::parse_rat(o.a, 0), b = detail::parse_rat(o.b, 0);
    FamilyRecord rec = qtr_family(a, b, o.k, o.N);
    json payload;
    payload["k"] = o.k;
    payload["a"] = rat_str(a);
    payload["b"] = rat_str(b);
    payload["curve"] = rec.shifted.str();
    payload["height_bound"] = sig12(rec.height_bound);
    payload["distinct"] = rec.distinct;
    json arr = json::array();
    std::vector<std::string> csv_lines = {"n,x_minpoly,h,bound_ok"};
    for (auto& fp : rec.points) {
        arr.push_back(json{{"n", fp.n},
                           {"x_minpoly", fp.x_minpoly.str()},
                           {"h", to_json(fp.h)},
                           {"bound_ok", fp.bound_ok},
                           {"totally_positive", fp.totally_positive}});
        csv_lines.push_back(std::to_string(fp.n) + "," + csv_escape(fp.x_minpoly.str()) + "," +
                            fmt12(fp.h.value) + "," + (fp.bound_ok ? "true" : "false"));
    }
    payload["points"] = arr;
    emit(wrap("qtr-family", payload, now_ms(t0)), csv_lines, o.csv);
    bool ok = rec.distinct;
    for (auto& fp : rec.points) ok = ok && fp.bound_ok && fp.totally_positive;
    return ok ? 0 : 1;
}

int cmd_kab(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Rat a = detail::parse_rat(o.a, 0), b = detail::parse_rat(o.b, 0);
    long k = kab_min_k(a, b);
    json payload;
    payload["k_min"] = k;
    emit(wrap("kab", payload, now_ms(t0)), {"k_min", std::to_string(k)}, o.csv);
    return 0;
}

int cmd_orbit(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Curve C = parse_curve(o.curve);
    Point P = parse_point(C.field, o.point);
    Endomorphism f = parse_map(C, o.map);
    OrbitRecord rec = orbit(f, P, o.max);
    json payload;
    payload["curve"] = C.str();
    payload["map"] = f.str();
    payload["start"] = to_json(P);
    payload["cycle_found"] = rec.cycle_found;
    if (rec.cycle_found) {
        payload["cycle_entry"] = rec.cycle_entry;
        payload["period"] = rec.period;
    }
    payload["truncated"] = rec.truncated;
    json arr = json::array();
    std::vector<std::string> csv_lines = {"i,point,h"};
    for (size_t i = 0; i < rec.iterates.size(); ++i) {
        arr.push_back(json{{"i", i},
                           {"point", to_json(rec.iterates[i])},
                           {"h", to_json(rec.heights[i])}});
        csv_lines.push_back(std::to_string(i) + "," + csv_escape(rec.iterates[i].str()) + "," +
                            fmt12(rec.heights[i].value));
    }
    payload["iterates"] = arr;
    emit(wrap("orbit", payload, now_ms(t0)), csv_lines, o.csv);
    return 0;
}

int cmd_back_chain(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Curve C = parse_curve(o.curve);
    Point P = parse_point(C.field, o.point);
    Endomorphism f = parse_map(C, o.map);
    BackChain bc = back_chain(f, P, o.depth, o.tol);
    DecayCheck dc = decay_check(bc, f.degree(), o.tol);
    json payload;
    payload["curve"] = C.str();
    payload["base"] = to_json(P);
    payload["depth_requested"] = o.depth;
    payload["depth_reached"] = bc.chain.size() - 1;
    payload["exhausted_depth"] = bc.exhausted_depth;
    json arr = json::array();
    std::vector<std::string> csv_lines = {"j,point,hhat,radius"};
    for (size_t j = 0; j < bc.chain.size(); ++j) {
        arr.push_back(json{{"j", j},
                           {"point", to_json(bc.chain[j])},
                           {"hhat", to_json(bc.heights[j].h)}});
        csv_lines.push_back(std::to_string(j) + "," + csv_escape(bc.chain[j].str()) + "," +
                            fmt12(bc.heights[j].h.value) + "," + fmt12(bc.heights[j].h.radius));
    }
    payload["chain"] = arr;
    payload["decay_pass"] = dc.pass;
    emit(wrap("back-chain", payload, now_ms(t0)), csv_lines, o.csv);
    return dc.pass ? 0 : 1;
}

int cmd_verify_suite(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    VerifySuite s = run_verify_suite(o.tol);
    json payload;
    json arr = json::array();
    std::vector<std::string> csv_lines = {"check,pass,detail"};
    for (auto& item : s.items) {
        arr.push_back(json{{"check", item.name}, {"pass", item.pass}, {"detail", item.detail}});
        csv_lines.push_back(item.name + "," + (item.pass ? "true" : "false") + "," +
                            csv_escape(item.detail));
    }
    payload["checks"] = arr;
    payload["all_pass"] = s.all_pass;
    emit(wrap("verify-suite", payload, now_ms(t0)), csv_lines, o.csv);
    return s.all_pass ? 0 : 1;
}

int cmd_mult_dep(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    Rat x = detail::parse_rat(o.a, 0), y = detail::parse_rat(o.b, 0);
    bool dep = mult_dep_test(x, y);
    json payload;
    payload["x"] = rat_str(x);
    payload["y"] = rat_str(y);
    payload["dependent"] = dep;
    emit(wrap("mult-dep", payload, now_ms(t0)), {"dependent", dep ? "true" : "false"}, o.csv);
    return 0;
}

int cmd_cc_demo(const Options& o) {
    auto t0 = std::chrono::steady_clock::now();
    auto primes = first_odd_primes(o.N > 1 ? o.N - 1 : 1);
    std::vector<long> ps = {2};
    for (int i = 0; i + 1 < o.N; ++i) ps.push_back(primes[i]);
    CcDemo demo = cc_points_demo(ps);
    json payload;
    payload["curve"] = demo.curve.str();
    json arr = json::array();
    std::vector<std::string> csv_lines = {"p,sign,d,point,h"};
    for (auto& cp : demo.points) {
        arr.push_back(json{{"p", cp.p},
                           {"sign", cp.sign},
                           {"d", cp.d},
                           {"point", to_json(cp.point)},
                           {"h", to_json(cp.h)}});
        csv_lines.push_back(std::to_string(cp.p) + "," + std::to_string(cp.sign) + "," +
                            std::to_string(cp.d) + "," + csv_escape(cp.point.str()) + "," +
                            fmt12(cp.h.value));
    }
    payload["points"] = arr;
    emit(wrap("cc-demo", payload, now_ms(t0)), csv_lines, o.csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"northcott-lab: exact elliptic-curve height experiments"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);

    Options o;
    app.add_option("--curve", o.curve, "curve literal 'a,b,c over <field>'");
    app.add_option("--field", o.field, "field literal (Q, Q(sqrt,d), Q(zeta,n))");
    app.add_option("--point", o.point, "point literal 'inf' or '(x,y)'");
    app.add_option("--map", o.map, "map literal '[m]' or 'cm(a,b)'");
    app.add_option("--ext", o.ext, "extension literal '<field>/Q'");
    app.add_option("--d", o.d, "twist parameter (squarefree integer)");
    app.add_option("--k", o.k, "family shift parameter");
    app.add_option("--a", o.a, "rational parameter a");
    app.add_option("--b", o.b, "rational parameter b");
    app.add_option("--N", o.N, "sample count");
    app.add_option("--T", o.T, "height bound");
    app.add_option("--tol", o.tol, "target radius for canonical heights");
    app.add_option("--max", o.max, "iteration budget");
    app.add_option("--depth", o.depth, "backward-chain depth");
    app.add_flag("--csv", o.csv, "CSV output instead of JSON");

    std::map<std::string, std::function<int()>> runners;
    auto sub = [&](const char* name, const char* desc, std::function<int()> fn) {
        app.add_subcommand(name, desc)->fallthrough();
        runners[name] = std::move(fn);
    };
    sub("height", "naive height of a point", [&] { return cmd_height(o, false); });
    sub("canonical-height", "canonical height of a point", [&] { return cmd_height(o, true); });
    sub("trace", "trace of a point under Gal(L/Q)", [&] { return cmd_trace(o); });
    sub("twist-transfer", "transfer a zero-trace point to the twist",
        [&] { return cmd_twist_transfer(o); });
    sub("enumerate", "points of bounded height in a box", [&] { return cmd_enumerate(o); });
    sub("qtr-family", "bounded-height family over totally real fields",
        [&] { return cmd_qtr_family(o); });
    sub("kab", "minimal k for the family inequality", [&] { return cmd_kab(o); });
    sub("orbit", "forward orbit with cycle detection", [&] { return cmd_orbit(o); });
    sub("back-chain", "rational backward chain under [2]", [&] { return cmd_back_chain(o); });
    sub("verify-suite", "run the aggregate invariant battery",
        [&] { return cmd_verify_suite(o); });
    sub("mult-dep", "multiplicative dependence of two rationals",
        [&] { return cmd_mult_dep(o); });
    sub("cc-demo", "the (p, sqrt(p(p^2+1))) unbounded-height points",
        [&] { return cmd_cc_demo(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (auto& [name, fn] : runners)
            if (app.get_subcommand(name)->parsed()) return fn();
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "literal error " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
