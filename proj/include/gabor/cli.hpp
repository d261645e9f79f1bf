#pragma once

#include "gabor/analysis.hpp"
#include "gabor/atlas.hpp"
#include "gabor/dual.hpp"
#include "gabor/obstructions.hpp"
#include "gabor/verify.hpp"
#include "gabor/window_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace gabor::cli {

/// Exit codes of run().
enum Exit : int { Ok = 0, Failure = 1, OutOfScopeExit = 2 };

struct RunConfig {
    std::string window_path;
    int bspline = 0;
    std::string a, b;
    long grid = 0, nu_grid = 0, max_denominator = 256, n_max = 8;
    double tol = 1e-9;
    bool relative = false, json = false;
    std::string out, svg, cases;
    std::string amin = "0", amax, bmin = "0", bmax = "3";
    long res = 200;
};

namespace detail {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Window load_window(const RunConfig& c) {
    if (c.window_path.empty() == (c.bspline == 0)) throw UsageError("give exactly one of --window or --bspline");
    return c.bspline ? make_bspline(c.bspline) : read_window(c.window_path);
}

inline Rational arg_rational(const std::string& s, const char* name) {
    if (s.empty()) throw UsageError(std::string("missing --") + name);
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--") + name + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

inline nlohmann::json num(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

inline nlohmann::json decision_json(const FrameDecision& d) {
    using nlohmann::json;
    json j{{"verdict", to_string(d.verdict)}};
    if (d.params) {
        j["M"] = d.params->M;
        j["kappa"] = d.params->kappa;
    }
    if (d.failed_condition) j["failed_condition"] = to_string(*d.failed_condition);
    if (d.out_of_scope) j["out_of_scope"] = d.out_of_scope->message;
    j["positive_fast_path"] = d.positive_fast_path;
    json w = json::array();
    for (const auto& x : d.witnesses)
        w.push_back({{"side", to_string(x.side)}, {"n", x.n}, {"zero", x.zero.location.to_string()}, {"one_sided", x.one_sided}});
    j["witnesses"] = w;
    json o = json::array();
    for (const auto& x : d.offending) o.push_back({{"condition", to_string(x.condition)}, {"x", x.x.to_string()}, {"note", x.note}});
    j["offending"] = o;
    return j;
}

inline int cmd_check(const RunConfig& c, std::ostream& out) {
    Window g = load_window(c);
    Rational a = arg_rational(c.a, "a"), b = arg_rational(c.b, "b");
    FrameDecision d = check_frame(g, a, b);
    auto j = decision_json(d);
    j["schema"] = "gabor.check/1";
    j["a"] = to_string(a);
    j["b"] = to_string(b);
    if (c.bspline) {
        auto l = classify_bspline_point(c.bspline, a, b);
        j["atlas_label"] = to_string(l.label);
        j["atlas_evidence"] = l.evidence();
    }
    if (c.json) {
        out << j.dump(2) << '\n';
    } else {
        out << "verdict: " << to_string(d.verdict) << '\n';
        if (d.params) out << "M: " << d.params->M << "\nkappa: " << d.params->kappa << '\n';
        if (d.failed_condition) out << "failed_condition: " << to_string(*d.failed_condition) << '\n';
        if (d.out_of_scope) out << "out_of_scope: " << d.out_of_scope->message << '\n';
        for (const auto& w : d.witnesses)
            out << "witness: " << to_string(w.side) << " n=" << w.n << " y=" << w.zero.location.to_string() << '\n';
        if (j.contains("atlas_label")) out << "atlas_label: " << j["atlas_label"].get<std::string>() << '\n';
    }
    return d.verdict == Verdict::OutOfScope ? OutOfScopeExit : Ok;
}

// Runs check_frame first so an out-of-scope point gets exit code 2 instead of an error.
inline std::optional<int> dual_gate(const Window& g, const Rational& a, const Rational& b, std::ostream& err) {
    FrameDecision d = check_frame(g, a, b);
    if (d.verdict == Verdict::OutOfScope) {
        err << "out of scope: " << d.out_of_scope->message << '\n';
        return OutOfScopeExit;
    }
    if (d.verdict == Verdict::NotFrame) {
        err << "not a frame: condition (" << to_string(*d.failed_condition) << ") fails\n";
        return Failure;
    }
    return std::nullopt;
}

inline int cmd_dual(const RunConfig& c, std::ostream& out, std::ostream& err) {
    Window g = load_window(c);
    Rational a = arg_rational(c.a, "a"), b = arg_rational(c.b, "b");
    if (auto e = dual_gate(g, a, b, err)) return *e;
    DualWindow h = construct_dual(g, a, b);
    const auto& p = h.params();
    nlohmann::json j{{"schema", "gabor.dual/1"},
                     {"a", to_string(a)},
                     {"b", to_string(b)},
                     {"M", p.M},
                     {"kappa", p.kappa},
                     {"epsilon", to_string(h.balls().epsilon)},
                     {"halvings", h.balls().halvings},
                     {"support", {to_string(Rational(-h.support_radius())), to_string(h.support_radius())}},
                     {"core_bound", num(h.core_bound())},
                     {"sup_bound", num(h.sup_bound())}};
    if (!c.out.empty()) write_file(c.out, h.grid_csv(c.grid > 0 ? c.grid : 1001));
    if (!c.cases.empty()) write_file(c.cases, h.cases_json().dump(2) + "\n");
    out << j.dump(2) << '\n';
    return Ok;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (!(c.tol > 0)) throw UsageError("--tol must be positive");
    Window g = load_window(c);
    Rational a = arg_rational(c.a, "a"), b = arg_rational(c.b, "b");
    if (auto e = dual_gate(g, a, b, err)) return *e;
    DualWindow h = construct_dual(g, a, b);
    ResidualReport r = duality_residual(g, h, h.params(), c.grid > 0 ? c.grid : 10000);
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [n, v] : r.per_n) per[std::to_string(n)] = num(v);
    bool pass = (c.relative ? r.relative : r.overall) < c.tol;
    out << nlohmann::json{{"schema", "gabor.verify/1"},
                          {"a", to_string(a)},
                          {"b", to_string(b)},
                          {"grid", r.grid},
                          {"points", r.points},
                          {"per_n", per},
                          {"overall", num(r.overall)},
                          {"relative", num(r.relative)},
                          {"tolerance", c.tol},
                          {"metric", c.relative ? "relative" : "absolute"},
                          {"pass", pass}}
                .dump(2)
        << '\n';
    return pass ? Ok : Failure;
}

inline int cmd_curves(const RunConfig& c, std::ostream& out) {
    Window g = load_window(c);
    CurveOptions opt;
    opt.n_max = c.n_max;
    auto cs = candidate_curves(g, opt);
    std::string csv = curves_csv(cs);
    if (!c.svg.empty()) write_file(c.svg, curves_svg(cs, g.alpha()));
    if (c.out.empty()) {
        out << csv;
    } else {
        write_file(c.out, csv);
        out << nlohmann::json{{"schema", "gabor.curves/1"}, {"count", cs.size()}, {"out", c.out}}.dump(2) << '\n';
    }
    return Ok;
}

inline int cmd_atlas(const RunConfig& c, std::ostream& out) {
    if (c.bspline < 2) throw UsageError("atlas needs --bspline N with N >= 2");
    Rational amin = arg_rational(c.amin, "amin"), bmin = arg_rational(c.bmin, "bmin"), bmax = arg_rational(c.bmax, "bmax");
    Rational amax = c.amax.empty() ? Rational(c.bspline) : arg_rational(c.amax, "amax");
    Atlas at = render_atlas(c.bspline, amin, amax, bmin, bmax, c.res);
    if (!c.svg.empty()) write_file(c.svg, at.svg());
    std::string csv = at.csv();
    if (c.out.empty()) {
        out << csv;
        return Ok;
    }
    write_file(c.out, csv);
    std::map<std::string, long> counts;
    for (const auto& cell : at.cells) ++counts[to_string(cell.label.label)];
    out << nlohmann::json{{"schema", "gabor.atlas/1"}, {"N", c.bspline}, {"resolution", c.res}, {"counts", counts}, {"out", c.out}}.dump(2)
        << '\n';
    return Ok;
}

inline int cmd_zzbound(const RunConfig& c, std::ostream& out) {
    Window g = load_window(c);
    Rational a = arg_rational(c.a, "a"), b = arg_rational(c.b, "b");
    long n = c.grid > 0 ? c.grid : 256;
    ZZOptions opt;
    opt.max_denominator = c.max_denominator;
    double v = zz_lower_bound(g, a, b, n, c.nu_grid > 0 ? c.nu_grid : n, opt);
    out << nlohmann::json{{"schema", "gabor.zzbound/1"}, {"a", to_string(a)}, {"b", to_string(b)}, {"grid", n}, {"estimate", num(v)}}.dump(2)
        << '\n';
    return Ok;
}

}  // namespace detail

/// Runs one subcommand; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig c;
    CLI::App app{"Gabor frame decisions, dual windows and frame-set atlases for piecewise-polynomial windows"};
    app.require_subcommand(1);
    auto window_opts = [&](CLI::App* s) {
        s->add_option("--window", c.window_path, "window JSON file");
        s->add_option("--bspline", c.bspline, "use the centred B-spline of this order");
    };
    auto ab_opts = [&](CLI::App* s) {
        s->add_option("--a", c.a, "translation parameter (rational string)")->required();
        s->add_option("--b", c.b, "modulation parameter (rational string)")->required();
    };
    auto* check = app.add_subcommand("check", "decide the frame property");
    window_opts(check);
    ab_opts(check);
    check->add_flag("--json", c.json, "JSON report");
    auto* dual = app.add_subcommand("dual", "construct a dual window");
    window_opts(dual);
    ab_opts(dual);
    dual->add_option("--grid", c.grid, "CSV samples over [-aM, aM]");
    dual->add_option("--out", c.out, "CSV output (x,h)");
    dual->add_option("--cases", c.cases, "JSON case-tree output");
    auto* verify = app.add_subcommand("verify", "construct the dual and measure the duality residual");
    window_opts(verify);
    ab_opts(verify);
    verify->add_option("--grid", c.grid, "samples per band");
    verify->add_option("--tol", c.tol, "pass threshold");
    verify->add_flag("--relative", c.relative, "compare the relative residual against --tol");
    auto* curves = app.add_subcommand("curves", "candidate obstruction curves");
    window_opts(curves);
    curves->add_option("--out", c.out, "CSV output");
    curves->add_option("--svg", c.svg, "SVG output");
    curves->add_option("--nmax", c.n_max, "largest index per side");
    auto* atlas = app.add_subcommand("atlas", "B-spline frame-set map");
    atlas->add_option("--bspline", c.bspline, "B-spline order")->required();
    atlas->add_option("--amin", c.amin);
    atlas->add_option("--amax", c.amax, "default N");
    atlas->add_option("--bmin", c.bmin);
    atlas->add_option("--bmax", c.bmax);
    atlas->add_option("--res", c.res, "cells per axis");
    atlas->add_option("--out", c.out, "CSV output");
    atlas->add_option("--svg", c.svg, "SVG output");
    auto* zz = app.add_subcommand("zzbound", "lower frame bound estimate for rational ab");
    window_opts(zz);
    ab_opts(zz);
    zz->add_option("--grid", c.grid, "x grid size");
    zz->add_option("--nu", c.nu_grid, "theta grid size (default: --grid)");
    zz->add_option("--max-den", c.max_denominator, "largest admissible denominator of ab");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Failure;
    }
    try {
        if (check->parsed()) return detail::cmd_check(c, out);
        if (dual->parsed()) return detail::cmd_dual(c, out, err);
        if (verify->parsed()) return detail::cmd_verify(c, out, err);
        if (curves->parsed()) return detail::cmd_curves(c, out);
        if (atlas->parsed()) return detail::cmd_atlas(c, out);
        if (zz->parsed()) return detail::cmd_zzbound(c, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Failure;
    }
    return Failure;
}

inline int run(int argc, char** argv) { return run(std::vector<std::string>(argv + 1, argv + argc)); }

}  // namespace gabor::cli
