#pragma once

#include "gabor/window.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace gabor {

struct WindowFormatError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline nlohmann::json window_to_json(const Window& w) {
    using nlohmann::json;
    json pieces = json::array();
    for (const auto& p : w.pieces()) {
        json coeffs = json::array();
        for (const auto& c : p.poly.coeffs()) coeffs.push_back(to_string(c));
        if (coeffs.empty()) coeffs.push_back("0");
        pieces.push_back({{"interval", {to_string(p.lo), to_string(p.hi)}}, {"coeffs", coeffs}});
    }
    return {{"alpha", to_string(w.alpha())}, {"pieces", pieces}};
}

namespace detail {

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const std::exception& e) {
            throw WindowFormatError(where + ": " + e.what());
        }
    }
    if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
    throw WindowFormatError(where + ": expected a rational string \"p/q\"");
}

}  // namespace detail

/// Reads { "alpha": "p/q", "pieces": [ { "interval": [lo, hi], "coeffs": [c0, c1, ...] } ] }
/// or the shortcut { "bspline": N }.
inline Window window_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw WindowFormatError("window document must be a JSON object");
    if (j.contains("bspline")) {
        if (!j["bspline"].is_number_integer()) throw WindowFormatError("bspline: expected an integer order");
        return make_bspline(j["bspline"].get<int>());
    }
    if (!j.contains("alpha") || !j.contains("pieces")) throw WindowFormatError("window document needs \"alpha\" and \"pieces\"");
    Rational alpha = detail::json_rational(j["alpha"], "alpha");
    const auto& pj = j["pieces"];
    if (!pj.is_array() || pj.empty()) throw WindowFormatError("pieces: expected a non-empty array");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < pj.size(); ++i) {
        std::string where = "pieces[" + std::to_string(i) + "]";
        const auto& p = pj[i];
        if (!p.is_object() || !p.contains("interval") || !p.contains("coeffs")) throw WindowFormatError(where + ": needs interval and coeffs");
        const auto& iv = p["interval"];
        if (!iv.is_array() || iv.size() != 2) throw WindowFormatError(where + ".interval: expected [lo, hi]");
        const auto& cj = p["coeffs"];
        if (!cj.is_array()) throw WindowFormatError(where + ".coeffs: expected an array");
        std::vector<Rational> coeffs;
        for (std::size_t k = 0; k < cj.size(); ++k) coeffs.push_back(detail::json_rational(cj[k], where + ".coeffs[" + std::to_string(k) + "]"));
        pieces.push_back({detail::json_rational(iv[0], where + ".interval[0]"), detail::json_rational(iv[1], where + ".interval[1]"),
                          Polynomial(std::move(coeffs))});
    }
    return make_piecewise(alpha, std::move(pieces));
}

inline Window read_window(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WindowFormatError("cannot read window file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw WindowFormatError(path + ": " + e.what());
    }
    return window_from_json(j);
}

inline void write_window(const Window& w, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw WindowFormatError("cannot write window file '" + path + "'");
    out << window_to_json(w).dump(2) << '\n';
}

}  // namespace gabor
