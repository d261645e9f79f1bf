#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gabor {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "p/q", "p", "-p/q" and decimal literals such as "0.35" or "-1.5e-2",
/// all converted exactly.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ParseError("empty rational literal");

    auto is_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto to_int = [](std::string t) {
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        return Integer(t, 10);
    };

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!is_int(p) || !is_int(q)) throw ParseError("malformed rational: '" + s + "'");
        Integer den = to_int(q);
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational r(to_int(p), den);
        r.canonicalize();
        return r;
    }
    if (is_int(s)) return Rational(to_int(s));

    // decimal with optional exponent
    std::string mant = s;
    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        std::string ex = s.substr(e + 1);
        if (!is_int(ex)) throw ParseError("malformed exponent in '" + s + "'");
        exp10 = std::stol(ex);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant = mant.substr(1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty()) throw ParseError("malformed rational: '" + s + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed rational: '" + s + "'");
    Integer m(digits, 10);
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(m * p10) : Rational(m, p10);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline Integer floor_int(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil_int(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline long to_long(const Integer& z) {
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return z.get_si();
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi], lo <= hi.
inline Rational simplest_between(Rational lo, Rational hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return Rational(0);
    if (hi < 0) return Rational(-simplest_between(-hi, -lo));
    Integer fl = floor_int(lo);
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    // lo and hi share the integer part; recurse on reciprocals of fractional parts
    Rational flo = lo - fl, fhi = hi - fl;
    Rational inner = simplest_between(Rational(1) / fhi, Rational(1) / flo);
    Rational out = Rational(fl) + Rational(1) / inner;
    out.canonicalize();
    return out;
}

/// Largest rational of the form k/2^bits not exceeding x.
inline Rational dyadic_floor(double x, int bits = 52) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    Rational rx(x);
    Rational r(floor_int(rx * scale), scale);
    r.canonicalize();
    return r;
}

}  // namespace gabor
