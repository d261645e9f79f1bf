#pragma once

#include "gabor/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gabor {

/// The three ways a blow-up witness can be hit:
///  PlusHitsZero      y+ + n step - a = y-       (y+ witness, y- any zero)
///  MinusHitsZero     y- - n step + a = y+       (y- witness, y+ any zero)
///  WitnessCollision  y+ + n+ step = y- - n- step + a
/// The first two share the single-index form b = n / (y- - y+ + (n+1) a).
enum class CurveKind { PlusHitsZero, MinusHitsZero, WitnessCollision };

inline const char* to_string(CurveKind k) {
    switch (k) {
        case CurveKind::PlusHitsZero: return "plus_hits_zero";
        case CurveKind::MinusHitsZero: return "minus_hits_zero";
        case CurveKind::WitnessCollision: return "witness_collision";
    }
    return "?";
}

/// The condition a point on the curve would violate.
inline Condition violated_condition(CurveKind k) {
    switch (k) {
        case CurveKind::PlusHitsZero: return Condition::II;
        case CurveKind::MinusHitsZero: return Condition::III;
        case CurveKind::WitnessCollision: return Condition::IV;
    }
    return Condition::IV;
}

/// c + cp * y+ + cm * y-, for a fixed pair of zeros.
struct ZeroForm {
    Rational c, cp, cm;

    static ZeroForm constant(const Rational& v) { return {v, 0, 0}; }
    static ZeroForm y_plus() { return {0, 1, 0}; }
    static ZeroForm y_minus() { return {0, 0, 1}; }

    friend ZeroForm operator+(const ZeroForm& x, const ZeroForm& y) {
        return {Rational(x.c + y.c), Rational(x.cp + y.cp), Rational(x.cm + y.cm)};
    }
    friend ZeroForm operator-(const ZeroForm& x, const ZeroForm& y) {
        return {Rational(x.c - y.c), Rational(x.cp - y.cp), Rational(x.cm - y.cm)};
    }
    friend ZeroForm operator*(const Rational& k, const ZeroForm& x) {
        return {Rational(k * x.c), Rational(k * x.cp), Rational(k * x.cm)};
    }

    /// Exact sign of the form at (y+, y-).
    int sign(const Algebraic& yp, const Algebraic& ym) const {
        if (cp == 0 && cm == 0) return sgn(c);
        if (cm == 0) return sgn(cp) * compare(yp, Rational(-c / cp));
        if (cp == 0) return sgn(cm) * compare(ym, Rational(-c / cm));
        // cp * (y+ - u) with u = -(cm y- + c) / cp
        Algebraic u = ym.scaled(Rational(-cm / cp)) - Rational(c / cp);
        return sgn(cp) * compare(yp, u);
    }

    std::optional<Rational> rational_value(const Algebraic& yp, const Algebraic& ym) const {
        Rational v = c;
        if (cp != 0) {
            if (!yp.is_rational()) return std::nullopt;
            v += cp * yp.rational_value();
        }
        if (cm != 0) {
            if (!ym.is_rational()) return std::nullopt;
            v += cm * ym.rational_value();
        }
        return v;
    }

    double to_double(const Algebraic& yp, const Algebraic& ym) const {
        if (auto r = rational_value(yp, ym)) return gabor::to_double(*r);
        double v = gabor::to_double(c);
        if (cp != 0) v += gabor::to_double(cp) * yp.to_double();
        if (cm != 0) v += gabor::to_double(cm) * ym.to_double();
        return v;
    }

    std::string to_string(const Algebraic& yp, const Algebraic& ym) const {
        if (auto r = rational_value(yp, ym)) return gabor::to_string(*r);
        std::string s = gabor::to_string(c);
        if (cp != 0) s += "+(" + gabor::to_string(cp) + ")*" + yp.to_string();
        if (cm != 0) s += "+(" + gabor::to_string(cm) + ")*" + ym.to_string();
        return s;
    }
};

/// One end of an a-interval.
struct IntervalEnd {
    ZeroForm value;
    bool closed = true;
};

/// k a + f > 0 (strict) or >= 0.
struct LinearConstraint {
    Rational k;
    ZeroForm f;
    bool strict;
};

struct ObstructionCurve {
    CurveKind kind;
    Algebraic y_plus, y_minus;
    long n_plus = 0, n_minus = 0;  ///< witness indices; the unused one is 0 for single-index kinds
    IntervalEnd a_min, a_max;
    std::vector<LinearConstraint> constraints;
    bool blowup_possible = true;
    bool blowup_evaluated = false;  ///< false when no rational (a, b) inside the domain was available

    /// n for single-index curves, n+ + n- for collisions.
    long index() const { return n_plus + n_minus; }
    bool single_index() const { return kind != CurveKind::WitnessCollision; }
    /// y- - y+ as a form.
    static ZeroForm gap() { return ZeroForm::y_minus() - ZeroForm::y_plus(); }
    std::optional<Rational> gap_value() const { return gap().rational_value(y_plus, y_minus); }

    bool contains(const Rational& a) const {
        for (const auto& c : constraints) {
            ZeroForm v = c.f + ZeroForm::constant(Rational(c.k * a));
            int s = v.sign(y_plus, y_minus);
            if (s < 0 || (s == 0 && c.strict)) return false;
        }
        return true;
    }

    /// "b=N/(D+(N+1)a)" with D printed exactly when rational.
    std::string equation() const {
        auto d = gap_value();
        std::string ds = d ? gabor::to_string(*d) : gap().to_string(y_plus, y_minus);
        return "b=" + std::to_string(index()) + "/(" + ds + "+" + std::to_string(index() + 1) + "a)";
    }
};

/// Exact b(a) on the curve; nullopt when a is outside the domain (or the denominator vanishes).
/// Throws std::domain_error when y- - y+ is irrational, since b(a) is then irrational; use
/// curve_b_approx instead.
inline std::optional<Rational> curve_b_at(const ObstructionCurve& c, const Rational& a) {
    if (!c.contains(a)) return std::nullopt;
    auto d = c.gap_value();
    if (!d) throw std::domain_error("curve value is irrational (y- - y+ is not rational)");
    Rational den = *d + a * (c.index() + 1);
    if (den == 0) return std::nullopt;
    return Rational(Rational(c.index()) / den);
}

inline std::optional<double> curve_b_approx(const ObstructionCurve& c, double a) {
    double d = c.gap().to_double(c.y_plus, c.y_minus);
    double den = d + a * static_cast<double>(c.index() + 1);
    if (den <= 0) return std::nullopt;
    return static_cast<double>(c.index()) / den;
}

struct CurveOptions {
    long n_max = 8;  ///< largest witness index; kappa is unbounded as ab -> 1
};

namespace detail {

// Builds the domain of the curve; returns false when it is empty.
inline bool solve_domain(ObstructionCurve& c, const Rational& alpha) {
    const Algebraic& yp = c.y_plus;
    const Algebraic& ym = c.y_minus;
    const ZeroForm A = ZeroForm::constant(alpha);
    const ZeroForm D = ObstructionCurve::gap();
    const ZeroForm P = ZeroForm::y_plus(), Mz = ZeroForm::y_minus();
    const long N = c.index();
    auto& cs = c.constraints;
    cs.push_back({1, ZeroForm::constant(Rational(-alpha)), false});          // a >= alpha
    cs.push_back({-1, ZeroForm::constant(Rational(2 * alpha)), true});       // a < 2 alpha
    cs.push_back({1, D, true});                                              // ab < 1 (and b > 0)
    cs.push_back({Rational(N - 1), Rational(-1) * D, false});                // ab >= 1/2
    if (c.single_index()) {
        cs.push_back({-1, A - D, false});  // n step <= alpha
        if (c.kind == CurveKind::PlusHitsZero) {
            cs.push_back({-1, A + P, true});    // y+ > a - alpha
            cs.push_back({-1, A - Mz, false});  // y+ <= alpha - n step
        } else {
            cs.push_back({-1, A + P, false});  // y- >= -alpha + n step
            cs.push_back({-1, A - Mz, true});  // y- < alpha - a
        }
    } else {
        const Rational Nq(N), np(c.n_plus), nm(c.n_minus);
        const Rational big(std::max(c.n_plus, c.n_minus));
        cs.push_back({Rational(-big), Nq * A - big * D, false});        // n+, n- <= kappa
        cs.push_back({-1, A + P, true});                                // y+ > a - alpha
        cs.push_back({Rational(-np), Nq * (A - P) - np * D, false});    // y+ <= alpha - n+ step
        cs.push_back({Rational(-nm), Nq * (Mz + A) - nm * D, false});   // y- >= -alpha + n- step
        cs.push_back({-1, A - Mz, true});                               // y- < alpha - a
    }

    std::optional<IntervalEnd> lo, hi;
    for (const auto& k : cs) {
        if (k.k == 0) {
            int s = k.f.sign(yp, ym);
            if (s < 0 || (s == 0 && k.strict)) return false;
            continue;
        }
        IntervalEnd e{Rational(Rational(-1) / k.k) * k.f, !k.strict};
        auto& slot = k.k > 0 ? lo : hi;
        if (!slot) {
            slot = e;
            continue;
        }
        int s = (e.value - slot->value).sign(yp, ym);
        bool tighter = k.k > 0 ? s > 0 : s < 0;
        if (tighter)
            slot = e;
        else if (s == 0)
            slot->closed = slot->closed && e.closed;
    }
    c.a_min = *lo;
    c.a_max = *hi;
    int s = (c.a_max.value - c.a_min.value).sign(yp, ym);
    return s > 0 || (s == 0 && c.a_min.closed && c.a_max.closed);
}

// A rational point of the domain, preferring small height.
inline std::optional<Rational> sample_point(const ObstructionCurve& c) {
    if (auto lo = c.a_min.value.rational_value(c.y_plus, c.y_minus))
        if (auto hi = c.a_max.value.rational_value(c.y_plus, c.y_minus)) {
            if (*lo == *hi) return c.contains(*lo) ? std::optional<Rational>(*lo) : std::nullopt;
            Rational third = (*hi - *lo) / 3;
            return simplest_between(Rational(*lo + third), Rational(*hi - third));
        }
    double lo = c.a_min.value.to_double(c.y_plus, c.y_minus);
    double hi = c.a_max.value.to_double(c.y_plus, c.y_minus);
    for (int bits = 20; bits <= 60; bits += 20) {
        Rational l = dyadic_floor(lo + (hi - lo) / 3, bits), h = dyadic_floor(hi - (hi - lo) / 3, bits);
        if (l >= h) continue;
        Rational r = simplest_between(l, h);
        if (c.contains(r)) return r;
    }
    return std::nullopt;
}

inline bool n_in_range(const RatioContext& ctx, long n) { return n >= 1 && n <= ctx.params.kappa; }

inline void evaluate_blowup(ObstructionCurve& c, const Window& w) {
    auto a = sample_point(c);
    if (!a || !c.gap_value()) return;
    auto b = curve_b_at(c, *a);
    if (!b) return;
    RatioContext ctx(w, lattice_params(w.alpha(), *a, *b));
    bool ok = true;
    if (c.n_plus > 0) ok = ok && n_in_range(ctx, c.n_plus) && blows_up(ctx, RatioSide::Plus, c.n_plus, c.y_plus);
    if (c.n_minus > 0) ok = ok && n_in_range(ctx, c.n_minus) && blows_up(ctx, RatioSide::Minus, c.n_minus, c.y_minus);
    c.blowup_possible = ok;
    c.blowup_evaluated = true;
}

}  // namespace detail

/// Candidate obstruction curves from the window's interior zeros, one per (zero pair, kind,
/// indices) with nonempty domain. Being on a curve is necessary for an obstruction of
/// conditions (ii)-(iv), not sufficient.
inline std::vector<ObstructionCurve> candidate_curves(const Window& w, const CurveOptions& opt = {}) {
    std::vector<Algebraic> zs;
    for (const auto& z : w.zeros())
        if (compare(z.location, Rational(-w.alpha())) > 0 && compare(z.location, w.alpha()) < 0)
            zs.push_back(z.location);
    std::vector<ObstructionCurve> out;
    auto emit = [&](ObstructionCurve c) {
        if (!detail::solve_domain(c, w.alpha())) return;
        detail::evaluate_blowup(c, w);
        out.push_back(std::move(c));
    };
    for (const auto& yp : zs)
        for (const auto& ym : zs) {
            for (long n = 1; n <= opt.n_max; ++n) {
                emit({CurveKind::PlusHitsZero, yp, ym, n, 0, {}, {}, {}});
                emit({CurveKind::MinusHitsZero, yp, ym, 0, n, {}, {}, {}});
            }
            for (long np = 1; np <= opt.n_max; ++np)
                for (long nm = 1; nm <= opt.n_max; ++nm) emit({CurveKind::WitnessCollision, yp, ym, np, nm, {}, {}, {}});
        }
    return out;
}

/// CSV: kind,y_plus,y_minus,n_plus,n_minus,a_min,a_min_closed,a_max,a_max_closed,blowup_possible,equation
inline std::string curves_csv(const std::vector<ObstructionCurve>& cs) {
    std::ostringstream os;
    os << "kind,y_plus,y_minus,n_plus,n_minus,a_min,a_min_closed,a_max,a_max_closed,blowup_possible,equation\n";
    for (const auto& c : cs) {
        os << to_string(c.kind) << ',' << c.y_plus.to_string() << ',' << c.y_minus.to_string() << ',' << c.n_plus << ','
           << c.n_minus << ',' << c.a_min.value.to_string(c.y_plus, c.y_minus) << ',' << (c.a_min.closed ? 1 : 0) << ','
           << c.a_max.value.to_string(c.y_plus, c.y_minus) << ',' << (c.a_max.closed ? 1 : 0) << ','
           << (c.blowup_possible ? 1 : 0) << ',' << c.equation() << '\n';
    }
    return os.str();
}

/// Curves drawn as polylines over alpha <= a < 2 alpha, 0 < b < 1/a.
inline std::string curves_svg(const std::vector<ObstructionCurve>& cs, const Rational& alpha, int size = 600) {
    const double al = to_double(alpha);
    const double x0 = al, x1 = 2 * al, y1 = 1 / al;
    auto px = [&](double a) { return 40 + (a - x0) / (x1 - x0) * size; };
    auto py = [&](double b) { return 20 + (1 - b / y1) * size; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 60 << "\" height=\"" << size + 60 << "\">\n";
    os << "<rect x=\"40\" y=\"20\" width=\"" << size << "\" height=\"" << size << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"gray\" points=\"";
    for (int i = 0; i <= 200; ++i) {
        double a = x0 + (x1 - x0) * i / 200.0;
        os << px(a) << ',' << py(1 / a) << ' ';
    }
    os << "\"/>\n";
    for (const auto& c : cs) {
        double lo = c.a_min.value.to_double(c.y_plus, c.y_minus), hi = c.a_max.value.to_double(c.y_plus, c.y_minus);
        const char* color = c.kind == CurveKind::WitnessCollision ? "blue" : "red";
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-opacity=\"" << (c.blowup_possible ? 1.0 : 0.3)
           << "\" points=\"";
        for (int i = 0; i <= 100; ++i) {
            double a = lo + (hi - lo) * i / 100.0;
            if (auto b = curve_b_approx(c, a)) os << px(a) << ',' << py(*b) << ' ';
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace gabor
