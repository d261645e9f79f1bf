#pragma once

#include "gabor/lattice.hpp"
#include "gabor/window.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabor {

/// Which ratio product a blow-up refers to: R_n (plus, zeros right of a - alpha)
/// or L_n (minus, zeros left of alpha - a).
enum class RatioSide { Plus, Minus };

inline const char* to_string(RatioSide s) { return s == RatioSide::Plus ? "plus" : "minus"; }

/// Window together with lattice data; everything the ratio products need.
struct RatioContext {
    const Window& window;
    LatticeParams params;

    RatioContext(const Window& w, LatticeParams p) : window(w), params(std::move(p)) {
        if (params.alpha != w.alpha()) throw std::invalid_argument("lattice alpha does not match window support");
        if (step() <= 0) throw std::invalid_argument("shift unit (1-ab)/b must be positive");
    }

    Rational step() const { return params.step(); }
    const Rational& a() const { return params.a; }
    const Rational& alpha() const { return params.alpha; }

    /// Domain of R_n: ]a - alpha, alpha - n step]
    bool in_plus_domain(const Algebraic& y, long n) const {
        return compare(y, Rational(a() - alpha())) > 0 && compare(y, Rational(alpha() - step() * n)) <= 0;
    }
    /// Domain of L_n: [-alpha + n step, alpha - a[
    bool in_minus_domain(const Algebraic& y, long n) const {
        return compare(y, Rational(-alpha() + step() * n)) >= 0 && compare(y, Rational(alpha() - a())) < 0;
    }
};

struct RatioValue {
    bool pole = false;
    double value = 0.0;
};

namespace detail {

inline void check_index(const RatioContext& ctx, long n) {
    if (n < 1 || n > ctx.params.kappa)
        throw std::out_of_range("ratio index n=" + std::to_string(n) + " outside 1..kappa=" + std::to_string(ctx.params.kappa));
}

// (1/g(y)) prod_{k=1}^{n-1} g(y + sign*k*step + offset) / g(y + sign*k*step)
inline RatioValue ratio_product(const RatioContext& ctx, long n, const Rational& y, int sign, const Rational& offset) {
    const Window& g = ctx.window;
    Rational g0 = g.eval_exact(y);
    if (g0 == 0) return {true, 0.0};
    double v = 1.0 / to_double(g0);
    Rational s = ctx.step() * sign;
    for (long k = 1; k < n; ++k) {
        Rational t = y + s * k;
        Rational den = g.eval_exact(t);
        if (den == 0) return {true, 0.0};
        v *= to_double(Rational(g.eval_exact(Rational(t + offset)) / den));
    }
    return {false, v};
}

}  // namespace detail

/// R_n(y) = (1/g(y)) prod_{k=1}^{n-1} g(y + k step - a) / g(y + k step) on ]a - alpha, alpha - n step].
inline RatioValue ratio_R(const RatioContext& ctx, long n, const Rational& y) {
    detail::check_index(ctx, n);
    if (!ctx.in_plus_domain(Algebraic(y), n)) throw std::domain_error("y outside the domain of R_n");
    return detail::ratio_product(ctx, n, y, +1, Rational(-ctx.a()));
}

/// L_n(y) = (1/g(y)) prod_{k=1}^{n-1} g(y - k step + a) / g(y - k step) on [-alpha + n step, alpha - a[.
inline RatioValue ratio_L(const RatioContext& ctx, long n, const Rational& y) {
    detail::check_index(ctx, n);
    if (!ctx.in_minus_domain(Algebraic(y), n)) throw std::domain_error("y outside the domain of L_n");
    return detail::ratio_product(ctx, n, y, -1, ctx.a());
}

/// Net pole order (denominator minus numerator vanishing order) of R_n (plus) or L_n (minus)
/// as y approaches z from the given side.
inline long net_pole_order(const RatioContext& ctx, RatioSide side, long n, const Algebraic& z, Side from) {
    const Window& g = ctx.window;
    Rational s = side == RatioSide::Plus ? ctx.step() : Rational(-ctx.step());
    Rational off = side == RatioSide::Plus ? Rational(-ctx.a()) : ctx.a();
    long net = g.order_at(z, from);
    for (long k = 1; k < n; ++k) {
        Algebraic t = z + Rational(s * k);
        net += g.order_at(t, from);
        net -= g.order_at(t + off, from);
    }
    return net;
}

/// Whether |R_n| (plus) or |L_n| (minus) tends to infinity at the zero z, decided by exact
/// vanishing-order bookkeeping. At the closed end of the domain only the inward one-sided
/// limit is taken; elsewhere a pole from either side counts.
inline bool blows_up(const RatioContext& ctx, RatioSide side, long n, const Algebraic& z) {
    detail::check_index(ctx, n);
    bool in_domain = side == RatioSide::Plus ? ctx.in_plus_domain(z, n) : ctx.in_minus_domain(z, n);
    if (!in_domain) throw std::domain_error("zero outside the ratio domain");
    if (!ctx.window.vanishes_at(z)) throw std::invalid_argument("blow-up test requires a zero of the window");
    bool at_closed_end = side == RatioSide::Plus
                             ? compare(z, Rational(ctx.alpha() - ctx.step() * n)) == 0
                             : compare(z, Rational(-ctx.alpha() + ctx.step() * n)) == 0;
    long left = net_pole_order(ctx, side, n, z, Side::Left);
    long right = net_pole_order(ctx, side, n, z, Side::Right);
    if (at_closed_end) return side == RatioSide::Plus ? left > 0 : right > 0;
    return left > 0 || right > 0;
}

enum class Verdict { Frame, NotFrame, OutOfScope };
enum class Condition { I, II, III, IV };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Frame: return "Frame";
        case Verdict::NotFrame: return "NotFrame";
        case Verdict::OutOfScope: return "OutOfScope";
    }
    return "?";
}
inline const char* to_string(Condition c) {
    switch (c) {
        case Condition::I: return "i";
        case Condition::II: return "ii";
        case Condition::III: return "iii";
        case Condition::IV: return "iv";
    }
    return "?";
}

struct BlowUpWitness {
    RatioSide side;
    long n;
    ZeroPoint zero;
    bool one_sided = false;  ///< zero sits at the closed end of the ratio domain
    /// Shifted point y+ + n step (plus) or y- - n step (minus).
    Algebraic shifted(const Rational& step) const {
        return side == RatioSide::Plus ? zero.location + Rational(step * n) : zero.location - Rational(step * n);
    }
};

/// A point at which a condition fails.
struct OffendingPoint {
    Condition condition;
    Algebraic x;
    std::string note;
};

struct FrameDecision {
    Verdict verdict = Verdict::OutOfScope;
    std::optional<Condition> failed_condition;
    std::vector<BlowUpWitness> witnesses;
    std::vector<OffendingPoint> offending;
    std::optional<LatticeParams> params;
    std::optional<OutOfScope> out_of_scope;
    bool positive_fast_path = false;
};

/// blows_up(ctx, side, n, z) for n = 1, 2, ... while z stays in the ratio domain (entry n-1),
/// with the order bookkeeping accumulated across n.
inline std::vector<bool> blowup_profile(const RatioContext& ctx, RatioSide side, const Algebraic& z) {
    std::vector<bool> out;
    if (!ctx.window.vanishes_at(z)) return out;
    const Window& g = ctx.window;
    Rational s = side == RatioSide::Plus ? ctx.step() : Rational(-ctx.step());
    Rational off = side == RatioSide::Plus ? Rational(-ctx.a()) : ctx.a();
    long left = g.order_at(z, Side::Left), right = g.order_at(z, Side::Right);
    for (long n = 1; n <= ctx.params.kappa; ++n) {
        if (n > 1) {
            Algebraic t = z + Rational(s * (n - 1));
            Algebraic u = t + off;
            left += g.order_at(t, Side::Left) - g.order_at(u, Side::Left);
            right += g.order_at(t, Side::Right) - g.order_at(u, Side::Right);
        }
        bool in = side == RatioSide::Plus ? ctx.in_plus_domain(z, n) : ctx.in_minus_domain(z, n);
        if (!in) break;
        bool end = side == RatioSide::Plus ? compare(z, Rational(ctx.alpha() - ctx.step() * n)) == 0
                                           : compare(z, Rational(-ctx.alpha() + ctx.step() * n)) == 0;
        if (end)
            out.push_back(side == RatioSide::Plus ? left > 0 : right > 0);
        else
            out.push_back(left > 0 || right > 0);
    }
    return out;
}

/// Every blow-up witness (y, n) on the given side, ordered by n.
inline std::vector<BlowUpWitness> blowup_witnesses(const RatioContext& ctx, RatioSide side) {
    std::vector<BlowUpWitness> out;
    const Rational s = ctx.step();
    for (const auto& z : ctx.window.zeros()) {
        auto prof = blowup_profile(ctx, side, z.location);
        for (std::size_t k = 0; k < prof.size(); ++k) {
            if (!prof[k]) continue;
            long n = static_cast<long>(k) + 1;
            bool end = side == RatioSide::Plus ? compare(z.location, Rational(ctx.alpha() - s * n)) == 0
                                               : compare(z.location, Rational(-ctx.alpha() + s * n)) == 0;
            out.push_back({side, n, z, end});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const BlowUpWitness& x, const BlowUpWitness& y) { return x.n < y.n; });
    return out;
}

/// Frame property decision on alpha <= a < 2 alpha, b < 1/a via conditions (i)-(iv).
inline FrameDecision check_frame(const Window& g, const Rational& a, const Rational& b) {
    FrameDecision d;
    const Rational& alpha = g.alpha();
    auto cls = classify_params(alpha, a, b);
    if (auto* oos = std::get_if<OutOfScope>(&cls)) {
        // positive windows are frames on the whole region, including M = 1
        if (oos->reason == OutOfScope::Reason::SingleBand && g.interior_positive()) {
            d.verdict = Verdict::Frame;
            d.params = lattice_params(alpha, a, b);
            d.positive_fast_path = true;
            return d;
        }
        d.out_of_scope = *oos;
        return d;
    }
    d.params = std::get<LatticeParams>(cls);
    if (g.interior_positive()) {
        d.verdict = Verdict::Frame;
        d.positive_fast_path = true;
        return d;
    }
    RatioContext ctx(g, *d.params);
    auto fail = [&](Condition c, Algebraic x, std::string note) {
        if (!d.failed_condition) d.failed_condition = c;
        d.offending.push_back({c, std::move(x), std::move(note)});
    };

    // (i): g has no zero on [alpha - a, a - alpha], and no zero z in ]-alpha, alpha - a[
    // has a zero partner at z + a.
    const Rational core_lo = alpha - a, core_hi = a - alpha;
    for (const auto& z : g.zeros()) {
        const Algebraic& x = z.location;
        if (compare(x, core_lo) >= 0 && compare(x, core_hi) <= 0) {
            Algebraic pt = compare(x, Rational(0)) <= 0 ? x : x - a;
            fail(Condition::I, pt, "g(x) = g(x+a) = 0 with a zero of g in [alpha-a, a-alpha]");
        } else if (compare(x, Rational(-alpha)) > 0 && compare(x, core_lo) < 0 && g.vanishes_at(x + a)) {
            fail(Condition::I, x, "g(x) = g(x+a) = 0");
        }
    }

    if (d.params->kappa > 0) {
        const Rational s = ctx.step();
        auto plus = blowup_witnesses(ctx, RatioSide::Plus);
        auto minus = blowup_witnesses(ctx, RatioSide::Minus);
        for (const auto& w : plus) {
            Algebraic t = w.shifted(s) - a;
            if (g.vanishes_at(t)) fail(Condition::II, t, "g(y+ + n+ step - a) = 0");
        }
        for (const auto& w : minus) {
            Algebraic t = w.shifted(s) + a;
            if (g.vanishes_at(t)) fail(Condition::III, t, "g(y- - n- step + a) = 0");
        }
        for (const auto& wp : plus)
            for (const auto& wm : minus) {
                Algebraic lhs = wp.shifted(s);
                if (compare(lhs, wm.shifted(s) + a) == 0) fail(Condition::IV, lhs, "y+ + n+ step = y- - n- step + a");
            }
        d.witnesses = plus;
        d.witnesses.insert(d.witnesses.end(), minus.begin(), minus.end());
    }
    d.verdict = d.failed_condition ? Verdict::NotFrame : Verdict::Frame;
    return d;
}

}  // namespace gabor
