#pragma once

#include "gabor/analysis.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabor {

/// Zeros sorted by role. Y[0] are the zeros in ]a-alpha, alpha], Y[n] (n >= 1) the zeros in
/// ]a-alpha, alpha - n step] where R_n blows up; W mirrors this on the negative side with L_m.
struct ZeroSets {
    std::vector<std::vector<ZeroPoint>> Y, W;
    std::size_t r(std::size_t n) const { return Y.at(n).size(); }
    std::size_t l(std::size_t m) const { return W.at(m).size(); }
};

class NotAFrame : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline ZeroSets build_zero_sets(const Window& w, const LatticeParams& p) {
    if (p.alpha != w.alpha()) throw std::invalid_argument("lattice alpha does not match window support");
    ZeroSets zs;
    zs.Y.resize(static_cast<std::size_t>(p.kappa) + 1);
    zs.W.resize(static_cast<std::size_t>(p.kappa) + 1);
    const Rational lo = p.a - p.alpha, hi = p.alpha - p.a;
    for (const auto& z : w.zeros()) {
        if (compare(z.location, lo) > 0) zs.Y[0].push_back(z);
        if (compare(z.location, hi) < 0) zs.W[0].push_back(z);
    }
    if (p.kappa == 0) return zs;
    RatioContext ctx(w, p);
    for (const auto& z : w.zeros()) {
        auto plus = blowup_profile(ctx, RatioSide::Plus, z.location);
        for (std::size_t k = 0; k < plus.size(); ++k)
            if (plus[k]) zs.Y[k + 1].push_back(z);
        auto minus = blowup_profile(ctx, RatioSide::Minus, z.location);
        for (std::size_t k = 0; k < minus.size(); ++k)
            if (minus[k]) zs.W[k + 1].push_back(z);
    }
    return zs;
}

/// Open interval ]center - radius, center + radius[ with rational data.
struct Ball {
    Rational center, radius;
    long n = 0;       ///< index of the zero set the ball comes from
    Algebraic zero;   ///< generating zero
    bool contains(const Rational& x) const { return abs(Rational(x - center)) < radius; }
    Rational lo() const { return center - radius; }
    Rational hi() const { return center + radius; }
};

/// Balls around the shifted zeros. plus[i] surrounds y~ = y + n step (h = 0 there); h = b/g on
/// plus[i] - a. minus[j] surrounds w^ = w - m step (h = 0); h = b/g on minus[j] + a.
struct BallSystem {
    Rational epsilon;
    double delta = 0;  ///< min |g| on the closed shifted balls
    int halvings = 0;
    std::vector<Ball> plus, minus;
};

namespace detail {

struct Center {
    Algebraic point;
    long n;
    Algebraic zero;
};

inline std::vector<Center> plus_centers(const ZeroSets& zs, const Rational& step) {
    std::vector<Center> out;
    for (std::size_t n = 0; n < zs.Y.size(); ++n)
        for (const auto& y : zs.Y[n]) out.push_back({y.location + Rational(step * static_cast<long>(n)), static_cast<long>(n), y.location});
    return out;
}

inline std::vector<Center> minus_centers(const ZeroSets& zs, const Rational& step) {
    std::vector<Center> out;
    for (std::size_t m = 0; m < zs.W.size(); ++m)
        for (const auto& w : zs.W[m]) out.push_back({w.location - Rational(step * static_cast<long>(m)), static_cast<long>(m), w.location});
    return out;
}

// Largest power of two not above x (x > 0).
inline Rational dyadic_below(const Rational& x) {
    Rational e(1);
    while (e > x) e /= 2;
    while (e * 2 <= x) e *= 2;
    return e;
}

}  // namespace detail

/// Half the minimum distance between the distinct centers y~ - a and w^ + a, rounded down to a
/// power of two, then halved until |g| stays away from zero on the balls around them and no
/// plus ball meets a shifted minus ball. Zeros of g near a center are only caught by the halving.
inline BallSystem choose_epsilon(const Window& g, const ZeroSets& zs, const LatticeParams& p, int max_halvings = 200) {
    const Rational s = p.step();
    auto pc = detail::plus_centers(zs, s);
    auto mc = detail::minus_centers(zs, s);
    std::vector<Algebraic> pts;
    auto add = [&](const Algebraic& x) {
        for (const auto& q : pts)
            if (compare(q, x) == 0) return;
        pts.push_back(x);
    };
    for (const auto& c : pc) add(c.point - p.a);
    for (const auto& c : mc) add(c.point + p.a);
    Rational eps = p.alpha / 4;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rational tol = Rational(eps / 64);
            Rational d = abs(Rational(pts[i].approximant(tol) - pts[j].approximant(tol)));
            Rational cand = (d - tol * 2) / 2;
            if (cand > 0 && cand < eps) eps = cand;
        }
    BallSystem bs;
    bs.epsilon = detail::dyadic_below(eps);
    for (;; ++bs.halvings) {
        if (bs.halvings > max_halvings)
            throw std::logic_error("choose_epsilon: no admissible radius after " + std::to_string(max_halvings) +
                                   " halvings; the frame conditions appear violated");
        const Rational& e = bs.epsilon;
        Rational tol = e / 8;
        bs.plus.clear();
        bs.minus.clear();
        for (const auto& c : pc) bs.plus.push_back({c.point.approximant(tol), e, c.n, c.zero});
        for (const auto& c : mc) bs.minus.push_back({c.point.approximant(tol), e, c.n, c.zero});
        bool ok = true;
        double delta = std::numeric_limits<double>::infinity();
        for (const auto& b : bs.plus) {
            double m = g.min_abs_on(Rational(b.lo() - p.a), Rational(b.hi() - p.a));
            delta = std::min(delta, m);
            ok = ok && m > 0;
        }
        for (const auto& b : bs.minus) {
            double m = g.min_abs_on(Rational(b.lo() + p.a), Rational(b.hi() + p.a));
            delta = std::min(delta, m);
            ok = ok && m > 0;
        }
        for (const auto& bp : bs.plus)
            for (const auto& bm : bs.minus) ok = ok && abs(Rational(bp.center - bm.center - p.a)) >= e * 2;
        if (ok) {
            bs.delta = delta;
            return bs;
        }
        bs.epsilon /= 2;
    }
}

/// Compactly supported dual window. h vanishes outside [-alpha, alpha] and the bands
/// +-[n/b, an + alpha], n = 1..kappa. On [-alpha, alpha]:
///   b/g on the core [alpha - a, a - alpha];
///   for x > a - alpha: 0 on the plus balls, b/g elsewhere;
///   for x < alpha - a: b/g on the plus balls shifted by -a, 0 elsewhere.
/// Band values follow h(x + a) = -g(x - n/b) h(x) / g(x - n/b + a) outward (mirrored on the
/// negative side). Where the denominator vanishes the limit value is used.
class DualWindow {
public:
    DualWindow(const Window& g, LatticeParams p, ZeroSets zs, BallSystem balls)
        : g_(g), p_(std::move(p)), zs_(std::move(zs)), balls_(std::move(balls)) {
        step_ = p_.step();
        inv_b_ = p_.inv_b();
        compute_core_bound();
    }

    const LatticeParams& params() const { return p_; }
    const ZeroSets& zero_sets() const { return zs_; }
    const BallSystem& balls() const { return balls_; }
    const Window& window() const { return g_; }
    Rational step() const { return step_; }

    /// Support [-(a kappa + alpha), a kappa + alpha] (inside [-aM, aM]).
    Rational support_radius() const { return p_.a * p_.kappa + p_.alpha; }
    /// b / min |g| over the parts of [-alpha, alpha] where h = b/g.
    double core_bound() const { return core_bound_; }
    double sup_bound() const { return sup_bound_; }
    void set_sup_bound(double v) { sup_bound_ = v; }

    double operator()(const Rational& x) const { return eval(x); }
    double eval(double x) const { return std::isfinite(x) ? eval(Rational(x)) : 0.0; }

    double eval(const Rational& x) const {
        const Rational& al = p_.alpha;
        if (x >= -al && x <= al) return base(x);
        long n = band_of(x);
        if (n == 0) return 0.0;
        if (n > 0) return band_value(+1, n, Rational(x - inv_b_ * n));
        return band_value(-1, -n, Rational(x + inv_b_ * (-n)));
    }

    /// Band index k with x in [k/b, ak + alpha] (negative for the mirrored bands), 0 if none.
    long band_of(const Rational& x) const {
        Rational ax = abs(x);
        if (ax <= p_.alpha) return 0;
        long k = to_long(floor_int(Rational(ax * p_.b)));  // k/b <= |x| < (k+1)/b
        if (k < 1 || k > p_.kappa) return 0;
        if (ax > p_.a * k + p_.alpha) return 0;
        return x > 0 ? k : -k;
    }

    /// Points where a case of h changes: the base case boundaries, the breakpoints of g and
    /// their images under the band recursion. Sorted, exact.
    std::vector<Rational> case_breakpoints() const {
        std::vector<Rational> base_pts = {Rational(-p_.alpha), p_.alpha, Rational(p_.alpha - p_.a), Rational(p_.a - p_.alpha)};
        for (const auto& b : balls_.plus)
            for (const Rational& e : {b.lo(), b.hi()}) {
                base_pts.push_back(e);
                base_pts.push_back(Rational(e - p_.a));
            }
        auto gb = g_.breakpoints();
        base_pts.insert(base_pts.end(), gb.begin(), gb.end());
        std::vector<Rational> out = base_pts;
        for (int sigma : {+1, -1})
            for (long n = 1; n <= p_.kappa; ++n) {
                Rational origin = inv_b_ * (sigma * n);
                Rational ss = step_ * sigma, sa = p_.a * sigma;
                // u + sigma k step lands on a base point or on a breakpoint of g(. - sigma a)
                for (long k = 0; k <= n; ++k) {
                    for (const auto& t : base_pts) out.push_back(Rational(origin + t - ss * k));
                    if (k < n)
                        for (const auto& t : gb) out.push_back(Rational(origin + t + sa - ss * k));
                }
                out.push_back(origin);
                out.push_back(Rational(origin + (p_.alpha - step_ * n) * sigma));
            }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    nlohmann::json cases_json() const;
    std::string grid_csv(long samples) const;

private:
    double g_at(const Rational& u) const { return g_.eval(u); }

    bool in_plus_ball(const Rational& x) const {
        for (const auto& b : balls_.plus)
            if (b.contains(x)) return true;
        return false;
    }

    double base(const Rational& x) const {
        const Rational core = p_.a - p_.alpha;
        if (abs(x) <= core) return to_double(p_.b) / g_at(x);
        if (x > core) return in_plus_ball(x) ? 0.0 : to_double(p_.b) / g_at(x);
        return in_plus_ball(Rational(x + p_.a)) ? to_double(p_.b) / g_at(x) : 0.0;
    }

    // h(sigma (n/b) + u) for sigma u in [0, alpha - n step].
    double band_value(int sigma, long n, const Rational& u) const {
        const Rational core = p_.a - p_.alpha;
        const Rational sa = p_.a * sigma, ss = step_ * sigma;
        double value = 1.0;
        Rational ul = u;
        for (long level = n; level >= 1; --level, ul += ss) {
            if (sigma * ul <= core) return 0.0;  // g(u - sigma a) = 0
            double den = g_at(ul);
            if (den == 0.0) return value * singular_value(sigma, level, ul);
            value *= -g_at(Rational(ul - sa)) / den;
        }
        return value * base(ul);
    }

    // Limit of h at a zero z of the level-n denominator.
    double singular_value(int sigma, long n, const Rational& z) const {
        RatioContext ctx(g_, p_);
        Algebraic za(z);
        RatioSide side = sigma > 0 ? RatioSide::Plus : RatioSide::Minus;
        if (blows_up(ctx, side, n, za)) return 0.0;  // h = 0 on the ball around z + n step
        bool closed_end = sigma > 0 ? z == p_.alpha - step_ * n : z == -p_.alpha + step_ * n;
        Side from = closed_end ? (sigma > 0 ? Side::Left : Side::Right) : Side::Right;
        long net = 0;
        double ratio = 1.0;
        for (long k = 0; k < n; ++k) {
            Algebraic num = za + Rational(step_ * (sigma * k) - p_.a * sigma);
            Algebraic den = za + Rational(step_ * (sigma * k));
            int on = g_.order_at(num, from), od = g_.order_at(den, from);
            net += od - on;
            if (on >= kInfiniteOrder) return 0.0;
            ratio *= -g_.leading_coefficient(num, from) / g_.leading_coefficient(den, from);
        }
        if (net > 0) throw std::logic_error("unbounded band value at a zero without blow-up");
        if (net < 0) return 0.0;
        return ratio * base(Rational(z + step_ * (sigma * n)));
    }

    void compute_core_bound() {
        const Rational core = p_.a - p_.alpha;
        double m = g_.min_abs_on(Rational(-core), core);
        m = std::min(m, balls_.delta);
        // positive side outside the plus balls
        std::vector<std::pair<Rational, Rational>> holes;
        for (const auto& b : balls_.plus) holes.emplace_back(b.lo(), b.hi());
        std::sort(holes.begin(), holes.end());
        Rational cur = core;
        for (const auto& [lo, hi] : holes) {
            if (lo > cur) m = std::min(m, g_.min_abs_on(cur, std::min(lo, p_.alpha)));
            cur = std::max(cur, hi);
            if (cur >= p_.alpha) break;
        }
        if (cur < p_.alpha) m = std::min(m, g_.min_abs_on(cur, p_.alpha));
        core_bound_ = to_double(p_.b) / m;
        sup_bound_ = core_bound_;
    }

    Window g_;
    LatticeParams p_;
    ZeroSets zs_;
    BallSystem balls_;
    Rational step_, inv_b_;
    double core_bound_ = 0, sup_bound_ = 0;
};

/// Duality residual at x for shift index n:
/// g(x - n/b) h(x) + g(x - n/b + a) h(x + a) - b [n = 0].
/// `scale`, when given, receives |first term| + |second term| + b[n=0].
inline double duality_residual_at(const DualWindow& h, long n, const Rational& x, double* scale = nullptr) {
    const auto& p = h.params();
    const Window& g = h.window();
    Rational t = x - p.inv_b() * n;
    double s1 = g.eval(t) * h(x), s2 = g.eval(Rational(t + p.a)) * h(Rational(x + p.a));
    double bd = n == 0 ? to_double(p.b) : 0.0;
    if (scale) *scale = std::fabs(s1) + std::fabs(s2) + bd;
    return s1 + s2 - bd;
}

/// Interval of x on which the shift-n duality condition is checked: [n/b - a, n/b].
inline std::pair<Rational, Rational> duality_interval(const LatticeParams& p, long n) {
    Rational c = p.inv_b() * n;
    return {c - p.a, c};
}

struct DualOptions {
    int audit_points = 32;       ///< per band, 0 disables the audit
    double audit_tolerance = 1e-9;  ///< relative to the size of the summands
    int bound_samples = 2048;    ///< per band, for the recorded sup bound
};

namespace detail {

inline Rational grid_point(const Rational& lo, const Rational& hi, long k, long n) {
    return lo + (hi - lo) * Rational(2 * k + 1, 2 * n);
}

inline void audit_dual(const DualWindow& h, const DualOptions& opt) {
    const auto& p = h.params();
    for (long n = -(p.M - 1); n <= p.M - 1; ++n) {
        auto [lo, hi] = duality_interval(p, n);
        for (int k = 0; k < opt.audit_points; ++k) {
            Rational x = grid_point(lo, hi, k, opt.audit_points);
            double scale = 0;
            double r = duality_residual_at(h, n, x, &scale);
            if (!std::isfinite(r) || std::fabs(r) > opt.audit_tolerance * std::max(scale, 1e-300) + 1e-300)
                throw std::runtime_error("dual audit failed: n=" + std::to_string(n) + " x=" + to_string(x) +
                                         " residual=" + std::to_string(r) + " scale=" + std::to_string(scale));
        }
    }
}

}  // namespace detail

/// Dual window for a frame configuration. Throws NotAFrame when the decision is not Frame.
inline DualWindow construct_dual(const Window& g, const Rational& a, const Rational& b, const DualOptions& opt = {}) {
    FrameDecision d = check_frame(g, a, b);
    if (d.verdict != Verdict::Frame) {
        std::string why = d.verdict == Verdict::OutOfScope ? d.out_of_scope->message
                                                          : std::string("condition (") + to_string(*d.failed_condition) + ") fails";
        throw NotAFrame("construct_dual: not a frame: " + why);
    }
    LatticeParams p = *d.params;
    ZeroSets zs = build_zero_sets(g, p);
    BallSystem bs = choose_epsilon(g, zs, p);
    DualWindow h(g, p, std::move(zs), std::move(bs));
    if (opt.audit_points > 0) detail::audit_dual(h, opt);
    double sup = h.core_bound();
    for (long n = -p.kappa; n <= p.kappa; ++n) {
        if (n == 0) continue;
        Rational lo = p.inv_b() * std::labs(n), hi = p.a * std::labs(n) + p.alpha;
        for (int k = 0; k <= opt.bound_samples; ++k) {
            Rational x = lo + (hi - lo) * Rational(k, opt.bound_samples);
            sup = std::max(sup, 2 * std::fabs(h(n > 0 ? x : Rational(-x))));
        }
    }
    h.set_sup_bound(sup);
    return h;
}

inline nlohmann::json DualWindow::cases_json() const {
    using nlohmann::json;
    auto q = [](const Rational& r) { return to_string(r); };
    json j;
    j["schema"] = "gabor.dual.cases/1";
    j["alpha"] = q(p_.alpha);
    j["a"] = q(p_.a);
    j["b"] = q(p_.b);
    j["M"] = p_.M;
    j["kappa"] = p_.kappa;
    j["step"] = q(step_);
    j["epsilon"] = q(balls_.epsilon);
    j["delta"] = balls_.delta;
    j["halvings"] = balls_.halvings;
    j["support"] = {q(Rational(-support_radius())), q(support_radius())};
    j["core"] = {{"interval", {q(Rational(p_.alpha - p_.a)), q(Rational(p_.a - p_.alpha))}}, {"value", "b/g(x)"}};
    auto ball_json = [&](const Ball& b, const Rational& shift) {
        return json{{"interval", {q(Rational(b.lo() + shift)), q(Rational(b.hi() + shift))}},
                    {"n", b.n},
                    {"zero", b.zero.to_string()}};
    };
    json zero_balls = json::array(), recip_balls = json::array(), mzero = json::array(), mrecip = json::array();
    for (const auto& b : balls_.plus) {
        zero_balls.push_back(ball_json(b, 0));
        recip_balls.push_back(ball_json(b, Rational(-p_.a)));
    }
    for (const auto& b : balls_.minus) {
        mzero.push_back(ball_json(b, 0));
        mrecip.push_back(ball_json(b, p_.a));
    }
    j["positive_side"] = {{"interval", {q(Rational(p_.a - p_.alpha)), q(p_.alpha)}},
                          {"default", "b/g(x)"},
                          {"zero_on", zero_balls},
                          {"reciprocal_on", mrecip}};
    j["negative_side"] = {{"interval", {q(Rational(-p_.alpha)), q(Rational(p_.alpha - p_.a))}},
                          {"default", "0"},
                          {"reciprocal_on", recip_balls},
                          {"zero_on", mzero}};
    json bands = json::array();
    for (long n = 1; n <= p_.kappa; ++n) {
        Rational lo = inv_b_ * n, hi = p_.a * n + p_.alpha;
        bands.push_back({{"index", n},
                         {"interval", {q(lo), q(hi)}},
                         {"rule", "h(x) = -g(x-a-n/b) h(x-a) / g(x-n/b)"},
                         {"singular", "limit value"}});
        bands.push_back({{"index", -n},
                         {"interval", {q(Rational(-hi)), q(Rational(-lo))}},
                         {"rule", "h(x) = -g(x+a+n/b) h(x+a) / g(x+n/b)"},
                         {"singular", "limit value"}});
    }
    j["bands"] = bands;
    j["elsewhere"] = "0";
    j["core_bound"] = core_bound_;
    j["sup_bound"] = sup_bound_;
    return j;
}

inline std::string DualWindow::grid_csv(long samples) const {
    if (samples < 2) throw std::invalid_argument("grid needs at least 2 samples");
    std::ostringstream os;
    os.precision(17);
    os << "x,h\n";
    Rational r = p_.a * p_.M;
    for (long k = 0; k < samples; ++k) {
        Rational x = -r + Rational(2 * r) * Rational(k, samples - 1);
        os << to_double(x) << ',' << eval(x) << '\n';
    }
    return os.str();
}

}  // namespace gabor
