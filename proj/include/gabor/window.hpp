#pragma once

#include "gabor/algebraic.hpp"
#include "gabor/polynomial.hpp"
#include "gabor/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gabor {

struct InvalidWindow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Vanishing order used for the side of ±alpha that lies outside the support.
inline constexpr int kInfiniteOrder = 1 << 20;

struct OneSidedOrders {
    int left = 0;
    int right = 0;
};

/// A zero of the window in [-alpha, alpha], with one-sided vanishing orders.
struct ZeroPoint {
    Algebraic location;
    int multiplicity = 1;
    int left_order = 0;
    int right_order = 0;
};

struct Piece {
    Rational lo, hi;
    Polynomial poly;
};

enum class Side { Left, Right };

/// Compactly supported, continuous, piecewise-polynomial window with support
/// exactly [-alpha, alpha] and finitely many zeros. Immutable after construction.
class Window {
public:
    /// Validating constructor. Pieces must be sorted and tile [-alpha, alpha].
    static Window piecewise(Rational alpha, std::vector<Piece> pieces) {
        Window w;
        w.alpha_ = std::move(alpha);
        w.pieces_ = std::move(pieces);
        w.validate();
        w.prepare();
        w.catalog_zeros();
        return w;
    }

    const Rational& alpha() const { return alpha_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<ZeroPoint>& zeros() const { return zeros_; }

    /// Breakpoints including the support endpoints, increasing.
    std::vector<Rational> breakpoints() const {
        std::vector<Rational> b;
        for (const auto& p : pieces_) b.push_back(p.lo);
        b.push_back(pieces_.back().hi);
        return b;
    }

    double operator()(double x) const { return eval(x); }

    double eval(double x) const {
        if (!(x >= lo_d_ && x <= hi_d_)) return 0.0;
        auto it = std::upper_bound(bp_d_.begin(), bp_d_.end(), x);
        std::size_t k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - bp_d_.begin()) - 1));
        if (k >= pieces_.size()) k = pieces_.size() - 1;
        return horner(k, x);
    }

    /// Exact piece selection, floating-point value; near a zero the value is computed exactly
    /// (an exact rational zero gives 0.0).
    double eval(const Rational& x) const {
        auto k = piece_of(x);
        if (!k) return 0.0;
        double v = horner(*k, to_double(x));
        if (std::fabs(v) < 1e-6 * scale_) return to_double(pieces_[*k].poly(x));
        return v;
    }

    Rational eval_exact(const Rational& x) const {
        auto k = piece_of(x);
        if (!k) return Rational(0);
        return pieces_[*k].poly(x);
    }

    /// Index of the piece [lo, hi) containing x (last piece closed), or nullopt outside support.
    std::optional<std::size_t> piece_of(const Rational& x) const {
        if (x < -alpha_ || x > alpha_) return std::nullopt;
        std::size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (pieces_[mid].lo <= x)
                lo = mid;
            else
                hi = mid;
        }
        return lo;
    }

    /// One-sided vanishing orders of g at an arbitrary real algebraic point.
    OneSidedOrders orders_at(const Algebraic& t) const {
        int cl = compare(t, Rational(-alpha_));
        int cr = compare(t, alpha_);
        if (cl < 0 || cr > 0) return {kInfiniteOrder, kInfiniteOrder};
        if (cl == 0) return {kInfiniteOrder, t.order_of(pieces_.front().poly)};
        if (cr == 0) return {t.order_of(pieces_.back().poly), kInfiniteOrder};
        std::size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (compare(t, pieces_[mid].lo) >= 0)
                lo = mid;
            else
                hi = mid;
        }
        if (lo > 0 && compare(t, pieces_[lo].lo) == 0)
            return {t.order_of(pieces_[lo - 1].poly), t.order_of(pieces_[lo].poly)};
        int o = t.order_of(pieces_[lo].poly);
        return {o, o};
    }

    int order_at(const Algebraic& t, Side side) const {
        auto o = orders_at(t);
        return side == Side::Left ? o.left : o.right;
    }

    /// g(t) == 0 (outside the support counts as zero).
    bool vanishes_at(const Algebraic& t) const {
        auto o = orders_at(t);
        return o.left > 0 || o.right > 0;
    }

    /// Leading one-sided Taylor coefficient p^(m)(t)/m! with m the one-sided order.
    /// Returns 0 on the outside of the support.
    double leading_coefficient(const Algebraic& t, Side side) const {
        const Polynomial* p = side_poly(t, side);
        if (!p) return 0.0;
        int m = t.order_of(*p);
        Polynomial d = *p;
        Rational fact(1);
        for (int k = 1; k <= m; ++k) {
            d = d.derivative();
            fact *= k;
        }
        return t.eval_double(d) / to_double(fact);
    }

    /// Minimum of |g| over the closed interval [lo, hi] clipped to [-alpha, alpha]
    /// (attained at an endpoint, a critical point or a root). Outside the support contributes 0.
    double min_abs_on(const Rational& lo, const Rational& hi) const {
        if (lo < -alpha_ || hi > alpha_) return 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pc : pieces_) {
            Rational l = std::max(lo, pc.lo), h = std::min(hi, pc.hi);
            if (l > h) continue;
            if (!isolate_roots(pc.poly, l, h).empty()) return 0.0;
            best = std::min(best, std::fabs(to_double(pc.poly(l))));
            best = std::min(best, std::fabs(to_double(pc.poly(h))));
            Polynomial d = pc.poly.derivative();
            if (d.degree() >= 1)
                for (const auto& c : isolate_roots(d, l, h)) best = std::min(best, std::fabs(c.location.eval_double(pc.poly)));
        }
        return best;
    }

    /// g(x) > 0 on ]-alpha, alpha[.
    bool interior_positive() const {
        for (const auto& z : zeros_)
            if (compare(z.location, Rational(-alpha_)) != 0 && compare(z.location, alpha_) != 0) return false;
        const auto& p = pieces_.front();
        return p.poly((p.lo + p.hi) / 2) > 0;
    }

    Window scaled(const Rational& c) const {
        if (c == 0) throw InvalidWindow("scaling by zero leaves the window class");
        std::vector<Piece> ps = pieces_;
        for (auto& p : ps) p.poly = c * p.poly;
        return piecewise(alpha_, std::move(ps));
    }

    /// x -> g(-x)
    Window mirrored() const {
        std::vector<Piece> ps;
        for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it)
            ps.push_back({Rational(-it->hi), Rational(-it->lo), it->poly.reflected()});
        return piecewise(alpha_, std::move(ps));
    }

    friend bool operator==(const Window& a, const Window& b) {
        if (a.alpha_ != b.alpha_ || a.pieces_.size() != b.pieces_.size()) return false;
        for (std::size_t k = 0; k < a.pieces_.size(); ++k)
            if (a.pieces_[k].lo != b.pieces_[k].lo || a.pieces_[k].hi != b.pieces_[k].hi ||
                !(a.pieces_[k].poly == b.pieces_[k].poly))
                return false;
        return true;
    }

private:
    Window() = default;

    const Polynomial* side_poly(const Algebraic& t, Side side) const {
        int cl = compare(t, Rational(-alpha_));
        int cr = compare(t, alpha_);
        if (cl < 0 || cr > 0) return nullptr;
        if (cl == 0) return side == Side::Left ? nullptr : &pieces_.front().poly;
        if (cr == 0) return side == Side::Right ? nullptr : &pieces_.back().poly;
        std::size_t lo = 0, hi = pieces_.size();
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (compare(t, pieces_[mid].lo) >= 0)
                lo = mid;
            else
                hi = mid;
        }
        if (side == Side::Left && lo > 0 && compare(t, pieces_[lo].lo) == 0) return &pieces_[lo - 1].poly;
        return &pieces_[lo].poly;
    }

    double horner(std::size_t k, double x) const {
        const auto& c = local_[k];
        double t = x - center_[k];
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    void validate() const {
        if (alpha_ <= 0) throw InvalidWindow("alpha must be positive");
        if (pieces_.empty()) throw InvalidWindow("empty support: no pieces");
        if (pieces_.front().lo != -alpha_ || pieces_.back().hi != alpha_)
            throw InvalidWindow("pieces must tile [-alpha, alpha] exactly");
        for (std::size_t k = 0; k < pieces_.size(); ++k) {
            const auto& p = pieces_[k];
            if (!(p.lo < p.hi)) throw InvalidWindow("breakpoints must be strictly increasing");
            if (p.poly.is_zero())
                throw InvalidWindow("piece on [" + to_string(p.lo) + ", " + to_string(p.hi) +
                                    "] is identically zero (infinitely many zeros)");
            if (k + 1 < pieces_.size()) {
                const auto& q = pieces_[k + 1];
                if (q.lo != p.hi) throw InvalidWindow("pieces must be contiguous");
                if (p.poly(p.hi) != q.poly(p.hi))
                    throw InvalidWindow("discontinuity at breakpoint " + to_string(p.hi));
            }
        }
        if (pieces_.front().poly(-alpha_) != 0 || pieces_.back().poly(alpha_) != 0)
            throw InvalidWindow("window must vanish at -alpha and alpha (continuity on the real line)");
    }

    void prepare() {
        lo_d_ = to_double(-alpha_);
        hi_d_ = to_double(alpha_);
        // Taylor expansion around the (double-representable) piece midpoint
        for (const auto& p : pieces_) {
            bp_d_.push_back(to_double(p.lo));
            double c = to_double(Rational((p.lo + p.hi) / 2));
            center_.push_back(c);
            std::vector<double> loc;
            Polynomial local = p.poly.shifted(Rational(c));
            for (const auto& x : local.coeffs()) loc.push_back(to_double(x));
            local_.push_back(std::move(loc));
        }
        scale_ = 0;
        for (std::size_t k = 0; k < pieces_.size(); ++k)
            for (int j = 0; j <= 16; ++j) {
                double x = bp_d_[k] + (to_double(pieces_[k].hi) - bp_d_[k]) * j / 16.0;
                scale_ = std::max(scale_, std::fabs(horner(k, x)));
            }
    }

    void catalog_zeros() {
        std::vector<Algebraic> locs;
        for (const auto& p : pieces_)
            for (auto& r : isolate_roots(p.poly, p.lo, p.hi)) {
                bool dup = false;
                for (const auto& l : locs)
                    if (l == r.location) dup = true;
                if (!dup) locs.push_back(r.location);
            }
        std::sort(locs.begin(), locs.end());
        for (auto& l : locs) {
            auto o = orders_at(l);
            ZeroPoint z;
            z.location = l;
            z.left_order = o.left;
            z.right_order = o.right;
            if (compare(l, Rational(-alpha_)) == 0)
                z.multiplicity = o.right;
            else if (compare(l, alpha_) == 0)
                z.multiplicity = o.left;
            else
                z.multiplicity = std::min(o.left, o.right);
            zeros_.push_back(std::move(z));
        }
    }

    Rational alpha_;
    std::vector<Piece> pieces_;
    std::vector<ZeroPoint> zeros_;
    std::vector<double> bp_d_, center_;
    double scale_ = 0;
    std::vector<std::vector<double>> local_;
    double lo_d_ = 0, hi_d_ = 0;
};

/// General V_alpha constructor for piecewise polynomials.
inline Window make_piecewise(const Rational& alpha, std::vector<Piece> pieces) {
    return Window::piecewise(alpha, std::move(pieces));
}

/// Single-polynomial window on [-alpha, alpha].
inline Window make_polynomial_window(const Rational& alpha, const Polynomial& p) {
    return Window::piecewise(alpha, {Piece{Rational(-alpha), alpha, p}});
}

/// Centered cardinal B-spline B_N = B_1 * ... * B_1 (N factors), supported on [-N/2, N/2].
inline Window make_bspline(int order) {
    if (order < 2) throw InvalidWindow("B-spline order must be at least 2 (B_1 is discontinuous)");
    const int n = order;
    Rational half(n, 2);
    half.canonicalize();
    Rational fact(1);
    for (int k = 2; k < n; ++k) fact *= k;
    std::vector<Piece> pieces;
    for (int j = 0; j < n; ++j) {
        Polynomial p;
        Integer binom(1);
        for (int k = 0; k <= j; ++k) {
            // (-1)^k C(n,k) (x + n/2 - k)^(n-1) / (n-1)!
            Polynomial lin({Rational(half - k), Rational(1)});
            Rational c = Rational(binom) / fact;
            if (k % 2) c = -c;
            p = p + c * lin.pow(n - 1);
            binom = binom * (n - k) / (k + 1);
        }
        pieces.push_back({Rational(-half + j), Rational(-half + j + 1), p});
    }
    return Window::piecewise(half, std::move(pieces));
}

}  // namespace gabor
