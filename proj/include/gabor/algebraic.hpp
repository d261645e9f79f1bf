#pragma once

#include "gabor/polynomial.hpp"
#include "gabor/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gabor {

/// A real algebraic number: either an exact rational, or the unique root of a
/// square-free polynomial inside an open isolating interval (lo, hi) whose
/// endpoints are not roots.
///
/// Values are immutable; refinement produces new objects, so an Algebraic can
/// be shared between threads.
class Algebraic {
public:
    Algebraic() : exact_(true), value_(0) {}
    Algebraic(const Rational& r) : exact_(true), value_(r) {}  // NOLINT(implicit)

    /// Takes a square-free polynomial with exactly one root in (lo, hi) and
    /// nonzero values at lo and hi. Detects rational roots with small height.
    static Algebraic from_isolating(Polynomial squarefree, Rational lo, Rational hi) {
        Algebraic x;
        x.exact_ = false;
        x.poly_ = squarefree.monic();
        x.lo_ = std::move(lo);
        x.hi_ = std::move(hi);
        if (x.poly_.degree() == 1) return Algebraic(Rational(-x.poly_.coeff(0)));
        // a rational root with moderate denominator is the simplest rational in a narrow enclosure
        Algebraic narrowed = x.refined_to(Rational(1, 1) / Rational(Integer(1) << 100));
        if (narrowed.exact_) return narrowed;
        Rational cand = simplest_between(narrowed.lo_, narrowed.hi_);
        if (narrowed.poly_(cand) == 0) return Algebraic(cand);
        return narrowed;
    }

    bool is_rational() const { return exact_; }
    const Rational& rational_value() const {
        if (!exact_) throw std::logic_error("algebraic number is not rational");
        return value_;
    }
    const Polynomial& polynomial() const { return poly_; }
    Rational lower() const { return exact_ ? value_ : lo_; }
    Rational upper() const { return exact_ ? value_ : hi_; }
    Rational width() const { return exact_ ? Rational(0) : Rational(hi_ - lo_); }

    /// Copy whose enclosure width is at most `w`.
    Algebraic refined_to(const Rational& w) const {
        Algebraic x = *this;
        while (!x.exact_ && (x.hi_ - x.lo_) > w) x.bisect();
        return x;
    }

    /// Rational within `tol` of the value (exact value when rational).
    Rational approximant(const Rational& tol) const {
        if (exact_) return value_;
        Algebraic x = refined_to(tol);
        if (x.exact_) return x.value_;
        Rational mid = (x.lo_ + x.hi_) / 2;
        return mid;
    }

    double to_double() const {
        if (exact_) return gabor::to_double(value_);
        Rational scale = abs(lo_) + abs(hi_) + 1;
        return gabor::to_double(approximant(scale / Rational(Integer(1) << 64)));
    }

    Algebraic operator+(const Rational& c) const {
        if (exact_) return Algebraic(Rational(value_ + c));
        Algebraic x;
        x.exact_ = false;
        x.poly_ = poly_.shifted(Rational(-c));
        x.lo_ = lo_ + c;
        x.hi_ = hi_ + c;
        return x;
    }
    Algebraic operator-(const Rational& c) const { return *this + Rational(-c); }

    /// k * x for rational k.
    Algebraic scaled(const Rational& k) const {
        if (exact_) return Algebraic(Rational(value_ * k));
        if (k == 0) return Algebraic(Rational(0));
        Algebraic x;
        x.exact_ = false;
        x.poly_ = poly_.scaled_argument(Rational(1) / k).monic();
        x.lo_ = lo_ * k;
        x.hi_ = hi_ * k;
        if (k < 0) std::swap(x.lo_, x.hi_);
        return x;
    }
    Algebraic operator-() const { return scaled(Rational(-1)); }

    /// p(x) == 0, decided exactly.
    bool is_root_of(const Polynomial& p) const {
        if (p.is_zero()) return true;
        if (exact_) return p(value_) == 0;
        Polynomial g = Polynomial::gcd(p, poly_);
        if (g.degree() < 1) return false;
        // g divides poly_, so g is nonzero at lo_ and hi_ and has at most one root between them
        return g.sign_at(lo_) != g.sign_at(hi_);
    }

    /// Vanishing order of p at this point.
    int order_of(const Polynomial& p) const {
        if (p.is_zero()) throw std::domain_error("order of the zero polynomial is undefined");
        if (exact_) return p.order_at(value_);
        int k = 0;
        Polynomial d = p;
        while (is_root_of(d)) {
            d = d.derivative();
            ++k;
        }
        return k;
    }

    /// p(x) evaluated in floating point at a tight rational approximant.
    double eval_double(const Polynomial& p) const {
        if (exact_) return gabor::to_double(p(value_));
        Rational scale = abs(lo_) + abs(hi_) + 1;
        return gabor::to_double(p(approximant(scale / Rational(Integer(1) << 80))));
    }

    std::string to_string() const {
        if (exact_) return gabor::to_string(value_);
        std::string s = "root(";
        const auto& c = poly_.coeffs();
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (k) s += ",";
            s += gabor::to_string(c[k]);
        }
        s += ";" + gabor::to_string(lo_) + "," + gabor::to_string(hi_) + ")";
        return s;
    }

    /// Sign of (x - r).
    friend int compare(const Algebraic& x, const Rational& r) {
        if (x.exact_) return sgn(Rational(x.value_ - r));
        if (r <= x.lo_) return 1;
        if (r >= x.hi_) return -1;
        int sr = x.poly_.sign_at(r);
        if (sr == 0) return 0;
        return x.poly_.sign_at(x.lo_) != sr ? -1 : 1;
    }

    /// Sign of (x - y), decided exactly.
    friend int compare(const Algebraic& x, const Algebraic& y) {
        if (y.exact_) return compare(x, y.value_);
        if (x.exact_) return -compare(y, x.value_);
        if (x.hi_ <= y.lo_) return -1;
        if (y.hi_ <= x.lo_) return 1;
        Polynomial g = Polynomial::gcd(x.poly_, y.poly_);
        if (g.degree() >= 1 && x.is_root_of(g) && compare(x, y.lo_) > 0 && compare(x, y.hi_) < 0) return 0;
        Algebraic a = x, b = y;
        while (true) {
            if (a.exact_ || b.exact_) return a.exact_ ? -compare(b, a.value_) : compare(a, b.value_);
            if (a.hi_ <= b.lo_) return -1;
            if (b.hi_ <= a.lo_) return 1;
            a.bisect();
            b.bisect();
        }
    }

    friend bool operator==(const Algebraic& x, const Algebraic& y) { return compare(x, y) == 0; }
    friend bool operator<(const Algebraic& x, const Algebraic& y) { return compare(x, y) < 0; }
    friend bool operator<=(const Algebraic& x, const Algebraic& y) { return compare(x, y) <= 0; }
    friend bool operator>(const Algebraic& x, const Algebraic& y) { return compare(x, y) > 0; }
    friend bool operator>=(const Algebraic& x, const Algebraic& y) { return compare(x, y) >= 0; }

private:
    void bisect() {
        Rational mid = (lo_ + hi_) / 2;
        int sm = poly_.sign_at(mid);
        if (sm == 0) {
            exact_ = true;
            value_ = mid;
            return;
        }
        if (poly_.sign_at(lo_) != sm)
            hi_ = mid;
        else
            lo_ = mid;
    }

    bool exact_ = true;
    Rational value_;
    Polynomial poly_;
    Rational lo_, hi_;
};

struct IsolatedRoot {
    Algebraic location;
    int multiplicity = 1;
};

/// All distinct real roots of p inside the closed interval [lo, hi], in increasing order.
inline std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::domain_error("cannot isolate roots of the zero polynomial");
    std::vector<IsolatedRoot> out;
    if (p.degree() == 0) return out;
    Polynomial q = p.squarefree_part();
    auto seq = sturm_sequence(q);

    std::vector<Algebraic> found;
    // work list of open intervals (a, b) with q(a), q(b) possibly zero handled by caller logic
    struct Span {
        Rational a, b;
    };
    std::vector<Span> work;
    if (q(lo) == 0) found.emplace_back(lo);
    if (hi != lo && q(hi) == 0) found.emplace_back(hi);
    if (hi > lo) work.push_back({lo, hi});
    while (!work.empty()) {
        Span s = work.back();
        work.pop_back();
        int n = count_roots(seq, s.a, s.b) - (q(s.b) == 0 ? 1 : 0);  // roots in open (a, b)
        if (n == 0) continue;
        if (n == 1 && q(s.a) != 0 && q(s.b) != 0) {
            found.push_back(Algebraic::from_isolating(q, s.a, s.b));
            continue;
        }
        Rational mid = (s.a + s.b) / 2;
        if (q(mid) == 0) found.emplace_back(mid);
        work.push_back({s.a, mid});
        work.push_back({mid, s.b});
    }
    std::sort(found.begin(), found.end());
    for (auto& x : found) out.push_back({x, x.order_of(p)});
    return out;
}

}  // namespace gabor
