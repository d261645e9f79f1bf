#pragma once

#include "gabor/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gabor {

/// Dense univariate polynomial with exact rational coefficients, ascending powers.
/// The zero polynomial has an empty coefficient list and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> c) : coeffs_(c) { trim(); }
    explicit Polynomial(std::vector<Rational> c) : coeffs_(std::move(c)) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }
    /// The linear polynomial x - root.
    static Polynomial linear_root(const Rational& root) { return Polynomial({Rational(-root), Rational(1)}); }
    static Polynomial monomial(const Rational& c, int power) {
        std::vector<Rational> v(static_cast<std::size_t>(power) + 1, Rational(0));
        v.back() = c;
        return Polynomial(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(k)] : Rational(0);
    }
    Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Sign of p(x) without forming the full value when possible.
    int sign_at(const Rational& x) const { return sgn((*this)(x)); }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<Rational> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
        return Polynomial(std::move(d));
    }

    /// p(x + shift)
    Polynomial shifted(const Rational& shift) const {
        // Horner in the composed variable: p(x+s) = (...(c_n (x+s) + c_{n-1})(x+s) ...)
        Polynomial acc;
        Polynomial xs({shift, Rational(1)});
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * xs + constant(*it);
        return acc;
    }

    /// p(k x)
    Polynomial scaled_argument(const Rational& k) const {
        std::vector<Rational> c = coeffs_;
        Rational pw(1);
        for (auto& ci : c) {
            ci *= pw;
            pw *= k;
        }
        return Polynomial(std::move(c));
    }

    /// p(-x)
    Polynomial reflected() const { return scaled_argument(Rational(-1)); }

    Polynomial monic() const {
        if (is_zero()) return {};
        Rational lc = leading();
        std::vector<Rational> c = coeffs_;
        for (auto& ci : c) ci /= lc;
        return Polynomial(std::move(c));
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        std::vector<Rational> c(std::max(p.coeffs_.size(), q.coeffs_.size()), Rational(0));
        for (std::size_t k = 0; k < p.coeffs_.size(); ++k) c[k] += p.coeffs_[k];
        for (std::size_t k = 0; k < q.coeffs_.size(); ++k) c[k] += q.coeffs_[k];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& p) {
        std::vector<Rational> c = p.coeffs_;
        for (auto& ci : c) ci = -ci;
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<Rational> c(p.coeffs_.size() + q.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) c[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const Rational& s, const Polynomial& p) { return constant(s) * p; }
    friend bool operator==(const Polynomial& p, const Polynomial& q) { return p.coeffs_ == q.coeffs_; }

    Polynomial pow(int e) const {
        Polynomial r = constant(Rational(1));
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Euclidean division: returns (quotient, remainder).
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = num.coeffs_;
        int dd = den.degree();
        if (num.degree() < dd) return {Polynomial(), num};
        std::vector<Rational> q(static_cast<std::size_t>(num.degree() - dd) + 1, Rational(0));
        const Rational& lc = den.coeffs_.back();
        for (int k = num.degree(); k >= dd; --k) {
            Rational f = r[static_cast<std::size_t>(k)] / lc;
            q[static_cast<std::size_t>(k - dd)] = f;
            if (f == 0) continue;
            for (int j = 0; j <= dd; ++j) r[static_cast<std::size_t>(k - dd + j)] -= f * den.coeffs_[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(dd));
        return {Polynomial(std::move(q)), Polynomial(std::move(r))};
    }

    /// Monic greatest common divisor (zero if both are zero).
    static Polynomial gcd(Polynomial p, Polynomial q) {
        while (!q.is_zero()) {
            Polynomial r = divmod(p, q).second;
            p = std::move(q);
            q = r.monic();
        }
        return p.monic();
    }

    /// p / gcd(p, p'): same roots, all simple.
    Polynomial squarefree_part() const {
        if (degree() <= 1) return monic();
        Polynomial g = gcd(*this, derivative());
        return divmod(*this, g).first.monic();
    }

    /// Vanishing order at a rational point (number of leading derivatives that are zero).
    int order_at(const Rational& x) const {
        if (is_zero()) throw std::domain_error("order of the zero polynomial is undefined");
        int k = 0;
        Polynomial d = *this;
        while (d(x) == 0) {
            d = d.derivative();
            ++k;
        }
        return k;
    }

    Polynomial antiderivative() const {
        std::vector<Rational> c(coeffs_.size() + 1, Rational(0));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k + 1] = coeffs_[k] / static_cast<long>(k + 1);
        return Polynomial(std::move(c));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

/// Sturm sequence of a (square-free) polynomial.
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    seq.push_back(p.derivative());
    while (!seq.back().is_zero()) {
        Polynomial r = Polynomial::divmod(seq[seq.size() - 2], seq.back()).second;
        seq.push_back(-r);
    }
    seq.pop_back();
    return seq;
}

inline int sign_changes_at(const std::vector<Polynomial>& seq, const Rational& x) {
    int changes = 0, last = 0;
    for (const auto& q : seq) {
        int s = q.sign_at(x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline int count_roots(const std::vector<Polynomial>& seq, const Rational& lo, const Rational& hi) {
    return sign_changes_at(seq, lo) - sign_changes_at(seq, hi);
}

}  // namespace gabor
