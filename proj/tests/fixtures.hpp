#pragma once

#include "gabor/window.hpp"

#include <random>
#include <vector>

namespace fixtures {

using gabor::Polynomial;
using gabor::Rational;
using gabor::Window;

inline Rational q(long p, long d = 1) { return gabor::make_rational(p, d); }

/// (alpha^2 - x^2) * prod (x - z_i) on [-alpha, alpha]
inline Window polynomial_with_zeros(const Rational& alpha, const std::vector<Rational>& interior) {
    Polynomial p({Rational(alpha * alpha), Rational(0), Rational(-1)});
    for (const auto& z : interior) p = p * Polynomial::linear_root(z);
    return gabor::make_polynomial_window(alpha, p);
}

/// The worked example: alpha = 9/10, g(x) = (81/100 - x^2)(1/5 - x).
inline Window example_window() {
    Polynomial p = Polynomial({q(81, 100), q(0), q(-1)}) * Polynomial({q(1, 5), q(-1)});
    return gabor::make_polynomial_window(q(9, 10), p);
}

/// Same support, simple zeros at 1/5 and -2/15.
inline Window obstructed_window() {
    Polynomial p = Polynomial({q(81, 100), q(0), q(-1)}) * Polynomial({q(1, 5), q(-1)}) * Polynomial({q(2, 15), q(1)});
    return gabor::make_polynomial_window(q(9, 10), p);
}

/// Uniform random rational in [lo, hi) with denominator `den`.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi, long den = 997) {
    Rational span = hi - lo;
    std::uniform_int_distribution<long> k(0, den - 1);
    Rational r = lo + span * Rational(k(rng), den);
    r.canonicalize();
    return r;
}

}  // namespace fixtures
