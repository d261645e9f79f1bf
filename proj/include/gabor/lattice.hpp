#pragma once

#include "gabor/rational.hpp"

#include <stdexcept>
#include <string>
#include <variant>

namespace gabor {

/// Lattice data for the region alpha <= a < 2 alpha, ab < 1.
struct LatticeParams {
    Rational alpha, a, b;
    long M = 0;      ///< redundancy band: ab in [(M-1)/M, M/(M+1)[
    long kappa = 0;  ///< largest integer with (1 - ab) kappa <= b alpha

    /// (1 - ab) / b, the shift unit of the ratio products.
    Rational step() const { return Rational((1 - a * b) / b); }
    Rational inv_b() const { return Rational(1 / b); }
};

struct OutOfScope {
    enum class Reason { TranslationBelowAlpha, TranslationAtLeastTwoAlpha, DensityAtLeastOne, SingleBand };
    Reason reason;
    std::string message;
};

inline const char* to_string(OutOfScope::Reason r) {
    switch (r) {
        case OutOfScope::Reason::TranslationBelowAlpha: return "a < alpha";
        case OutOfScope::Reason::TranslationAtLeastTwoAlpha: return "a >= 2 alpha";
        case OutOfScope::Reason::DensityAtLeastOne: return "ab >= 1";
        case OutOfScope::Reason::SingleBand: return "M=1 (ab < 1/2)";
    }
    return "?";
}

using Classification = std::variant<LatticeParams, OutOfScope>;

/// M with ab in [(M-1)/M, M/(M+1)[, i.e. floor(1 / (1 - ab)); requires 0 < ab < 1.
inline long redundancy_band(const Rational& ab) {
    if (ab <= 0 || ab >= 1) throw std::domain_error("redundancy band requires 0 < ab < 1");
    return to_long(floor_int(Rational(1 / (1 - ab))));
}

/// Computes M and kappa without gating M = 1 (kappa is then necessarily 0).
/// Requires alpha <= a and 0 < ab < 1.
inline LatticeParams lattice_params(const Rational& alpha, const Rational& a, const Rational& b) {
    if (alpha <= 0 || a <= 0 || b <= 0) throw std::invalid_argument("alpha, a, b must be positive");
    Rational ab = a * b;
    LatticeParams p{alpha, a, b, redundancy_band(ab), 0};
    p.kappa = to_long(floor_int(Rational(b * alpha / (1 - ab))));
    return p;
}

/// Gate for the characterization region; never guesses outside it.
inline Classification classify_params(const Rational& alpha, const Rational& a, const Rational& b) {
    if (alpha <= 0 || a <= 0 || b <= 0) throw std::invalid_argument("alpha, a, b must be positive");
    using R = OutOfScope::Reason;
    if (a < alpha) return OutOfScope{R::TranslationBelowAlpha, "a < alpha: translation below the support half-width"};
    if (a >= 2 * alpha) return OutOfScope{R::TranslationAtLeastTwoAlpha, "a >= 2 alpha: outside the characterized region"};
    if (a * b >= 1) return OutOfScope{R::DensityAtLeastOne, "ab >= 1: b >= 1/a"};
    LatticeParams p = lattice_params(alpha, a, b);
    if (p.M < 2) return OutOfScope{R::SingleBand, "M=1: ab < 1/2 lies below the characterized redundancy bands"};
    return p;
}

}  // namespace gabor
