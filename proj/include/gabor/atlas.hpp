#pragma once

#include "gabor/rational.hpp"
#include "gabor/verify.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gabor {

/// Classification of (a, b) for the B-spline B_N.
enum class Label {
    NotFrame_aGeN,
    NotFrame_abGe1,
    NotFrame_bInteger,
    Frame_bSmall,            ///< a < N, b <= 1/N
    Frame_TranslationMultiple,  ///< 1/N < b < 2/N and N/2 <= ak < 1/b for some k
    Frame_ReciprocalIntegerB,   ///< b = 1/j, j = 1..N-1
    Frame_RationalA,            ///< a = k/p, k = 1..N-1, b < 1/k
    Frame_RegionB,              ///< N/2 <= a < N, ab < 1
    Frame_Oversampling,         ///< a multiple 2Ma lands in region B
    ConditionalOnStrip,         ///< frame if the reduced point in a < N/2, 1/2 <= ab < 1 is
    Unknown,
};

inline const char* to_string(Label l) {
    switch (l) {
        case Label::NotFrame_aGeN: return "NotFrame_aGeN";
        case Label::NotFrame_abGe1: return "NotFrame_abGe1";
        case Label::NotFrame_bInteger: return "NotFrame_bInteger";
        case Label::Frame_bSmall: return "Frame_bSmall";
        case Label::Frame_TranslationMultiple: return "Frame_TranslationMultiple";
        case Label::Frame_ReciprocalIntegerB: return "Frame_ReciprocalIntegerB";
        case Label::Frame_RationalA: return "Frame_RationalA";
        case Label::Frame_RegionB: return "Frame_RegionB";
        case Label::Frame_Oversampling: return "Frame_Oversampling";
        case Label::ConditionalOnStrip: return "ConditionalOnStrip";
        case Label::Unknown: return "Unknown";
    }
    return "?";
}

inline bool is_frame(Label l) {
    switch (l) {
        case Label::Frame_bSmall:
        case Label::Frame_TranslationMultiple:
        case Label::Frame_ReciprocalIntegerB:
        case Label::Frame_RationalA:
        case Label::Frame_RegionB:
        case Label::Frame_Oversampling: return true;
        default: return false;
    }
}

inline bool is_not_frame(Label l) {
    return l == Label::NotFrame_aGeN || l == Label::NotFrame_abGe1 || l == Label::NotFrame_bInteger;
}

struct RegionLabel {
    Label label = Label::Unknown;
    long k = 0;                        ///< translation multiple, or the numerator k of a = k/p
    long p = 0;                        ///< denominator p of a = k/p, or j of b = 1/j
    std::optional<Rational> a_prime;   ///< reduced translation 2Ma
    long multiple = 0;                 ///< the M of the reduction

    std::string evidence() const {
        switch (label) {
            case Label::Frame_TranslationMultiple: return "k=" + std::to_string(k);
            case Label::Frame_ReciprocalIntegerB: return "b=1/" + std::to_string(p);
            case Label::Frame_RationalA: return "a=" + std::to_string(k) + "/" + std::to_string(p);
            case Label::Frame_Oversampling:
            case Label::ConditionalOnStrip:
                return "M=" + std::to_string(multiple) + ";a'=" + to_string(*a_prime);
            default: return "";
        }
    }
};

struct AtlasOptions {
    long rational_a_cap = 100;  ///< largest p tried for a = k/p
};

struct StripReduction {
    enum Kind { Oversampling, Conditional, Inapplicable } kind = Inapplicable;
    long M = 0;
    Rational a_prime;
};

/// Moves a point with 0 < ab < 1/2 to the translation 2Ma, M the unique integer with
/// 1/(M+1) <= 2ab < 1/M. Throws std::invalid_argument if the preconditions fail.
inline StripReduction reduce_to_strip(long N, const Rational& a, const Rational& b) {
    Rational ab = a * b;
    if (N < 2 || a <= 0 || b <= 0) throw std::invalid_argument("reduce_to_strip: requires N >= 2, a, b > 0");
    if (ab * 2 >= 1) throw std::invalid_argument("reduce_to_strip: requires ab < 1/2");
    if (b * N <= 1) throw std::invalid_argument("reduce_to_strip: requires b > 1/N");
    if (b.get_den() == 1 && b >= 2) throw std::invalid_argument("reduce_to_strip: b is an integer >= 2");
    StripReduction r;
    r.M = to_long(ceil_int(Rational(1 / (ab * 2)))) - 1;
    r.a_prime = a * 2 * r.M;
    Rational apb = r.a_prime * b;
    Rational half(N, 2);
    if (r.a_prime >= half && r.a_prime < N && apb < 1)
        r.kind = StripReduction::Oversampling;
    else if (r.a_prime < half && apb * 2 >= 1 && apb < 1)
        r.kind = StripReduction::Conditional;
    return r;
}

namespace detail {

inline bool b_integer_ge2(const Rational& b) { return b.get_den() == 1 && b >= 2; }

inline std::optional<long> translation_multiple(long N, const Rational& a, const Rational& b) {
    if (!(b * N > 1 && b * N < 2)) return std::nullopt;
    long k = std::max<long>(1, to_long(ceil_int(Rational(Rational(N, 2) / a))));
    if (a * k * b < 1) return k;
    return std::nullopt;
}

inline std::optional<long> reciprocal_integer_b(long N, const Rational& b) {
    if (b.get_num() != 1) return std::nullopt;
    long j = to_long(Integer(b.get_den()));
    if (j >= 1 && j <= N - 1) return j;
    return std::nullopt;
}

// a = k/p in lowest terms already gives the smallest admissible k.
inline std::optional<std::pair<long, long>> rational_a(long N, const Rational& a, const Rational& b, long cap) {
    Integer num = a.get_num(), den = a.get_den();
    if (num > N - 1 || den > cap) return std::nullopt;
    long k = to_long(num);
    if (b * k < 1) return std::make_pair(k, to_long(den));
    return std::nullopt;
}

}  // namespace detail

/// Every rule that applies at (a, b), without precedence; used to audit rule consistency.
inline std::vector<Label> applicable_rules(long N, const Rational& a, const Rational& b, const AtlasOptions& opt = {}) {
    std::vector<Label> out;
    Rational ab = a * b;
    if (ab >= 1) out.push_back(Label::NotFrame_abGe1);
    if (a >= N) out.push_back(Label::NotFrame_aGeN);
    if (detail::b_integer_ge2(b)) out.push_back(Label::NotFrame_bInteger);
    if (ab < 1) {
        if (a < N && b * N <= 1) out.push_back(Label::Frame_bSmall);
        if (detail::translation_multiple(N, a, b)) out.push_back(Label::Frame_TranslationMultiple);
        if (detail::reciprocal_integer_b(N, b)) out.push_back(Label::Frame_ReciprocalIntegerB);
        if (detail::rational_a(N, a, b, opt.rational_a_cap)) out.push_back(Label::Frame_RationalA);
        if (a * 2 >= N && a < N) out.push_back(Label::Frame_RegionB);
        if (ab * 2 < 1 && b * N > 1 && !detail::b_integer_ge2(b)) {
            auto r = reduce_to_strip(N, a, b);
            if (r.kind == StripReduction::Oversampling) out.push_back(Label::Frame_Oversampling);
            if (r.kind == StripReduction::Conditional) out.push_back(Label::ConditionalOnStrip);
        }
    }
    return out;
}

/// Label with precedence: not-frame rules (a >= N, integer b, density), the positive-window
/// region N/2 <= a < N, b <= 1/N, a = k/p, b = 1/j, the k-multiple search, the strip reduction, Unknown.
inline RegionLabel classify_bspline_point(long N, const Rational& a, const Rational& b, const AtlasOptions& opt = {}) {
    if (N < 2) throw std::invalid_argument("B-spline order must be at least 2");
    if (a <= 0 || b <= 0) throw std::invalid_argument("a and b must be positive");
    RegionLabel r;
    Rational ab = a * b;
    if (a >= N) return {Label::NotFrame_aGeN};
    if (detail::b_integer_ge2(b)) return {Label::NotFrame_bInteger};
    if (ab >= 1) return {Label::NotFrame_abGe1};
    if (a * 2 >= N) return {Label::Frame_RegionB};
    if (b * N <= 1) return {Label::Frame_bSmall};
    if (auto kp = detail::rational_a(N, a, b, opt.rational_a_cap)) {
        r.label = Label::Frame_RationalA;
        r.k = kp->first;
        r.p = kp->second;
        return r;
    }
    if (auto j = detail::reciprocal_integer_b(N, b)) {
        r.label = Label::Frame_ReciprocalIntegerB;
        r.p = *j;
        return r;
    }
    if (auto k = detail::translation_multiple(N, a, b)) {
        r.label = Label::Frame_TranslationMultiple;
        r.k = *k;
        return r;
    }
    if (ab * 2 < 1) {
        auto red = reduce_to_strip(N, a, b);
        if (red.kind != StripReduction::Inapplicable) {
            r.label = red.kind == StripReduction::Oversampling ? Label::Frame_Oversampling : Label::ConditionalOnStrip;
            r.a_prime = red.a_prime;
            r.multiple = red.M;
            return r;
        }
    }
    return {};
}

struct AtlasCell {
    Rational a, b;
    RegionLabel label;
};

struct Atlas {
    long N = 0, resolution = 0;
    Rational a_min, a_max, b_min, b_max;
    std::vector<AtlasCell> cells;  ///< row-major: b index outer, a index inner

    std::string csv() const {
        std::ostringstream os;
        os << "a,b,label,evidence\n";
        for (const auto& c : cells) os << to_string(c.a) << ',' << to_string(c.b) << ',' << to_string(c.label.label) << ',' << c.label.evidence() << '\n';
        return os.str();
    }

    std::string svg(int cell_px = 3) const {
        auto color = [](Label l) {
            switch (l) {
                case Label::NotFrame_aGeN:
                case Label::NotFrame_abGe1: return "#d9d9d9";
                case Label::NotFrame_bInteger: return "#000000";
                case Label::Frame_bSmall: return "#4daf4a";        // A
                case Label::Frame_RegionB: return "#377eb8";       // B
                case Label::Frame_TranslationMultiple: return "#80b1d3";
                case Label::Frame_ReciprocalIntegerB: return "#984ea3";
                case Label::Frame_RationalA: return "#a6d854";
                case Label::Frame_Oversampling: return "#ffd92f";
                case Label::ConditionalOnStrip: return "#ff7f00";  // C strips
                case Label::Unknown: return "#ffffff";
            }
            return "#ffffff";
        };
        std::ostringstream os;
        long W = resolution * cell_px;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << W << "\">\n";
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            long i = static_cast<long>(idx) % resolution, j = static_cast<long>(idx) / resolution;
            os << "<rect x=\"" << i * cell_px << "\" y=\"" << (resolution - 1 - j) * cell_px << "\" width=\"" << cell_px
               << "\" height=\"" << cell_px << "\" fill=\"" << color(cells[idx].label.label) << "\"/>\n";
        }
        os << "</svg>\n";
        return os.str();
    }
};

/// res x res sweep over cell centres of [a_min, a_max] x [b_min, b_max].
inline Atlas render_atlas(long N, const Rational& a_min, const Rational& a_max, const Rational& b_min, const Rational& b_max,
                          long res, const AtlasOptions& opt = {}) {
    if (res < 1) throw std::invalid_argument("atlas resolution must be positive");
    if (a_min < 0 || b_min < 0 || a_max <= a_min || b_max <= b_min) throw std::invalid_argument("atlas ranges must be positive");
    Atlas at{N, res, a_min, a_max, b_min, b_max, std::vector<AtlasCell>(static_cast<std::size_t>(res * res))};
    const Rational da = (a_max - a_min) / res, db = (b_max - b_min) / res;
    detail::parallel_for(res, [&](long j) {
        Rational b = b_min + db * Rational(2 * j + 1, 2);
        for (long i = 0; i < res; ++i) {
            Rational a = a_min + da * Rational(2 * i + 1, 2);
            at.cells[static_cast<std::size_t>(j * res + i)] = {a, b, classify_bspline_point(N, a, b, opt)};
        }
    });
    return at;
}

}  // namespace gabor
