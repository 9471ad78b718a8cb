#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "qh/errors.hpp"

namespace qh {

// Exact rational arithmetic everywhere an action or area appears. Residue
// classes modulo the disk area A_L need exact divisibility tests, so floats
// are never used for these quantities.
using Rational = boost::rational<long long>;

inline std::string format_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text));
        const long long num = std::stoll(text.substr(0, slash));
        const long long den = std::stoll(text.substr(slash + 1));
        if (den == 0) throw parse_error("rational with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw parse_error("not a rational: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw parse_error("rational out of range: '" + text + "'");
    }
}

// Largest integer <= r.
inline long long rational_floor(const Rational& r) {
    const long long q = r.numerator() / r.denominator();
    return (r.numerator() % r.denominator() != 0 && r.numerator() < 0) ? q - 1 : q;
}

// Representative of r modulo period in [0, period).
inline Rational rational_mod(const Rational& r, const Rational& period) {
    const Rational q = r / period;
    return r - Rational(rational_floor(q)) * period;
}

// Values extended with -infinity; used for valuations and spectral levels.
// std::nullopt encodes -infinity throughout.
using Level = std::optional<Rational>;

inline std::string format_level(const Level& v) {
    return v ? format_rational(*v) : std::string("-inf");
}

} // namespace qh
