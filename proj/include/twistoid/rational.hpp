#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <string>

#include "twistoid/errors.hpp"

namespace twistoid {

/// Exact rational scalar. boost::rational keeps the value reduced with a
/// positive denominator, which is exactly the invariant we need.
using Rational = boost::rational<std::int64_t>;

inline std::strong_ordering rational_compare(const Rational& a, const Rational& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

/// floor(x) as an integer.
inline std::int64_t rational_floor(const Rational& x) {
    std::int64_t n = x.numerator();
    std::int64_t d = x.denominator(); // > 0
    if (n >= 0) return n / d;
    return -((-n + d - 1) / d);
}

/// Reduce into the fundamental domain [0,1) of the circle.
inline Rational reduce_mod1(const Rational& x) { return x - rational_floor(x); }

/// Parse "p/q" or "p". Throws InvalidConfig on malformed input.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form ("p" when q == 1).
std::string format_rational(const Rational& x);

inline double to_double(const Rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
}

} // namespace twistoid
