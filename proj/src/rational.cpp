#include "twistoid/rational.hpp"

#include <cstdlib>

namespace twistoid {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InvalidConfig("empty rational literal");
    std::size_t slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            std::size_t used = 0;
            std::int64_t n = std::stoll(text, &used);
            if (used != text.size()) throw InvalidConfig("malformed rational: " + text);
            return Rational(n);
        }
        std::size_t used_n = 0, used_d = 0;
        std::string num = text.substr(0, slash);
        std::string den = text.substr(slash + 1);
        std::int64_t n = std::stoll(num, &used_n);
        std::int64_t d = std::stoll(den, &used_d);
        if (used_n != num.size() || used_d != den.size() || d == 0)
            throw InvalidConfig("malformed rational: " + text);
        return Rational(n, d);
    } catch (const std::invalid_argument&) {
        throw InvalidConfig("malformed rational: " + text);
    } catch (const std::out_of_range&) {
        throw InvalidConfig("rational out of range: " + text);
    }
}

std::string format_rational(const Rational& x) {
    if (x.denominator() == 1) return std::to_string(x.numerator());
    return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

} // namespace twistoid
