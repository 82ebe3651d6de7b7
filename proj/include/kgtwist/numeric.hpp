#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace kgtwist {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Every failure raised by the library. The message is meant for users.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

inline Integer numerator_of(const Rational &q) {
    return boost::multiprecision::numerator(q);
}
inline Integer denominator_of(const Rational &q) {
    return boost::multiprecision::denominator(q);
}

inline Integer gcd(Integer a, Integer b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Integer t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Integer lcm(const Integer &a, const Integer &b) {
    if (a == 0 || b == 0) return 0;
    Integer g = gcd(a, b);
    Integer r = (a / g) * b;
    return r < 0 ? Integer(-r) : r;
}

/// floor(a / b) for b > 0.
inline Integer floor_div(const Integer &a, const Integer &b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

/// Representative of q modulo 1 in [0, 1).
inline Rational frac(const Rational &q) {
    Integer n = numerator_of(q), d = denominator_of(q);
    Integer fl = floor_div(n, d);
    return q - Rational(fl);
}

inline bool is_integral(const Rational &q) { return denominator_of(q) == 1; }

inline std::string to_string(const Integer &z) { return z.str(); }

inline std::string to_string(const Rational &q) {
    if (is_integral(q)) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

/// Parses "p", "-p" or "p/q". Throws Error on malformed input.
inline Rational parse_rational(const std::string &text) {
    auto digits = [](const std::string &s, bool allow_sign) {
        if (s.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!digits(num, true) || !digits(den, false))
        throw Error("malformed rational '" + text + "'");
    if (num[0] == '+') num = num.substr(1);
    Integer d(den);
    if (d == 0) throw Error("zero denominator in '" + text + "'");
    return Rational(Integer(num), d);
}

using IntVector = std::vector<Integer>;

} // namespace kgtwist
