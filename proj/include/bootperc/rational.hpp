#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bootperc {

// Exact arbitrary-precision rational.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(num, den);
}

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

// "15/4", "3", "-1/2"
inline std::string to_string(const Rational& q) {
    return q.str();
}

// x^n for n >= 0.
inline Rational pow_rational(Rational base, int n) {
    Rational out(1);
    while (n > 0) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

inline bool is_integer(const Rational& q) {
    return boost::multiprecision::denominator(q) == 1;
}

} // namespace bootperc
