#include "bootperc/alpha.hpp"

#include "bootperc/error.hpp"

#include <stdexcept>
#include <string>

namespace bootperc {

int t_closed_form(int s) {
    if (s < 2) throw PreconditionError("alpha_t: s must be >= 2, got " + std::to_string(s));
    // smallest t >= 0 with 2t + 5 >= sqrt(9 + 8s)
    const long long target = 9 + 8LL * s;
    int t = 0;
    while ((2LL * t + 5) * (2LL * t + 5) < target) ++t;
    return t;
}

Rational alpha_quotient(int s, int t) {
    long long sum = 0;
    for (int i = 0; i <= t; ++i) sum += s - i;
    return Rational(sum, t + 2);
}

Rational alpha_closed_form(int s, int t) {
    return Rational(t + 1, t + 2) * (Rational(s) - Rational(t, 2));
}

int t_by_maximality(int s) {
    if (s < 2) throw PreconditionError("alpha_t: s must be >= 2, got " + std::to_string(s));
    int best = -1;
    for (int t = 0; t <= s - 1; ++t) {
        if (alpha_quotient(s, t) < Rational(s - t)) best = t;
    }
    return best;
}

AlphaEntry alpha_t(int s) {
    const int t = t_closed_form(s);
    const int t_max = t_by_maximality(s);
    if (t != t_max) {
        throw std::logic_error("alpha_t: closed-form t=" + std::to_string(t) +
                               " disagrees with maximal t=" + std::to_string(t_max) +
                               " for s=" + std::to_string(s));
    }
    Rational alpha = alpha_closed_form(s, t);
    if (alpha != alpha_quotient(s, t)) {
        throw std::logic_error("alpha_t: closed form and quotient disagree for s=" + std::to_string(s));
    }
    return AlphaEntry{s, t, alpha};
}

} // namespace bootperc
