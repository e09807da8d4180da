// The step count t_s and growth exponent alpha_s of the s-pattern construction.
#pragma once

#include "bootperc/rational.hpp"

namespace bootperc {

struct AlphaEntry {
    int s = 0;
    int t = 0;
    Rational alpha;
};

// t = ceil((sqrt(9+8s) - 5) / 2), evaluated in integers.
int t_closed_form(int s);

// Largest t in {0,...,s-1} with (s + (s-1) + ... + (s-t)) / (t+2) < s - t.
int t_by_maximality(int s);

// (t+1)/(t+2) * (s - t/2)
Rational alpha_closed_form(int s, int t);

// (s + (s-1) + ... + (s-t)) / (t+2)
Rational alpha_quotient(int s, int t);

// Both routes are evaluated and must agree; s >= 2.
AlphaEntry alpha_t(int s);

} // namespace bootperc
