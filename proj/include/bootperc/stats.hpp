// Binomial proportion estimates with Wilson score intervals.
#pragma once

#include "bootperc/rational.hpp"

#include <cstddef>

namespace bootperc {

struct ProbabilityEstimate {
    std::size_t successes = 0;
    std::size_t trials = 0;
    double confidence = 0.95;
    double ci_low = 0.0;
    double ci_high = 1.0;

    double point() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
    Rational point_exact() const;
};

// Two-sided Wilson interval; confidence in (0,1). trials == 0 gives [0,1].
ProbabilityEstimate wilson_estimate(std::size_t successes, std::size_t trials, double confidence = 0.95);

// Standard normal quantile z with P(|Z| <= z) = confidence.
double two_sided_z(double confidence);

} // namespace bootperc
