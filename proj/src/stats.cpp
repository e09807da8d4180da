#include "bootperc/stats.hpp"

#include "bootperc/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace bootperc {

Rational ProbabilityEstimate::point_exact() const {
    if (trials == 0) return Rational(0);
    return Rational(static_cast<long long>(successes), static_cast<long long>(trials));
}

double two_sided_z(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) throw PreconditionError("confidence must lie in (0,1)");
    static const boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + confidence / 2.0);
}

ProbabilityEstimate wilson_estimate(std::size_t successes, std::size_t trials, double confidence) {
    if (successes > trials) throw PreconditionError("more successes than trials");
    ProbabilityEstimate e;
    e.successes = successes;
    e.trials = trials;
    e.confidence = confidence;
    const double z = two_sided_z(confidence);
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    // Clamp so the interval always contains the point estimate despite rounding.
    e.ci_low = successes == 0 ? 0.0 : std::min(ph, std::max(0.0, centre - half));
    e.ci_high = successes == trials ? 1.0 : std::max(ph, std::min(1.0, centre + half));
    return e;
}

} // namespace bootperc
