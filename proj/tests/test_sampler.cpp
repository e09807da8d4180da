#include "oracles.hpp"

#include "bootperc/error.hpp"
#include "bootperc/sampler.hpp"

#include <doctest.h>

using namespace bootperc;

TEST_CASE("sampled seeds are reproducible and coupled in p") {
    const Box box = Box::cube(3, 6);
    const auto a = sample_configuration(box, {0.2, 9, 3, true});
    CHECK(a == sample_configuration(box, {0.2, 9, 3, true}));
    CHECK_FALSE(a == sample_configuration(box, {0.2, 9, 4, true}));
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto lo = sample_configuration(box, {0.1, 9, trial, true});
        const auto hi = sample_configuration(box, {0.3, 9, trial, true});
        CHECK(lo.subset_of(hi));
    }
    CHECK(sample_configuration(box, {1.0, 9, 0, true}).full());
    CHECK_THROWS_AS(sample_configuration(box, {0.0, 9, 0, true}), PreconditionError);
    CHECK_THROWS_AS(sample_configuration(box, {1.5, 9, 0, true}), PreconditionError);
}

TEST_CASE("fill_bernoulli accepts the closed interval") {
    Configuration c(Box::cube(2, 5));
    fill_bernoulli(c, CellField(1), 0, 0.0);
    CHECK(c.none());
    fill_bernoulli(c, CellField(1), 0, 1.0);
    CHECK(c.full());
}

TEST_CASE("cell cap") {
    CHECK_THROWS_AS(check_cells(Box::cube(3, 10), 999), ResourceLimit);
    CHECK_NOTHROW(check_cells(Box::cube(3, 10), 1000));
    SamplerOptions opt;
    opt.max_cells = 100;
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    CHECK_THROWS_AS(percolation_probability(f, 11, 0.5, 10, 1, opt), ResourceLimit);
}

TEST_CASE("percolation probability is invariant under the worker count") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    SamplerOptions one, four;
    four.workers = 4;
    const auto a = percolation_probability(f, 8, 0.15, 300, 77, one);
    const auto b = percolation_probability(f, 8, 0.15, 300, 77, four);
    CHECK(a.successes == b.successes);
    CHECK(percolation_probability(f, 8, 1.0, 10, 77).successes == 10);
}

TEST_CASE("percolation probability agrees with exhaustive enumeration on [2]^2") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    const auto exact = to_double(oracle::exact_percolation({1, 1}, 2, 2, make_rational(2, 5)));
    // 2p^2 q^2 + 4 p^3 q + p^4 at p = 2/5
    CHECK(exact == doctest::Approx(2 * 0.16 * 0.36 + 4 * 0.064 * 0.6 + 0.0256));
    SamplerOptions opt;
    opt.confidence = 0.999;
    const auto est = percolation_probability(f, 2, 0.4, 20000, 5, opt);
    CHECK(est.ci_low <= exact);
    CHECK(exact <= est.ci_high);
}

TEST_CASE("independent sampling changes the draws but not the distribution") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    SamplerOptions ind;
    ind.coupled = false;
    ind.confidence = 0.999;
    const auto est = percolation_probability(f, 2, 0.4, 20000, 5, ind);
    const double exact = 2 * 0.16 * 0.36 + 4 * 0.064 * 0.6 + 0.0256;
    CHECK(est.ci_low <= exact);
    CHECK(exact <= est.ci_high);
}

TEST_CASE("critical length brackets the target") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    const auto lc = critical_length(f, 0.2, 400, 3);
    REQUIRE(lc.bracketed());
    CHECK(*lc.L_upper == lc.L_lower + 1);
    for (const auto& probe : lc.trace) {
        if (probe.L == *lc.L_upper) CHECK(probe.estimate.point() >= 0.5);
        if (probe.L == lc.L_lower) CHECK(probe.estimate.point() < 0.5);
    }
    LcOptions coarse;
    coarse.rel_width = 0.25;
    const auto lc2 = critical_length(f, 0.2, 400, 3, coarse);
    REQUIRE(lc2.bracketed());
    CHECK(*lc2.L_upper - lc2.L_lower <= 0.25 * *lc2.L_upper + 1);
}

TEST_CASE("critical length reports an unreachable target") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    LcOptions opt;
    opt.L_max = 16;
    const auto lc = critical_length(f, 0.001, 50, 3, opt);
    CHECK_FALSE(lc.bracketed());
    CHECK_FALSE(lc.warnings.empty());
    CHECK_THROWS_AS(critical_length(ThresholdFamily(NeighborhoodSpec({1, 1}), 3), 0.1, 10, 1), NotApplicable);
}

TEST_CASE("scaling probe preconditions") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    CHECK_THROWS_AS(scaling_probe(f, {0.1, 0.2}, 10, 1), PreconditionError);
    CHECK_THROWS_AS(scaling_probe(ThresholdFamily(NeighborhoodSpec({1, 1}), 1), {0.2}, 10, 1), NotApplicable);
    const auto table = scaling_probe(f, {0.3, 0.2}, 200, 1);
    REQUIRE(table.rows.size() == 2);
    CHECK(table.order.exponent == 1);
    CHECK(table.rows[0].ratio.has_value());
}
