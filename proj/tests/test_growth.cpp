#include "oracles.hpp"

#include "bootperc/error.hpp"
#include "bootperc/growth.hpp"

#include <doctest.h>

using namespace bootperc;

namespace {

Configuration strip_from_bits(std::uint32_t bits, int columns, int k) {
    Configuration c(Box({columns, k}));
    for (int i = 0; i < columns * k; ++i) c.set(static_cast<std::size_t>(i), (bits >> i) & 1u);
    return c;
}

} // namespace

TEST_CASE("find_s_pattern on a hand-made strip") {
    // s = 4, t = 1: column 0 needs 4 in a slot of length 4, column 1 needs 3 in a slot of length 3.
    Configuration c(Box({2, 9}));
    for (int j = 4; j < 8; ++j) c.set_at(std::vector<int>{0, j});
    for (int j = 2; j < 5; ++j) c.set_at(std::vector<int>{1, j});
    CHECK_FALSE(find_s_pattern(c, 4).has_value());  // rows 2..4 straddle the slots [0,3) and [3,6)
    for (int j = 5; j < 6; ++j) c.set_at(std::vector<int>{1, j});
    const auto hit = find_s_pattern(c, 4);
    REQUIRE(hit.has_value());
    CHECK(hit->column_offsets == std::vector<int>{1, 1});
    CHECK_THROWS_AS(find_s_pattern(Configuration(Box({1, 9})), 4), PreconditionError);
    CHECK_THROWS_AS(find_s_pattern(c, 1), PreconditionError);
}

TEST_CASE("find_s_pattern matches the slot oracle on small strips") {
    for (int s : {3, 4, 5}) {
        const int t = t_closed_form(s);
        for (int k = 1; k <= 5; ++k) {
            const int n = (t + 1) * k;
            for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
                const bool got = find_s_pattern(strip_from_bits(bits, t + 1, k), s).has_value();
                if (got != oracle::strip_has_pattern(bits, k, s, t)) {
                    FAIL("mismatch at s=" << s << " k=" << k << " bits=" << bits);
                }
            }
        }
    }
}

TEST_CASE("pattern probability closed values") {
    // s = 2, t = 0: one slot family of length 2 on k = 4 rows
    CHECK(pattern_probability_exact(2, 4, make_rational(1, 2)) == make_rational(7, 16));
    CHECK(pattern_probability_exact(3, 2, make_rational(1, 2)) == 0);
    // (1 - (7/8)^2) (1 - (3/4)^3)
    CHECK(pattern_probability_exact(3, 6, make_rational(1, 2)) == make_rational(15, 64) * make_rational(37, 64));
    CHECK(pattern_probability_exact(3, 6, Rational(1)) == 1);
    CHECK(pattern_probability_exact(3, 6, Rational(0)) == 0);
    CHECK_THROWS_AS(pattern_probability_exact(3, 6, make_rational(3, 2)), PreconditionError);
}

TEST_CASE("layer bound") {
    const ThresholdFamily f(NeighborhoodSpec({1, 2, 3}), 5);  // s = 2 <= b
    const Rational p = make_rational(1, 3);
    auto slot = [&](int len, int k) { return 1 - pow_rational(1 - pow_rational(p, len), k / len); };
    const auto bound = layer_fill_lower_bound(f, 3, 6, p);
    REQUIRE(bound.has_value());
    CHECK(*bound == slot(2, 6) * slot(1, 6) * slot(1, 6));
    CHECK_FALSE(layer_fill_lower_bound(ThresholdFamily(NeighborhoodSpec({1, 1, 3}), 6), 3, 6, p).has_value());
}

TEST_CASE("growth experiment stays above the layer bound") {
    const ThresholdFamily f(NeighborhoodSpec({1, 2, 3}), 5);
    SamplerOptions opt;
    opt.confidence = 0.999;
    const auto rep = growth_probability_experiment(f, {4, 8, 3}, 2, 1, 0.2, 4000, 17, opt);
    REQUIRE(rep.layer_bound.has_value());
    CHECK(rep.estimate.ci_high >= to_double(*rep.layer_bound));
    CHECK(rep.grown_extents == IntVec{4, 8, 4});
    CHECK(rep.conditioning == "fully-seeded-base conditional");
}

TEST_CASE("growth experiment edge cases and coupling") {
    const ThresholdFamily f(NeighborhoodSpec({1, 2, 3}), 5);
    const auto zero = growth_probability_experiment(f, {4, 8, 3}, 2, 0, 0.2, 50, 1);
    CHECK(zero.estimate.successes == 50);
    CHECK_THROWS_AS(growth_probability_experiment(f, {4, 8, 3}, 3, 1, 0.2, 10, 1), InvalidDirection);
    CHECK_THROWS_AS(growth_probability_experiment(f, {4, 8, 2}, 2, 1, 0.2, 10, 1), PreconditionError);
    std::size_t last = 0;
    for (double p : {0.05, 0.1, 0.2, 0.4}) {
        const auto rep = growth_probability_experiment(f, {4, 8, 3}, 2, 1, p, 500, 23);
        CHECK(rep.estimate.successes >= last);
        last = rep.estimate.successes;
    }
}

TEST_CASE("droplet without outside seeds stays put") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1, 2}), 3);
    CHECK(droplet_experiment(f, {4, 4, 4}, 8, 0.0, 5, 1).successes == 0);
}

TEST_CASE("droplet estimates are monotone under coupling") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1, 2}), 4);
    const auto lo = droplet_experiment(f, {4, 4, 8}, 16, 0.15, 200, 3);
    const auto hi = droplet_experiment(f, {4, 4, 8}, 16, 0.2, 200, 3);
    CHECK(lo.successes <= hi.successes);
}

TEST_CASE("droplet experiment") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    CHECK(droplet_experiment(f, {6, 6}, 6, 0.01, 20, 1).successes == 20);
    CHECK_THROWS_AS(droplet_experiment(f, {7, 2}, 6, 0.1, 10, 1), OutOfBounds);
    // A full 3x3 droplet plus one cell next to it extends the square; very sparse seeds rarely help.
    const auto est = droplet_experiment(f, {3, 3}, 12, 0.3, 400, 2);
    CHECK(est.successes > 0);
}
