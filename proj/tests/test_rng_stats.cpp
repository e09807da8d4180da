#include "bootperc/parallel.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace bootperc;

// Published Philox4x32-10 known-answer vectors.
TEST_CASE("philox known answers") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("unit doubles") {
    CHECK(to_unit_double(0, 0) == 0.0);
    CHECK(to_unit_double(0xffffffff, 0xffffffff) < 1.0);
    CHECK(to_unit_double(0x80000000, 0) == 0.5);
}

TEST_CASE("cell field is a pure function of seed, trial and cell") {
    const CellField f(42), g(42), h(43);
    CHECK(f.uniform(3, 17) == g.uniform(3, 17));
    CHECK(f.uniform(3, 17) != h.uniform(3, 17));
    CHECK(f.uniform(3, 17) != f.uniform(4, 17));
    double sum = 0;
    for (std::uint64_t i = 0; i < 20000; ++i) sum += f.uniform(0, i);
    CHECK(std::abs(sum / 20000 - 0.5) < 0.01);
    const auto a = CellField::independent(42, 0.3), b = CellField::independent(42, 0.4);
    CHECK(a.uniform(0, 0) != b.uniform(0, 0));
}

TEST_CASE("philox stream is deterministic per (seed, stream)") {
    PhiloxStream x(5, 1), y(5, 1), z(5, 2);
    for (int i = 0; i < 10; ++i) {
        const auto v = x();
        CHECK(v == y());
        CHECK(v != z());
    }
    CHECK(mix64(0) != mix64(1));
}

TEST_CASE("wilson interval") {
    CHECK(two_sided_z(0.95) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(two_sided_z(0.997) == doctest::Approx(2.96774).epsilon(1e-5));

    // Score interval written out: (p + z^2/2n ± z sqrt(p(1-p)/n + z^2/4n^2)) / (1 + z^2/n)
    const double z = 1.959963984540054, n = 40, p = 13.0 / 40;
    const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
    const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
    const auto e = wilson_estimate(13, 40, 0.95);
    CHECK(e.ci_low == doctest::Approx(centre - half).epsilon(1e-12));
    CHECK(e.ci_high == doctest::Approx(centre + half).epsilon(1e-12));
    CHECK(e.point() == doctest::Approx(p));
    CHECK(e.point_exact() == make_rational(13, 40));

    CHECK(wilson_estimate(0, 10).ci_low == 0.0);
    CHECK(wilson_estimate(10, 10).ci_high == 1.0);
    const auto none = wilson_estimate(0, 0);
    CHECK(none.ci_low == 0.0);
    CHECK(none.ci_high == 1.0);
}

TEST_CASE("parallel_map output does not depend on the worker count") {
    auto fn = [](std::size_t i, unsigned) { return static_cast<int>(i * i % 97); };
    const auto one = parallel_map<int>(1000, 1, fn);
    CHECK(parallel_map<int>(1000, 4, fn) == one);
    CHECK(parallel_map<int>(0, 4, fn).empty());
    CHECK_THROWS_AS(parallel_map<int>(100, 3,
                                      [](std::size_t i, unsigned) -> int {
                                          if (i == 50) throw std::runtime_error("boom");
                                          return 0;
                                      }),
                    std::runtime_error);
}
