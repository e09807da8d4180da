#include "oracles.hpp"

#include "bootperc/engine.hpp"
#include "bootperc/error.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/snapshot.hpp"

#include <doctest.h>

using namespace bootperc;

namespace {

Configuration random_config(const Box& box, double p, PhiloxStream& rng) {
    Configuration c(box);
    for (std::size_t i = 0; i < c.size(); ++i) c.set(i, rng.uniform() < p);
    return c;
}

} // namespace

TEST_CASE("box layout is row-major with the last axis fastest") {
    const Box box({2, 3, 4});
    CHECK(box.volume() == 24);
    CHECK(box.stride(0) == 12);
    CHECK(box.stride(2) == 1);
    CHECK(box.index(std::vector<int>{1, 2, 3}) == 23);
    CHECK(box.coords(13) == IntVec{1, 0, 1});
    CHECK_THROWS_AS(box.index(std::vector<int>{2, 0, 0}), OutOfBounds);
    CHECK_THROWS_AS(box.index(std::vector<int>{0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(Box({3, 0}), InvalidSpec);
}

TEST_CASE("closure matches the naive sweep oracle") {
    PhiloxStream rng(11, 0);
    struct Case {
        std::vector<int> radii;
        int r;
        std::vector<int> sides;
    };
    const std::vector<Case> cases = {
        {{1, 1}, 2, {7, 6}},        {{1, 2}, 3, {6, 8}},        {{1, 1, 1}, 2, {4, 4, 5}},
        {{1, 1, 2}, 4, {5, 5, 6}},  {{1, 2, 3}, 5, {5, 6, 7}},  {{2, 2}, 3, {9, 9}},
    };
    for (const auto& cs : cases) {
        const ThresholdFamily f(NeighborhoodSpec(cs.radii), cs.r);
        for (int rep = 0; rep < 25; ++rep) {
            const double p = 0.05 + 0.3 * rng.uniform();
            const auto seed = random_config(Box(cs.sides), p, rng);
            const auto got = closure(f, seed);
            CHECK(got.cells() == oracle::naive_closure(cs.radii, cs.r, cs.sides, seed.cells()));
        }
    }
}

TEST_CASE("explicit and threshold engines agree, closed and torus") {
    PhiloxStream rng(12, 0);
    for (int r = 2; r <= 4; ++r) {
        const ThresholdFamily f(NeighborhoodSpec({1, 1, 2}), r);
        const auto e = f.to_explicit();
        for (auto boundary : {Boundary::Closed, Boundary::Torus}) {
            for (int rep = 0; rep < 10; ++rep) {
                const auto seed = random_config(Box({4, 5, 6}, boundary), 0.2, rng);
                CHECK(closure(f, seed) == closure(UpdateFamily(e), seed));
            }
        }
    }
}

TEST_CASE("closure is a fixed point of step and contains the seed") {
    PhiloxStream rng(13, 0);
    const ThresholdFamily f(NeighborhoodSpec({1, 2}), 3);
    for (int rep = 0; rep < 20; ++rep) {
        const auto seed = random_config(Box({10, 10}), 0.25, rng);
        const auto c = closure(f, seed);
        CHECK(seed.subset_of(c));
        CHECK(step(f, c) == c);
        CHECK(step(f, seed).subset_of(c));
    }
}

TEST_CASE("small hand examples") {
    const ThresholdFamily two(NeighborhoodSpec({1, 1}), 2);
    Configuration diag(Box::cube(2, 6));
    for (int i = 0; i < 6; ++i) diag.set_at(std::vector<int>{i, i});
    CHECK(percolates(two, diag));

    Configuration pair(Box::cube(2, 6));
    pair.set_at(std::vector<int>{0, 0});
    pair.set_at(std::vector<int>{1, 1});
    const auto c = closure(two, pair);
    CHECK(c.count() == 4);
    CHECK_FALSE(percolates(two, pair));

    Configuration empty(Box::cube(2, 4));
    ClosureWorkspace ws;
    const auto stats = closure_in_place(two, empty, ws);
    CHECK(stats.infected == 0);
    CHECK(stats.added == 0);
}

TEST_CASE("torus wraps the neighbourhood") {
    const ThresholdFamily two(NeighborhoodSpec({1, 1}), 2);
    Configuration c(Box({4, 4}, Boundary::Torus));
    c.set_at(std::vector<int>{0, 3});
    c.set_at(std::vector<int>{1, 0});
    // (0,0) sees (0,3) and (1,0) once the box wraps.
    CHECK(closure(two, c).infected_at(std::vector<int>{0, 0}));
    Configuration closed(Box({4, 4}));
    closed.cells() = c.cells();
    CHECK_FALSE(closure(two, closed).infected_at(std::vector<int>{0, 0}));
}

TEST_CASE("internally filled blocks ignore outside help") {
    const ThresholdFamily two(NeighborhoodSpec({1, 1}), 2);
    Configuration c(Box::cube(2, 6));
    c.set_at(std::vector<int>{2, 2});
    c.set_at(std::vector<int>{3, 3});
    CHECK(is_internally_filled(two, {{2, 2}, {2, 2}}, c));
    CHECK_FALSE(is_internally_filled(two, {{2, 2}, {3, 2}}, c));
    const auto sub = restrict_to_block(c, {{2, 2}, {2, 2}});
    CHECK(sub.count() == 2);
    CHECK_THROWS_AS(restrict_to_block(c, {{5, 5}, {2, 2}}), OutOfBounds);
}

TEST_CASE("dimension mismatch is reported") {
    const ThresholdFamily two(NeighborhoodSpec({1, 1}), 2);
    Configuration c(Box::cube(3, 3));
    CHECK_THROWS_AS(closure(two, c), DimensionMismatch);
}

TEST_CASE("snapshot round trip") {
    PhiloxStream rng(14, 0);
    for (auto boundary : {Boundary::Closed, Boundary::Torus}) {
        const auto c = random_config(Box({3, 7, 5}, boundary), 0.4, rng);
        CHECK(snapshot_from_string(snapshot_to_string(c)) == c);
    }
    Configuration full(Box({2, 2}));
    full.fill(true);
    CHECK(snapshot_to_string(full) == "BPGRID 2 2 2 closed\n0 4\n");
    CHECK_THROWS_AS(snapshot_from_string("BPGRID 2 2 2 closed\n0 5\n"), UsageError);
    CHECK_THROWS_AS(snapshot_from_string("GRID 2 2\n"), UsageError);
}
