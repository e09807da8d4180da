#include "oracles.hpp"

#include "bootperc/alpha.hpp"
#include "bootperc/error.hpp"
#include "bootperc/family.hpp"
#include "bootperc/family_io.hpp"

#include <doctest.h>

using namespace bootperc;

namespace {

std::vector<IntVec> probes3() {
    std::vector<IntVec> out;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
                const int nz = (x != 0) + (y != 0) + (z != 0);
                if (nz == 1 || nz == 2) out.push_back({x, y, z});
            }
    return out;
}

} // namespace

TEST_CASE("family literal parsing") {
    const auto f = parse_family_literal("N[1,2,4]r=6");
    CHECK(f.a() == 1);
    CHECK(f.b() == 2);
    CHECK(f.c() == 4);
    CHECK(f.threshold() == 6);
    CHECK(f.s() == 2);
    CHECK(f.m() == 4);
    CHECK(f.literal() == "N[1,2,4]r=6");
    CHECK(parse_family_literal(" N [ 1 , 1 ] r = 2 ").dims() == 2);
    CHECK_THROWS_AS(parse_family_literal("N[1,2"), UsageError);
    CHECK_THROWS_AS(parse_family_literal("M[1]r=1"), UsageError);
    CHECK_THROWS_AS(parse_family_literal("N[2,1,3]r=4"), InvalidSpec);
    CHECK_THROWS_AS(parse_family_literal("N[1,1,1]r=0"), InvalidSpec);
}

TEST_CASE("neighbourhood vectors") {
    const auto v = neighborhood_vectors(NeighborhoodSpec({1, 2}));
    REQUIRE(v.size() == 6);
    CHECK(v[0] == IntVec{-1, 0});
    CHECK(v[2] == IntVec{0, -2});
    CHECK(v[5] == IntVec{0, 2});
}

TEST_CASE("explicit family round trip") {
    const ExplicitFamily f(2, {{{1, 0}, {-1, 0}}, {{0, 1}, {0, -1}}});
    const auto g = parse_explicit_family(explicit_family_to_json(f));
    CHECK(g.dims() == 2);
    CHECK(g.rules() == f.rules());
    CHECK(f.support_vectors().size() == 4);
    CHECK_THROWS_AS(parse_explicit_family("{\"dims\": 2"), UsageError);
    CHECK_THROWS_AS(parse_explicit_family("{\"dims\": 2}"), UsageError);
}

TEST_CASE("to_explicit materializes all r-subsets") {
    const ThresholdFamily f(NeighborhoodSpec({1, 1}), 2);
    CHECK(f.to_explicit().rules().size() == 6);  // C(4,2)
    const ThresholdFamily big(NeighborhoodSpec({4, 4, 4}), 12);
    CHECK_THROWS_AS(big.to_explicit(1000), ResourceLimit);
}

TEST_CASE("classification") {
    auto cls = [](std::vector<int> a, int r) { return classify(ThresholdFamily(NeighborhoodSpec(a), r)); };
    CHECK(cls({1, 1}, 1) == Criticality::Supercritical);
    CHECK(cls({1, 1}, 2) == Criticality::Critical);
    CHECK(cls({1, 1}, 3) == Criticality::Subcritical);
    CHECK(cls({1, 2}, 4) == Criticality::Subcritical);
    CHECK(cls({1, 2, 4}, 4) == Criticality::Supercritical);
    CHECK(cls({1, 2, 4}, 7) == Criticality::Critical);
    CHECK(cls({1, 1, 1}, 4) == Criticality::Subcritical);
}

TEST_CASE("stable set table examples") {
    auto s = stable_set_symbolic(1, 2, 4, 5);
    CHECK(s.stable_case == StableCase::E3PlusCircle3);
    CHECK(s.criticality == Criticality::Critical);
    s = stable_set_symbolic(1, 2, 4, 6);
    CHECK(s.stable_case == StableCase::Circles23);
    CHECK(s.describe() == "S1_2 ∪ S1_3");
    CHECK(stable_set_symbolic(2, 3, 4, 5).stable_case == StableCase::AxesOnly);
    s = stable_set_symbolic(1, 1, 1, 4);
    CHECK(s.stable_case == StableCase::AllSphere);
    CHECK(s.criticality == Criticality::Subcritical);
    CHECK_THROWS_AS(stable_set_symbolic(2, 1, 3, 4), InvalidSpec);
}

TEST_CASE("stable directions agree with the half-space count") {
    for (int a = 1; a <= 2; ++a)
        for (int b = a; b <= 2; ++b)
            for (int c = b; c <= 3; ++c)
                for (int r = 1; r <= a + b + c + 1; ++r) {
                    const ThresholdFamily f(NeighborhoodSpec({a, b, c}), r);
                    for (const auto& u : probes3()) {
                        const bool expected = oracle::open_half_space_count({a, b, c}, u) < r;
                        CHECK(is_stable_direction(f, RationalDirection(u)) == expected);
                        IntVec u3 = u;
                        for (auto& x : u3) x *= 3;
                        CHECK(is_stable_direction(f, RationalDirection(u3)) == expected);
                    }
                }
}

TEST_CASE("threshold and explicit stability agree when enumeration is small") {
    for (int r = 1; r <= 4; ++r) {
        const ThresholdFamily f(NeighborhoodSpec({1, 1, 2}), r);
        const auto e = f.to_explicit();
        for (const auto& u : probes3()) {
            CHECK(is_stable_direction(f, RationalDirection(u)) == is_stable_direction(e, RationalDirection(u)));
        }
    }
}

TEST_CASE("probed case for r <= c describes the probes") {
    const auto s = stable_set_symbolic(1, 2, 4, 3);
    CHECK(s.stable_case == StableCase::Probed);
    CHECK(s.criticality == Criticality::Supercritical);
    const ThresholdFamily f(NeighborhoodSpec({1, 2, 4}), 3);
    for (const auto& u : probes3()) {
        CHECK(s.contains(RationalDirection(u)) == is_stable_direction(f, RationalDirection(u)));
    }
}

TEST_CASE("rational directions") {
    CHECK(RationalDirection({2, -4, 0}).components() == IntVec{1, -2, 0});
    CHECK(RationalDirection({0, 3, 3}).support_mask() == 0b110u);
    CHECK_THROWS(RationalDirection({0, 0, 0}));
}

TEST_CASE("predicted orders") {
    auto o = predicted_log_lc_order(1, 2, 3, 5);
    CHECK(o.exponent == 2);
    CHECK(o.log_power == 0);
    CHECK(o.level == 1);
    CHECK(o.status == EvidenceStatus::Theorem);
    o = predicted_log_lc_order(1, 2, 4, 6);
    CHECK(o.exponent == 2);
    CHECK(o.log_power == 2);
    CHECK(o.status == EvidenceStatus::Theorem);
    o = predicted_log_lc_order(3, 3, 3, 6);
    CHECK(o.exponent == make_rational(5, 3));
    CHECK(o.log_power == 0);
    CHECK(o.status == EvidenceStatus::UpperBoundOnly);
    o = predicted_log_lc_order(1, 1, 2, 4);
    CHECK(o.level == 2);
    CHECK(o.exponent == 1);
    CHECK_THROWS_AS(predicted_log_lc_order(1, 2, 4, 8), NotApplicable);
    CHECK_THROWS_AS(predicted_log_lc_order(1, 2, 4, 4), NotApplicable);
}

TEST_CASE("t_s and alpha_s routes agree") {
    for (int s = 2; s <= 300; ++s) {
        CAPTURE(s);
        const int t = t_closed_form(s);
        CHECK(t == t_by_maximality(s));
        CHECK(alpha_closed_form(s, t) == alpha_quotient(s, t));
    }
    CHECK_THROWS(alpha_t(1));
}

TEST_CASE("alpha_s is an integer exactly at s = (t+1)(t+4)/2") {
    for (int s = 2; s <= 200; ++s) {
        const auto e = alpha_t(s);
        CAPTURE(s);
        CHECK(is_integer(e.alpha) == (2 * s == (e.t + 1) * (e.t + 4)));
    }
}
