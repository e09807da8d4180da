// Update families for anisotropic bootstrap percolation: the threshold family
// N_r^{a_1,...,a_d}, explicit rule families, stable directions and the
// criticality classification.
#pragma once

#include "bootperc/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace bootperc {

using IntVec = std::vector<int>;

// Radii (a_1,...,a_d) of the axis-aligned neighbourhood, sorted nondecreasing.
class NeighborhoodSpec {
public:
    explicit NeighborhoodSpec(std::vector<int> radii);

    int dims() const { return static_cast<int>(radii_.size()); }
    const std::vector<int>& radii() const { return radii_; }
    int radius(int axis) const { return radii_.at(static_cast<std::size_t>(axis)); }
    int max_radius() const { return radii_.back(); }
    int radius_sum() const;
    std::size_t vector_count() const { return 2 * static_cast<std::size_t>(radius_sum()); }

    friend bool operator==(const NeighborhoodSpec&, const NeighborhoodSpec&) = default;

private:
    std::vector<int> radii_;
};

// {±e_i, ±2e_i, ..., ±a_i e_i : i in [d]}, ordered by axis, then by offset -a_i..-1, 1..a_i.
std::vector<IntVec> neighborhood_vectors(const NeighborhoodSpec& spec);

class ExplicitFamily;

// N_r^{a_1,...,a_d}: all r-subsets of the neighbourhood. Never materialized by the
// engine; infection is decided by counting infected neighbours.
class ThresholdFamily {
public:
    ThresholdFamily(NeighborhoodSpec spec, int r);

    const NeighborhoodSpec& spec() const { return spec_; }
    int dims() const { return spec_.dims(); }
    int threshold() const { return r_; }

    // Three-dimensional aliases a = a_1, b = a_2, c = a_3 (c is a_d in general).
    int a() const { return spec_.radius(0); }
    int b() const { return spec_.radius(1); }
    int c() const { return spec_.max_radius(); }
    // s = r - c
    int s() const { return r_ - c(); }
    // m = a + b + 1, threshold of the subcritical cross-section family
    int m() const { return a() + b() + 1; }

    // "N[a,b,c]r=R"
    std::string literal() const;

    // Materialize all C(2*sum(a_i), r) rules; throws ResourceLimit above max_rules.
    ExplicitFamily to_explicit(std::size_t max_rules = 100000) const;

    friend bool operator==(const ThresholdFamily&, const ThresholdFamily&) = default;

private:
    NeighborhoodSpec spec_;
    int r_;
};

// Arbitrary finite family of finite rules X subset of Z^d \ {0}.
class ExplicitFamily {
public:
    ExplicitFamily(int dims, std::vector<std::vector<IntVec>> rules);

    int dims() const { return dims_; }
    const std::vector<std::vector<IntVec>>& rules() const { return rules_; }

    // Union of all rule vectors, deduplicated and sorted.
    std::vector<IntVec> support_vectors() const;

private:
    int dims_;
    std::vector<std::vector<IntVec>> rules_;
};

using UpdateFamily = std::variant<ThresholdFamily, ExplicitFamily>;

int family_dims(const UpdateFamily& family);
std::string describe(const UpdateFamily& family);

// A direction of S^{d-1} represented by a gcd-reduced integer vector.
class RationalDirection {
public:
    explicit RationalDirection(IntVec components);

    const IntVec& components() const { return v_; }
    int dims() const { return static_cast<int>(v_.size()); }
    // Bitmask of axes with a nonzero component.
    unsigned support_mask() const;

    friend bool operator==(const RationalDirection&, const RationalDirection&) = default;

private:
    IntVec v_;
};

// No rule X satisfies X subset of H_u = {x : <x,u> < 0}.
bool is_stable_direction(const ThresholdFamily& family, const RationalDirection& u);
bool is_stable_direction(const ExplicitFamily& family, const RationalDirection& u);
bool is_stable_direction(const UpdateFamily& family, const RationalDirection& u);

enum class Criticality { Supercritical, Critical, Subcritical };

std::string to_string(Criticality c);

// Closed-form classification of N_r^{a_1..a_d}: subcritical iff r > sum a_i,
// supercritical iff r <= a_d, critical otherwise.
Criticality classify(const ThresholdFamily& family);

enum class StableCase {
    AxesOnly,       // {±e_1, ±e_2, ±e_3}
    E3PlusCircle3,  // {±e_3} ∪ S1_3
    Circles23,      // S1_2 ∪ S1_3
    Circles123,     // S1_1 ∪ S1_2 ∪ S1_3
    AllSphere,
    Empty,
    Probed,         // r <= c: no closed-form table, described by stable supports
};

std::string to_string(StableCase c);

struct StableSetDescription {
    StableCase stable_case = StableCase::Empty;
    Criticality criticality = Criticality::Supercritical;
    // Axis-support bitmasks (bit i = axis e_{i+1}) whose directions are stable.
    // For N_r families stability depends on the support only.
    std::vector<unsigned> stable_supports;

    // Membership of u in the symbolic set. Named cases use their set description,
    // Probed uses stable_supports.
    bool contains(const RationalDirection& u) const;
    std::string describe() const;
};

// Stable set of N_r^{a,b,c}; requires 1 <= a <= b <= c and 1 <= r <= 2(a+b+c).
StableSetDescription stable_set_symbolic(int a, int b, int c, int r);

enum class EvidenceStatus { Theorem, UpperBoundOnly, Conjecture };

std::string to_string(EvidenceStatus s);

// log L_c (level 1) or log log L_c (level 2) = Theta/O(p^-exponent (log 1/p)^log_power).
struct ScalingOrder {
    Rational exponent;
    Rational log_power;
    int level = 1;
    EvidenceStatus status = EvidenceStatus::Theorem;

    std::string formula() const;
};

// Three-dimensional families; throws NotApplicable unless c < r <= a+b+c.
ScalingOrder predicted_log_lc_order(int a, int b, int c, int r);
// Dispatches on dimension (2 or 3).
ScalingOrder predicted_log_lc_order(const ThresholdFamily& family);

} // namespace bootperc
