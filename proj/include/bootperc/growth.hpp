// s-patterns in two-dimensional strips and droplet-growth experiments.
#pragma once

#include "bootperc/alpha.hpp"
#include "bootperc/engine.hpp"
#include "bootperc/sampler.hpp"

#include <optional>
#include <string>

namespace bootperc {

// Column i (0-based) of the strip holds its run S_i on rows
// m_i(s-i), ..., m_i(s-i) + (s-i) - 1.
struct PatternHit {
    int s = 0;
    std::vector<int> column_offsets;  // m_0, ..., m_t
};

// strip: 2D configuration with axis 0 = column (at least t_s+1 of them, extra
// columns ignored) and axis 1 = row. Returns the lexicographically smallest
// offsets, i.e. the lowest fully infected slot of each column.
std::optional<PatternHit> find_s_pattern(const Configuration& strip, int s);

// prod_{i=0}^{t} (1 - (1 - p^{s-i})^{floor(k/(s-i))}); s >= 2, k >= 0, p in [0,1].
Rational pattern_probability_exact(int s, int k, const Rational& p);

// Lower bound on P(new top layer of an l x h x w block fills | block full) for a
// three-dimensional N_r family with s = r - c <= b. Sweeps columns j = 0..l-1 along
// e_1: once columns < j are full, column j fills from any run of s - min(j,a)
// infected cells on the disjoint slots of its h rows. The first t_s+1 factors
// coincide with pattern_probability_exact when a >= t_s. Empty when s > b.
std::optional<Rational> layer_fill_lower_bound(const ThresholdFamily& family, int l, int h, const Rational& p);

struct GrowthReport {
    IntVec base_extents;
    IntVec grown_extents;
    int axis = 0;
    int increment = 1;
    double p = 0.0;
    ProbabilityEstimate estimate;
    std::string conditioning = "fully-seeded-base conditional";
    std::optional<Rational> layer_bound;  // set for one new layer along the last axis of a 3D family
};

// Fully infects the base block at the origin, draws Bernoulli(p) cells on the
// `increment` new layers along `axis`, and closes inside the grown block.
GrowthReport growth_probability_experiment(const ThresholdFamily& family, const IntVec& base, int axis, int increment,
                                           double p, std::size_t trials, std::uint64_t seed,
                                           const SamplerOptions& options = {});

// Fully infects the droplet block at the origin corner of [L]^d, Bernoulli(p)
// elsewhere, and estimates the percolation probability.
ProbabilityEstimate droplet_experiment(const UpdateFamily& family, const IntVec& droplet, int L, double p,
                                       std::size_t trials, std::uint64_t seed, const SamplerOptions& options = {});

} // namespace bootperc
