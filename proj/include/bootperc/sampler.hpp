// Bernoulli initial conditions, Monte Carlo percolation probabilities and the
// critical-length search.
#pragma once

#include "bootperc/engine.hpp"
#include "bootperc/family.hpp"
#include "bootperc/rng.hpp"
#include "bootperc/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bootperc {

inline constexpr std::size_t kDefaultMaxCells = std::size_t{1} << 28;

struct SamplerOptions {
    unsigned workers = 1;  // 0 = hardware concurrency
    std::size_t max_cells = kDefaultMaxCells;
    bool coupled = true;   // share one uniform field across all p
    double confidence = 0.95;
};

struct BernoulliSeeding {
    double p = 0.5;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    bool coupled = true;
};

CellField make_field(std::uint64_t seed, double p, bool coupled);

// Each cell infected independently with probability p in (0,1].
Configuration sample_configuration(const Box& box, const BernoulliSeeding& seeding);

// Overwrites every cell of config from the field; p in [0,1].
void fill_bernoulli(Configuration& config, const CellField& field, std::uint64_t trial, double p);

// Throws ResourceLimit when the box exceeds max_cells.
void check_cells(const Box& box, std::size_t max_cells);

// Fraction of trials whose seed percolates [L]^d (closed boundary).
ProbabilityEstimate percolation_probability(const UpdateFamily& family, int L, double p, std::size_t trials,
                                           std::uint64_t seed, const SamplerOptions& options = {});

struct LcProbe {
    int L = 0;
    ProbabilityEstimate estimate;
};

struct LcOptions {
    double target = 0.5;
    int L_start = 1;
    int L_max = 4096;
    // Bisection stops once (hi - lo) <= rel_width * hi; 0 asks for adjacent integers.
    double rel_width = 0.0;
};

struct LcEstimate {
    int L_lower = 0;                // largest probed L with P < target (0: none probed)
    std::optional<int> L_upper;     // smallest probed L with P >= target; empty when not bracketed
    std::vector<LcProbe> trace;     // every evaluation, in probe order
    bool non_monotone = false;      // some L1 < L2 with P(L1) >= target > P(L2)
    std::vector<std::string> warnings;

    bool bracketed() const { return L_upper.has_value(); }
};

// Doubling from L_start until P >= target, then bisection. Reaching L_max or the
// cell cap first is reported through warnings and an empty L_upper.
// Subcritical threshold families throw NotApplicable.
LcEstimate critical_length(const UpdateFamily& family, double p, std::size_t trials, std::uint64_t seed,
                           const LcOptions& lc = {}, const SamplerOptions& options = {});

struct ScalingRow {
    double p = 0.0;
    LcEstimate lc;
    // log L_upper (level 1) or log log L_upper (level 2) over p^-e (log 1/p)^k;
    // empty when the bracket is missing or the logarithm is not positive.
    std::optional<double> ratio;
};

struct ScalingTable {
    ScalingOrder order;
    std::vector<ScalingRow> rows;
};

// p_list must be strictly decreasing; the family must be critical.
ScalingTable scaling_probe(const ThresholdFamily& family, const std::vector<double>& p_list, std::size_t trials,
                           std::uint64_t seed, const LcOptions& lc = {}, const SamplerOptions& options = {});

} // namespace bootperc
