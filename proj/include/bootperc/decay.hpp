// Cluster of the origin for subcritical planar families and its size tail.
#pragma once

#include "bootperc/beams.hpp"
#include "bootperc/sampler.hpp"

#include <optional>
#include <vector>

namespace bootperc {

struct ClusterRecord {
    std::vector<Cell2> cells;  // relative to the origin; empty if the origin stays healthy
    bool censored = false;     // the cluster touches the window boundary
};

// W x W window with the origin at cell (W/2, W/2). The closure runs inside the
// window; the cluster is the component of the origin in the family graph of the
// closure. Requires a subcritical 2D threshold family.
ClusterRecord cluster_of_origin(const ThresholdFamily& family2d, int window, const CellField& field,
                                std::uint64_t trial, double epsilon);

struct DecayRow {
    int n = 0;
    std::size_t at_least = 0;  // trials with |K| >= n, censored trials included
    ProbabilityEstimate tail;
};

struct DecayTable {
    std::vector<DecayRow> rows;
    std::size_t trials = 0;
    std::size_t censored = 0;
    double censored_fraction = 0.0;
    std::optional<double> slope;      // least squares of log tail against n over rows with tail > 0
    std::optional<double> intercept;
};

struct DecayOptions {
    double censor_cap = 0.01;
    SamplerOptions sampler;
};

// Throws WindowTooSmall when the censored fraction exceeds censor_cap.
DecayTable decay_experiment(const ThresholdFamily& family2d, double epsilon, int window, const std::vector<int>& n_grid,
                            std::size_t trials, std::uint64_t seed, const DecayOptions& options = {});

} // namespace bootperc
