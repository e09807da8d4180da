// Beams, coarse bootstrap percolation and the coarse beams process for
// three-dimensional N_r^{a,b,c} families with r > c.
//
// A beam is H x [w]: H a finite planar set, closed under the cross-section
// family N_m^{a,b} with m = a+b+1 and connected in that family's graph
// (u ~ v iff u - v is a neighbourhood vector), stacked over w consecutive levels.
#pragma once

#include "bootperc/engine.hpp"
#include "bootperc/family.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bootperc {

using Cell2 = std::array<int, 2>;
using Site3 = std::array<int, 3>;

// N_{a+b+1}^{a,b} in two dimensions.
ThresholdFamily cross_section_family(int a, int b);

struct Beam {
    std::vector<Cell2> H;  // sorted, unique
    int base_level = 0;    // lowest e_3 coordinate
    int height = 1;        // w

    int top_level() const { return base_level + height - 1; }
    std::size_t volume() const { return H.size() * static_cast<std::size_t>(height); }
    bool contains(const Site3& x) const;
    std::vector<Site3> sites() const;
};

// ---------------------------------------------------------------------------
// Planar helpers

// Closure of a finite planar set under a 2D threshold family with r > max radius
// (the closure then stays in the bounding box).
std::vector<Cell2> closure_cells(const std::vector<Cell2>& cells, const ThresholdFamily& family2d);

// Connectivity in the graph u ~ v iff u - v in {±k e_1 : k <= a} ∪ {±k e_2 : k <= b}.
bool family_connected(const std::vector<Cell2>& cells, int a, int b);

// ---------------------------------------------------------------------------
// Coarse bootstrap percolation on blocks of edge b+1 anchored at the origin.

struct CoarseGrid {
    int block_edge = 1;
    IntVec fine_sides;
    IntVec coarse_sides;
};

// Throws PreconditionError unless block_edge divides every side.
CoarseGrid make_coarse_grid(const Box& fine, int block_edge);

// A block is infected iff every one of its cells is.
Configuration coarsen(const Configuration& fine, int block_edge);
Configuration refine(const Configuration& coarse, int block_edge);

// Runs family2d on the rescaled lattice of (b+1)-blocks, b = family2d's e_2 radius,
// and returns the result on the fine grid.
Configuration coarse_closure(const ThresholdFamily& family2d, const Configuration& fine);

// ---------------------------------------------------------------------------
// Strong connectivity: connected in the graph with edges ||u - v||_inf <= 2c.

bool strongly_connected(const std::vector<IntVec>& s1, const std::vector<IntVec>& s2, int c);

// Beams are strongly connected individually, so this is the union test.
bool strongly_connected(const Beam& x, const Beam& y, int c);

// ---------------------------------------------------------------------------
// Generated beams

struct GeneratedBeam {
    Beam beam;
    std::vector<Cell2> H1;    // projections, in lattice units
    std::vector<Cell2> H2;
    std::vector<Cell2> path;  // interior of the chosen minimal path, in lattice units
    int block_edge = 1;
};

// The beam generated by S1 ∪ S2. block_edge = 1 builds B(S1 ∪ S2) on Z^2;
// block_edge = b+1 builds the coarse beam B_b(S1 ∪ S2) on blocks anchored at the
// origin. P is empty when the closure of H1 ∪ H2 is already connected; otherwise
// it is the lexicographically smallest shortest path from H1 to H2. The height
// interval is the smallest one covering both sets. Throws PreconditionError on a
// disconnected projection.
GeneratedBeam generate_beam(const std::vector<Site3>& s1, const std::vector<Site3>& s2, int a, int b,
                            int block_edge = 1);
GeneratedBeam generate_beam(const Beam& s1, const Beam& s2, int a, int b, int block_edge = 1);

struct BeamValidity {
    bool closed = false;            // fine H is a fixed point of N_m^{a,b}
    bool connected = false;         // fine H connected in the N_{a,b} graph
    bool coarse_closed = true;      // block set closed under coarse N_m^{a,b} (block_edge > 1)
    bool coarse_connected = true;   // block set connected in the coarse N_{a,b} graph
    bool block_aligned = true;      // H is a union of whole blocks
};

BeamValidity check_beam(const Beam& beam, int a, int b, int block_edge = 1);

// ---------------------------------------------------------------------------
// The coarse beams process

enum class MergeRule {
    ClosureGrowth,       // strongly connected and the union is not closed under N_r^{a,b,c}
    StrongConnectivity,  // strongly connected
};

std::string to_string(MergeRule rule);

struct MergeRecord {
    std::size_t kept_key = 0;     // the merged beam takes this (smaller) key
    std::size_t removed_key = 0;
    std::size_t kept_volume = 0;  // |S_1|, |S_2| before the merge
    std::size_t removed_volume = 0;
    std::vector<Cell2> path;      // coarse path interior, in block units
    std::size_t h_size = 0;       // |H| of the covered beam, in fine cells
    int base_level = 0;
    int height = 0;
};

struct BeamCollection {
    MergeRule rule = MergeRule::ClosureGrowth;
    int block_edge = 1;
    std::size_t initial_count = 0;
    std::vector<std::pair<std::size_t, Beam>> beams;  // final members, by key
    std::vector<MergeRecord> log;
};

struct BeamsOptions {
    MergeRule rule = MergeRule::ClosureGrowth;
    // Called with each record and the covered beam it produced.
    std::function<void(const MergeRecord&, const Beam&)> on_merge;
};

// Starts from the singletons of A (keys in lexicographic site order) and
// repeatedly merges the qualifying pair with the smallest (key, key) into the
// coarse beam B_b(S1 ∪ S2). A must live on a 3D box whose first two sides are
// divisible by b+1; requires r >= c+1.
BeamCollection beams_process(const Configuration& A, const ThresholdFamily& family, const BeamsOptions& options = {});

// True iff no pair of members qualifies for a merge under the rule.
bool stop_condition_holds(const BeamCollection& collection, const ThresholdFamily& family);

// Closure of x ∪ y under the 3D family differs from x ∪ y.
bool union_closure_grows(const Beam& x, const Beam& y, const ThresholdFamily& family);

// ---------------------------------------------------------------------------
// Intermediate-scale check over covered beams

struct AlScale {
    int h = 0;
    int k = 0;
    bool found = false;
    std::optional<std::size_t> witness;  // index into the log
};

// For each (h, k): a covered beam with w <= lambda k, |H| <= lambda h, and w >= k or |H| >= h.
std::vector<AlScale> al_check(const std::vector<MergeRecord>& log, const std::vector<std::pair<int, int>>& scales,
                              double lambda);

} // namespace bootperc
