// Exhaustive counts of small beams H x [w] (H 4-connected) inside a window.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bootperc {

struct BeamCount {
    std::uint64_t count = 0;
    double bound = 0.0;                        // L^4 (3e)^h_max, L = largest window side
    std::vector<std::uint64_t> by_size;        // by_size[n] = placed polyominoes with n cells, n = 0..h_max
};

// Counts connected H x [w] with |H| <= h_max and w <= k_max in the window
// [X] x [Y] x [Z]. With anchored intervals each H contributes min(k_max, Z)
// intervals starting at level 0; otherwise every placement [z, z+w) is counted.
// h_max <= 8. Throws BoundExceeded if the count exceeds the bound.
BeamCount enumerate_beams_small(int h_max, int k_max, std::array<int, 3> window, bool all_offsets = false);

// Fixed polyominoes (4-connected cell sets) placed inside an X x Y rectangle,
// by size up to n_max, by Redelmeier's method rooted at each set's smallest cell.
std::vector<std::uint64_t> count_placed_polyominoes(int X, int Y, int n_max);

} // namespace bootperc
