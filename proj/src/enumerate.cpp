#include "bootperc/enumerate.hpp"

#include "bootperc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bootperc {

namespace {

struct Redelmeier {
    int X, Y, n_max;
    int root = 0;
    std::vector<std::uint8_t> seen;
    std::vector<std::uint64_t> counts;

    void neighbours(int cell, std::vector<int>& out) const {
        const int x = cell / Y;
        const int y = cell % Y;
        if (x > 0) out.push_back(cell - Y);
        if (x + 1 < X) out.push_back(cell + Y);
        if (y > 0) out.push_back(cell - 1);
        if (y + 1 < Y) out.push_back(cell + 1);
    }

    void grow(std::vector<int> untried, int size) {
        std::vector<int> fresh;
        while (!untried.empty()) {
            const int cell = untried.back();
            untried.pop_back();
            ++counts[static_cast<std::size_t>(size + 1)];
            if (size + 1 == n_max) continue;
            fresh.clear();
            std::vector<int> nb;
            neighbours(cell, nb);
            for (int v : nb) {
                if (v > root && !seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    fresh.push_back(v);
                }
            }
            std::vector<int> next = untried;
            next.insert(next.end(), fresh.begin(), fresh.end());
            grow(std::move(next), size + 1);
            for (int v : fresh) seen[static_cast<std::size_t>(v)] = 0;
        }
    }
};

} // namespace

std::vector<std::uint64_t> count_placed_polyominoes(int X, int Y, int n_max) {
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(std::max(n_max, 0)) + 1, 0);
    if (X <= 0 || Y <= 0 || n_max <= 0) return counts;
    Redelmeier r{X, Y, n_max, 0, std::vector<std::uint8_t>(static_cast<std::size_t>(X) * Y, 0), counts};
    for (int root = 0; root < X * Y; ++root) {
        r.root = root;
        r.seen[static_cast<std::size_t>(root)] = 1;
        r.grow({root}, 0);
        r.seen[static_cast<std::size_t>(root)] = 0;
    }
    return r.counts;
}

BeamCount enumerate_beams_small(int h_max, int k_max, std::array<int, 3> window, bool all_offsets) {
    if (h_max > 8) throw PreconditionError("h_max above 8 is not tractable");
    if (h_max < 0 || k_max < 0) throw PreconditionError("h_max and k_max must be nonnegative");
    for (int s : window) {
        if (s < 0) throw PreconditionError("window sides must be nonnegative");
    }
    BeamCount out;
    const int L = std::max({window[0], window[1], window[2]});
    out.bound = std::pow(static_cast<double>(L), 4) * std::pow(3.0 * std::numbers::e, h_max);
    out.by_size = count_placed_polyominoes(window[0], window[1], h_max);

    const int Z = window[2];
    std::uint64_t intervals = 0;
    for (int w = 1; w <= std::min(k_max, Z); ++w) intervals += all_offsets ? static_cast<std::uint64_t>(Z - w + 1) : 1;
    std::uint64_t shapes = 0;
    for (std::size_t n = 1; n < out.by_size.size(); ++n) shapes += out.by_size[n];
    out.count = shapes * intervals;
    if (static_cast<double>(out.count) > out.bound) {
        throw BoundExceeded("beam count " + std::to_string(out.count) + " exceeds L^4 (3e)^h");
    }
    return out;
}

} // namespace bootperc
