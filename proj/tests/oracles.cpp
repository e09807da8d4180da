#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <queue>

namespace oracle {

namespace {

std::vector<int> decode(std::size_t idx, const std::vector<int>& sides) {
    std::vector<int> x(sides.size());
    for (std::size_t i = sides.size(); i-- > 0;) {
        x[i] = static_cast<int>(idx % static_cast<std::size_t>(sides[i]));
        idx /= static_cast<std::size_t>(sides[i]);
    }
    return x;
}

std::size_t encode(const std::vector<int>& x, const std::vector<int>& sides) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < sides.size(); ++i) idx = idx * static_cast<std::size_t>(sides[i]) + static_cast<std::size_t>(x[i]);
    return idx;
}

} // namespace

Cells naive_closure(const std::vector<int>& radii, int r, const std::vector<int>& sides, Cells cells) {
    for (bool changed = true; changed;) {
        changed = false;
        Cells next = cells;
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            if (cells[idx]) continue;
            const auto x = decode(idx, sides);
            int count = 0;
            for (std::size_t i = 0; i < sides.size(); ++i) {
                for (int k = -radii[i]; k <= radii[i]; ++k) {
                    if (k == 0) continue;
                    auto y = x;
                    y[i] += k;
                    if (y[i] < 0 || y[i] >= sides[i]) continue;
                    count += cells[encode(y, sides)] ? 1 : 0;
                }
            }
            if (count >= r) {
                next[idx] = 1;
                changed = true;
            }
        }
        cells = std::move(next);
    }
    return cells;
}

bootperc::Rational exact_percolation(const std::vector<int>& radii, int r, int L, const bootperc::Rational& p) {
    const std::vector<int> sides(radii.size(), L);
    std::size_t n = 1;
    for (int s : sides) n *= static_cast<std::size_t>(s);
    bootperc::Rational total(0);
    const bootperc::Rational q = 1 - p;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Cells cells(n);
        int k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cells[i] = (mask >> i) & 1u;
            k += cells[i];
        }
        const auto closed = naive_closure(radii, r, sides, cells);
        if (std::all_of(closed.begin(), closed.end(), [](std::uint8_t c) { return c != 0; })) {
            total += bootperc::pow_rational(p, k) * bootperc::pow_rational(q, static_cast<int>(n) - k);
        }
    }
    return total;
}

int open_half_space_count(const std::vector<int>& radii, const std::vector<int>& u) {
    int count = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (int k = -radii[i]; k <= radii[i]; ++k) {
            if (k != 0 && k * u[i] < 0) ++count;
        }
    }
    return count;
}

bool in_named_set(int which, const std::vector<int>& u) {
    int nonzero = 0;
    for (int x : u) nonzero += x != 0;
    const bool axis = nonzero == 1;
    switch (which) {
    case 0: return axis;
    case 1: return (axis && u[2] != 0) || u[2] == 0;
    case 2: return u[1] == 0 || u[2] == 0;
    case 3: return u[0] == 0 || u[1] == 0 || u[2] == 0;
    }
    std::abort();
}

int table_case(int a, int b, int c, int r) {
    if (r <= a + b) return 0;
    if (r <= a + c) return 1;
    if (r <= b + c) return 2;
    return 3;
}

bool strip_has_pattern(std::uint32_t bits, int k, int s, int t) {
    for (int i = 0; i <= t; ++i) {
        const int len = s - i;
        bool column_ok = false;
        for (int m = 0; (m + 1) * len <= k && !column_ok; ++m) {
            bool all = true;
            for (int j = m * len; j < (m + 1) * len; ++j) all = all && ((bits >> (i * k + j)) & 1u);
            column_ok = all;
        }
        if (!column_ok) return false;
    }
    return true;
}

std::uint64_t brute_polyominoes(int X, int Y, int n) {
    const int cells = X * Y;
    std::uint64_t count = 0;
    std::vector<int> pick(static_cast<std::size_t>(n));
    // Iterate over increasing n-tuples of cell indices.
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == n) {
            std::vector<int> seen{pick[0]};
            std::vector<char> in(static_cast<std::size_t>(cells), 0), vis(static_cast<std::size_t>(cells), 0);
            for (int c : pick) in[static_cast<std::size_t>(c)] = 1;
            vis[static_cast<std::size_t>(pick[0])] = 1;
            for (std::size_t h = 0; h < seen.size(); ++h) {
                const int x = seen[h] / Y, y = seen[h] % Y;
                const int nb[4][2] = {{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}};
                for (const auto& q : nb) {
                    if (q[0] < 0 || q[0] >= X || q[1] < 0 || q[1] >= Y) continue;
                    const int id = q[0] * Y + q[1];
                    if (in[static_cast<std::size_t>(id)] && !vis[static_cast<std::size_t>(id)]) {
                        vis[static_cast<std::size_t>(id)] = 1;
                        seen.push_back(id);
                    }
                }
            }
            if (static_cast<int>(seen.size()) == n) ++count;
            return;
        }
        for (int c = start; c < cells; ++c) {
            pick[static_cast<std::size_t>(depth)] = c;
            rec(c + 1, depth + 1);
        }
    };
    if (n == 0) return 0;
    rec(0, 0);
    return count;
}

bool linf_connected(const std::vector<std::vector<int>>& points, int reach) {
    if (points.empty()) return true;
    std::vector<char> vis(points.size(), 0);
    std::queue<std::size_t> q;
    q.push(0);
    vis[0] = 1;
    std::size_t reached = 1;
    while (!q.empty()) {
        const auto i = q.front();
        q.pop();
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (vis[j]) continue;
            int dist = 0;
            for (std::size_t k = 0; k < points[i].size(); ++k) dist = std::max(dist, std::abs(points[i][k] - points[j][k]));
            if (dist <= reach) {
                vis[j] = 1;
                ++reached;
                q.push(j);
            }
        }
    }
    return reached == points.size();
}

} // namespace oracle
