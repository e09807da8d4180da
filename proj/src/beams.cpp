#include "bootperc/beams.hpp"

#include "bootperc/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace bootperc {

namespace {

int floor_div(int x, int m) {
    return x >= 0 ? x / m : -((-x + m - 1) / m);
}

std::uint64_t pack(const Cell2& c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c[0])) << 32) | static_cast<std::uint32_t>(c[1]);
}

void sort_unique(std::vector<Cell2>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool has(const std::vector<Cell2>& sorted, const Cell2& c) {
    return std::binary_search(sorted.begin(), sorted.end(), c);
}

struct Rect {
    int x0, y0, x1, y1;  // inclusive
};

Rect bbox(const std::vector<Cell2>& cells) {
    Rect r{cells[0][0], cells[0][1], cells[0][0], cells[0][1]};
    for (const auto& c : cells) {
        r.x0 = std::min(r.x0, c[0]);
        r.y0 = std::min(r.y0, c[1]);
        r.x1 = std::max(r.x1, c[0]);
        r.y1 = std::max(r.y1, c[1]);
    }
    return r;
}

std::vector<Cell2> family_steps(int a, int b) {
    std::vector<Cell2> steps;
    for (int k = 1; k <= a; ++k) {
        steps.push_back({-k, 0});
        steps.push_back({k, 0});
    }
    for (int k = 1; k <= b; ++k) {
        steps.push_back({0, -k});
        steps.push_back({0, k});
    }
    return steps;
}

std::vector<Cell2> to_blocks(const std::vector<Cell2>& cells, int block_edge) {
    std::vector<Cell2> out;
    out.reserve(cells.size());
    for (const auto& c : cells) out.push_back({floor_div(c[0], block_edge), floor_div(c[1], block_edge)});
    sort_unique(out);
    return out;
}

std::vector<Cell2> to_fine(const std::vector<Cell2>& blocks, int block_edge) {
    std::vector<Cell2> out;
    out.reserve(blocks.size() * static_cast<std::size_t>(block_edge * block_edge));
    for (const auto& q : blocks) {
        for (int i = 0; i < block_edge; ++i) {
            for (int j = 0; j < block_edge; ++j) out.push_back({q[0] * block_edge + i, q[1] * block_edge + j});
        }
    }
    sort_unique(out);
    return out;
}

int z_gap(const Beam& x, const Beam& y) {
    return std::max({0, y.base_level - x.top_level(), x.base_level - y.top_level()});
}

} // namespace

ThresholdFamily cross_section_family(int a, int b) {
    return ThresholdFamily(NeighborhoodSpec({a, b}), a + b + 1);
}

bool Beam::contains(const Site3& x) const {
    return x[2] >= base_level && x[2] <= top_level() && has(H, {x[0], x[1]});
}

std::vector<Site3> Beam::sites() const {
    std::vector<Site3> out;
    out.reserve(volume());
    for (const auto& c : H) {
        for (int z = base_level; z <= top_level(); ++z) out.push_back({c[0], c[1], z});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Cell2> closure_cells(const std::vector<Cell2>& cells, const ThresholdFamily& family2d) {
    if (family2d.dims() != 2) throw DimensionMismatch("cross-section family must be two-dimensional");
    if (family2d.threshold() <= family2d.c()) {
        throw PreconditionError("planar closure of finite sets needs r > max radius");
    }
    if (cells.empty()) return {};
    const Rect r = bbox(cells);
    Box box({r.x1 - r.x0 + 1, r.y1 - r.y0 + 1});
    Configuration config(box);
    for (const auto& c : cells) {
        const int xy[2] = {c[0] - r.x0, c[1] - r.y0};
        config.set_at(xy);
    }
    ClosureWorkspace ws;
    closure_in_place(family2d, config, ws);
    std::vector<Cell2> out;
    for (std::size_t i = 0; i < box.volume(); ++i) {
        if (config.infected(i)) {
            const auto xy = box.coords(i);
            out.push_back({xy[0] + r.x0, xy[1] + r.y0});
        }
    }
    return out;  // layout order is lexicographic
}

bool family_connected(const std::vector<Cell2>& cells, int a, int b) {
    std::vector<Cell2> sorted = cells;
    sort_unique(sorted);
    if (sorted.size() <= 1) return true;
    const auto steps = family_steps(a, b);
    std::vector<std::uint8_t> seen(sorted.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const Cell2 u = sorted[stack.back()];
        stack.pop_back();
        for (const auto& s : steps) {
            const Cell2 v{u[0] + s[0], u[1] + s[1]};
            auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
            if (it == sorted.end() || *it != v) continue;
            const auto j = static_cast<std::size_t>(it - sorted.begin());
            if (seen[j]) continue;
            seen[j] = 1;
            ++reached;
            stack.push_back(j);
        }
    }
    return reached == sorted.size();
}

// ---------------------------------------------------------------------------

CoarseGrid make_coarse_grid(const Box& fine, int block_edge) {
    if (block_edge < 1) throw PreconditionError("block edge must be positive");
    CoarseGrid g{block_edge, fine.sides(), {}};
    for (int L : fine.sides()) {
        if (L % block_edge != 0) {
            throw PreconditionError("block edge " + std::to_string(block_edge) + " does not divide side " +
                                    std::to_string(L));
        }
        g.coarse_sides.push_back(L / block_edge);
    }
    return g;
}

Configuration coarsen(const Configuration& fine, int block_edge) {
    const CoarseGrid g = make_coarse_grid(fine.box(), block_edge);
    const Box coarse_box(g.coarse_sides, fine.box().boundary());
    std::vector<std::uint8_t> all(coarse_box.volume(), 1);
    std::vector<int> x(static_cast<std::size_t>(fine.box().dims()));
    std::vector<int> q(x.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        if (fine.infected(i)) continue;
        fine.box().coords(i, x);
        for (std::size_t j = 0; j < x.size(); ++j) q[j] = x[j] / block_edge;
        all[coarse_box.index(q)] = 0;
    }
    return Configuration(coarse_box, std::move(all));
}

Configuration refine(const Configuration& coarse, int block_edge) {
    if (block_edge < 1) throw PreconditionError("block edge must be positive");
    std::vector<int> sides = coarse.box().sides();
    for (auto& L : sides) L *= block_edge;
    const Box fine_box(sides, coarse.box().boundary());
    Configuration out(fine_box);
    std::vector<int> x(sides.size()), q(sides.size());
    for (std::size_t i = 0; i < fine_box.volume(); ++i) {
        fine_box.coords(i, x);
        for (std::size_t j = 0; j < x.size(); ++j) q[j] = x[j] / block_edge;
        if (coarse.infected_at(q)) out.set(i);
    }
    return out;
}

Configuration coarse_closure(const ThresholdFamily& family2d, const Configuration& fine) {
    if (family2d.dims() != 2 || fine.box().dims() != 2) {
        throw DimensionMismatch("coarse bootstrap percolation is planar");
    }
    const int block_edge = family2d.spec().radius(1) + 1;
    return refine(closure(family2d, coarsen(fine, block_edge)), block_edge);
}

// ---------------------------------------------------------------------------

bool strongly_connected(const std::vector<IntVec>& s1, const std::vector<IntVec>& s2, int c) {
    if (c < 0) throw PreconditionError("c must be nonnegative");
    std::vector<IntVec> pts = s1;
    pts.insert(pts.end(), s2.begin(), s2.end());
    if (pts.size() <= 1) return true;
    const std::size_t d = pts[0].size();
    for (const auto& p : pts) {
        if (p.size() != d) throw DimensionMismatch("points of different dimensions");
    }
    const int reach = 2 * c;
    const int edge = reach + 1;

    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    std::map<IntVec, std::vector<std::size_t>> buckets;
    auto bucket_of = [&](const IntVec& p) {
        IntVec b(d);
        for (std::size_t i = 0; i < d; ++i) b[i] = floor_div(p[i], edge);
        return b;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) buckets[bucket_of(pts[i])].push_back(i);

    // Points within reach lie in the same or an adjacent bucket.
    IntVec offset(d, -1);
    for (;;) {
        for (const auto& [key, members] : buckets) {
            IntVec other = key;
            for (std::size_t i = 0; i < d; ++i) other[i] += offset[i];
            auto it = buckets.find(other);
            if (it == buckets.end()) continue;
            for (auto u : members) {
                for (auto v : it->second) {
                    bool near = true;
                    for (std::size_t i = 0; i < d && near; ++i) near = std::abs(pts[u][i] - pts[v][i]) <= reach;
                    if (near) parent[find(u)] = find(v);
                }
            }
        }
        std::size_t i = 0;
        while (i < d && offset[i] == 1) offset[i++] = -1;
        if (i == d) break;
        ++offset[i];
    }
    const std::size_t root = find(0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (find(i) != root) return false;
    }
    return true;
}

bool strongly_connected(const Beam& x, const Beam& y, int c) {
    const int reach = 2 * c;
    if (z_gap(x, y) > reach) return false;
    const Beam& small = x.H.size() <= y.H.size() ? x : y;
    const Beam& large = x.H.size() <= y.H.size() ? y : x;
    if (small.H.size() * large.H.size() <= 4096) {
        for (const auto& u : small.H) {
            for (const auto& v : large.H) {
                if (std::abs(u[0] - v[0]) <= reach && std::abs(u[1] - v[1]) <= reach) return true;
            }
        }
        return false;
    }
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(large.H.size() * 2);
    for (const auto& v : large.H) cells.insert(pack(v));
    for (const auto& u : small.H) {
        for (int dx = -reach; dx <= reach; ++dx) {
            for (int dy = -reach; dy <= reach; ++dy) {
                if (cells.count(pack({u[0] + dx, u[1] + dy}))) return true;
            }
        }
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

GeneratedBeam generate_core(std::vector<Cell2> h1, std::vector<Cell2> h2, int zlo, int zhi, int a, int b,
                            int block_edge) {
    if (block_edge < 1) throw PreconditionError("block edge must be positive");
    sort_unique(h1);
    sort_unique(h2);
    if (h1.empty() && h2.empty()) throw PreconditionError("cannot generate a beam from empty sets");
    if (!family_connected(h1, a, b)) throw PreconditionError("projection H_1 is disconnected");
    if (!family_connected(h2, a, b)) throw PreconditionError("projection H_2 is disconnected");

    const ThresholdFamily fam = cross_section_family(a, b);
    GeneratedBeam out;
    out.H1 = h1;
    out.H2 = h2;
    out.block_edge = block_edge;

    std::vector<Cell2> u = h1;
    u.insert(u.end(), h2.begin(), h2.end());
    sort_unique(u);
    std::vector<Cell2> h = closure_cells(u, fam);

    if (!family_connected(h, a, b)) {
        // Shortest paths between the two sets are monotone along each axis, so
        // they stay inside the bounding box of H_1 ∪ H_2.
        const Rect r = bbox(u);
        const int w = r.x1 - r.x0 + 1;
        const int ht = r.y1 - r.y0 + 1;
        auto id = [&](const Cell2& c) { return static_cast<std::size_t>(c[0] - r.x0) * ht + (c[1] - r.y0); };
        auto inside = [&](const Cell2& c) { return c[0] >= r.x0 && c[0] <= r.x1 && c[1] >= r.y0 && c[1] <= r.y1; };
        std::vector<int> dist(static_cast<std::size_t>(w) * ht, -1);
        std::deque<Cell2> queue;
        for (const auto& c : h2) {
            dist[id(c)] = 0;
            queue.push_back(c);
        }
        const auto steps = family_steps(a, b);
        while (!queue.empty()) {
            const Cell2 c = queue.front();
            queue.pop_front();
            for (const auto& s : steps) {
                const Cell2 v{c[0] + s[0], c[1] + s[1]};
                if (!inside(v) || dist[id(v)] >= 0) continue;
                dist[id(v)] = dist[id(c)] + 1;
                queue.push_back(v);
            }
        }
        Cell2 cur = h1[0];
        for (const auto& c : h1) {
            if (dist[id(c)] < dist[id(cur)]) cur = c;
        }
        while (dist[id(cur)] > 1) {
            std::optional<Cell2> next;
            for (const auto& s : steps) {
                const Cell2 v{cur[0] + s[0], cur[1] + s[1]};
                if (inside(v) && dist[id(v)] == dist[id(cur)] - 1 && (!next || v < *next)) next = v;
            }
            cur = *next;
            out.path.push_back(cur);
        }
        u.insert(u.end(), out.path.begin(), out.path.end());
        sort_unique(u);
        h = closure_cells(u, fam);
    }

    out.beam.H = block_edge == 1 ? h : to_fine(h, block_edge);
    out.beam.base_level = zlo;
    out.beam.height = zhi - zlo + 1;
    return out;
}

} // namespace

GeneratedBeam generate_beam(const std::vector<Site3>& s1, const std::vector<Site3>& s2, int a, int b,
                            int block_edge) {
    if (block_edge < 1) throw PreconditionError("block edge must be positive");
    std::vector<Cell2> h1, h2;
    int zlo = std::numeric_limits<int>::max();
    int zhi = std::numeric_limits<int>::min();
    for (const auto& x : s1) {
        h1.push_back({floor_div(x[0], block_edge), floor_div(x[1], block_edge)});
        zlo = std::min(zlo, x[2]);
        zhi = std::max(zhi, x[2]);
    }
    for (const auto& x : s2) {
        h2.push_back({floor_div(x[0], block_edge), floor_div(x[1], block_edge)});
        zlo = std::min(zlo, x[2]);
        zhi = std::max(zhi, x[2]);
    }
    return generate_core(std::move(h1), std::move(h2), zlo, zhi, a, b, block_edge);
}

GeneratedBeam generate_beam(const Beam& s1, const Beam& s2, int a, int b, int block_edge) {
    return generate_core(to_blocks(s1.H, block_edge), to_blocks(s2.H, block_edge),
                         std::min(s1.base_level, s2.base_level), std::max(s1.top_level(), s2.top_level()), a, b,
                         block_edge);
}

BeamValidity check_beam(const Beam& beam, int a, int b, int block_edge) {
    BeamValidity v;
    const ThresholdFamily fam = cross_section_family(a, b);
    std::vector<Cell2> h = beam.H;
    sort_unique(h);
    v.closed = closure_cells(h, fam) == h;
    v.connected = !h.empty() && family_connected(h, a, b);
    if (block_edge > 1) {
        const auto blocks = to_blocks(h, block_edge);
        v.block_aligned = to_fine(blocks, block_edge) == h;
        v.coarse_closed = closure_cells(blocks, fam) == blocks;
        v.coarse_connected = family_connected(blocks, a, b);
    }
    return v;
}

// ---------------------------------------------------------------------------

std::string to_string(MergeRule rule) {
    return rule == MergeRule::ClosureGrowth ? "closure-growth" : "strong-connectivity";
}

bool union_closure_grows(const Beam& x, const Beam& y, const ThresholdFamily& family) {
    if (family.dims() != 3) throw DimensionMismatch("beams live in three dimensions");
    if (x.volume() + y.volume() < static_cast<std::size_t>(family.threshold())) return false;
    Rect r = bbox(x.H);
    const Rect ry = bbox(y.H);
    r = {std::min(r.x0, ry.x0), std::min(r.y0, ry.y0), std::max(r.x1, ry.x1), std::max(r.y1, ry.y1)};
    const int z0 = std::min(x.base_level, y.base_level);
    const int z1 = std::max(x.top_level(), y.top_level());
    // r > c keeps the closure of a finite set inside its bounding box.
    Box box({r.x1 - r.x0 + 1, r.y1 - r.y0 + 1, z1 - z0 + 1});
    Configuration config(box);
    for (const Beam* s : {&x, &y}) {
        for (const auto& c : s->H) {
            for (int z = s->base_level; z <= s->top_level(); ++z) {
                const int p[3] = {c[0] - r.x0, c[1] - r.y0, z - z0};
                config.set_at(p);
            }
        }
    }
    ClosureWorkspace ws;
    return closure_in_place(family, config, ws).added > 0;
}

BeamCollection beams_process(const Configuration& A, const ThresholdFamily& family, const BeamsOptions& options) {
    const Box& box = A.box();
    if (box.dims() != 3 || family.dims() != 3) throw DimensionMismatch("the beams process is three-dimensional");
    if (family.threshold() < family.c() + 1) throw PreconditionError("the beams process needs r >= c+1");
    const int a = family.a();
    const int b = family.b();
    const int c = family.c();
    const int edge = b + 1;
    make_coarse_grid(Box({box.side(0), box.side(1)}), edge);

    BeamCollection out;
    out.rule = options.rule;
    out.block_edge = edge;

    const int L0 = box.side(0);
    const int L1 = box.side(1);
    std::vector<Beam> beams;
    for (std::size_t i = 0; i < box.volume(); ++i) {
        if (!A.infected(i)) continue;
        const auto x = box.coords(i);
        beams.push_back(Beam{{{x[0], x[1]}}, x[2], 1});
    }
    const std::size_t n = beams.size();
    out.initial_count = n;
    std::vector<std::uint8_t> alive(n, 1);

    auto cell_id = [&](const Cell2& q) { return static_cast<std::size_t>(q[0]) * L1 + q[1]; };
    std::vector<std::vector<std::uint32_t>> index(static_cast<std::size_t>(L0) * L1);
    auto index_add = [&](std::size_t key) {
        for (const auto& q : beams[key].H) index[cell_id(q)].push_back(static_cast<std::uint32_t>(key));
    };
    auto index_remove = [&](std::size_t key) {
        for (const auto& q : beams[key].H) {
            auto& v = index[cell_id(q)];
            v.erase(std::find(v.begin(), v.end(), static_cast<std::uint32_t>(key)));
        }
    };
    for (std::size_t k = 0; k < n; ++k) index_add(k);

    const int reach = 2 * c;
    const std::size_t window = static_cast<std::size_t>(2 * reach + 1) * (2 * reach + 1);
    std::vector<std::uint32_t> cell_stamp(index.size(), 0);
    std::vector<std::uint32_t> key_stamp(n, 0);
    std::uint32_t stamp = 0;
    std::vector<std::uint8_t> mask(index.size()), tmp(index.size());

    // Alive beams strongly connected to beams[k], unsorted.
    auto strong_partners = [&](std::size_t k) {
        const Beam& x = beams[k];
        ++stamp;
        std::vector<std::size_t> found;
        auto visit = [&](std::size_t cell) {
            for (auto j : index[cell]) {
                if (j == k || key_stamp[j] == stamp) continue;
                if (z_gap(x, beams[j]) > reach) continue;
                key_stamp[j] = stamp;
                found.push_back(j);
            }
        };
        if (x.H.size() * window < index.size()) {
            for (const auto& q : x.H) {
                for (int dx = -reach; dx <= reach; ++dx) {
                    const int px = q[0] + dx;
                    if (px < 0 || px >= L0) continue;
                    for (int dy = -reach; dy <= reach; ++dy) {
                        const int py = q[1] + dy;
                        if (py < 0 || py >= L1) continue;
                        const std::size_t cell = cell_id({px, py});
                        if (cell_stamp[cell] == stamp) continue;
                        cell_stamp[cell] = stamp;
                        visit(cell);
                    }
                }
            }
        } else {
            // Separable l_inf dilation of H by `reach` over the whole cross-section.
            std::fill(mask.begin(), mask.end(), 0);
            for (const auto& q : x.H) mask[cell_id(q)] = 1;
            std::fill(tmp.begin(), tmp.end(), 0);
            for (int px = 0; px < L0; ++px) {
                for (int py = 0; py < L1; ++py) {
                    if (!mask[cell_id({px, py})]) continue;
                    for (int dx = std::max(0, px - reach); dx <= std::min(L0 - 1, px + reach); ++dx) {
                        tmp[cell_id({dx, py})] = 1;
                    }
                }
            }
            std::fill(mask.begin(), mask.end(), 0);
            for (int px = 0; px < L0; ++px) {
                for (int py = 0; py < L1; ++py) {
                    if (!tmp[cell_id({px, py})]) continue;
                    for (int dy = std::max(0, py - reach); dy <= std::min(L1 - 1, py + reach); ++dy) {
                        mask[cell_id({px, dy})] = 1;
                    }
                }
            }
            for (std::size_t cell = 0; cell < mask.size(); ++cell) {
                if (mask[cell]) visit(cell);
            }
        }
        return found;
    };

    auto best_partner = [&](std::size_t k) -> std::optional<std::size_t> {
        auto cand = strong_partners(k);
        if (cand.empty()) return std::nullopt;
        std::sort(cand.begin(), cand.end());
        if (options.rule == MergeRule::StrongConnectivity) return cand.front();
        for (auto j : cand) {
            if (union_closure_grows(beams[k], beams[j], family)) return j;
        }
        return std::nullopt;
    };

    // Invariant: no qualifying pair has its smaller key below cur. A merge only
    // changes the beam at the kept key, so afterwards the smallest qualifying pair
    // involves that beam or starts at a key >= it.
    std::size_t cur = 0;
    while (cur < n) {
        if (!alive[cur]) {
            ++cur;
            continue;
        }
        const auto j = best_partner(cur);
        if (!j) {
            ++cur;
            continue;
        }
        const std::size_t keep = std::min(cur, *j);
        const std::size_t drop = std::max(cur, *j);
        GeneratedBeam g = generate_beam(beams[keep], beams[drop], a, b, edge);

        MergeRecord rec;
        rec.kept_key = keep;
        rec.removed_key = drop;
        rec.kept_volume = beams[keep].volume();
        rec.removed_volume = beams[drop].volume();
        rec.path = std::move(g.path);
        rec.h_size = g.beam.H.size();
        rec.base_level = g.beam.base_level;
        rec.height = g.beam.height;

        index_remove(keep);
        index_remove(drop);
        alive[drop] = 0;
        beams[drop] = Beam{};
        beams[keep] = std::move(g.beam);
        index_add(keep);
        if (options.on_merge) options.on_merge(rec, beams[keep]);
        out.log.push_back(std::move(rec));
        cur = keep;
    }

    for (std::size_t k = 0; k < n; ++k) {
        if (alive[k]) out.beams.emplace_back(k, std::move(beams[k]));
    }
    return out;
}

bool stop_condition_holds(const BeamCollection& collection, const ThresholdFamily& family) {
    const int reach = 2 * family.c();
    struct Entry {
        Rect r;
        const Beam* beam;
    };
    std::vector<Entry> entries;
    for (const auto& [key, beam] : collection.beams) {
        if (!beam.H.empty()) entries.push_back({bbox(beam.H), &beam});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.r.x0 < y.r.x0; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size() && entries[j].r.x0 <= entries[i].r.x1 + reach; ++j) {
            const Rect& p = entries[i].r;
            const Rect& q = entries[j].r;
            if (q.y0 > p.y1 + reach || p.y0 > q.y1 + reach) continue;
            if (!strongly_connected(*entries[i].beam, *entries[j].beam, family.c())) continue;
            if (collection.rule == MergeRule::StrongConnectivity) return false;
            if (union_closure_grows(*entries[i].beam, *entries[j].beam, family)) return false;
        }
    }
    return true;
}

std::vector<AlScale> al_check(const std::vector<MergeRecord>& log, const std::vector<std::pair<int, int>>& scales,
                              double lambda) {
    std::vector<AlScale> out;
    for (const auto& [h, k] : scales) {
        AlScale s{h, k, false, std::nullopt};
        for (std::size_t i = 0; i < log.size(); ++i) {
            const double w = log[i].height;
            const double hs = static_cast<double>(log[i].h_size);
            if (w <= lambda * k && hs <= lambda * h && (w >= k || hs >= h)) {
                s.found = true;
                s.witness = i;
                break;
            }
        }
        out.push_back(s);
    }
    return out;
}

} // namespace bootperc
