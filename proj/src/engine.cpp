#include "bootperc/engine.hpp"

#include "bootperc/error.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace bootperc {

std::string to_string(Boundary b) {
    return b == Boundary::Torus ? "torus" : "closed";
}

// ---------------------------------------------------------------------------
// Box

Box::Box(std::vector<int> sides, Boundary boundary) : sides_(std::move(sides)), boundary_(boundary) {
    if (sides_.empty()) throw InvalidSpec("box needs at least one dimension");
    strides_.assign(sides_.size(), 1);
    std::size_t volume = 1;
    for (std::size_t i = sides_.size(); i-- > 0;) {
        if (sides_[i] < 1) throw InvalidSpec("box sides must be positive");
        strides_[i] = volume;
        const auto side = static_cast<std::size_t>(sides_[i]);
        if (volume > std::numeric_limits<std::size_t>::max() / side) {
            throw ResourceLimit("box volume overflows the address space");
        }
        volume *= side;
    }
    volume_ = volume;
}

Box Box::cube(int dims, int side, Boundary boundary) {
    if (dims < 1) throw InvalidSpec("box needs at least one dimension");
    return Box(std::vector<int>(static_cast<std::size_t>(dims), side), boundary);
}

std::size_t Box::index(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != dims()) throw DimensionMismatch("coordinate dimension mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 0 || coords[i] >= sides_[i]) throw OutOfBounds("coordinate outside box");
        idx += static_cast<std::size_t>(coords[i]) * strides_[i];
    }
    return idx;
}

void Box::coords(std::size_t index, std::span<int> out) const {
    for (std::size_t i = 0; i < sides_.size(); ++i) {
        out[i] = static_cast<int>(index / strides_[i]);
        index %= strides_[i];
    }
}

IntVec Box::coords(std::size_t index) const {
    IntVec out(sides_.size());
    coords(index, out);
    return out;
}

bool Box::contains(std::span<const int> coords) const {
    if (static_cast<int>(coords.size()) != dims()) return false;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] < 0 || coords[i] >= sides_[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Configuration

Configuration::Configuration(Box box) : box_(std::move(box)), cells_(box_.volume(), 0) {}

Configuration::Configuration(Box box, std::vector<std::uint8_t> cells)
    : box_(std::move(box)), cells_(std::move(cells)) {
    if (cells_.size() != box_.volume()) {
        throw DimensionMismatch("cell grid has " + std::to_string(cells_.size()) + " entries, box volume is " +
                                std::to_string(box_.volume()));
    }
    for (auto& c : cells_) c = c ? 1 : 0;
}

std::size_t Configuration::count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

void Configuration::fill(bool value) {
    std::fill(cells_.begin(), cells_.end(), value ? 1 : 0);
}

bool Configuration::subset_of(const Configuration& other) const {
    if (!(box_ == other.box_)) throw DimensionMismatch("subset test on different boxes");
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i] && !other.cells_[i]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Neighbour arithmetic

namespace {

void check_dims(int family_dims, const Box& box) {
    if (family_dims != box.dims()) {
        throw DimensionMismatch("family has d=" + std::to_string(family_dims) + ", box has d=" +
                                std::to_string(box.dims()));
    }
}

// Index of coords + offset, or false if it leaves a closed box.
bool shifted_index(const Box& box, std::span<const int> coords, std::span<const int> offset, std::size_t& out) {
    std::size_t idx = 0;
    const bool torus = box.boundary() == Boundary::Torus;
    for (int i = 0; i < box.dims(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        int t = coords[ui] + offset[ui];
        const int side = box.side(i);
        if (torus) {
            t %= side;
            if (t < 0) t += side;
        } else if (t < 0 || t >= side) {
            return false;
        }
        idx += static_cast<std::size_t>(t) * box.stride(i);
    }
    out = idx;
    return true;
}

// Calls fn(neighbour_index) for every neighbourhood vector v with y + v inside the box
// (wrapping on a torus). Vectors are visited with multiplicity.
template <class Fn>
void for_each_neighbor(const Box& box, const NeighborhoodSpec& spec, std::size_t y, std::span<int> scratch,
                       Fn&& fn) {
    box.coords(y, scratch);
    const bool torus = box.boundary() == Boundary::Torus;
    for (int i = 0; i < box.dims(); ++i) {
        const int xi = scratch[static_cast<std::size_t>(i)];
        const int side = box.side(i);
        const auto stride = static_cast<std::ptrdiff_t>(box.stride(i));
        const int a = spec.radius(i);
        for (int k = 1; k <= a; ++k) {
            for (int sign : {-1, 1}) {
                int t = xi + sign * k;
                if (torus) {
                    t %= side;
                    if (t < 0) t += side;
                } else if (t < 0 || t >= side) {
                    continue;
                }
                fn(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) + (t - xi) * stride));
            }
        }
    }
}

bool rule_fires(const Box& box, const std::vector<std::uint8_t>& cells, std::span<const int> x,
                const std::vector<IntVec>& rule) {
    for (const auto& w : rule) {
        std::size_t idx = 0;
        if (!shifted_index(box, x, w, idx) || !cells[idx]) return false;
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// step

Configuration step(const UpdateFamily& family, const Configuration& config) {
    const Box& box = config.box();
    check_dims(family_dims(family), box);
    Configuration next = config;
    std::vector<int> x(static_cast<std::size_t>(box.dims()));
    const auto& cur = config.cells();

    if (const auto* tf = std::get_if<ThresholdFamily>(&family)) {
        for (std::size_t idx = 0; idx < box.volume(); ++idx) {
            if (cur[idx]) continue;
            int infected = 0;
            for_each_neighbor(box, tf->spec(), idx, x, [&](std::size_t n) { infected += cur[n]; });
            if (infected >= tf->threshold()) next.set(idx);
        }
        return next;
    }
    const auto& ef = std::get<ExplicitFamily>(family);
    for (std::size_t idx = 0; idx < box.volume(); ++idx) {
        if (cur[idx]) continue;
        box.coords(idx, x);
        for (const auto& rule : ef.rules()) {
            if (rule_fires(box, cur, x, rule)) {
                next.set(idx);
                break;
            }
        }
    }
    return next;
}

// ---------------------------------------------------------------------------
// closure

ClosureStats closure_in_place(const ThresholdFamily& family, Configuration& config, ClosureWorkspace& ws) {
    const Box& box = config.box();
    check_dims(family.dims(), box);
    auto& cells = config.cells();
    const std::size_t n = box.volume();
    const int r = family.threshold();

    ws.counts.assign(n, 0);
    ws.queue.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i]) ws.queue.push_back(i);
    }

    ClosureStats stats;
    const std::size_t initial = ws.queue.size();
    std::vector<int> scratch(static_cast<std::size_t>(box.dims()));
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
        for_each_neighbor(box, family.spec(), ws.queue[head], scratch, [&](std::size_t x) {
            if (cells[x]) return;
            ++stats.counter_updates;
            if (++ws.counts[x] >= r) {
                cells[x] = 1;
                ws.queue.push_back(x);
            }
        });
    }
    stats.infected = ws.queue.size();
    stats.added = stats.infected - initial;
    return stats;
}

ClosureStats closure_in_place(const ExplicitFamily& family, Configuration& config, ClosureWorkspace& ws) {
    const Box& box = config.box();
    check_dims(family.dims(), box);
    auto& cells = config.cells();
    const std::size_t n = box.volume();

    // x can only become infected after some y = x + v with v in a rule gets infected.
    std::vector<IntVec> back;
    for (auto v : family.support_vectors()) {
        for (auto& c : v) c = -c;
        back.push_back(std::move(v));
    }

    ws.queue.clear();
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i]) ws.queue.push_back(i);
    }
    ClosureStats stats;
    const std::size_t initial = ws.queue.size();
    std::vector<int> y(static_cast<std::size_t>(box.dims()));
    std::vector<int> x(static_cast<std::size_t>(box.dims()));
    for (std::size_t head = 0; head < ws.queue.size(); ++head) {
        box.coords(ws.queue[head], y);
        for (const auto& v : back) {
            std::size_t xi = 0;
            if (!shifted_index(box, y, v, xi) || cells[xi]) continue;
            box.coords(xi, x);
            for (const auto& rule : family.rules()) {
                ++stats.counter_updates;
                if (rule_fires(box, cells, x, rule)) {
                    cells[xi] = 1;
                    ws.queue.push_back(xi);
                    break;
                }
            }
        }
    }
    stats.infected = ws.queue.size();
    stats.added = stats.infected - initial;
    return stats;
}

ClosureStats closure_in_place(const UpdateFamily& family, Configuration& config, ClosureWorkspace& ws) {
    return std::visit([&](const auto& f) { return closure_in_place(f, config, ws); }, family);
}

Configuration closure(const UpdateFamily& family, const Configuration& config) {
    Configuration out = config;
    ClosureWorkspace ws;
    closure_in_place(family, out, ws);
    return out;
}

// ---------------------------------------------------------------------------
// Blocks

Configuration restrict_to_block(const Configuration& config, const SubBlock& block) {
    const Box& box = config.box();
    const int d = box.dims();
    if (static_cast<int>(block.origin.size()) != d || static_cast<int>(block.extents.size()) != d) {
        throw DimensionMismatch("block dimension does not match box");
    }
    for (int i = 0; i < d; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (block.extents[ui] < 1 || block.origin[ui] < 0 || block.origin[ui] + block.extents[ui] > box.side(i)) {
            throw OutOfBounds("block not contained in the box");
        }
    }
    Box sub(block.extents, Boundary::Closed);
    Configuration out(sub);
    std::vector<int> local(static_cast<std::size_t>(d)), global(static_cast<std::size_t>(d));
    for (std::size_t idx = 0; idx < sub.volume(); ++idx) {
        sub.coords(idx, local);
        for (std::size_t i = 0; i < local.size(); ++i) global[i] = local[i] + block.origin[i];
        if (config.infected_at(global)) out.set(idx);
    }
    return out;
}

bool is_internally_filled(const UpdateFamily& family, const SubBlock& block, const Configuration& config) {
    check_dims(family_dims(family), config.box());
    Configuration local = restrict_to_block(config, block);
    ClosureWorkspace ws;
    return closure_in_place(family, local, ws).infected == local.size();
}

bool percolates(const UpdateFamily& family, const Configuration& config) {
    Configuration work = config;
    ClosureWorkspace ws;
    return closure_in_place(family, work, ws).infected == work.size();
}

} // namespace bootperc
