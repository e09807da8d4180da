// Bootstrap closure engine on finite boxes.
//
// Cells are stored row-major with axis order (e_1, ..., e_d): the last axis is
// contiguous, index = ((x_1 * L_2) + x_2) * L_3 + x_3 in three dimensions.
// Coordinates are 0-based, so the cube [L]^d is {0, ..., L-1}^d here.
#pragma once

#include "bootperc/family.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bootperc {

enum class Boundary { Closed, Torus };

std::string to_string(Boundary b);

class Box {
public:
    explicit Box(std::vector<int> sides, Boundary boundary = Boundary::Closed);
    static Box cube(int dims, int side, Boundary boundary = Boundary::Closed);

    int dims() const { return static_cast<int>(sides_.size()); }
    const std::vector<int>& sides() const { return sides_; }
    int side(int axis) const { return sides_[static_cast<std::size_t>(axis)]; }
    Boundary boundary() const { return boundary_; }
    std::size_t volume() const { return volume_; }
    std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

    std::size_t index(std::span<const int> coords) const;
    void coords(std::size_t index, std::span<int> out) const;
    IntVec coords(std::size_t index) const;
    bool contains(std::span<const int> coords) const;

    friend bool operator==(const Box& x, const Box& y) {
        return x.sides_ == y.sides_ && x.boundary_ == y.boundary_;
    }

private:
    std::vector<int> sides_;
    Boundary boundary_;
    std::vector<std::size_t> strides_;
    std::size_t volume_ = 0;
};

// Infection state of every cell in a box, one byte per cell (0 healthy, 1 infected).
class Configuration {
public:
    explicit Configuration(Box box);
    Configuration(Box box, std::vector<std::uint8_t> cells);

    const Box& box() const { return box_; }
    std::size_t size() const { return cells_.size(); }

    bool infected(std::size_t index) const { return cells_[index] != 0; }
    void set(std::size_t index, bool value = true) { cells_[index] = value ? 1 : 0; }
    bool infected_at(std::span<const int> coords) const { return infected(box_.index(coords)); }
    void set_at(std::span<const int> coords, bool value = true) { set(box_.index(coords), value); }

    std::size_t count() const;
    bool full() const { return count() == cells_.size(); }
    bool none() const { return count() == 0; }
    void fill(bool value);

    bool subset_of(const Configuration& other) const;

    const std::vector<std::uint8_t>& cells() const { return cells_; }
    std::vector<std::uint8_t>& cells() { return cells_; }

    friend bool operator==(const Configuration& x, const Configuration& y) {
        return x.box_ == y.box_ && x.cells_ == y.cells_;
    }

private:
    Box box_;
    std::vector<std::uint8_t> cells_;
};

// R = origin + [l] x [h] x [w] (any dimension).
struct SubBlock {
    IntVec origin;
    IntVec extents;
};

struct ClosureStats {
    std::size_t counter_updates = 0;  // neighbour-counter increments (threshold) or rule checks (explicit)
    std::size_t added = 0;            // cells infected by the closure
    std::size_t infected = 0;         // cells infected afterwards
};

// Scratch buffers reused across closures of equally sized boxes.
struct ClosureWorkspace {
    std::vector<std::uint16_t> counts;
    std::vector<std::size_t> queue;
};

// One synchronous update A_{t+1} = A_t ∪ {x : x + X ⊂ A_t for some rule X}.
Configuration step(const UpdateFamily& family, const Configuration& config);

// Least fixed point of step containing the configuration.
Configuration closure(const UpdateFamily& family, const Configuration& config);

// Frontier propagation with per-cell infected-neighbour counters, in place.
ClosureStats closure_in_place(const ThresholdFamily& family, Configuration& config, ClosureWorkspace& ws);
ClosureStats closure_in_place(const ExplicitFamily& family, Configuration& config, ClosureWorkspace& ws);
ClosureStats closure_in_place(const UpdateFamily& family, Configuration& config, ClosureWorkspace& ws);

// A ∩ R as a configuration on R's own closed box.
Configuration restrict_to_block(const Configuration& config, const SubBlock& block);

// R ⊂ [A ∩ R], with the process confined to R.
bool is_internally_filled(const UpdateFamily& family, const SubBlock& block, const Configuration& config);

// [A] equals the whole box.
bool percolates(const UpdateFamily& family, const Configuration& config);

} // namespace bootperc
