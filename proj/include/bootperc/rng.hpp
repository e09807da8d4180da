// Counter-based randomness: every cell of every trial gets its own Philox4x32-10
// block, so a configuration depends only on (seed, trial, cell) and never on
// which worker drew it or in what order.
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace bootperc {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Top 53 bits of two 32-bit words as a double in [0, 1).
inline double to_unit_double(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
}

// Uniform field U(trial, cell) in [0, 1). Cell i of trial j is infected at
// density p iff U < p, so with a shared field the p1-seed is contained in the
// p2-seed whenever p1 < p2 (coupled sampling).
class CellField {
public:
    explicit CellField(std::uint64_t seed) : key_{lo(seed), hi(seed)} {}

    // An independent field for each p: p's bit pattern is mixed into the key.
    static CellField independent(std::uint64_t seed, double p);

    double uniform(std::uint64_t trial, std::uint64_t cell) const {
        const auto out = philox4x32_10({lo(cell), hi(cell), lo(trial), hi(trial)}, key_);
        return to_unit_double(out[0], out[1]);
    }

    bool infected(std::uint64_t trial, std::uint64_t cell, double p) const {
        return uniform(trial, cell) < p;
    }

private:
    static std::uint32_t lo(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
    static std::uint32_t hi(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }

    PhiloxKey key_;
};

// Sequential 64-bit stream over Philox blocks; satisfies UniformRandomBitGenerator.
// Used where a plain generator is wanted (random test inputs, sample selection).
class PhiloxStream {
public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    double uniform() {
        const auto x = (*this)();
        return to_unit_double(static_cast<std::uint32_t>(x >> 32), static_cast<std::uint32_t>(x));
    }

private:
    PhiloxKey key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    PhiloxCounter buf_{};
    int used_ = 4;
};

// splitmix64 finalizer, for deriving sub-seeds.
std::uint64_t mix64(std::uint64_t x);

} // namespace bootperc
