#include "bootperc/growth.hpp"

#include "bootperc/error.hpp"
#include "bootperc/parallel.hpp"

#include <algorithm>
#include <memory>

namespace bootperc {

std::optional<PatternHit> find_s_pattern(const Configuration& strip, int s) {
    if (s < 2) throw PreconditionError("s-patterns need s >= 2");
    const Box& box = strip.box();
    if (box.dims() != 2) throw DimensionMismatch("strip must be two-dimensional");
    const int t = t_closed_form(s);
    if (box.side(0) < t + 1) {
        throw PreconditionError("strip has " + std::to_string(box.side(0)) + " columns, s=" + std::to_string(s) +
                                " needs " + std::to_string(t + 1));
    }
    const int k = box.side(1);
    PatternHit hit{s, {}};
    for (int i = 0; i <= t; ++i) {
        const int len = s - i;
        std::optional<int> found;
        for (int m = 0; (m + 1) * len <= k && !found; ++m) {
            bool full = true;
            for (int row = m * len; row < (m + 1) * len && full; ++row) {
                const int xy[2] = {i, row};
                full = strip.infected_at(xy);
            }
            if (full) found = m;
        }
        if (!found) return std::nullopt;
        hit.column_offsets.push_back(*found);
    }
    return hit;
}

namespace {

Rational slot_factor(int len, int k, const Rational& p) {
    if (len <= 0) return Rational(1);
    const int slots = k / len;
    Rational q = 1 - pow_rational(p, len);
    return 1 - pow_rational(q, slots);
}

void check_unit(const Rational& p) {
    if (p < 0 || p > 1) throw PreconditionError("p must lie in [0,1]");
}

} // namespace

Rational pattern_probability_exact(int s, int k, const Rational& p) {
    if (s < 2) throw PreconditionError("s-patterns need s >= 2");
    if (k < 0) throw PreconditionError("strip length must be nonnegative");
    check_unit(p);
    const int t = t_closed_form(s);
    Rational out(1);
    for (int i = 0; i <= t; ++i) out *= slot_factor(s - i, k, p);
    return out;
}

std::optional<Rational> layer_fill_lower_bound(const ThresholdFamily& family, int l, int h, const Rational& p) {
    if (family.dims() != 3) throw DimensionMismatch("layer bound is defined for three-dimensional families");
    check_unit(p);
    const int s = family.s();
    if (s > family.b()) return std::nullopt;
    Rational out(1);
    for (int j = 0; j < l; ++j) out *= slot_factor(s - std::min(j, family.a()), h, p);
    return out;
}

GrowthReport growth_probability_experiment(const ThresholdFamily& family, const IntVec& base, int axis, int increment,
                                           double p, std::size_t trials, std::uint64_t seed,
                                           const SamplerOptions& options) {
    const int d = family.dims();
    if (static_cast<int>(base.size()) != d) throw DimensionMismatch("base extents do not match the family dimension");
    if (axis < 0 || axis >= d) throw InvalidDirection("growth axis must be one of e_1..e_" + std::to_string(d));
    if (increment < 0) throw PreconditionError("increment must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0,1]");
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    for (int e : base) {
        if (e < family.c()) throw PreconditionError("base extents must be at least c = " + std::to_string(family.c()));
    }

    GrowthReport report;
    report.base_extents = base;
    report.grown_extents = base;
    report.grown_extents[static_cast<std::size_t>(axis)] += increment;
    report.axis = axis;
    report.increment = increment;
    report.p = p;

    const Box box(report.grown_extents);
    check_cells(box, options.max_cells);
    if (increment == 0) {
        report.estimate = wilson_estimate(trials, trials, options.confidence);
        return report;
    }

    const CellField field = make_field(seed, p, options.coupled);
    const int cut = base[static_cast<std::size_t>(axis)];
    const std::size_t stride = box.stride(axis);
    const auto side = static_cast<std::size_t>(box.side(axis));
    struct Scratch {
        Configuration config;
        ClosureWorkspace ws;
    };
    const unsigned workers = resolve_workers(options.workers);
    std::vector<std::unique_ptr<Scratch>> scratch(workers);
    auto hits = parallel_map<std::uint8_t>(trials, workers, [&](std::size_t t, unsigned w) -> std::uint8_t {
        if (!scratch[w]) scratch[w] = std::make_unique<Scratch>(Scratch{Configuration(box), {}});
        auto& cells = scratch[w]->config.cells();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const bool in_base = static_cast<int>((i / stride) % side) < cut;
            cells[i] = (in_base || field.infected(t, i, p)) ? 1 : 0;
        }
        return closure_in_place(family, scratch[w]->config, scratch[w]->ws).infected == box.volume() ? 1 : 0;
    });
    std::size_t successes = 0;
    for (auto h : hits) successes += h;
    report.estimate = wilson_estimate(successes, trials, options.confidence);

    if (d == 3 && axis == 2 && increment == 1) {
        report.layer_bound = layer_fill_lower_bound(family, base[0], base[1], Rational(p));
    }
    return report;
}

ProbabilityEstimate droplet_experiment(const UpdateFamily& family, const IntVec& droplet, int L, double p,
                                       std::size_t trials, std::uint64_t seed, const SamplerOptions& options) {
    const int d = family_dims(family);
    if (static_cast<int>(droplet.size()) != d) throw DimensionMismatch("droplet extents do not match the family");
    if (L < 1) throw PreconditionError("L must be positive");
    for (int e : droplet) {
        if (e < 0 || e > L) throw OutOfBounds("droplet does not fit in [L]^d");
    }
    if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("p must lie in [0,1]");
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    const Box box = Box::cube(d, L);
    check_cells(box, options.max_cells);

    std::vector<std::uint8_t> in_droplet(box.volume(), 0);
    {
        std::vector<int> x(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < box.volume(); ++i) {
            box.coords(i, x);
            bool inside = true;
            for (std::size_t j = 0; j < x.size() && inside; ++j) inside = x[j] < droplet[j];
            in_droplet[i] = inside ? 1 : 0;
        }
    }
    const CellField field = make_field(seed, p, options.coupled);
    struct Scratch {
        Configuration config;
        ClosureWorkspace ws;
    };
    const unsigned workers = resolve_workers(options.workers);
    std::vector<std::unique_ptr<Scratch>> scratch(workers);
    auto hits = parallel_map<std::uint8_t>(trials, workers, [&](std::size_t t, unsigned w) -> std::uint8_t {
        if (!scratch[w]) scratch[w] = std::make_unique<Scratch>(Scratch{Configuration(box), {}});
        auto& cells = scratch[w]->config.cells();
        for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = (in_droplet[i] || field.infected(t, i, p)) ? 1 : 0;
        return closure_in_place(family, scratch[w]->config, scratch[w]->ws).infected == box.volume() ? 1 : 0;
    });
    std::size_t successes = 0;
    for (auto h : hits) successes += h;
    return wilson_estimate(successes, trials, options.confidence);
}

} // namespace bootperc
