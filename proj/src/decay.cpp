#include "bootperc/decay.hpp"

#include "bootperc/error.hpp"
#include "bootperc/parallel.hpp"

#include <cmath>

namespace bootperc {

namespace {

void check_family(const ThresholdFamily& family2d) {
    if (family2d.dims() != 2) throw DimensionMismatch("cluster decay needs a two-dimensional family");
    if (classify(family2d) != Criticality::Subcritical) {
        throw NotApplicable(family2d.literal() + " is not subcritical");
    }
}

ClusterRecord cluster_in(const ThresholdFamily& family2d, Configuration& config, ClosureWorkspace& ws,
                         const CellField& field, std::uint64_t trial, double epsilon) {
    fill_bernoulli(config, field, trial, epsilon);
    closure_in_place(family2d, config, ws);
    const Box& box = config.box();
    const int W = box.side(0);
    const int o = W / 2;
    ClusterRecord rec;
    const int origin[2] = {o, o};
    const std::size_t start = box.index(origin);
    if (!config.infected(start)) return rec;

    const int a = family2d.a();
    const int b = family2d.b();
    // Reuse the counter buffer as a visited mark.
    auto& seen = ws.counts;
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(i) / W;
        const int y = static_cast<int>(i) % W;
        rec.cells.push_back({x - o, y - o});
        if (x == 0 || y == 0 || x == W - 1 || y == W - 1) rec.censored = true;
        auto push = [&](int px, int py) {
            if (px < 0 || py < 0 || px >= W || py >= W) return;
            const auto j = static_cast<std::size_t>(px) * W + py;
            if (seen[j] || !config.infected(j)) return;
            seen[j] = 1;
            stack.push_back(j);
        };
        for (int k = 1; k <= a; ++k) {
            push(x - k, y);
            push(x + k, y);
        }
        for (int k = 1; k <= b; ++k) {
            push(x, y - k);
            push(x, y + k);
        }
    }
    std::sort(rec.cells.begin(), rec.cells.end());
    return rec;
}

} // namespace

ClusterRecord cluster_of_origin(const ThresholdFamily& family2d, int window, const CellField& field,
                                std::uint64_t trial, double epsilon) {
    check_family(family2d);
    if (window < 1) throw PreconditionError("window must be positive");
    Configuration config(Box({window, window}));
    ClosureWorkspace ws;
    return cluster_in(family2d, config, ws, field, trial, epsilon);
}

DecayTable decay_experiment(const ThresholdFamily& family2d, double epsilon, int window, const std::vector<int>& n_grid,
                            std::size_t trials, std::uint64_t seed, const DecayOptions& options) {
    check_family(family2d);
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw PreconditionError("epsilon must lie in [0,1]");
    if (window < 1) throw PreconditionError("window must be positive");
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    for (int n : n_grid) {
        if (n < 0) throw PreconditionError("cluster sizes in n_grid must be nonnegative");
    }
    const Box box({window, window});
    check_cells(box, options.sampler.max_cells);
    const CellField field = make_field(seed, epsilon, options.sampler.coupled);

    struct Outcome {
        std::size_t size = 0;
        std::uint8_t censored = 0;
    };
    struct Scratch {
        Configuration config;
        ClosureWorkspace ws;
    };
    const unsigned workers = resolve_workers(options.sampler.workers);
    std::vector<std::unique_ptr<Scratch>> scratch(workers);
    auto outcomes = parallel_map<Outcome>(trials, workers, [&](std::size_t t, unsigned w) {
        if (!scratch[w]) scratch[w] = std::make_unique<Scratch>(Scratch{Configuration(box), {}});
        const auto rec = cluster_in(family2d, scratch[w]->config, scratch[w]->ws, field, t, epsilon);
        return Outcome{rec.cells.size(), static_cast<std::uint8_t>(rec.censored ? 1 : 0)};
    });

    DecayTable table;
    table.trials = trials;
    for (const auto& o : outcomes) table.censored += o.censored;
    table.censored_fraction = static_cast<double>(table.censored) / static_cast<double>(trials);
    if (table.censored_fraction > options.censor_cap) {
        throw WindowTooSmall("censored fraction " + std::to_string(table.censored_fraction) + " exceeds the cap " +
                             std::to_string(options.censor_cap) + "; enlarge the window");
    }
    for (int n : n_grid) {
        std::size_t hits = 0;
        for (const auto& o : outcomes) {
            if (o.censored || o.size >= static_cast<std::size_t>(n)) ++hits;
        }
        table.rows.push_back({n, hits, wilson_estimate(hits, trials, options.sampler.confidence)});
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& row : table.rows) {
        if (row.at_least == 0) continue;
        const double x = row.n;
        const double y = std::log(row.tail.point());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    const double den = static_cast<double>(m) * sxx - sx * sx;
    if (m >= 2 && den > 0.0) {
        table.slope = (static_cast<double>(m) * sxy - sx * sy) / den;
        table.intercept = (sy - *table.slope * sx) / static_cast<double>(m);
    }
    return table;
}

} // namespace bootperc
