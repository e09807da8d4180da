#include "bootperc/sampler.hpp"

#include "bootperc/error.hpp"
#include "bootperc/parallel.hpp"

#include <cmath>
#include <map>
#include <memory>

namespace bootperc {

CellField make_field(std::uint64_t seed, double p, bool coupled) {
    return coupled ? CellField(seed) : CellField::independent(seed, p);
}

void fill_bernoulli(Configuration& config, const CellField& field, std::uint64_t trial, double p) {
    auto& cells = config.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = field.infected(trial, i, p) ? 1 : 0;
}

Configuration sample_configuration(const Box& box, const BernoulliSeeding& seeding) {
    if (!(seeding.p > 0.0 && seeding.p <= 1.0)) throw PreconditionError("p must lie in (0,1]");
    Configuration config(box);
    fill_bernoulli(config, make_field(seeding.seed, seeding.p, seeding.coupled), seeding.trial_index, seeding.p);
    return config;
}

void check_cells(const Box& box, std::size_t max_cells) {
    if (box.volume() > max_cells) {
        throw ResourceLimit("box of " + std::to_string(box.volume()) + " cells exceeds the limit of " +
                            std::to_string(max_cells));
    }
}

namespace {

std::size_t cube_volume(int dims, int L) {
    double v = std::pow(static_cast<double>(L), dims);
    return v > 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(v);
}

} // namespace

ProbabilityEstimate percolation_probability(const UpdateFamily& family, int L, double p, std::size_t trials,
                                           std::uint64_t seed, const SamplerOptions& options) {
    if (!(p > 0.0 && p <= 1.0)) throw PreconditionError("p must lie in (0,1]");
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    if (L < 1) throw PreconditionError("L must be positive");
    const int d = family_dims(family);
    if (cube_volume(d, L) > options.max_cells) {
        throw ResourceLimit("[" + std::to_string(L) + "]^" + std::to_string(d) + " exceeds the limit of " +
                            std::to_string(options.max_cells) + " cells");
    }
    const Box box = Box::cube(d, L);
    const CellField field = make_field(seed, p, options.coupled);

    struct Scratch {
        Configuration config;
        ClosureWorkspace ws;
    };
    const unsigned workers = resolve_workers(options.workers);
    std::vector<std::unique_ptr<Scratch>> scratch(workers);
    auto hits = parallel_map<std::uint8_t>(trials, workers, [&](std::size_t t, unsigned w) -> std::uint8_t {
        if (!scratch[w]) scratch[w] = std::make_unique<Scratch>(Scratch{Configuration(box), {}});
        auto& s = *scratch[w];
        fill_bernoulli(s.config, field, t, p);
        return closure_in_place(family, s.config, s.ws).infected == box.volume() ? 1 : 0;
    });
    std::size_t successes = 0;
    for (auto h : hits) successes += h;
    return wilson_estimate(successes, trials, options.confidence);
}

LcEstimate critical_length(const UpdateFamily& family, double p, std::size_t trials, std::uint64_t seed,
                           const LcOptions& lc, const SamplerOptions& options) {
    if (const auto* tf = std::get_if<ThresholdFamily>(&family)) {
        if (classify(*tf) == Criticality::Subcritical) {
            throw NotApplicable(tf->literal() + " is subcritical; L_c is not defined");
        }
    }
    if (!(lc.target > 0.0 && lc.target <= 1.0)) throw PreconditionError("target must lie in (0,1]");
    if (lc.L_start < 1 || lc.L_max < lc.L_start) throw PreconditionError("need 1 <= L_start <= L_max");

    const int d = family_dims(family);
    LcEstimate out;
    std::map<int, double> seen;
    auto eval = [&](int L) {
        auto it = seen.find(L);
        if (it != seen.end()) return it->second >= lc.target;
        auto est = percolation_probability(family, L, p, trials, seed, options);
        out.trace.push_back({L, est});
        seen[L] = est.point();
        return est.point() >= lc.target;
    };
    auto affordable = [&](int L) { return L <= lc.L_max && cube_volume(d, L) <= options.max_cells; };

    int lo = 0;
    std::optional<int> hi;
    int L = lc.L_start;
    for (;;) {
        if (!affordable(L)) {
            // One last probe at the largest affordable size before giving up.
            int cap = lc.L_max;
            while (cap > lo && !affordable(cap)) --cap;
            if (cap > lo && !eval(cap)) lo = cap;
            else if (cap > lo) hi = cap;
            if (!hi) {
                out.warnings.push_back("no L up to " + std::to_string(cap) + " reached P >= target; L_lower " +
                                       std::to_string(lo) + " is a lower bound only");
            }
            break;
        }
        if (eval(L)) {
            hi = L;
            break;
        }
        lo = L;
        L = L > lc.L_max / 2 ? lc.L_max + 1 : 2 * L;
    }
    if (hi) {
        while (*hi - lo > 1 && !(lc.rel_width > 0.0 && *hi - lo <= lc.rel_width * *hi)) {
            const int mid = lo + (*hi - lo) / 2;
            if (eval(mid)) hi = mid;
            else lo = mid;
        }
    }
    out.L_lower = lo;
    out.L_upper = hi;

    for (auto a = seen.begin(); a != seen.end() && !out.non_monotone; ++a) {
        for (auto b = std::next(a); b != seen.end(); ++b) {
            if (a->second >= lc.target && b->second < lc.target) {
                out.non_monotone = true;
                out.warnings.push_back("non-monotone trace: P(" + std::to_string(a->first) + ") >= target > P(" +
                                       std::to_string(b->first) + ")");
                break;
            }
        }
    }
    return out;
}

ScalingTable scaling_probe(const ThresholdFamily& family, const std::vector<double>& p_list, std::size_t trials,
                           std::uint64_t seed, const LcOptions& lc, const SamplerOptions& options) {
    if (classify(family) != Criticality::Critical) throw NotApplicable(family.literal() + " is not critical");
    ScalingTable table{predicted_log_lc_order(family), {}};
    for (std::size_t i = 1; i < p_list.size(); ++i) {
        if (!(p_list[i] < p_list[i - 1])) throw PreconditionError("p_list must be strictly decreasing");
    }
    const double e = to_double(table.order.exponent);
    const double k = to_double(table.order.log_power);
    for (double p : p_list) {
        ScalingRow row{p, critical_length(family, p, trials, seed, lc, options), std::nullopt};
        if (row.lc.L_upper) {
            double num = std::log(static_cast<double>(*row.lc.L_upper));
            if (table.order.level == 2) num = num > 0.0 ? std::log(num) : 0.0;
            const double den = std::pow(1.0 / p, e) * std::pow(std::log(1.0 / p), k);
            if (num > 0.0 && std::isfinite(num / den)) row.ratio = num / den;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace bootperc
