#include "bootperc/cli.hpp"

#include "bootperc/alpha.hpp"
#include "bootperc/beams.hpp"
#include "bootperc/decay.hpp"
#include "bootperc/engine.hpp"
#include "bootperc/enumerate.hpp"
#include "bootperc/error.hpp"
#include "bootperc/family_io.hpp"
#include "bootperc/growth.hpp"
#include "bootperc/sampler.hpp"
#include "bootperc/snapshot.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>

#ifndef BOOTPERC_VERSION
#define BOOTPERC_VERSION "dev"
#endif

namespace bootperc {

const char* version() {
    return BOOTPERC_VERSION;
}

namespace {

using json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Common {
    std::optional<std::uint64_t> seed;
    std::size_t trials = 1000;
    unsigned workers = 1;
    std::optional<std::size_t> max_cells;
    std::string out_path;
    std::string format;
    double confidence = 0.95;
    bool independent = false;
};

struct Run {
    std::string command;
    std::vector<std::string> argv;  // resolved arguments, without --out
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
    Common common;
    std::uint64_t seed = 0;
    std::size_t max_cells = kDefaultMaxCells;
    Format format = Format::Json;

    SamplerOptions sampler() const {
        SamplerOptions o;
        o.workers = common.workers;
        o.max_cells = max_cells;
        o.coupled = !common.independent;
        o.confidence = common.confidence;
        return o;
    }

    json config() const {
        json c;
        c["command"] = command;
        c["argv"] = argv;
        c["seed"] = seed;
        c["max_cells"] = max_cells;
        return c;
    }

    json header() const {
        json doc;
        doc["version"] = version();
        doc["command"] = command;
        doc["config"] = config();
        return doc;
    }
};

// Writes to --out when given, else to the run's stream.
void emit(const Run& run, const std::string& text) {
    if (run.common.out_path.empty()) {
        *run.out << text;
        return;
    }
    std::ofstream f(run.common.out_path);
    if (!f) throw UsageError("cannot write '" + run.common.out_path + "'");
    f << text;
}

void emit_json(const Run& run, const json& body) {
    json doc = run.header();
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    emit(run, doc.dump(2) + "\n");
}

std::string csv_field(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

void emit_csv(const Run& run, const std::vector<std::string>& header, const std::vector<std::vector<json>>& rows,
              const std::vector<std::string>& trailer = {}) {
    std::ostringstream os;
    os << "# bootperc " << version() << " config=" << run.config().dump() << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
    }
    for (const auto& t : trailer) os << "# " << t << "\n";
    emit(run, os.str());
}

json estimate_json(const ProbabilityEstimate& e) {
    json j;
    j["successes"] = e.successes;
    j["trials"] = e.trials;
    j["point"] = e.point();
    j["ci"] = {e.ci_low, e.ci_high};
    j["confidence"] = e.confidence;
    return j;
}

json order_json(const ScalingOrder& o) {
    json j;
    j["exponent"] = to_string(o.exponent);
    j["log_power"] = to_string(o.log_power);
    j["level"] = o.level;
    j["status"] = to_string(o.status);
    j["formula"] = o.formula();
    return j;
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::string direction_string(const IntVec& v) {
    return "(" + join(v) + ")";
}

UpdateFamily load_family(const std::string& literal, const std::string& rules_path) {
    if (!rules_path.empty()) {
        if (!literal.empty()) throw UsageError("give either --family or --rules, not both");
        return load_explicit_family(rules_path);
    }
    if (literal.empty()) throw UsageError("a family is required (--family \"N[a,b,c]r=R\" or --rules FILE)");
    return parse_family_literal(literal);
}

ThresholdFamily threshold_family(const std::string& literal) {
    if (literal.empty()) throw UsageError("--family is required");
    return parse_family_literal(literal);
}

// "0.25", "1/4", "1"
Rational parse_rational(const std::string& text) {
    static const std::regex frac(R"(^\s*(\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex dec(R"(^\s*(\d*)(?:\.(\d*))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, frac)) {
        Rational den(m[2].str());
        if (den == 0) throw UsageError("zero denominator in '" + text + "'");
        return Rational(m[1].str()) / den;
    }
    if (std::regex_match(text, m, dec) && (m[1].length() > 0 || m[2].length() > 0)) {
        const std::string ip = m[1].length() ? m[1].str() : "0";
        const std::string fp = m[2].str();
        Rational num(ip + fp);
        Rational den(1);
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        return num / den;
    }
    throw UsageError("cannot read '" + text + "' as a probability");
}

// "5:50:5" or "1,2,3"
std::vector<int> parse_int_grid(const std::string& text) {
    std::vector<int> out;
    static const std::regex range(R"(^\s*(\d+)\s*:\s*(\d+)\s*(?::\s*(\d+))?\s*$)");
    std::smatch m;
    try {
        if (std::regex_match(text, m, range)) {
            const int lo = std::stoi(m[1].str());
            const int hi = std::stoi(m[2].str());
            const int step = m[3].matched ? std::stoi(m[3].str()) : 1;
            if (step <= 0) throw UsageError("grid step must be positive");
            for (int n = lo; n <= hi; n += step) out.push_back(n);
            return out;
        }
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
        throw UsageError("cannot read '" + text + "' as an integer grid");
    }
    return out;
}

std::vector<std::pair<int, int>> parse_scales(const std::string& text, int L) {
    std::vector<std::pair<int, int>> out;
    if (text.empty()) {
        for (int s = 1; s <= L; s *= 2) out.emplace_back(s, s);
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        const auto colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                const int v = std::stoi(item);
                out.emplace_back(v, v);
            } else {
                out.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
            }
        } catch (const std::logic_error&) {
            throw UsageError("cannot read scale '" + item + "', expected h:k");
        }
    }
    return out;
}

int parse_axis(const std::string& text, int dims) {
    static const std::regex axis(R"(^e?(\d+)$)");
    std::smatch m;
    if (!std::regex_match(text, m, axis)) throw UsageError("axis must look like e1, e2, e3");
    const int i = std::stoi(m[1].str());
    if (i < 1 || i > dims) throw InvalidDirection("axis e" + std::to_string(i) + " does not exist in d=" +
                                                  std::to_string(dims));
    return i - 1;
}

MergeRule parse_rule(const std::string& text) {
    if (text == "closure-growth") return MergeRule::ClosureGrowth;
    if (text == "strong-connectivity" || text == "strong") return MergeRule::StrongConnectivity;
    throw UsageError("merge rule must be closure-growth or strong-connectivity");
}

std::vector<IntVec> probe_directions(int d) {
    std::vector<IntVec> dirs;
    for (int i = 0; i < d; ++i) {
        for (int s : {1, -1}) {
            IntVec v(static_cast<std::size_t>(d), 0);
            v[static_cast<std::size_t>(i)] = s;
            dirs.push_back(v);
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int si : {1, -1}) {
                for (int sj : {1, -1}) {
                    IntVec v(static_cast<std::size_t>(d), 0);
                    v[static_cast<std::size_t>(i)] = si;
                    v[static_cast<std::size_t>(j)] = sj;
                    dirs.push_back(v);
                }
            }
        }
    }
    return dirs;
}

// ---------------------------------------------------------------------------
// Commands

struct FamilyArgs {
    std::string family;
    std::string rules;
};

void cmd_classify(const Run& run, const std::string& literal) {
    const ThresholdFamily fam = threshold_family(literal);
    const Criticality cls = classify(fam);
    json body;
    body["family"] = fam.literal();
    body["class"] = to_string(cls);
    std::string line = to_string(cls);
    if (fam.dims() == 3) {
        const auto sset = stable_set_symbolic(fam.a(), fam.b(), fam.c(), fam.threshold());
        body["stable_case"] = to_string(sset.stable_case);
        body["stable_set"] = sset.describe();
        line += ", stable set " + sset.describe();
    }
    std::optional<ScalingOrder> order;
    if (cls == Criticality::Critical && (fam.dims() == 2 || fam.dims() == 3)) {
        order = predicted_log_lc_order(fam);
        body["order"] = order_json(*order);
    }
    if (run.format == Format::Json) {
        emit_json(run, body);
        return;
    }
    std::string text = line + "\n";
    if (order) text += order->formula() + " (" + to_string(order->status) + ")\n";
    emit(run, text);
}

void cmd_stable_set(const Run& run, const std::string& literal) {
    const ThresholdFamily fam = threshold_family(literal);
    if (fam.dims() != 3) throw NotApplicable("the stable-set table covers three-dimensional families");
    const auto sset = stable_set_symbolic(fam.a(), fam.b(), fam.c(), fam.threshold());
    json probes = json::array();
    std::ostringstream text;
    text << fam.literal() << ": " << to_string(sset.criticality) << ", case " << to_string(sset.stable_case)
         << ", stable set " << sset.describe() << "\n";
    text << std::left << std::setw(12) << "direction" << std::setw(8) << "stable" << "in set\n";
    for (const auto& v : probe_directions(3)) {
        const RationalDirection u(v);
        const bool stable = is_stable_direction(fam, u);
        const bool member = sset.contains(u);
        probes.push_back({{"u", v}, {"stable", stable}, {"in_set", member}});
        text << std::setw(12) << direction_string(v) << std::setw(8) << (stable ? "yes" : "no")
             << (member ? "yes" : "no") << "\n";
    }
    json body;
    body["family"] = fam.literal();
    body["class"] = to_string(sset.criticality);
    body["stable_case"] = to_string(sset.stable_case);
    body["stable_set"] = sset.describe();
    body["stable_supports"] = sset.stable_supports;
    body["probes"] = probes;
    if (run.format == Format::Json) emit_json(run, body);
    else emit(run, text.str());
}

struct ClosureArgs {
    FamilyArgs fam;
    std::string in;
    std::string snapshot_out;
    int L = 0;
    double p = 0.0;
    std::uint64_t trial = 0;
    bool torus = false;
};

void cmd_closure(const Run& run, const ClosureArgs& a) {
    const UpdateFamily fam = load_family(a.fam.family, a.fam.rules);
    std::optional<Configuration> seed;
    if (!a.in.empty()) {
        seed = load_snapshot(a.in);
    } else {
        if (a.L < 1) throw UsageError("give --in FILE or --L with --p");
        const Box box = Box::cube(family_dims(fam), a.L, a.torus ? Boundary::Torus : Boundary::Closed);
        check_cells(box, run.max_cells);
        seed = sample_configuration(box, {a.p, run.seed, a.trial, !run.common.independent});
    }
    check_cells(seed->box(), run.max_cells);
    Configuration result = *seed;
    ClosureWorkspace ws;
    const auto stats = closure_in_place(fam, result, ws);
    if (!a.snapshot_out.empty()) save_snapshot(a.snapshot_out, result);
    json body;
    body["family"] = describe(fam);
    body["box"] = seed->box().sides();
    body["boundary"] = to_string(seed->box().boundary());
    body["initial"] = seed->count();
    body["final"] = stats.infected;
    body["added"] = stats.added;
    body["counter_updates"] = stats.counter_updates;
    body["percolates"] = stats.infected == result.size();
    emit_json(run, body);
}

struct ProbArgs {
    FamilyArgs fam;
    int L = 0;
    double p = 0.0;
};

void cmd_prob(const Run& run, const ProbArgs& a) {
    const UpdateFamily fam = load_family(a.fam.family, a.fam.rules);
    const auto est = percolation_probability(fam, a.L, a.p, run.common.trials, run.seed, run.sampler());
    json body;
    body["family"] = describe(fam);
    body["L"] = a.L;
    body["p"] = a.p;
    body["estimate"] = estimate_json(est);
    emit_json(run, body);
}

struct LcArgs {
    FamilyArgs fam;
    double p = 0.0;
    std::vector<double> ps;
    double target = 0.5;
    int lmax = 4096;
    int lstart = 1;
    double rel_width = 0.0;

    LcOptions options() const {
        LcOptions o;
        o.target = target;
        o.L_max = lmax;
        o.L_start = lstart;
        o.rel_width = rel_width;
        return o;
    }
};

json trace_json(const LcEstimate& lc) {
    json trace = json::array();
    for (const auto& probe : lc.trace) {
        trace.push_back({{"L", probe.L},
                         {"succ", probe.estimate.successes},
                         {"trials", probe.estimate.trials},
                         {"ci", {probe.estimate.ci_low, probe.estimate.ci_high}}});
    }
    return trace;
}

json bracket_json(const LcEstimate& lc) {
    return json::array({lc.L_lower, lc.L_upper ? json(*lc.L_upper) : json(nullptr)});
}

void cmd_lc(const Run& run, const LcArgs& a) {
    const UpdateFamily fam = load_family(a.fam.family, a.fam.rules);
    const auto lc = critical_length(fam, a.p, run.common.trials, run.seed, a.options(), run.sampler());
    for (const auto& w : lc.warnings) *run.err << "warning: " << w << "\n";
    json body;
    body["family"] = describe(fam);
    body["p"] = a.p;
    body["target"] = a.target;
    body["bracket"] = bracket_json(lc);
    body["trace"] = trace_json(lc);
    body["warnings"] = lc.warnings;
    emit_json(run, body);
}

void cmd_scale(const Run& run, const LcArgs& a) {
    const ThresholdFamily fam = threshold_family(a.fam.family);
    const auto table = scaling_probe(fam, a.ps, run.common.trials, run.seed, a.options(), run.sampler());
    for (const auto& row : table.rows) {
        for (const auto& w : row.lc.warnings) *run.err << "warning (p=" << row.p << "): " << w << "\n";
    }
    if (run.format == Format::Csv) {
        std::vector<std::vector<json>> rows;
        for (const auto& row : table.rows) {
            rows.push_back({row.p, row.lc.L_lower, row.lc.L_upper ? json(*row.lc.L_upper) : json(nullptr),
                            row.ratio ? json(*row.ratio) : json(nullptr)});
        }
        emit_csv(run, {"p", "L_lower", "L_upper", "ratio"}, rows, {"predicted " + table.order.formula()});
        return;
    }
    json rows = json::array();
    for (const auto& row : table.rows) {
        rows.push_back({{"p", row.p},
                        {"bracket", bracket_json(row.lc)},
                        {"log_L_upper", row.lc.L_upper ? json(std::log(static_cast<double>(*row.lc.L_upper)))
                                                       : json(nullptr)},
                        {"ratio", row.ratio ? json(*row.ratio) : json(nullptr)},
                        {"trace", trace_json(row.lc)},
                        {"warnings", row.lc.warnings}});
    }
    json body;
    body["family"] = fam.literal();
    body["predicted"] = order_json(table.order);
    body["rows"] = rows;
    emit_json(run, body);
}

struct GrowArgs {
    std::string family;
    std::vector<int> base;
    std::string dir = "e3";
    int inc = 1;
    std::vector<double> ps;
};

void cmd_grow(const Run& run, const GrowArgs& a) {
    const ThresholdFamily fam = threshold_family(a.family);
    const int axis = parse_axis(a.dir, fam.dims());
    std::vector<GrowthReport> reports;
    for (double p : a.ps) {
        reports.push_back(
            growth_probability_experiment(fam, a.base, axis, a.inc, p, run.common.trials, run.seed, run.sampler()));
    }
    if (run.format == Format::Json) {
        json rows = json::array();
        for (const auto& r : reports) {
            rows.push_back({{"base", r.base_extents},
                            {"grown", r.grown_extents},
                            {"dir", "e" + std::to_string(r.axis + 1)},
                            {"p", r.p},
                            {"estimate", estimate_json(r.estimate)},
                            {"conditioning", r.conditioning},
                            {"layer_bound", r.layer_bound ? json(to_double(*r.layer_bound)) : json(nullptr)}});
        }
        json body;
        body["family"] = fam.literal();
        body["rows"] = rows;
        emit_json(run, body);
        return;
    }
    std::vector<std::string> header;
    const char* names[] = {"l", "h", "w"};
    for (int i = 0; i < fam.dims(); ++i) header.push_back(i < 3 ? names[i] : "a" + std::to_string(i + 1));
    for (const char* h : {"dir", "succ", "trials", "ci_lo", "ci_hi", "p", "layer_bound"}) header.push_back(h);
    std::vector<std::vector<json>> rows;
    for (const auto& r : reports) {
        std::vector<json> row(r.base_extents.begin(), r.base_extents.end());
        row.push_back("e" + std::to_string(r.axis + 1));
        row.push_back(r.estimate.successes);
        row.push_back(r.estimate.trials);
        row.push_back(r.estimate.ci_low);
        row.push_back(r.estimate.ci_high);
        row.push_back(r.p);
        row.push_back(r.layer_bound ? json(to_double(*r.layer_bound)) : json(nullptr));
        rows.push_back(std::move(row));
    }
    emit_csv(run, header, rows, {"estimates are " + reports.front().conditioning});
}

struct DropletArgs {
    FamilyArgs fam;
    std::vector<int> droplet;
    int L = 0;
    std::vector<double> ps;
};

void cmd_droplet(const Run& run, const DropletArgs& a) {
    const UpdateFamily fam = load_family(a.fam.family, a.fam.rules);
    json rows = json::array();
    for (double p : a.ps) {
        const auto est = droplet_experiment(fam, a.droplet, a.L, p, run.common.trials, run.seed, run.sampler());
        rows.push_back({{"p", p}, {"estimate", estimate_json(est)}});
    }
    json body;
    body["family"] = describe(fam);
    body["droplet"] = a.droplet;
    body["L"] = a.L;
    body["rows"] = rows;
    emit_json(run, body);
}

void cmd_alpha(const Run& run, int min_s, int max_s) {
    if (min_s < 2 || max_s < min_s) throw PreconditionError("need 2 <= min-s <= max-s");
    std::vector<AlphaEntry> entries;
    for (int s = min_s; s <= max_s; ++s) entries.push_back(alpha_t(s));
    if (run.format == Format::Json) {
        json rows = json::array();
        for (const auto& e : entries) {
            rows.push_back({{"s", e.s}, {"t", e.t}, {"alpha", to_string(e.alpha)}, {"alpha_decimal", to_double(e.alpha)}});
        }
        emit_json(run, json{{"rows", rows}});
        return;
    }
    if (run.format == Format::Csv) {
        std::vector<std::vector<json>> rows;
        for (const auto& e : entries) rows.push_back({e.s, e.t, to_string(e.alpha)});
        emit_csv(run, {"s", "t_s", "alpha_s"}, rows);
        return;
    }
    std::ostringstream os;
    os << std::left << std::setw(5) << "s" << std::setw(6) << "t_s" << "alpha_s\n";
    for (const auto& e : entries) os << std::setw(5) << e.s << std::setw(6) << e.t << to_string(e.alpha) << "\n";
    emit(run, os.str());
}

struct PatternArgs {
    int s = 0;
    int k = 0;
    std::string p;
    std::string strip;
};

void cmd_pattern(const Run& run, const PatternArgs& a) {
    json body;
    body["s"] = a.s;
    std::ostringstream text;
    if (!a.p.empty()) {
        const Rational p = parse_rational(a.p);
        const Rational prob = pattern_probability_exact(a.s, a.k, p);
        body["k"] = a.k;
        body["p"] = to_string(p);
        body["probability"] = to_string(prob);
        body["probability_decimal"] = to_double(prob);
        text << "P(s-pattern in [t_s+1] x [" << a.k << "]) = " << to_string(prob) << " ~ " << to_double(prob) << "\n";
    }
    if (!a.strip.empty()) {
        const auto hit = find_s_pattern(load_snapshot(a.strip), a.s);
        body["hit"] = hit ? json(hit->column_offsets) : json(nullptr);
        text << (hit ? "pattern at offsets (" + join(hit->column_offsets) + ")" : std::string("no pattern")) << "\n";
    }
    if (a.p.empty() && a.strip.empty()) throw UsageError("give --p and --k, or --strip FILE");
    if (run.format == Format::Json) emit_json(run, body);
    else emit(run, text.str());
}

struct BeamsArgs {
    std::string family;
    int L = 0;
    double p = 0.0;
    std::uint64_t trial = 0;
    std::string rule = "closure-growth";
    std::string scales;
    double lambda = 4.0;
};

json beams_json(const BeamCollection& col, bool with_log) {
    json j;
    j["rule"] = to_string(col.rule);
    j["block_edge"] = col.block_edge;
    j["initial_count"] = col.initial_count;
    j["merges"] = col.log.size();
    j["final_count"] = col.beams.size();
    if (with_log) {
        json log = json::array();
        for (const auto& r : col.log) {
            json path = json::array();
            for (const auto& q : r.path) path.push_back({q[0], q[1]});
            log.push_back({{"pair", {r.kept_key, r.removed_key}},
                           {"sizes", {r.kept_volume, r.removed_volume}},
                           {"path", path},
                           {"H_size", r.h_size},
                           {"base_level", r.base_level},
                           {"height", r.height}});
        }
        j["log"] = log;
    }
    return j;
}

void cmd_beams(const Run& run, const BeamsArgs& a, bool al) {
    const ThresholdFamily fam = threshold_family(a.family);
    if (fam.dims() != 3) throw NotApplicable("the beams process is three-dimensional");
    const Box box = Box::cube(3, a.L);
    check_cells(box, run.max_cells);
    const Configuration A = sample_configuration(box, {a.p, run.seed, a.trial, !run.common.independent});
    BeamsOptions opt;
    opt.rule = parse_rule(a.rule);
    const auto col = beams_process(A, fam, opt);
    json body;
    body["family"] = fam.literal();
    body["L"] = a.L;
    body["p"] = a.p;
    body["trial"] = a.trial;
    body["percolates"] = percolates(fam, A);
    body["stop_condition"] = stop_condition_holds(col, fam);
    body["beams"] = beams_json(col, !al);
    if (al) {
        json scales = json::array();
        for (const auto& s : al_check(col.log, parse_scales(a.scales, a.L), a.lambda)) {
            scales.push_back({{"h", s.h}, {"k", s.k}, {"found", s.found},
                              {"witness", s.witness ? json(*s.witness) : json(nullptr)}});
        }
        body["lambda"] = a.lambda;
        body["scales"] = scales;
    }
    emit_json(run, body);
}

struct DecayArgs {
    std::string family2d;
    double eps = 0.05;
    int window = 201;
    std::string n = "5:50:5";
    double censor_cap = 0.01;
};

void cmd_decay(const Run& run, const DecayArgs& a) {
    const ThresholdFamily fam = threshold_family(a.family2d);
    DecayOptions opt;
    opt.censor_cap = a.censor_cap;
    opt.sampler = run.sampler();
    const auto table = decay_experiment(fam, a.eps, a.window, parse_int_grid(a.n), run.common.trials, run.seed, opt);
    if (run.format == Format::Json) {
        json rows = json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"n", r.n}, {"tail", r.tail.point()}, {"count", r.at_least},
                            {"ci", {r.tail.ci_low, r.tail.ci_high}}});
        }
        json body;
        body["family"] = fam.literal();
        body["eps"] = a.eps;
        body["window"] = a.window;
        body["trials"] = table.trials;
        body["censored_frac"] = table.censored_fraction;
        body["slope"] = table.slope ? json(*table.slope) : json(nullptr);
        body["rows"] = rows;
        emit_json(run, body);
        return;
    }
    std::vector<std::vector<json>> rows;
    for (const auto& r : table.rows) {
        rows.push_back({r.n, r.tail.point(), table.censored_fraction, r.tail.ci_low, r.tail.ci_high});
    }
    std::ostringstream slope;
    slope << "slope=";
    if (table.slope) slope << std::setprecision(17) << *table.slope;
    else slope << "undefined";
    emit_csv(run, {"n", "tail", "censored_frac", "ci_lo", "ci_hi"}, rows, {slope.str()});
}

struct EnumArgs {
    int h = 1;
    int k = 1;
    std::vector<int> window{8, 8, 8};
    bool all_offsets = false;
};

void cmd_enum(const Run& run, const EnumArgs& a) {
    if (a.window.size() != 3) throw UsageError("--window takes three sides X,Y,Z");
    const auto res = enumerate_beams_small(a.h, a.k, {a.window[0], a.window[1], a.window[2]}, a.all_offsets);
    json body;
    body["h_max"] = a.h;
    body["k_max"] = a.k;
    body["window"] = a.window;
    body["intervals"] = a.all_offsets ? "all-offsets" : "anchored";
    body["count"] = res.count;
    body["bound"] = res.bound;
    body["polyominoes_by_size"] = res.by_size;
    if (run.format == Format::Text) {
        std::ostringstream os;
        os << "beams with |H| <= " << a.h << ", w <= " << a.k << ": " << res.count << " (bound " << res.bound
           << ")\n";
        emit(run, os.str());
    } else {
        emit_json(run, body);
    }
}

std::vector<std::string> replay_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    json cfg;
    try {
        if (!text.empty() && text[0] == '#') {
            const auto pos = text.find("config=");
            const auto eol = text.find('\n');
            if (pos == std::string::npos || pos > eol) throw UsageError("CSV header carries no config");
            cfg = json::parse(text.substr(pos + 7, eol - pos - 7));
        } else {
            cfg = json::parse(text).at("config");
        }
        return cfg.at("argv").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw UsageError(std::string("no replayable config in '") + path + "': " + e.what());
    }
}

std::uint64_t fresh_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

int exit_code_for(const Error& e) {
    if (dynamic_cast<const UsageError*>(&e)) return 1;
    if (dynamic_cast<const ResourceLimit*>(&e)) return 3;
    return 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Anisotropic bootstrap percolation: closures, stable sets, critical lengths, growth and beams."};
    app.name("bootperc");
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub, bool randomized, bool trials) {
        if (randomized) sub->add_option("--seed", common.seed, "64-bit seed (generated and printed if omitted)");
        if (trials) sub->add_option("--trials", common.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
        if (randomized) {
            sub->add_option("--workers", common.workers, "worker threads (0 = all cores)");
            sub->add_option("--confidence", common.confidence, "Wilson interval confidence")->check(CLI::Range(0.0, 1.0));
            sub->add_flag("--independent", common.independent, "independent fields per p instead of coupled sampling");
        }
        sub->add_option("--max-cells", common.max_cells, "abort boxes larger than this (default 2^28)");
        sub->add_option("--out", common.out_path, "write the result here instead of stdout");
        sub->add_option("--format", common.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    };

    std::string literal;
    auto* classify_cmd = app.add_subcommand("classify", "criticality class, stable set and predicted L_c order");
    classify_cmd->add_option("--family", literal, "e.g. \"N[1,2,4]r=6\"")->required();
    add_common(classify_cmd, false, false);

    auto* stable_cmd = app.add_subcommand("stable-set", "symbolic stable set and probe directions");
    stable_cmd->add_option("--family", literal)->required();
    add_common(stable_cmd, false, false);

    ClosureArgs closure_args;
    auto* closure_cmd = app.add_subcommand("closure", "closure of a snapshot or of a sampled seed");
    closure_cmd->add_option("--family", closure_args.fam.family);
    closure_cmd->add_option("--rules", closure_args.fam.rules, "explicit family JSON file");
    closure_cmd->add_option("--in", closure_args.in, "BPGRID snapshot to close");
    closure_cmd->add_option("--snapshot-out", closure_args.snapshot_out, "write the closure as a BPGRID snapshot");
    closure_cmd->add_option("--L", closure_args.L, "side of the sampled cube");
    closure_cmd->add_option("--p", closure_args.p, "seed density");
    closure_cmd->add_option("--trial", closure_args.trial, "trial index of the sampled seed");
    closure_cmd->add_flag("--torus", closure_args.torus, "wrap the sampled box");
    add_common(closure_cmd, true, false);

    ProbArgs prob_args;
    auto* prob_cmd = app.add_subcommand("prob", "percolation probability on [L]^d");
    prob_cmd->add_option("--family", prob_args.fam.family);
    prob_cmd->add_option("--rules", prob_args.fam.rules);
    prob_cmd->add_option("--L", prob_args.L)->required();
    prob_cmd->add_option("--p", prob_args.p)->required();
    add_common(prob_cmd, true, true);

    LcArgs lc_args;
    auto* lc_cmd = app.add_subcommand("lc", "critical length bracket");
    lc_cmd->add_option("--family", lc_args.fam.family);
    lc_cmd->add_option("--rules", lc_args.fam.rules);
    lc_cmd->add_option("--p", lc_args.p)->required();
    lc_cmd->add_option("--target", lc_args.target);
    lc_cmd->add_option("--lmax", lc_args.lmax);
    lc_cmd->add_option("--lstart", lc_args.lstart);
    lc_cmd->add_option("--rel-width", lc_args.rel_width, "stop bisecting at this relative bracket width");
    add_common(lc_cmd, true, true);

    auto* scale_cmd = app.add_subcommand("scale", "L_c brackets against the predicted order");
    scale_cmd->add_option("--family", lc_args.fam.family)->required();
    scale_cmd->add_option("--p", lc_args.ps, "decreasing densities")->delimiter(',')->required();
    scale_cmd->add_option("--target", lc_args.target);
    scale_cmd->add_option("--lmax", lc_args.lmax);
    add_common(scale_cmd, true, true);

    GrowArgs grow_args;
    auto* grow_cmd = app.add_subcommand("grow", "growth of a fully seeded block by new layers");
    grow_cmd->add_option("--family", grow_args.family)->required();
    grow_cmd->add_option("--base", grow_args.base, "l,h,w")->delimiter(',')->required();
    grow_cmd->add_option("--dir", grow_args.dir, "growth axis e1, e2 or e3");
    grow_cmd->add_option("--inc", grow_args.inc, "number of new layers");
    grow_cmd->add_option("--p", grow_args.ps, "densities")->delimiter(',')->required();
    add_common(grow_cmd, true, true);

    DropletArgs droplet_args;
    auto* droplet_cmd = app.add_subcommand("droplet", "percolation from a fully seeded corner droplet");
    droplet_cmd->add_option("--family", droplet_args.fam.family);
    droplet_cmd->add_option("--rules", droplet_args.fam.rules);
    droplet_cmd->add_option("--droplet", droplet_args.droplet, "droplet extents")->delimiter(',')->required();
    droplet_cmd->add_option("--L", droplet_args.L)->required();
    droplet_cmd->add_option("--p", droplet_args.ps)->delimiter(',')->required();
    add_common(droplet_cmd, true, true);

    int min_s = 2, max_s = 14;
    auto* alpha_cmd = app.add_subcommand("alpha", "t_s and alpha_s table");
    alpha_cmd->add_option("--min-s", min_s);
    alpha_cmd->add_option("--max-s", max_s);
    add_common(alpha_cmd, false, false);

    PatternArgs pattern_args;
    auto* pattern_cmd = app.add_subcommand("pattern", "exact s-pattern probability or pattern search in a strip");
    pattern_cmd->add_option("--s", pattern_args.s)->required();
    pattern_cmd->add_option("--k", pattern_args.k, "strip length");
    pattern_cmd->add_option("--p", pattern_args.p, "density, decimal or a/b");
    pattern_cmd->add_option("--strip", pattern_args.strip, "BPGRID snapshot of a 2D strip");
    add_common(pattern_cmd, false, false);

    BeamsArgs beams_args;
    auto add_beams = [&](CLI::App* sub) {
        sub->add_option("--family", beams_args.family)->required();
        sub->add_option("--L", beams_args.L)->required();
        sub->add_option("--p", beams_args.p)->required();
        sub->add_option("--trial", beams_args.trial);
        sub->add_option("--rule", beams_args.rule, "closure-growth or strong-connectivity");
        add_common(sub, true, false);
    };
    auto* beams_cmd = app.add_subcommand("beams", "coarse beams process on a sampled seed");
    add_beams(beams_cmd);
    auto* al_cmd = app.add_subcommand("al-check", "covered beams at intermediate scales");
    add_beams(al_cmd);
    al_cmd->add_option("--scales", beams_args.scales, "h:k list (default dyadic h=k up to L)");
    al_cmd->add_option("--lambda", beams_args.lambda);

    DecayArgs decay_args;
    auto* decay_cmd = app.add_subcommand("decay", "tail of the origin cluster size for a subcritical planar family");
    decay_cmd->add_option("--family2d", decay_args.family2d)->required();
    decay_cmd->add_option("--eps", decay_args.eps);
    decay_cmd->add_option("--window", decay_args.window);
    decay_cmd->add_option("--n", decay_args.n, "lo:hi:step or a comma list");
    decay_cmd->add_option("--censor-cap", decay_args.censor_cap);
    add_common(decay_cmd, true, true);

    EnumArgs enum_args;
    auto* enum_cmd = app.add_subcommand("enum-beams", "count small beams in a window");
    enum_cmd->add_option("--h-max", enum_args.h)->required();
    enum_cmd->add_option("--k-max", enum_args.k)->required();
    enum_cmd->add_option("--window", enum_args.window, "X,Y,Z")->delimiter(',');
    enum_cmd->add_flag("--all-offsets", enum_args.all_offsets, "count every vertical placement of [w]");
    add_common(enum_cmd, false, false);

    std::string replay_path;
    auto* replay_cmd = app.add_subcommand("replay", "re-run the configuration embedded in a result file");
    replay_cmd->add_option("file", replay_path)->required();
    replay_cmd->add_option("--out", common.out_path);

    std::vector<const char*> cargv{"bootperc"};
    for (const auto& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub == replay_cmd) {
        try {
            auto inner = replay_args(replay_path);
            if (!common.out_path.empty()) {
                inner.push_back("--out");
                inner.push_back(common.out_path);
            }
            return run_cli(inner, out, err);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return exit_code_for(e);
        }
    }

    Run run;
    run.command = sub->get_name();
    run.out = &out;
    run.err = &err;
    run.common = common;

    // Resolved argument list: original arguments minus --out, plus any generated seed
    // and environment-provided limit, so the run can be repeated from its output.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out") {
            ++i;
            continue;
        }
        if (args[i].rfind("--out=", 0) == 0) continue;
        run.argv.push_back(args[i]);
    }
    const bool randomized =
        sub->get_option_no_throw("--seed") != nullptr && !(sub == closure_cmd && !closure_args.in.empty());
    if (randomized) {
        if (common.seed) {
            run.seed = *common.seed;
        } else {
            run.seed = fresh_seed();
            err << "seed: " << run.seed << "\n";
            run.argv.push_back("--seed");
            run.argv.push_back(std::to_string(run.seed));
        }
    }
    if (common.max_cells) {
        run.max_cells = *common.max_cells;
    } else if (const char* env = std::getenv("BOOTPERC_MAX_CELLS")) {
        try {
            run.max_cells = std::stoull(env);
        } catch (const std::logic_error&) {
            err << "error: BOOTPERC_MAX_CELLS is not an integer\n";
            return 1;
        }
        run.argv.push_back("--max-cells");
        run.argv.push_back(std::to_string(run.max_cells));
    }

    const bool text_default = run.command == "classify" || run.command == "stable-set" || run.command == "alpha" ||
                              run.command == "pattern" || run.command == "enum-beams";
    const bool csv_default = run.command == "grow" || run.command == "decay";
    if (common.format == "text") run.format = Format::Text;
    else if (common.format == "json") run.format = Format::Json;
    else if (common.format == "csv") run.format = Format::Csv;
    else run.format = text_default ? Format::Text : csv_default ? Format::Csv : Format::Json;

    try {
        if (sub == classify_cmd) cmd_classify(run, literal);
        else if (sub == stable_cmd) cmd_stable_set(run, literal);
        else if (sub == closure_cmd) cmd_closure(run, closure_args);
        else if (sub == prob_cmd) cmd_prob(run, prob_args);
        else if (sub == lc_cmd) cmd_lc(run, lc_args);
        else if (sub == scale_cmd) cmd_scale(run, lc_args);
        else if (sub == grow_cmd) cmd_grow(run, grow_args);
        else if (sub == droplet_cmd) cmd_droplet(run, droplet_args);
        else if (sub == alpha_cmd) cmd_alpha(run, min_s, max_s);
        else if (sub == pattern_cmd) cmd_pattern(run, pattern_args);
        else if (sub == beams_cmd) cmd_beams(run, beams_args, false);
        else if (sub == al_cmd) cmd_beams(run, beams_args, true);
        else if (sub == decay_cmd) cmd_decay(run, decay_args);
        else if (sub == enum_cmd) cmd_enum(run, enum_args);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

} // namespace bootperc
