#include "bootperc/family.hpp"

#include "bootperc/alpha.hpp"
#include "bootperc/error.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace bootperc {

namespace {

std::string join_ints(const std::vector<int>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
    return os.str();
}

void check_sorted_radii(int a, int b, int c) {
    if (!(1 <= a && a <= b && b <= c)) {
        throw InvalidSpec("radii must satisfy 1 <= a <= b <= c, got (" + std::to_string(a) + "," +
                          std::to_string(b) + "," + std::to_string(c) + ")");
    }
}

// n choose k with saturation at max + 1
std::size_t choose_saturating(std::size_t n, std::size_t k, std::size_t max) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    long double acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(max)) return max + 1;
    }
    return static_cast<std::size_t>(acc + 0.5L);
}

} // namespace

// ---------------------------------------------------------------------------
// NeighborhoodSpec

NeighborhoodSpec::NeighborhoodSpec(std::vector<int> radii) : radii_(std::move(radii)) {
    if (radii_.empty()) throw InvalidSpec("neighbourhood needs at least one dimension");
    for (int a : radii_) {
        if (a < 1) throw InvalidSpec("radii must be positive, got [" + join_ints(radii_) + "]");
    }
    if (!std::is_sorted(radii_.begin(), radii_.end())) {
        throw InvalidSpec("radii must be sorted a_1 <= ... <= a_d, got [" + join_ints(radii_) + "]");
    }
}

int NeighborhoodSpec::radius_sum() const {
    return std::accumulate(radii_.begin(), radii_.end(), 0);
}

std::vector<IntVec> neighborhood_vectors(const NeighborhoodSpec& spec) {
    std::vector<IntVec> out;
    out.reserve(spec.vector_count());
    const int d = spec.dims();
    for (int i = 0; i < d; ++i) {
        const int a = spec.radius(i);
        for (int k = -a; k <= a; ++k) {
            if (k == 0) continue;
            IntVec v(static_cast<std::size_t>(d), 0);
            v[static_cast<std::size_t>(i)] = k;
            out.push_back(std::move(v));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// ThresholdFamily

ThresholdFamily::ThresholdFamily(NeighborhoodSpec spec, int r) : spec_(std::move(spec)), r_(r) {
    const int n = 2 * spec_.radius_sum();
    if (r_ < 1 || r_ > n) {
        throw InvalidSpec("threshold r=" + std::to_string(r_) + " outside [1," + std::to_string(n) + "]");
    }
}

std::string ThresholdFamily::literal() const {
    return "N[" + join_ints(spec_.radii()) + "]r=" + std::to_string(r_);
}

ExplicitFamily ThresholdFamily::to_explicit(std::size_t max_rules) const {
    const auto vecs = neighborhood_vectors(spec_);
    const std::size_t n = vecs.size();
    const std::size_t k = static_cast<std::size_t>(r_);
    if (choose_saturating(n, k, max_rules) > max_rules) {
        throw ResourceLimit("explicit expansion of " + literal() + " exceeds " +
                            std::to_string(max_rules) + " rules");
    }
    std::vector<std::vector<IntVec>> rules;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<IntVec> rule;
        rule.reserve(k);
        for (std::size_t i : idx) rule.push_back(vecs[i]);
        rules.push_back(std::move(rule));
        // next combination in lexicographic order
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return ExplicitFamily(dims(), std::move(rules));
}

// ---------------------------------------------------------------------------
// ExplicitFamily

ExplicitFamily::ExplicitFamily(int dims, std::vector<std::vector<IntVec>> rules)
    : dims_(dims), rules_(std::move(rules)) {
    if (dims_ < 1) throw InvalidSpec("explicit family needs dims >= 1");
    if (rules_.empty()) throw InvalidSpec("explicit family needs at least one rule");
    for (auto& rule : rules_) {
        if (rule.empty()) throw InvalidSpec("explicit family rules must be nonempty");
        for (const auto& v : rule) {
            if (static_cast<int>(v.size()) != dims_) {
                throw InvalidSpec("rule vector has " + std::to_string(v.size()) + " components, expected " +
                                  std::to_string(dims_));
            }
            if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) {
                throw InvalidSpec("rules must not contain the origin");
            }
        }
        std::sort(rule.begin(), rule.end());
        rule.erase(std::unique(rule.begin(), rule.end()), rule.end());
    }
}

std::vector<IntVec> ExplicitFamily::support_vectors() const {
    std::vector<IntVec> all;
    for (const auto& rule : rules_) all.insert(all.end(), rule.begin(), rule.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

int family_dims(const UpdateFamily& family) {
    return std::visit([](const auto& f) { return f.dims(); }, family);
}

std::string describe(const UpdateFamily& family) {
    if (const auto* t = std::get_if<ThresholdFamily>(&family)) return t->literal();
    const auto& e = std::get<ExplicitFamily>(family);
    return "explicit(d=" + std::to_string(e.dims()) + ", rules=" + std::to_string(e.rules().size()) + ")";
}

// ---------------------------------------------------------------------------
// Directions

RationalDirection::RationalDirection(IntVec components) : v_(std::move(components)) {
    if (v_.empty()) throw InvalidDirection("direction must have at least one component");
    int g = 0;
    for (int x : v_) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) throw InvalidDirection("direction must be nonzero");
    for (int& x : v_) x /= g;
}

unsigned RationalDirection::support_mask() const {
    unsigned mask = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) {
        if (v_[i] != 0) mask |= 1u << i;
    }
    return mask;
}

bool is_stable_direction(const ThresholdFamily& family, const RationalDirection& u) {
    if (u.dims() != family.dims()) {
        throw DimensionMismatch("direction has " + std::to_string(u.dims()) + " components, family has d=" +
                                std::to_string(family.dims()));
    }
    // N ∩ H_u holds the a_i vectors pointing against sign(u_i) on every axis with u_i != 0.
    int in_half_space = 0;
    for (int i = 0; i < family.dims(); ++i) {
        if (u.components()[static_cast<std::size_t>(i)] != 0) in_half_space += family.spec().radius(i);
    }
    return in_half_space < family.threshold();
}

bool is_stable_direction(const ExplicitFamily& family, const RationalDirection& u) {
    if (u.dims() != family.dims()) {
        throw DimensionMismatch("direction has " + std::to_string(u.dims()) + " components, family has d=" +
                                std::to_string(family.dims()));
    }
    const auto& uc = u.components();
    for (const auto& rule : family.rules()) {
        const bool inside = std::all_of(rule.begin(), rule.end(), [&](const IntVec& x) {
            long long dot = 0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += static_cast<long long>(x[i]) * uc[i];
            return dot < 0;
        });
        if (inside) return false;
    }
    return true;
}

bool is_stable_direction(const UpdateFamily& family, const RationalDirection& u) {
    return std::visit([&](const auto& f) { return is_stable_direction(f, u); }, family);
}

// ---------------------------------------------------------------------------
// Classification and the stable-set table

std::string to_string(Criticality c) {
    switch (c) {
    case Criticality::Supercritical: return "supercritical";
    case Criticality::Critical: return "critical";
    case Criticality::Subcritical: return "subcritical";
    }
    return "?";
}

Criticality classify(const ThresholdFamily& family) {
    const int r = family.threshold();
    if (r > family.spec().radius_sum()) return Criticality::Subcritical;
    if (r <= family.spec().max_radius()) return Criticality::Supercritical;
    return Criticality::Critical;
}

std::string to_string(StableCase c) {
    switch (c) {
    case StableCase::AxesOnly: return "AXES_ONLY";
    case StableCase::E3PlusCircle3: return "E3_PLUS_CIRCLE3";
    case StableCase::Circles23: return "CIRCLES_23";
    case StableCase::Circles123: return "CIRCLES_123";
    case StableCase::AllSphere: return "ALL_SPHERE";
    case StableCase::Empty: return "EMPTY";
    case StableCase::Probed: return "PROBED";
    }
    return "?";
}

bool StableSetDescription::contains(const RationalDirection& u) const {
    const unsigned mask = u.support_mask();
    const int weight = std::popcount(mask);
    const bool has1 = mask & 1u, has2 = mask & 2u, has3 = mask & 4u;
    const bool named = stable_case != StableCase::AllSphere && stable_case != StableCase::Empty &&
                       stable_case != StableCase::Probed;
    if (named && u.dims() != 3) throw DimensionMismatch("symbolic stable sets are three-dimensional");
    switch (stable_case) {
    case StableCase::AxesOnly: return weight == 1;
    case StableCase::E3PlusCircle3: return mask == 4u || !has3;
    case StableCase::Circles23: return !has2 || !has3;
    case StableCase::Circles123: return !(has1 && has2 && has3);
    case StableCase::AllSphere: return true;
    case StableCase::Empty: return false;
    case StableCase::Probed:
        return std::find(stable_supports.begin(), stable_supports.end(), mask) != stable_supports.end();
    }
    return false;
}

std::string StableSetDescription::describe() const {
    switch (stable_case) {
    case StableCase::AxesOnly: return "{±e_1, ±e_2, ±e_3}";
    case StableCase::E3PlusCircle3: return "{±e_3} ∪ S1_3";
    case StableCase::Circles23: return "S1_2 ∪ S1_3";
    case StableCase::Circles123: return "S1_1 ∪ S1_2 ∪ S1_3";
    case StableCase::AllSphere: return "S^2";
    case StableCase::Empty: return "∅";
    case StableCase::Probed: break;
    }
    std::ostringstream os;
    os << "directions supported on";
    for (std::size_t k = 0; k < stable_supports.size(); ++k) {
        os << (k ? ", {" : " {");
        bool first = true;
        for (int i = 0; i < 3; ++i) {
            if (stable_supports[k] & (1u << i)) {
                os << (first ? "" : ",") << "e_" << (i + 1);
                first = false;
            }
        }
        os << "}";
    }
    return os.str();
}

StableSetDescription stable_set_symbolic(int a, int b, int c, int r) {
    check_sorted_radii(a, b, c);
    const int total = a + b + c;
    if (r < 1 || r > 2 * total) {
        throw InvalidSpec("threshold r=" + std::to_string(r) + " outside [1," + std::to_string(2 * total) + "]");
    }
    StableSetDescription out;
    const int radii[3] = {a, b, c};
    for (unsigned mask = 1; mask < 8; ++mask) {
        int weight = 0;
        for (int i = 0; i < 3; ++i) {
            if (mask & (1u << i)) weight += radii[i];
        }
        if (weight < r) out.stable_supports.push_back(mask);
    }

    if (r > total) {
        out.stable_case = StableCase::AllSphere;
        out.criticality = Criticality::Subcritical;
    } else if (r <= c) {
        out.stable_case = out.stable_supports.empty() ? StableCase::Empty : StableCase::Probed;
        out.criticality = Criticality::Supercritical;
    } else {
        out.criticality = Criticality::Critical;
        if (r <= a + b) {
            out.stable_case = StableCase::AxesOnly;
        } else if (r <= a + c) {
            out.stable_case = StableCase::E3PlusCircle3;
        } else if (r <= b + c) {
            out.stable_case = StableCase::Circles23;
        } else {
            out.stable_case = StableCase::Circles123;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Predicted critical-length orders

std::string to_string(EvidenceStatus s) {
    switch (s) {
    case EvidenceStatus::Theorem: return "theorem";
    case EvidenceStatus::UpperBoundOnly: return "upper-bound-only";
    case EvidenceStatus::Conjecture: return "conjecture";
    }
    return "?";
}

std::string ScalingOrder::formula() const {
    std::ostringstream os;
    os << (level == 2 ? "log log L_c = " : "log L_c = ");
    os << (status == EvidenceStatus::UpperBoundOnly ? "O(" : "Theta(");
    os << "p^-" << to_string(exponent);
    if (log_power != 0) os << " (log 1/p)^" << to_string(log_power);
    os << ")";
    if (status == EvidenceStatus::Conjecture) os << " [conjecture]";
    return os.str();
}

namespace {

ScalingOrder order(Rational exponent, Rational log_power, int level, EvidenceStatus status) {
    return ScalingOrder{std::move(exponent), std::move(log_power), level, status};
}

} // namespace

ScalingOrder predicted_log_lc_order(int a, int b, int c, int r) {
    check_sorted_radii(a, b, c);
    if (r <= c || r > a + b + c) {
        throw NotApplicable("N[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                            "]r=" + std::to_string(r) + " is not critical");
    }
    const int s = r - c;
    using ES = EvidenceStatus;

    // doubly exponential regime
    if (r > b + c) return order(r - (b + c), a == b ? 0 : 2, 2, ES::Theorem);

    if (c >= a + b) return order(s, c == a + b ? 0 : 2, 1, ES::Theorem);

    // c < a + b from here on
    if (r <= a + c) {
        if (s == 1 || (s == 2 && c != a + b - 1)) {
            if (c == b && b == a) return order(Rational(s, 2), 0, 1, ES::Theorem);
            if (c == b) return order(Rational(s, 2), Rational(1, 2), 1, ES::Theorem);
            return order(Rational(s, 2), Rational(3, 2), 1, ES::Theorem);
        }
        const AlphaEntry al = alpha_t(s);
        if (c > a + b - s) {
            if (Rational(r) < Rational(a + b) + al.alpha) return order(al.alpha, 2, 1, ES::UpperBoundOnly);
            return order(r - (a + b), 2, 1, ES::UpperBoundOnly);
        }
        if (c == b && b == a) return order(al.alpha, 0, 1, ES::UpperBoundOnly);
        if (c == b) return order(al.alpha, Rational(al.t + 1, al.t + 2), 1, ES::UpperBoundOnly);
        return order(al.alpha, Rational(al.t + 3, al.t + 2), 1, ES::UpperBoundOnly);
    }

    // a + c < r <= b + c with c < a + b
    if (c == b) {
        const Rational alpha_a = a == 1 ? Rational(1, 2) : alpha_t(a).alpha;
        return order(Rational(r - c - a) + alpha_a, 0, 1, ES::Conjecture);
    }
    return order(r - a - b, 0, 1, ES::Conjecture);
}

ScalingOrder predicted_log_lc_order(const ThresholdFamily& family) {
    if (family.dims() == 3) return predicted_log_lc_order(family.a(), family.b(), family.c(), family.threshold());
    if (family.dims() == 2) {
        const int a = family.a(), b = family.b(), r = family.threshold();
        if (r <= b || r > a + b) throw NotApplicable(family.literal() + " is not critical");
        return order(r - b, a == b ? 0 : 2, 1, EvidenceStatus::Theorem);
    }
    throw NotApplicable("predicted orders exist for d = 2 and d = 3 only");
}

} // namespace bootperc
