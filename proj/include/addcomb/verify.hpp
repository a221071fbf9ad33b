#pragma once

#include <addcomb/structure.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace addcomb {

inline constexpr std::string_view version = "addcomb 1.0.0";

/// Largest order for exhaustive sweeps over pairs of subsets.
inline constexpr int exhaustive_pair_guard = 16;

enum class SuiteMode { exhaustive, sample };

struct SuiteConfig {
    int min_order = 2;
    int max_order = 8;
    std::vector<std::string> checks{"all"};
    SuiteMode mode = SuiteMode::exhaustive;
    long long sample_count = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    /// Per-check order ceilings for exhaustive mode, overriding the defaults.
    std::map<std::string, int> budgets;
    /// Emit elapsed_ms; off by default so reports stay byte-identical.
    bool timing = false;
};

/// Which base instances a check is swept over.
enum class Domain {
    unary,             ///< S containing 0
    pair,              ///< any non-empty A, B
    anchored_pair,     ///< S containing 0, any non-empty X
    normalized_pair,   ///< 0 in S n T
};

/// One fully specified instance. Unused slots stay empty.
struct CheckArgs {
    std::optional<GroupSet> s;
    std::optional<GroupSet> t;
    std::optional<GroupSet> x;
    std::optional<Subgroup> h;
    int k = 0;
};

enum class Slot { s, t, x, h, k };

struct CheckSpec {
    std::string name;
    Domain domain = Domain::unary;
    int budget = 10;
    /// Display labels for the used slots, in record order.
    std::vector<std::pair<std::string, Slot>> labels;
    /// Turns a base instance into the instances to evaluate.
    std::function<void(const GroupSet&, const std::optional<GroupSet>&, Context&, std::vector<CheckArgs>&)> expand;
    std::function<Verdict(const CheckArgs&, Context&)> evaluate;
};

// ---------------------------------------------------------------------------
// Basic statements checked directly on sets

/// Kneser: |A+B| >= |A+H| + |B+H| - |H| with H the period of A+B.
inline Verdict check_kneser(const GroupSet& a, const GroupSet& b)
{
    const GroupSet sum = sumset(a, b);
    const Subgroup h = period(sum);
    const int rhs = sumset(a, h.members()).size() + sumset(b, h.members()).size() - h.order();
    return verdict_from(sum.size() >= rhs, "|A+B| = " + std::to_string(sum.size()), ">= " + std::to_string(rhs),
                        {{"period", h.to_string()}});
}

/// |A|+|B| >= |G|+1 forces A+B = G.
inline Verdict check_folklore_fill(const GroupSet& a, const GroupSet& b)
{
    if (a.size() + b.size() < a.universe() + 1)
        return Verdict::skipped("|A|+|B| >= |G|+1");
    const GroupSet sum = sumset(a, b);
    return verdict_from(sum.size() == a.universe(), "A+B = " + sum.to_string(), "A+B = G");
}

/// Scherk: a uniquely representable element forces |X+Y| >= |X|+|Y|-1.
inline Verdict check_scherk(const GroupSet& x, const GroupSet& y)
{
    const GroupSet unique = uniquely_representable(x, y);
    if (unique.empty())
        return Verdict::skipped("some c has |X n (c-Y)| = 1");
    const int sum = sumset(x, y).size();
    const int rhs = x.size() + y.size() - 1;
    return verdict_from(sum >= rhs, "|X+Y| = " + std::to_string(sum), ">= " + std::to_string(rhs),
                        {{"c", x.group().element_literal(unique.min_element())}});
}

/// (X^S)^{-S} + S = X + S, and X lies inside (X^S)^{-S}.
inline Verdict check_lee(const GroupSet& s, const GroupSet& x)
{
    const GroupSet y = outside(s.negate(), outside(s, x));
    const GroupSet lhs = sumset(y, s);
    const GroupSet rhs = sumset(x, s);
    return verdict_from(lhs == rhs && x.is_subset_of(y), "(X^S)^{-S}+S = " + lhs.to_string(), rhs.to_string(),
                        {{"double_dual", y.to_string()}});
}

namespace detail {

inline Verdict unary_generating(const GroupSet& s)
{
    if (!generates(s))
        return Verdict::skipped("S generates G");
    return Verdict::passed();
}

/// Isoperimetric inequality for k = 1, 2, plus maximality of kappa_k when separable.
inline Verdict check_iso_inequality(const GroupSet& s, Context& ctx)
{
    if (auto v = unary_generating(s); v.is_skipped())
        return v;
    const int n = s.universe();
    const SumKernel kernel(s);
    const Word last = full_mask(n);
    nlohmann::json w = nlohmann::json::object();
    for (int k = 1; k <= 2; ++k) {
        if (n < 2 * k - 1)
            continue;
        const KappaResult& kr = ctx.kappa(s, k);
        bool sharp = false;
        for (Word x = 1; x <= last && x != 0; ++x) {
            const int size = std::popcount(x);
            if (size < k)
                continue;
            const int covered = std::popcount(kernel.sum(x));
            if (covered < std::min(n - k + 1, size + kr.value))
                return Verdict::failed("|X+S| = " + std::to_string(covered) + " for X = " +
                                           GroupSet::from_mask(s.group_ptr(), x).to_string(),
                                       ">= min(|G|-k+1, |X|+kappa_" + std::to_string(k) + ")", {{"k", k}});
            sharp = sharp || covered < std::min(n - k + 1, size + kr.value + 1);
        }
        if (kr.separable && !sharp)
            return Verdict::failed("kappa_" + std::to_string(k) + " = " + std::to_string(kr.value) + " is not maximal",
                                   "some X attains the bound", {{"k", k}});
        w["kappa_" + std::to_string(k)] = kr.value;
    }
    return Verdict::passed(std::move(w));
}

inline std::optional<Verdict> kappa1_hypotheses(const GroupSet& s, Context& ctx)
{
    if (!generates(s))
        return Verdict::skipped("S generates G");
    if (!ctx.kappa(s, 1).separable)
        return Verdict::skipped("S is 1-separable");
    return std::nullopt;
}

inline std::optional<Verdict> kappa2_hypotheses(const GroupSet& s, Context& ctx)
{
    if (!generates(s))
        return Verdict::skipped("S generates G");
    if (s.universe() < 3)
        return Verdict::skipped("|G| >= 3");
    const KappaResult& k2 = ctx.kappa(s, 2);
    if (!k2.separable)
        return Verdict::skipped("S is 2-separable");
    if (k2.value > s.size() - 1)
        return Verdict::skipped("kappa_2(S) <= |S|-1");
    return std::nullopt;
}

inline bool is_closed(const GroupSet& a) { return sumset(a, a) == a; }

inline Verdict check_atom_subgroup(const GroupSet& s, Context& ctx)
{
    if (auto v = kappa1_hypotheses(s, ctx))
        return *v;
    const KappaResult& kr = ctx.kappa(s, 1);
    for (const auto& a : atoms_at_zero(s, 1, kr))
        if (!is_closed(a))
            return Verdict::failed("1-atom " + a.to_string() + " is not a subgroup", "subgroup");
    return Verdict::passed({{"atom", kr.witness->to_string()}});
}

inline Verdict check_two_atom(const GroupSet& s, Context& ctx)
{
    if (auto v = kappa2_hypotheses(s, ctx))
        return *v;
    const KappaResult& kr = ctx.kappa(s, 2);
    for (const auto& a : atoms_at_zero(s, 2, kr))
        if (a.size() != 2 && !is_closed(a))
            return Verdict::failed("2-atom " + a.to_string() + " is neither a subgroup nor of size 2",
                                   "subgroup or |H| = 2");
    return Verdict::passed({{"atom", kr.witness->to_string()}});
}

inline Verdict check_vosper_fragment(const GroupSet& s, Context& ctx)
{
    if (auto v = kappa2_hypotheses(s, ctx))
        return *v;
    if (2 * s.size() > s.universe() + 1)
        return Verdict::skipped("|S| <= (|G|+1)/2");
    if (is_arithmetic_progression(s))
        return Verdict::skipped("S not an arithmetic progression");
    const int k2 = ctx.kappa(s, 2).value;
    for (const auto& h : ctx.subgroups(s.group_ptr()))
        if (is_fragment(s, h.members(), 2, k2))
            return Verdict::passed({{"H", h.to_string()}});
    return Verdict::failed("no subgroup is a 2-fragment", "a subgroup 2-fragment");
}

inline Verdict check_atom_intersection(const GroupSet& s, int k, Context& ctx)
{
    if (!generates(s))
        return Verdict::skipped("S generates G");
    if (s.universe() < 2 * k - 1)
        return Verdict::skipped("|G| >= 2k-1");
    if (!ctx.kappa(s, k).separable)
        return Verdict::skipped("S is k-separable");
    return atom_intersection_check(s, k);
}

inline Verdict check_strongip(const GroupSet& s, const Subgroup& h, const GroupSet& x, Context& ctx)
{
    if (auto bad = strong_isoperimetric_precondition(s, h, x, &ctx))
        return Verdict::skipped(*bad);
    const auto w = strong_isoperimetric_witness(s, h, x, &ctx);
    const int t = static_cast<int>(h_decomposition(x, h).parts.size()) - 1;
    const int u = static_cast<int>(h_decomposition(s, h).parts.size()) - 1;
    if (!w)
        return Verdict::failed("no translates reach " + std::to_string(t + u + 1) + " cosets",
                               std::to_string(t + u + 1) + " cosets");
    const int cover = strong_isoperimetric_cover(x, h, *w);
    nlohmann::json j = {{"n", w->trace_indices}, {"y", nlohmann::json::array()}};
    for (Index y : w->translations)
        j["y"].push_back(s.group().element_literal(y));
    return verdict_from(cover == t + u + 1, "witness covers " + std::to_string(cover) + " cosets",
                        std::to_string(t + u + 1) + " cosets", std::move(j));
}

inline Verdict check_vominus_all(const GroupSet& s, const GroupSet& x, Context& ctx)
{
    Verdict first = Verdict::skipped("y in S");
    bool have = false;
    for (Index y : s.elements()) {
        Verdict v = vominus_check(s, x, y, &ctx);
        if (v.is_fail()) {
            v.witness["y"] = s.group().element_literal(y);
            return v;
        }
        if (!have) {
            first = std::move(v);
            have = true;
        }
        if (first.is_skipped())
            return first; // hypotheses other than y in S do not depend on y
    }
    return first;
}

inline void single(const GroupSet& a, const std::optional<GroupSet>& b, Context&, std::vector<CheckArgs>& out)
{
    out.push_back({a, b, std::nullopt, std::nullopt, 0});
}

} // namespace detail

/// The fixed registry, in report order.
inline const std::vector<CheckSpec>& check_registry()
{
    using detail::single;
    static const std::vector<CheckSpec> registry = [] {
        std::vector<CheckSpec> r;
        const std::vector<std::pair<std::string, Slot>> ab{{"A", Slot::s}, {"B", Slot::t}};
        const std::vector<std::pair<std::string, Slot>> st{{"S", Slot::s}, {"T", Slot::t}};
        const std::vector<std::pair<std::string, Slot>> s_only{{"S", Slot::s}};

        r.push_back({"kneser", Domain::pair, 10, ab, single,
                     [](const CheckArgs& c, Context&) { return check_kneser(*c.s, *c.t); }});
        r.push_back({"folklore_fill", Domain::pair, 10, ab, single,
                     [](const CheckArgs& c, Context&) { return check_folklore_fill(*c.s, *c.t); }});
        r.push_back({"scherk", Domain::pair, 10, {{"X", Slot::s}, {"Y", Slot::t}}, single,
                     [](const CheckArgs& c, Context&) { return check_scherk(*c.s, *c.t); }});
        r.push_back({"lee", Domain::anchored_pair, 10, {{"S", Slot::s}, {"X", Slot::t}}, single,
                     [](const CheckArgs& c, Context&) { return check_lee(*c.s, *c.t); }});
        r.push_back({"iso_inequality", Domain::unary, 14, s_only, single,
                     [](const CheckArgs& c, Context& ctx) { return detail::check_iso_inequality(*c.s, ctx); }});
        r.push_back({"kappa_upper", Domain::unary, 16, s_only, single, [](const CheckArgs& c, Context& ctx) {
                         if (auto v = detail::kappa1_hypotheses(*c.s, ctx))
                             return *v;
                         const int value = ctx.kappa(*c.s, 1).value;
                         return verdict_from(value <= c.s->size() - 1, "kappa_1 = " + std::to_string(value),
                                             "<= |S|-1 = " + std::to_string(c.s->size() - 1));
                     }});
        r.push_back({"kappa_lower", Domain::unary, 16, s_only, single, [](const CheckArgs& c, Context& ctx) {
                         if (auto v = detail::kappa1_hypotheses(*c.s, ctx))
                             return *v;
                         const int value = ctx.kappa(*c.s, 1).value;
                         return verdict_from(2 * value >= c.s->size(), "kappa_1 = " + std::to_string(value),
                                             ">= |S|/2 = " + std::to_string(c.s->size()) + "/2");
                     }});
        r.push_back({"atom_subgroup", Domain::unary, 16, s_only, single,
                     [](const CheckArgs& c, Context& ctx) { return detail::check_atom_subgroup(*c.s, ctx); }});
        r.push_back({"atom_intersection", Domain::unary, 12, {{"S", Slot::s}, {"k", Slot::k}},
                     [](const GroupSet& a, const std::optional<GroupSet>&, Context&, std::vector<CheckArgs>& out) {
                         for (int k = 1; k <= 2; ++k)
                             out.push_back({a, std::nullopt, std::nullopt, std::nullopt, k});
                     },
                     [](const CheckArgs& c, Context& ctx) { return detail::check_atom_intersection(*c.s, c.k, ctx); }});
        r.push_back({"two_atom", Domain::unary, 16, s_only, single,
                     [](const CheckArgs& c, Context& ctx) { return detail::check_two_atom(*c.s, ctx); }});
        r.push_back({"vosper_fragment", Domain::unary, 16, s_only, single,
                     [](const CheckArgs& c, Context& ctx) { return detail::check_vosper_fragment(*c.s, ctx); }});
        r.push_back({"quotient_kappa", Domain::unary, 16, {{"S", Slot::s}, {"H", Slot::h}},
                     [](const GroupSet& a, const std::optional<GroupSet>&, Context& ctx, std::vector<CheckArgs>& out) {
                         for (const auto& h : ctx.subgroups(a.group_ptr()))
                             out.push_back({a, std::nullopt, std::nullopt, h, 0});
                     },
                     [](const CheckArgs& c, Context& ctx) { return quotient_kappa_check(*c.s, *c.h, &ctx); }});
        r.push_back({"vominus", Domain::anchored_pair, 10, {{"S", Slot::s}, {"X", Slot::t}},
                     [](const GroupSet& a, const std::optional<GroupSet>& b, Context&, std::vector<CheckArgs>& out) {
                         if (b->contains(0)) // X up to translation
                             out.push_back({a, b, std::nullopt, std::nullopt, 0});
                     },
                     [](const CheckArgs& c, Context& ctx) { return detail::check_vominus_all(*c.s, *c.t, ctx); }});
        r.push_back({"strongip", Domain::anchored_pair, 10, {{"S", Slot::s}, {"H", Slot::h}, {"X", Slot::t}},
                     [](const GroupSet& a, const std::optional<GroupSet>& b, Context& ctx, std::vector<CheckArgs>& out) {
                         if (!b->contains(0))
                             return;
                         for (const auto& h : ctx.subgroups(a.group_ptr()))
                             out.push_back({a, b, std::nullopt, h, 0});
                     },
                     [](const CheckArgs& c, Context& ctx) { return detail::check_strongip(*c.s, *c.h, *c.t, ctx); }});
        r.push_back({"hyperatom_dichotomy", Domain::unary, 16, s_only, single,
                     [](const CheckArgs& c, Context& ctx) { return check_hyperatom_dichotomy(*c.s, ctx); }});
        r.push_back({"ap1", Domain::anchored_pair, 10, {{"Y", Slot::s}, {"X", Slot::t}}, single,
                     [](const CheckArgs& c, Context&) { return check_ap1(*c.s, *c.t); }});
        r.push_back({"nongenerating", Domain::normalized_pair, 10, st, single,
                     [](const CheckArgs& c, Context&) { return check_nongenerating(*c.s, *c.t); }});
        r.push_back({"transfer", Domain::normalized_pair, 10, st, single,
                     [](const CheckArgs& c, Context& ctx) { return check_transfer(*c.s, *c.t, ctx); }});
        r.push_back({"tpowers", Domain::normalized_pair, 10, st, single,
                     [](const CheckArgs& c, Context&) { return check_tpowers(*c.s, *c.t); }});
        r.push_back({"twothird", Domain::normalized_pair, 10, st, single,
                     [](const CheckArgs& c, Context& ctx) { return check_twothird(*c.s, *c.t, ctx); }});
        r.push_back({"finalcor", Domain::normalized_pair, 10, st, single,
                     [](const CheckArgs& c, Context& ctx) { return check_finalcor(*c.s, *c.t, ctx); }});
        r.push_back({"kst", Domain::pair, 10, ab, single,
                     [](const CheckArgs& c, Context& ctx) { return check_kst_equivalence(*c.s, *c.t, ctx); }});
        r.push_back({"lev", Domain::normalized_pair, 10, ab, single,
                     [](const CheckArgs& c, Context& ctx) { return check_lev(*c.s, *c.t, ctx); }});
        return r;
    }();
    return registry;
}

inline const CheckSpec& find_check(std::string_view name)
{
    for (const auto& c : check_registry())
        if (c.name == name)
            return c;
    fail(ErrorCode::config, "unknown check '" + std::string(name) + "'");
}

inline std::vector<std::string> check_names()
{
    std::vector<std::string> out;
    for (const auto& c : check_registry())
        out.push_back(c.name);
    return out;
}

// ---------------------------------------------------------------------------
// Records and replay

inline nlohmann::json args_to_json(const CheckSpec& spec, const CheckArgs& args)
{
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [label, slot] : spec.labels) {
        switch (slot) {
        case Slot::s: out[label] = args.s->to_string(); break;
        case Slot::t: out[label] = args.t->to_string(); break;
        case Slot::x: out[label] = args.x->to_string(); break;
        case Slot::h: out[label] = args.h->to_string(); break;
        case Slot::k: out[label] = args.k; break;
        }
    }
    return out;
}

inline CheckArgs args_from_json(const CheckSpec& spec, const GroupPtr& group, const nlohmann::json& j)
{
    require(j.is_object(), ErrorCode::parse, "record args must be an object");
    CheckArgs out;
    for (const auto& [label, slot] : spec.labels) {
        require(j.contains(label), ErrorCode::parse, "record is missing argument '" + label + "'");
        const auto& v = j.at(label);
        if (slot == Slot::k) {
            require(v.is_number_integer(), ErrorCode::parse, "argument '" + label + "' must be an integer");
            out.k = v.get<int>();
            continue;
        }
        require(v.is_string(), ErrorCode::parse, "argument '" + label + "' must be a set literal");
        GroupSet set = parse_set(group, v.get<std::string>());
        switch (slot) {
        case Slot::s: out.s = std::move(set); break;
        case Slot::t: out.t = std::move(set); break;
        case Slot::x: out.x = std::move(set); break;
        case Slot::h:
            try {
                out.h = Subgroup(std::move(set));
            } catch (const Error& e) {
                fail(ErrorCode::parse, "argument '" + label + "' is not a subgroup");
            }
            break;
        case Slot::k: break;
        }
    }
    return out;
}

/// Re-runs one instance from a counterexample record.
inline Verdict replay(const nlohmann::json& record)
{
    require(record.is_object(), ErrorCode::parse, "record must be a JSON object");
    for (const char* key : {"check", "group", "args"})
        require(record.contains(key), ErrorCode::parse, std::string("record is missing '") + key + "'");
    require(record["check"].is_string() && record["group"].is_string(), ErrorCode::parse,
            "record check and group must be strings");
    const CheckSpec* spec = nullptr;
    for (const auto& c : check_registry())
        if (c.name == record["check"].get<std::string>())
            spec = &c;
    require(spec != nullptr, ErrorCode::parse, "record names an unknown check");
    const GroupPtr group = parse_group(record["group"].get<std::string>());
    const CheckArgs args = args_from_json(*spec, group, record["args"]);
    Context ctx;
    return spec->evaluate(args, ctx);
}

// ---------------------------------------------------------------------------
// Enumeration

enum class PairFilter { normalized, generating_s, critical, aperiodic_sum, size_ordered, twothird_bound };

/// Pairs (S, T) in canonical order (S by bitmap, then T) passing every filter.
inline std::vector<std::pair<GroupSet, GroupSet>> enumerate_pairs(const GroupPtr& group, const std::vector<PairFilter>& filters)
{
    const int n = group->order();
    require(n <= 20, ErrorCode::size, "pair enumeration is limited to |G| <= 20");
    auto has = [&](PairFilter f) { return std::find(filters.begin(), filters.end(), f) != filters.end(); };
    const std::uint64_t last = (std::uint64_t{1} << n) - 1;
    std::vector<std::pair<GroupSet, GroupSet>> out;
    for (std::uint64_t sm = 1; sm <= last; ++sm) {
        if (has(PairFilter::normalized) && !(sm & 1))
            continue;
        const GroupSet s = GroupSet::from_mask(group, sm);
        if (has(PairFilter::generating_s) && !generates(s))
            continue;
        for (std::uint64_t tm = 1; tm <= last; ++tm) {
            if (has(PairFilter::normalized) && !(tm & 1))
                continue;
            const GroupSet t = GroupSet::from_mask(group, tm);
            if (has(PairFilter::size_ordered) && s.size() > t.size())
                continue;
            if (has(PairFilter::critical) || has(PairFilter::aperiodic_sum) || has(PairFilter::twothird_bound)) {
                const GroupSet sum = sumset(s, t);
                if (has(PairFilter::critical) && sum.size() != s.size() + t.size() - 1)
                    continue;
                if (has(PairFilter::twothird_bound) && 3 * sum.size() > 2 * n + 2)
                    continue;
                if (has(PairFilter::aperiodic_sum) && !is_aperiodic(sum))
                    continue;
            }
            out.emplace_back(s, t);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Suite

struct CheckCounters {
    long long tested = 0;
    long long passed = 0;
    long long skipped = 0;
    long long failed = 0;
    int groups = 0;
    int max_order_covered = 0;

    CheckCounters& operator+=(const CheckCounters& o)
    {
        tested += o.tested;
        passed += o.passed;
        skipped += o.skipped;
        failed += o.failed;
        return *this;
    }
};

struct Counterexample {
    std::string check;
    std::string group;
    nlohmann::json args;
    Verdict verdict;
};

struct Report {
    SuiteConfig config;
    std::vector<std::pair<std::string, CheckCounters>> checks;
    std::vector<Counterexample> counterexamples;
    long long elapsed_ms = 0;

    [[nodiscard]] long long failed_total() const
    {
        long long n = 0;
        for (const auto& [name, c] : checks)
            n += c.failed;
        return n;
    }

    [[nodiscard]] const CheckCounters& counters(std::string_view name) const
    {
        for (const auto& [n, c] : checks)
            if (n == name)
                return c;
        fail(ErrorCode::domain, "check '" + std::string(name) + "' is not in the report");
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Counter-based stream keyed by (seed, group, check, sample index).
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t group, std::uint64_t check, std::uint64_t index) noexcept
        : state_(splitmix64(splitmix64(splitmix64(seed ^ group) ^ check) ^ index))
    {
    }

    std::uint64_t next() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64(state_);
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t low_mask(int n) noexcept { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

inline long long base_count(Domain d, int n)
{
    const long long any = (1LL << n) - 1;
    const long long anchored = 1LL << (n - 1);
    switch (d) {
    case Domain::unary: return anchored;
    case Domain::pair: return any * any;
    case Domain::anchored_pair: return anchored * any;
    case Domain::normalized_pair: return anchored * anchored;
    }
    return 0;
}

/// Base instance number i of the exhaustive enumeration, in canonical order.
inline std::pair<std::uint64_t, std::uint64_t> decode_base(Domain d, int n, long long i)
{
    const auto any = static_cast<std::uint64_t>((1LL << n) - 1);
    const auto anchored = std::uint64_t{1} << (n - 1);
    const auto u = static_cast<std::uint64_t>(i);
    switch (d) {
    case Domain::unary: return {(u << 1) | 1, 0};
    case Domain::pair: return {u / any + 1, u % any + 1};
    case Domain::anchored_pair: return {((u / any) << 1) | 1, u % any + 1};
    case Domain::normalized_pair: return {((u / anchored) << 1) | 1, ((u % anchored) << 1) | 1};
    }
    return {0, 0};
}

/// A uniform sample from the domain: bit 0 forced where the domain fixes 0, empty sets redrawn.
inline std::pair<std::uint64_t, std::uint64_t> sample_base(Domain d, int n, SampleStream& rng)
{
    const std::uint64_t mask = low_mask(n);
    auto anchored = [&] { return (rng.next() & mask) | 1; };
    auto any = [&] {
        std::uint64_t m = 0;
        while (m == 0)
            m = rng.next() & mask;
        return m;
    };
    switch (d) {
    case Domain::unary: return {anchored(), 0};
    case Domain::pair: {
        const auto a = any();
        return {a, any()};
    }
    case Domain::anchored_pair: {
        const auto a = anchored();
        return {a, any()};
    }
    case Domain::normalized_pair: {
        const auto a = anchored();
        return {a, anchored()};
    }
    }
    return {0, 0};
}

struct WorkUnit {
    std::size_t check = 0;
    GroupPtr group;
    long long begin = 0;
    long long end = 0;
};

struct UnitResult {
    CheckCounters counters;
    std::vector<Counterexample> counterexamples;
};

inline constexpr long long unit_size = 2048;

} // namespace detail

inline int effective_budget(const SuiteConfig& config, const CheckSpec& spec)
{
    if (auto it = config.budgets.find(spec.name); it != config.budgets.end())
        return it->second;
    return spec.budget;
}

/// Expands "all", checks names and limits; throws config errors.
inline std::vector<const CheckSpec*> resolve_checks(const SuiteConfig& config)
{
    require(config.workers >= 1, ErrorCode::config, "workers must be >= 1");
    require(config.min_order >= 2, ErrorCode::config, "min order must be >= 2");
    require(config.max_order >= config.min_order, ErrorCode::config, "max order below min order");
    require(config.max_order <= 64, ErrorCode::config, "verification is limited to |G| <= 64");
    require(config.mode == SuiteMode::exhaustive || config.sample_count >= 1, ErrorCode::config,
            "sample count must be >= 1");
    for (const auto& [name, b] : config.budgets) {
        find_check(name);
        require(b >= 2, ErrorCode::config, "budget for '" + name + "' must be >= 2");
    }
    std::vector<const CheckSpec*> out;
    for (const auto& name : config.checks) {
        if (name == "all") {
            for (const auto& c : check_registry())
                out.push_back(&c);
        } else {
            out.push_back(&find_check(name));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    require(!out.empty(), ErrorCode::config, "no checks selected");
    if (config.mode == SuiteMode::exhaustive)
        for (const CheckSpec* c : out)
            if (c->domain != Domain::unary)
                require(config.max_order <= exhaustive_pair_guard,
                        ErrorCode::config,
                        "exhaustive pair sweeps are limited to order " + std::to_string(exhaustive_pair_guard) +
                            "; use sample mode for '" + c->name + "'");
    return out;
}

inline nlohmann::json config_to_json(const SuiteConfig& config, const std::vector<const CheckSpec*>& checks)
{
    nlohmann::json j;
    j["min_order"] = config.min_order;
    j["max_order"] = config.max_order;
    j["mode"] = config.mode == SuiteMode::exhaustive ? "exhaustive" : "sample";
    nlohmann::json names = nlohmann::json::array();
    for (const CheckSpec* c : checks)
        names.push_back(c->name);
    j["checks"] = names;
    if (config.mode == SuiteMode::sample) {
        j["sample_count"] = config.sample_count;
        j["seed"] = config.seed;
    } else {
        nlohmann::json budgets = nlohmann::json::object();
        for (const CheckSpec* c : checks)
            budgets[c->name] = effective_budget(config, *c);
        j["budgets"] = budgets;
    }
    return j;
}

inline std::string config_hash(const nlohmann::json& config_json)
{
    static constexpr char hex[] = "0123456789abcdef";
    std::uint64_t h = detail::fnv1a(config_json.dump());
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        out[static_cast<std::size_t>(i)] = hex[h & 15];
    return out;
}

namespace detail {

inline void run_unit(const WorkUnit& unit, const CheckSpec& spec, const SuiteConfig& config, Context& ctx,
                     UnitResult& out)
{
    const GroupPtr& g = unit.group;
    const int n = g->order();
    const std::uint64_t check_key = fnv1a(spec.name);
    std::vector<CheckArgs> instances;
    for (long long i = unit.begin; i < unit.end; ++i) {
        std::pair<std::uint64_t, std::uint64_t> base;
        if (config.mode == SuiteMode::exhaustive) {
            base = decode_base(spec.domain, n, i);
        } else {
            SampleStream rng(config.seed, g->fingerprint(), check_key, static_cast<std::uint64_t>(i));
            base = sample_base(spec.domain, n, rng);
        }
        const GroupSet a = GroupSet::from_mask(g, base.first);
        std::optional<GroupSet> b;
        if (spec.domain != Domain::unary)
            b = GroupSet::from_mask(g, base.second);
        instances.clear();
        spec.expand(a, b, ctx, instances);
        for (const auto& args : instances) {
            Verdict v = spec.evaluate(args, ctx);
            switch (v.outcome) {
            case Outcome::pass:
                ++out.counters.tested;
                ++out.counters.passed;
                break;
            case Outcome::skipped: ++out.counters.skipped; break;
            case Outcome::fail:
                ++out.counters.tested;
                ++out.counters.failed;
                out.counterexamples.push_back({spec.name, g->name(), args_to_json(spec, args), std::move(v)});
                break;
            }
        }
    }
}

} // namespace detail

inline nlohmann::json counterexample_to_json(const Counterexample& c, const std::string& hash)
{
    nlohmann::json j;
    j["check"] = c.check;
    j["group"] = c.group;
    j["args"] = c.args;
    j["observed"] = c.verdict.observed;
    j["expected"] = c.verdict.expected;
    if (!c.verdict.witness.is_null())
        j["witness"] = c.verdict.witness;
    j["version"] = std::string(version);
    j["config_hash"] = hash;
    return j;
}

/// Runs the configured checks over the group catalog. Deterministic for any worker count.
inline Report run_suite(const SuiteConfig& config)
{
    const auto started = std::chrono::steady_clock::now();
    const auto checks = resolve_checks(config);
    const auto groups = abelian_group_catalog(config.max_order);

    std::vector<detail::WorkUnit> units;
    std::vector<std::size_t> unit_check; // index into checks
    Report report;
    report.config = config;
    report.checks.reserve(checks.size());
    for (std::size_t ci = 0; ci < checks.size(); ++ci) {
        const CheckSpec& spec = *checks[ci];
        CheckCounters counters;
        const int ceiling =
            config.mode == SuiteMode::exhaustive ? std::min(config.max_order, effective_budget(config, spec)) : config.max_order;
        for (const auto& g : groups) {
            const int n = g->order();
            if (n < config.min_order || n > ceiling)
                continue;
            ++counters.groups;
            counters.max_order_covered = std::max(counters.max_order_covered, n);
            const long long total =
                config.mode == SuiteMode::exhaustive ? detail::base_count(spec.domain, n) : config.sample_count;
            for (long long b = 0; b < total; b += detail::unit_size) {
                units.push_back({ci, g, b, std::min(total, b + detail::unit_size)});
                unit_check.push_back(ci);
            }
        }
        report.checks.emplace_back(spec.name, counters);
    }

    std::vector<detail::UnitResult> results(units.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::optional<Error> first_error;
    auto worker = [&] {
        Context ctx;
        std::string current_group;
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= units.size())
                return;
            // bounded memory: memo tables only help within one group
            if (units[i].group->name() != current_group) {
                ctx.clear();
                current_group = units[i].group->name();
            }
            try {
                detail::run_unit(units[i], *checks[units[i].check], config, ctx, results[i]);
            } catch (const Error& e) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = e;
                next.store(units.size());
                return;
            }
        }
    };
    const int nworkers = std::max(1, std::min<int>(config.workers, static_cast<int>(units.size())));
    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nworkers));
        for (int w = 0; w < nworkers; ++w)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    if (first_error)
        throw *first_error;

    for (std::size_t i = 0; i < units.size(); ++i) {
        report.checks[unit_check[i]].second += results[i].counters;
        for (auto& c : results[i].counterexamples)
            report.counterexamples.push_back(std::move(c));
    }
    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    return report;
}

inline nlohmann::json report_to_json(const Report& report)
{
    const auto checks = resolve_checks(report.config);
    nlohmann::json j;
    j["version"] = std::string(version);
    j["config"] = config_to_json(report.config, checks);
    const std::string hash = config_hash(j["config"]);
    j["config_hash"] = hash;
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [name, c] : report.checks)
        cs.push_back({{"name", name},
                      {"tested", c.tested},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"failed", c.failed},
                      {"groups", c.groups},
                      {"max_order_covered", c.max_order_covered}});
    j["checks"] = cs;
    nlohmann::json ces = nlohmann::json::array();
    for (const auto& c : report.counterexamples)
        ces.push_back(counterexample_to_json(c, hash));
    j["counterexamples"] = ces;
    j["failed_total"] = report.failed_total();
    if (report.config.timing)
        j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

inline std::string report_to_csv(const Report& report)
{
    std::string out = "check,tested,passed,skipped,failed,groups,max_order_covered\n";
    for (const auto& [name, c] : report.checks)
        out += name + ',' + std::to_string(c.tested) + ',' + std::to_string(c.passed) + ',' + std::to_string(c.skipped) +
               ',' + std::to_string(c.failed) + ',' + std::to_string(c.groups) + ',' +
               std::to_string(c.max_order_covered) + '\n';
    return out;
}

} // namespace addcomb
