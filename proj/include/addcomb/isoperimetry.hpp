#pragma once

#include <addcomb/setops.hpp>
#include <addcomb/verdict.hpp>

#include <algorithm>
#include <bit>
#include <climits>
#include <cstdint>
#include <optional>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace addcomb {

/// Exhaustive kappa search works on 64-bit masks and is gated well below that.
inline constexpr int brute_force_order_limit = 32;
/// k >= 3 is only searched on small groups.
inline constexpr int high_k_order_limit = 16;
/// Fragment enumeration sweeps every subset of G.
inline constexpr int fragment_order_limit = 24;
inline constexpr long long default_fragment_limit = 1'000'000;

struct KappaResult {
    int k = 1;
    int value = 0;
    bool separable = false;
    /// A k-atom containing 0: among minimizers the smallest, then lowest bitmap.
    std::optional<GroupSet> witness;
};

namespace detail {

using Word = GroupSet::Word;

inline Word bit(int e) noexcept { return Word{1} << e; }

inline Word full_mask(int n) noexcept { return n >= 64 ? ~Word{0} : bit(n) - 1; }

/// trans[x] is the mask of x + S.
struct SumKernel {
    int n = 0;
    Word full = 0;
    std::vector<Word> trans;

    explicit SumKernel(const GroupSet& s)
        : n(s.universe()), full(full_mask(s.universe())), trans(static_cast<std::size_t>(s.universe()), 0)
    {
        const AbelianGroup& g = s.group();
        const auto elems = s.elements();
        for (Index x = 0; x < n; ++x)
            for (Index e : elems)
                trans[static_cast<std::size_t>(x)] |= bit(g.add(x, e));
    }

    [[nodiscard]] Word sum(Word x) const noexcept
    {
        Word out = 0;
        while (x != 0) {
            out |= trans[static_cast<std::size_t>(std::countr_zero(x))];
            x &= x - 1;
        }
        return out;
    }
};

/// Checks the preconditions shared by every kappa engine, in a fixed order.
inline void check_kappa_preconditions(const GroupSet& s, int k)
{
    require(k >= 1, ErrorCode::domain, "k must be at least 1");
    require(s.contains(0), ErrorCode::not_normalized, "S must contain 0");
    require(generates(s), ErrorCode::not_generating, "S must generate " + s.group().name());
    require(s.universe() >= 2 * k - 1, ErrorCode::order_too_small,
            "kappa_" + std::to_string(k) + " needs |G| >= " + std::to_string(2 * k - 1));
}

/**
 * Depth-first search over X containing 0, elements added in increasing index
 * order. Two prunes are sound: |X^S| only shrinks as X grows, and the minimum
 * (and every atom) is attained with |X| <= |X^S| because -(X^S) is a fragment
 * whenever X is.
 */
struct KappaSearch {
    const SumKernel& kernel;
    int k;
    int best = INT_MAX;
    int best_size = INT_MAX;
    Word best_set = 0;

    // canonical minimum on (boundary, size, bitmap)
    void visit(int next, Word x, Word sum, int size)
    {
        const int covered = std::popcount(sum);
        const int out = kernel.n - covered;
        if (out < k || size > out)
            return;
        // any Y above X has |Y| <= n - |X+S|, so its boundary is at least 2|X+S| - n
        if (best != INT_MAX && 2 * covered - kernel.n > best)
            return;
        if (size >= k) {
            const int b = covered - size;
            if (std::tie(b, size, x) < std::tie(best, best_size, best_set)) {
                best = b;
                best_size = size;
                best_set = x;
            }
        }
        for (int e = next; e < kernel.n; ++e)
            visit(e + 1, x | bit(e), sum | kernel.trans[static_cast<std::size_t>(e)], size + 1);
    }
};

/// Every X containing 0 with |X| == size, boundary == value and |X^S| >= k.
inline void collect_fixed_size(const SumKernel& kernel, int k, int size, int value, int next, Word x, Word sum,
                               int current, std::vector<Word>& out)
{
    const int covered = std::popcount(sum);
    if (kernel.n - covered < k)
        return;
    if (current == size) {
        if (covered - current == value)
            out.push_back(x);
        return;
    }
    for (int e = next; e < kernel.n; ++e)
        collect_fixed_size(kernel, k, size, value, e + 1, x | bit(e), sum | kernel.trans[static_cast<std::size_t>(e)],
                           current + 1, out);
}

inline void check_brute_gate(const GroupSet& s, int k)
{
    require(s.universe() <= brute_force_order_limit, ErrorCode::size,
            "exhaustive kappa is limited to |G| <= " + std::to_string(brute_force_order_limit));
    require(k <= 2 || s.universe() <= high_k_order_limit, ErrorCode::size,
            "kappa_k for k >= 3 is limited to |G| <= " + std::to_string(high_k_order_limit));
}

} // namespace detail

/// kappa_k(S) by exhaustive search.
inline KappaResult kappa(const GroupSet& s, int k)
{
    detail::check_kappa_preconditions(s, k);
    detail::check_brute_gate(s, k);
    const detail::SumKernel kernel(s);
    detail::KappaSearch search{kernel, k};
    search.visit(1, 1, kernel.trans[0], 1);

    const int n = s.universe();
    KappaResult r;
    r.k = k;
    if (search.best == INT_MAX) {
        r.value = n - 2 * k + 1;
        r.separable = false;
        return r;
    }
    r.value = search.best;
    r.separable = true;
    r.witness = GroupSet::from_mask(s.group_ptr(), search.best_set);
    require(k != 1 || r.value <= s.size() - 1, ErrorCode::internal, "kappa_1(S) <= |S|-1 violated");
    return r;
}

/**
 * kappa_1(S) as the smallest vertex cut separating 0 from some t outside S in
 * the Cayley graph with arcs x -> x+s, s in S\{0}. Each vertex is split into
 * an in/out pair joined by a unit arc.
 */
inline KappaResult kappa1_mincut(const GroupSet& s)
{
    detail::check_kappa_preconditions(s, 1);
    const int n = s.universe();
    require(s.size() < n, ErrorCode::not_separable, "S = G is not 1-separable");

    constexpr int inf = INT_MAX / 4;
    const AbelianGroup& g = s.group();
    std::vector<Index> steps;
    s.for_each([&](Index e) {
        if (e != 0)
            steps.push_back(e);
    });

    // residual graph in adjacency arrays; edge i and i^1 are a pair
    std::vector<int> head(static_cast<std::size_t>(2 * n), -1), next, to, base_cap;
    auto add_edge = [&](int u, int v, int c) {
        for (auto [a, b, cap] : {std::tuple{u, v, c}, std::tuple{v, u, 0}}) {
            to.push_back(b);
            base_cap.push_back(cap);
            next.push_back(head[static_cast<std::size_t>(a)]);
            head[static_cast<std::size_t>(a)] = static_cast<int>(to.size()) - 1;
        }
    };
    auto in_node = [](int v) { return 2 * v; };
    auto out_node = [](int v) { return 2 * v + 1; };
    std::vector<int> split_edge(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        split_edge[static_cast<std::size_t>(v)] = static_cast<int>(to.size());
        add_edge(in_node(v), out_node(v), 1);
    }
    for (int v = 0; v < n; ++v)
        for (Index st : steps)
            add_edge(out_node(v), in_node(g.add(v, st)), inf);

    std::vector<int> cap;
    std::vector<int> parent_edge(static_cast<std::size_t>(2 * n));
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(2 * n));
    const int source = out_node(0);

    // BFS in the residual graph; returns whether sink was reached
    auto bfs = [&](int sink) {
        std::fill(parent_edge.begin(), parent_edge.end(), -2);
        parent_edge[static_cast<std::size_t>(source)] = -1;
        queue.clear();
        queue.push_back(source);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            const int u = queue[qi];
            for (int e = head[static_cast<std::size_t>(u)]; e != -1; e = next[static_cast<std::size_t>(e)]) {
                const int v = to[static_cast<std::size_t>(e)];
                if (cap[static_cast<std::size_t>(e)] > 0 && parent_edge[static_cast<std::size_t>(v)] == -2) {
                    parent_edge[static_cast<std::size_t>(v)] = e;
                    if (v == sink)
                        return true;
                    queue.push_back(v);
                }
            }
        }
        return false;
    };

    int best = INT_MAX;
    GroupSet witness(s.group_ptr());
    for (int t = 0; t < n; ++t) {
        if (s.contains(t))
            continue;
        cap = base_cap;
        cap[static_cast<std::size_t>(split_edge[0])] = inf;
        cap[static_cast<std::size_t>(split_edge[static_cast<std::size_t>(t)])] = inf;
        const int sink = in_node(t);
        int flow = 0;
        while (flow < best && bfs(sink)) {
            for (int v = sink; v != source;) {
                const int e = parent_edge[static_cast<std::size_t>(v)];
                --cap[static_cast<std::size_t>(e)];
                ++cap[static_cast<std::size_t>(e ^ 1)];
                v = to[static_cast<std::size_t>(e ^ 1)];
            }
            ++flow;
        }
        if (flow < best) {
            best = flow;
            // the last BFS failed, so parent_edge marks the source side of a minimum cut
            witness = GroupSet(s.group_ptr());
            for (int v = 0; v < n; ++v)
                if (parent_edge[static_cast<std::size_t>(out_node(v))] != -2)
                    witness.set_bit(v);
        }
    }
    KappaResult r;
    r.k = 1;
    r.value = best;
    r.separable = true;
    r.witness = std::move(witness);
    return r;
}

struct FragmentSet {
    int k = 1;
    int kappa = 0;
    std::vector<GroupSet> fragments;
    bool truncated = false;
    /// Every k-atom, ascending in canonical order.
    std::vector<GroupSet> atoms;
};

/// The k-atoms containing 0, ascending.
inline std::vector<GroupSet> atoms_at_zero(const GroupSet& s, int k, const KappaResult& kr)
{
    require(kr.separable && kr.witness, ErrorCode::not_separable, "S is not " + std::to_string(k) + "-separable");
    const detail::SumKernel kernel(s);
    std::vector<detail::Word> masks;
    detail::collect_fixed_size(kernel, k, kr.witness->size(), kr.value, 1, 1, kernel.trans[0], 1, masks);
    std::sort(masks.begin(), masks.end());
    std::vector<GroupSet> out;
    out.reserve(masks.size());
    for (auto m : masks)
        out.push_back(GroupSet::from_mask(s.group_ptr(), m));
    return out;
}

/// Every k-atom of S (all translates of the atoms at 0), ascending.
inline std::vector<GroupSet> all_atoms(const GroupSet& s, int k, const KappaResult& kr)
{
    std::set<GroupSet> seen;
    for (const auto& a : atoms_at_zero(s, k, kr))
        for (Index x = 0; x < s.universe(); ++x)
            seen.insert(a.translate(x));
    return {seen.begin(), seen.end()};
}

/**
 * k-fragments in canonical order, stopping after `limit` of them. The atom
 * list is always complete.
 */
inline FragmentSet fragments(const GroupSet& s, int k, long long limit = default_fragment_limit)
{
    const KappaResult kr = kappa(s, k);
    require(kr.separable, ErrorCode::not_separable, "S is not " + std::to_string(k) + "-separable");
    require(s.universe() <= fragment_order_limit, ErrorCode::size,
            "fragment enumeration is limited to |G| <= " + std::to_string(fragment_order_limit));
    FragmentSet out;
    out.k = k;
    out.kappa = kr.value;
    const detail::SumKernel kernel(s);
    const int n = s.universe();
    const detail::Word last = detail::full_mask(n);
    for (detail::Word x = 1; x <= last && x != 0; ++x) {
        const int size = std::popcount(x);
        if (size < k)
            continue;
        const int covered = std::popcount(kernel.sum(x));
        if (n - covered < k || covered - size != kr.value)
            continue;
        if (static_cast<long long>(out.fragments.size()) >= limit) {
            out.truncated = true;
            break;
        }
        out.fragments.push_back(GroupSet::from_mask(s.group_ptr(), x));
    }
    out.atoms = all_atoms(s, k, kr);
    return out;
}

/**
 * Every atom A and fragment F with |A n F| >= k must have A inside F, so
 * distinct atoms meet in at most k-1 elements.
 */
inline Verdict atom_intersection_check(const GroupSet& s, int k, long long limit = default_fragment_limit)
{
    const FragmentSet fs = fragments(s, k, limit);
    for (const auto& a : fs.atoms) {
        for (const auto& f : fs.fragments) {
            if ((a & f).size() >= k && !a.is_subset_of(f))
                return Verdict::failed("atom " + a.to_string() + " meets fragment " + f.to_string() + " in " +
                                           std::to_string((a & f).size()) + " elements without inclusion",
                                       "atom inside fragment", {{"atom", a.to_string()}, {"fragment", f.to_string()}});
        }
    }
    for (std::size_t i = 0; i < fs.atoms.size(); ++i)
        for (std::size_t j = i + 1; j < fs.atoms.size(); ++j)
            if ((fs.atoms[i] & fs.atoms[j]).size() > k - 1)
                return Verdict::failed("atoms " + fs.atoms[i].to_string() + " and " + fs.atoms[j].to_string() + " share " +
                                           std::to_string((fs.atoms[i] & fs.atoms[j]).size()) + " elements",
                                       "at most " + std::to_string(k - 1),
                                       {{"atom", fs.atoms[i].to_string()}, {"other", fs.atoms[j].to_string()}});
    nlohmann::json w = {{"atoms", fs.atoms.size()}, {"fragments", fs.fragments.size()}, {"truncated", fs.truncated}};
    return Verdict::passed(std::move(w));
}

struct HyperAtom {
    Subgroup subgroup;
    /// Every subgroup 1-fragment of maximal order, ascending; size > 1 means a tie.
    std::vector<Subgroup> maximal;
    int kappa1 = 0;

    [[nodiscard]] bool tied() const noexcept { return maximal.size() > 1; }
};

/// Hyper-atom from a precomputed subgroup list and kappa_1(S).
inline HyperAtom hyper_atom(const GroupSet& s, const std::vector<Subgroup>& subgroups, int kappa1)
{
    const int n = s.universe();
    std::vector<Subgroup> best;
    int best_order = 0;
    for (const auto& h : subgroups) {
        const GroupSet hs = sumset(h.members(), s);
        if (hs.size() == n || hs.size() - h.order() != kappa1)
            continue;
        if (h.order() > best_order) {
            best.clear();
            best_order = h.order();
        }
        if (h.order() == best_order)
            best.push_back(h);
    }
    require(!best.empty(), ErrorCode::internal, "no subgroup 1-fragment found");
    std::sort(best.begin(), best.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.members() < b.members(); });
    return {best.front(), std::move(best), kappa1};
}

inline HyperAtom hyper_atom(const GroupSet& s)
{
    const KappaResult kr = kappa(s, 1);
    require(kr.separable, ErrorCode::not_separable, "S is not 1-separable");
    return hyper_atom(s, all_subgroups(s.group_ptr()), kr.value);
}

/**
 * Memo tables for repeated evaluation: subgroup lattices per group, kappa
 * values and hyper-atoms per set. Groups are keyed by their factor list, so
 * quotient groups share a lattice with the catalog group of the same shape.
 * Not thread-safe; give each worker its own.
 */
class Context {
public:
    const Lattice& lattice(const GroupPtr& group)
    {
        auto& slot = lattices_[group->name()];
        if (!slot)
            slot = std::make_unique<Lattice>(group);
        return *slot;
    }

    const std::vector<Subgroup>& subgroups(const GroupPtr& group) { return lattice(group).subgroups(); }

    const KappaResult& kappa(const GroupSet& s, int k)
    {
        auto [it, fresh] = kappas_.try_emplace(key(s, k));
        if (fresh)
            it->second = addcomb::kappa(s, k);
        return it->second;
    }

    /// Hyper-atom of a 1-separable S; not-separable sets raise.
    const HyperAtom& hyper_atom(const GroupSet& s)
    {
        const std::string k = key(s, 0);
        if (auto it = hyper_atoms_.find(k); it != hyper_atoms_.end())
            return it->second;
        const KappaResult& kr = kappa(s, 1);
        require(kr.separable, ErrorCode::not_separable, "S is not 1-separable");
        return hyper_atoms_.emplace(k, addcomb::hyper_atom(s, subgroups(s.group_ptr()), kr.value)).first->second;
    }

    void clear()
    {
        kappas_.clear();
        hyper_atoms_.clear();
    }

private:
    static std::string key(const GroupSet& s, int k)
    {
        std::string out = s.group().name();
        out += ':';
        out += std::to_string(k);
        for (auto w : s.words()) {
            out += ':';
            out += std::to_string(w);
        }
        return out;
    }

    std::unordered_map<std::string, std::unique_ptr<Lattice>> lattices_;
    std::unordered_map<std::string, KappaResult> kappas_;
    std::unordered_map<std::string, HyperAtom> hyper_atoms_;
};

namespace detail {

inline KappaResult kappa_of(Context* ctx, const GroupSet& s, int k) { return ctx ? ctx->kappa(s, k) : kappa(s, k); }

inline const std::vector<Subgroup>& subgroups_of(Context* ctx, const GroupPtr& g, std::vector<Subgroup>& scratch)
{
    if (ctx)
        return ctx->subgroups(g);
    scratch = all_subgroups(g);
    return scratch;
}

} // namespace detail

enum class VosperMode { fast, exhaustive };

namespace detail {

/// Searches X containing 0 with |X| >= 2 and |X+S| < min(n-1, |X|+|S|).
inline bool vosper_violation(const SumKernel& kernel, int s_size, int next, Word x, Word sum, int size)
{
    const int covered = std::popcount(sum);
    if (covered >= kernel.n - 1)
        return false; // every superset also covers n-1
    if (size >= 2 && covered < size + s_size)
        return true;
    for (int e = next; e < kernel.n; ++e)
        if (vosper_violation(kernel, s_size, e + 1, x | bit(e), sum | kernel.trans[static_cast<std::size_t>(e)], size + 1))
            return true;
    return false;
}

} // namespace detail

/**
 * Vosper test: |X+S| >= min(|G|-1, |X|+|S|) for every |X| >= 2. Fast mode uses
 * the kappa_2 characterization; exhaustive mode scans the subsets directly.
 */
inline bool is_vosper(const GroupSet& s, VosperMode mode = VosperMode::fast, Context* ctx = nullptr)
{
    require(s.contains(0), ErrorCode::not_normalized, "S must contain 0");
    require(generates(s), ErrorCode::not_generating, "S must generate " + s.group().name());
    const int n = s.universe();
    if (n < 3)
        return true; // kappa_2 is undefined and the only X with |X| >= 2 is G
    if (mode == VosperMode::fast) {
        const KappaResult kr = detail::kappa_of(ctx, s, 2);
        return !kr.separable || kr.value >= s.size();
    }
    detail::check_brute_gate(s, 2);
    const detail::SumKernel kernel(s);
    return !detail::vosper_violation(kernel, s.size(), 1, 1, kernel.trans[0], 1);
}

/**
 * For a Vosper S and X with |X+S| = |X|+|S|-1 (and |X| >= |S| when
 * |X|+|S| = |G|): |X + (S\{y})| >= |X|+|S|-2 for y in S.
 */
inline Verdict vominus_check(const GroupSet& s, const GroupSet& x, Index y, Context* ctx = nullptr)
{
    s.check_same_group(x);
    if (!s.contains(0))
        return Verdict::skipped("0 in S");
    if (!generates(s))
        return Verdict::skipped("S generates G");
    if (x.empty())
        return Verdict::skipped("X non-empty");
    if (!s.contains(y))
        return Verdict::skipped("y in S");
    const int n = s.universe();
    if (sumset(x, s).size() != x.size() + s.size() - 1)
        return Verdict::skipped("|X+S| = |X|+|S|-1");
    if (x.size() + s.size() == n && x.size() < s.size())
        return Verdict::skipped("|X| >= |S| when |X|+|S| = |G|");
    if (!is_vosper(s, VosperMode::fast, ctx))
        return Verdict::skipped("S is a Vosper subset");
    GroupSet rest = s;
    rest.erase(y);
    const int lhs = sumset(x, rest).size();
    const int rhs = x.size() + s.size() - 2;
    return verdict_from(lhs >= rhs, "|X+(S\\{y})| = " + std::to_string(lhs), ">= " + std::to_string(rhs),
                        {{"sum", sumset(x, rest).to_string()}});
}

/// True when X is a k-fragment of S with kappa_k(S) = kappa.
inline bool is_fragment(const GroupSet& s, const GroupSet& x, int k, int kappa_value)
{
    const GroupSet xs = sumset(x, s);
    return x.size() >= k && s.universe() - xs.size() >= k && xs.size() - x.size() == kappa_value;
}

/**
 * For a subgroup 2-fragment H of a 2-separable S: kappa_1(phi(S)) equals
 * |phi(S)|-1 in G/H, and the preimage of every subgroup 1-fragment of phi(S)
 * is a 2-fragment of S.
 */
inline Verdict quotient_kappa_check(const GroupSet& s, const Subgroup& h, Context* ctx = nullptr)
{
    s.check_same_group(h.members());
    if (!s.contains(0))
        return Verdict::skipped("0 in S");
    if (!generates(s))
        return Verdict::skipped("S generates G");
    if (s.universe() < 3)
        return Verdict::skipped("|G| >= 3");
    const KappaResult k2 = detail::kappa_of(ctx, s, 2);
    if (!k2.separable)
        return Verdict::skipped("S is 2-separable");
    if (!is_fragment(s, h.members(), 2, k2.value))
        return Verdict::skipped("H is a 2-fragment of S");

    const QuotientMap phi = quotient(s.group_ptr(), h);
    const GroupSet ps = phi.project(s);
    const KappaResult k1 = detail::kappa_of(ctx, ps, 1);
    if (!k1.separable || k1.value != ps.size() - 1)
        return Verdict::failed("kappa_1(phi(S)) = " + std::string(k1.separable ? std::to_string(k1.value) : "undefined"),
                               std::to_string(ps.size() - 1), {{"phi_S", ps.to_string()}});
    int checked = 0;
    std::vector<Subgroup> scratch;
    for (const auto& kq : detail::subgroups_of(ctx, phi.quotient(), scratch)) {
        if (!is_fragment(ps, kq.members(), 1, k1.value))
            continue;
        ++checked;
        const GroupSet pre = phi.preimage(kq.members());
        if (!is_fragment(s, pre, 2, k2.value))
            return Verdict::failed("preimage " + pre.to_string() + " of " + kq.to_string() + " is not a 2-fragment",
                                   "2-fragment", {{"K", kq.to_string()}, {"preimage", pre.to_string()}});
    }
    return Verdict::passed({{"phi_S", ps.to_string()}, {"subgroup_fragments", checked}});
}

/// Trace indices n_i into the H-decomposition of X and translations y_i in S\H.
struct StrongIsoWitness {
    std::vector<int> trace_indices;
    std::vector<Index> translations;
};

/// Empty when the hypotheses hold, otherwise the first failing one.
inline std::optional<std::string> strong_isoperimetric_precondition(const GroupSet& s, const Subgroup& h, const GroupSet& x,
                                                                   Context* ctx = nullptr)
{
    s.check_same_group(x);
    s.check_same_group(h.members());
    if (!s.contains(0))
        return "0 in S";
    if (x.empty())
        return "X non-empty";
    if (!generates(s))
        return "S generates G";
    const auto ds = h_decomposition(s, h);
    const auto dx = h_decomposition(x, h);
    const int u = static_cast<int>(ds.parts.size()) - 1;
    const int t = static_cast<int>(dx.parts.size()) - 1;
    if (h.index() < t + u + 1)
        return "|G|/|H| >= t+u+1";
    if (u > 0) {
        // phi(S) = G/H falls back on the non-separable value |G/H|-1
        const GroupSet ps = quotient(s.group_ptr(), h).project(s);
        if (detail::kappa_of(ctx, ps, 1).value < u)
            return "kappa_1(phi(S)) >= u";
    }
    return std::nullopt;
}

/**
 * Searches for distinct trace indices n_1..n_u of X and y_i in S\H so that
 * phi(X u (X_{n_1}+y_1) u ... ) has exactly t+u+1 cosets. Each translate can
 * add at most one new coset, so this is a matching between traces and new
 * cosets c with c - phi(X_n) in phi(S)\{0}.
 */
inline std::optional<StrongIsoWitness> strong_isoperimetric_witness(const GroupSet& s, const Subgroup& h, const GroupSet& x,
                                                                   Context* ctx = nullptr)
{
    if (auto bad = strong_isoperimetric_precondition(s, h, x, ctx))
        fail(ErrorCode::precondition, "strong isoperimetric property needs " + *bad);
    const auto ds = h_decomposition(s, h);
    const auto dx = h_decomposition(x, h);
    const int u = static_cast<int>(ds.parts.size()) - 1;
    const int traces = static_cast<int>(dx.parts.size());
    if (u == 0)
        return StrongIsoWitness{};

    const QuotientMap phi = quotient(s.group_ptr(), h);
    const AbelianGroup& q = *phi.quotient();
    const GroupSet px = phi.project(x);
    std::vector<Index> shifts; // phi(S)\{0}
    phi.project(s).for_each([&](Index e) {
        if (e != 0)
            shifts.push_back(e);
    });

    // adjacency: trace i -> new cosets reachable by one shift
    std::vector<std::vector<Index>> adj(static_cast<std::size_t>(traces));
    for (int i = 0; i < traces; ++i) {
        const Index base = phi.project(dx.parts[static_cast<std::size_t>(i)].coset_rep);
        for (Index d : shifts) {
            const Index c = q.add(base, d);
            if (!px.contains(c))
                adj[static_cast<std::size_t>(i)].push_back(c);
        }
    }
    std::vector<int> owner(static_cast<std::size_t>(q.order()), -1);
    std::vector<char> seen;
    auto augment = [&](auto&& self, int i) -> bool {
        for (Index c : adj[static_cast<std::size_t>(i)]) {
            if (seen[static_cast<std::size_t>(c)])
                continue;
            seen[static_cast<std::size_t>(c)] = 1;
            if (owner[static_cast<std::size_t>(c)] == -1 || self(self, owner[static_cast<std::size_t>(c)])) {
                owner[static_cast<std::size_t>(c)] = i;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int i = 0; i < traces && matched < u; ++i) {
        seen.assign(static_cast<std::size_t>(q.order()), 0);
        if (augment(augment, i))
            ++matched;
    }
    if (matched < u)
        return std::nullopt;

    StrongIsoWitness w;
    for (Index c = 0; c < q.order(); ++c) {
        const int i = owner[static_cast<std::size_t>(c)];
        if (i == -1)
            continue;
        const Index base = phi.project(dx.parts[static_cast<std::size_t>(i)].coset_rep);
        const Index d = q.sub(c, base);
        // smallest element of S in the coset d
        Index y = -1;
        s.for_each([&](Index e) {
            if (y == -1 && phi.project(e) == d)
                y = e;
        });
        w.trace_indices.push_back(i);
        w.translations.push_back(y);
    }
    return w;
}

/// Number of cosets covered by X together with the witness translates.
inline int strong_isoperimetric_cover(const GroupSet& x, const Subgroup& h, const StrongIsoWitness& w)
{
    const auto dx = h_decomposition(x, h);
    GroupSet all = x;
    for (std::size_t i = 0; i < w.trace_indices.size(); ++i)
        all |= dx.parts[static_cast<std::size_t>(w.trace_indices[i])].trace.translate(w.translations[i]);
    return quotient(x.group_ptr(), h).project(all).size();
}

} // namespace addcomb
