#pragma once

#include <addcomb/subgroup.hpp>

#include <optional>
#include <vector>

namespace addcomb {

/// Minkowski sum A + B; empty if either operand is empty.
inline GroupSet sumset(const GroupSet& a, const GroupSet& b)
{
    a.check_same_group(b);
    const AbelianGroup& g = a.group();
    const GroupSet& small = a.size() <= b.size() ? a : b;
    const GroupSet& large = a.size() <= b.size() ? b : a;
    const auto lhs = small.elements();
    GroupSet out(a.group_ptr());
    large.for_each([&](Index y) {
        for (Index x : lhs)
            out.set_bit(g.add(x, y));
    });
    return out;
}

/// A - B.
inline GroupSet difference_set(const GroupSet& a, const GroupSet& b) { return sumset(a, b.negate()); }

/// True when A + x = A.
inline bool is_stabilized_by(const GroupSet& a, Index x)
{
    const AbelianGroup& g = a.group();
    bool ok = true;
    a.for_each([&](Index e) {
        if (ok && !a.contains(g.add(e, x)))
            ok = false;
    });
    return ok;
}

/// Pi(A) = {x : A + x = A}. Rejects the empty set.
inline Subgroup period(const GroupSet& a)
{
    require(!a.empty(), ErrorCode::domain, "the period of the empty set is undefined");
    const AbelianGroup& g = a.group();
    const Index a0 = a.min_element();
    GroupSet stab(a.group_ptr());
    // any stabilizer x maps a0 into A, so x ranges over A - a0
    a.for_each([&](Index e) {
        const Index x = g.sub(e, a0);
        if (is_stabilized_by(a, x))
            stab.set_bit(x);
    });
    return Subgroup::trusted(std::move(stab));
}

inline bool is_aperiodic(const GroupSet& a)
{
    require(!a.empty(), ErrorCode::domain, "periodicity of the empty set is undefined");
    const AbelianGroup& g = a.group();
    const Index a0 = a.min_element();
    bool aperiodic = true;
    a.for_each([&](Index e) {
        if (aperiodic && e != a0 && is_stabilized_by(a, g.sub(e, a0)))
            aperiodic = false;
    });
    return aperiodic;
}

/// A + H == A.
inline bool is_periodic_under(const GroupSet& a, const Subgroup& h)
{
    bool ok = true;
    h.members().for_each([&](Index x) {
        if (ok && !is_stabilized_by(a, x))
            ok = false;
    });
    return ok;
}

/// d_S(X) = (X + S) \ X. Requires 0 in S.
inline GroupSet boundary(const GroupSet& s, const GroupSet& x)
{
    require(s.contains(0), ErrorCode::domain, "boundary needs 0 in S");
    return sumset(x, s) - x;
}

/// X^S = G \ (X + S).
inline GroupSet outside(const GroupSet& s, const GroupSet& x) { return sumset(x, s).complement(); }

/**
 * (X^S)^{-S}. The result Y contains X and has Y + S = X + S; a violation of
 * either is reported as an internal error.
 */
inline GroupSet lee_double_dual(const GroupSet& s, const GroupSet& x)
{
    const GroupSet y = outside(s.negate(), outside(s, x));
    require(x.is_subset_of(y) && sumset(y, s) == sumset(x, s), ErrorCode::internal,
            "double dual postcondition violated");
    return y;
}

/**
 * Every d such that A = {a, a+d, ..., a+(|A|-1)d} with pairwise distinct
 * terms. A singleton is a progression with every difference; an empty result
 * means A is not an arithmetic progression.
 */
inline std::vector<Index> ap_differences(const GroupSet& a)
{
    require(!a.empty(), ErrorCode::domain, "arithmetic-progression test needs a non-empty set");
    const AbelianGroup& g = a.group();
    const int m = a.size();
    std::vector<Index> out;
    if (m == 1) {
        out.resize(static_cast<std::size_t>(g.order()));
        for (Index d = 0; d < g.order(); ++d)
            out[static_cast<std::size_t>(d)] = d;
        return out;
    }
    const auto elems = a.elements();
    for (Index d = 1; d < g.order(); ++d) {
        const int ord = g.element_order(d);
        if (ord < m)
            continue;
        Index start = -1;
        if (ord == m) {
            start = elems.front(); // A must be a full coset of <d>
        } else {
            int starts = 0;
            for (Index e : elems) {
                if (!a.contains(g.sub(e, d))) {
                    start = e;
                    ++starts;
                }
            }
            if (starts != 1)
                continue;
        }
        bool ok = true;
        Index x = start;
        for (int i = 0; i < m && ok; ++i) {
            ok = a.contains(x);
            x = g.add(x, d);
        }
        if (ok)
            out.push_back(d);
    }
    return out;
}

inline bool is_arithmetic_progression(const GroupSet& a) { return !ap_differences(a).empty(); }

/// Non-empty traces of a set on the cosets of H, in canonical coset order.
struct HDecomposition {
    struct Part {
        Index coset_rep;
        GroupSet trace;
    };

    Subgroup subgroup;
    std::vector<Part> parts;

    /// Number of traces that are not full cosets.
    [[nodiscard]] int partial_count() const
    {
        int n = 0;
        for (const auto& p : parts)
            n += p.trace.size() != subgroup.order() ? 1 : 0;
        return n;
    }
};

inline HDecomposition h_decomposition(const GroupSet& a, const Subgroup& h)
{
    require(!a.empty(), ErrorCode::domain, "H-decomposition needs a non-empty set");
    a.check_same_group(h.members());
    HDecomposition out{h, {}};
    std::vector<int> slot(static_cast<std::size_t>(a.universe()), -1);
    a.for_each([&](Index e) { slot[static_cast<std::size_t>(h.coset_rep(e))] = 0; });
    for (Index rep : h.coset_reps()) {
        if (slot[static_cast<std::size_t>(rep)] == -1)
            continue;
        slot[static_cast<std::size_t>(rep)] = static_cast<int>(out.parts.size());
        out.parts.push_back({rep, GroupSet(a.group_ptr())});
    }
    a.for_each([&](Index e) { out.parts[static_cast<std::size_t>(slot[static_cast<std::size_t>(h.coset_rep(e))])].trace.set_bit(e); });
    return out;
}

/**
 * A coset representative x such that A minus its trace on x + H is
 * H-periodic, or nothing. An H-periodic A yields the smallest representative
 * among its own cosets; with H = {0} every non-empty set qualifies.
 */
inline std::optional<Index> is_quasiperiodic(const GroupSet& a, const Subgroup& h)
{
    require(!a.empty(), ErrorCode::domain, "quasi-periodicity needs a non-empty set");
    const auto dec = h_decomposition(a, h);
    std::optional<Index> partial;
    for (const auto& p : dec.parts) {
        if (p.trace.size() == h.order())
            continue;
        if (partial)
            return std::nullopt;
        partial = p.coset_rep;
    }
    return partial ? partial : std::optional<Index>(dec.parts.front().coset_rep);
}

/// Differences (as quotient indices) of phi(A) when it is an arithmetic
/// progression in G/H; empty otherwise.
inline std::vector<Index> is_modular_progression(const GroupSet& a, const QuotientMap& phi)
{
    return ap_differences(phi.project(a));
}

inline std::vector<Index> is_modular_progression(const GroupSet& a, const Subgroup& h)
{
    return is_modular_progression(a, quotient(a.group_ptr(), h));
}

/// r(c) = #{(a, b) in A x B : a + b = c} for every c.
inline std::vector<int> representation_counts(const GroupSet& a, const GroupSet& b)
{
    a.check_same_group(b);
    const AbelianGroup& g = a.group();
    std::vector<int> r(static_cast<std::size_t>(g.order()), 0);
    const auto bb = b.elements();
    a.for_each([&](Index x) {
        for (Index y : bb)
            ++r[static_cast<std::size_t>(g.add(x, y))];
    });
    return r;
}

/// Elements c with exactly one representation c = a + b, i.e. |(c - A) n B| = 1.
inline GroupSet uniquely_representable(const GroupSet& a, const GroupSet& b)
{
    require(!a.empty() && !b.empty(), ErrorCode::domain, "unique representation needs non-empty sets");
    const auto r = representation_counts(a, b);
    GroupSet out(a.group_ptr());
    for (Index c = 0; c < a.universe(); ++c)
        if (r[static_cast<std::size_t>(c)] == 1)
            out.set_bit(c);
    return out;
}

} // namespace addcomb
