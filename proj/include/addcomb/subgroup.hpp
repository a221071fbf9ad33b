#pragma once

#include <addcomb/group_set.hpp>

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

namespace addcomb {

/**
 * A subgroup of a finite abelian group together with a small generating
 * witness and the canonical coset labelling (each element maps to the
 * smallest index of its coset). Copies share the underlying tables.
 */
class Subgroup {
public:
    /// Verifies zero membership, closure and Lagrange; domain error otherwise.
    explicit Subgroup(GroupSet members, std::vector<Index> generators = {})
    {
        const AbelianGroup& g = members.group();
        require(members.contains(0), ErrorCode::domain, "subgroup must contain 0");
        const auto elems = members.elements();
        for (Index a : elems) {
            require(members.contains(g.neg(a)), ErrorCode::domain, "set is not closed under negation");
            for (Index b : elems)
                require(members.contains(g.add(a, b)), ErrorCode::domain, "set is not closed under addition");
        }
        require(g.order() % members.size() == 0, ErrorCode::internal, "subgroup order does not divide |G|");
        data_ = build(std::move(members), std::move(generators));
    }

    /// Skips verification; for sets known to be subgroups by construction.
    static Subgroup trusted(GroupSet members, std::vector<Index> generators = {})
    {
        Subgroup s;
        s.data_ = build(std::move(members), std::move(generators));
        return s;
    }

    static Subgroup trivial(const GroupPtr& group) { return trusted(GroupSet(group, {0})); }
    static Subgroup whole(const GroupPtr& group) { return trusted(GroupSet::full(group)); }

    [[nodiscard]] const GroupSet& members() const noexcept { return data_->members; }
    [[nodiscard]] const std::vector<Index>& generators() const noexcept { return data_->generators; }
    [[nodiscard]] const AbelianGroup& group() const noexcept { return data_->members.group(); }
    [[nodiscard]] const GroupPtr& group_ptr() const noexcept { return data_->members.group_ptr(); }
    [[nodiscard]] int order() const noexcept { return data_->order; }
    [[nodiscard]] int index() const noexcept { return group().order() / data_->order; }
    [[nodiscard]] bool contains(Index e) const noexcept { return data_->members.contains(e); }
    [[nodiscard]] bool is_trivial() const noexcept { return data_->order == 1; }
    [[nodiscard]] bool is_whole() const noexcept { return data_->order == group().order(); }

    /// Smallest element index of the coset e + H.
    [[nodiscard]] Index coset_rep(Index e) const noexcept { return data_->coset_rep[static_cast<std::size_t>(e)]; }

    /// Canonical representatives of all cosets, ascending.
    [[nodiscard]] const std::vector<Index>& coset_reps() const noexcept { return data_->reps; }

    /// The coset x + H as a set.
    [[nodiscard]] GroupSet coset(Index x) const { return data_->members.translate(x); }

    friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept { return a.members() == b.members(); }

    [[nodiscard]] std::string to_string() const { return members().to_string(); }

private:
    struct Data {
        GroupSet members;
        std::vector<Index> generators;
        std::vector<Index> coset_rep;
        std::vector<Index> reps;
        int order = 1;
    };

    Subgroup() = default;

    static std::shared_ptr<const Data> build(GroupSet members, std::vector<Index> generators)
    {
        const AbelianGroup& g = members.group();
        const auto elems = members.elements();
        std::vector<Index> rep(static_cast<std::size_t>(g.order()), -1);
        std::vector<Index> reps;
        for (Index x = 0; x < g.order(); ++x) {
            if (rep[static_cast<std::size_t>(x)] != -1)
                continue;
            reps.push_back(x);
            for (Index h : elems)
                rep[static_cast<std::size_t>(g.add(x, h))] = x;
        }
        const int order = static_cast<int>(elems.size());
        return std::make_shared<const Data>(
            Data{std::move(members), std::move(generators), std::move(rep), std::move(reps), order});
    }

    std::shared_ptr<const Data> data_;
};

namespace detail {

/// Members of the cyclic subgroup generated by a.
inline GroupSet cyclic(const GroupPtr& group, Index a)
{
    GroupSet out(group);
    Index x = 0;
    do {
        out.set_bit(x);
        x = group->add(x, a);
    } while (x != 0);
    return out;
}

/// H + K for subgroups given as member sets (result is a subgroup).
inline GroupSet subgroup_sum(const GroupSet& h, const GroupSet& k)
{
    const AbelianGroup& g = h.group();
    GroupSet out(h.group_ptr());
    const auto kk = k.elements();
    h.for_each([&](Index a) {
        for (Index b : kk)
            out.set_bit(g.add(a, b));
    });
    return out;
}

} // namespace detail

/// Smallest subgroup containing A; the empty set generates {0}.
inline Subgroup subgroup_generated(const GroupSet& a)
{
    const GroupPtr& group = a.group_ptr();
    GroupSet span(group, {0});
    std::vector<Index> gens;
    a.for_each([&](Index x) {
        if (span.contains(x))
            return;
        span = detail::subgroup_sum(span, detail::cyclic(group, x));
        gens.push_back(x);
    });
    return Subgroup::trusted(std::move(span), std::move(gens));
}

inline bool generates(const GroupSet& a) { return subgroup_generated(a).is_whole(); }

/**
 * Every subgroup exactly once, sorted by (order, canonical bitmap order).
 * Subgroups are reached by adjoining one element at a time to subgroups
 * already found, starting from {0}, with deduplication.
 */
inline std::vector<Subgroup> all_subgroups(const GroupPtr& group)
{
    std::vector<Subgroup> found;
    std::unordered_set<GroupSet, GroupSetHash> seen;
    std::deque<Subgroup> queue;
    Subgroup start = Subgroup::trivial(group);
    seen.insert(start.members());
    queue.push_back(start);
    while (!queue.empty()) {
        Subgroup k = queue.front();
        queue.pop_front();
        for (Index rep : k.coset_reps()) {
            if (rep == 0)
                continue;
            GroupSet next = detail::subgroup_sum(k.members(), detail::cyclic(group, rep));
            if (seen.contains(next))
                continue;
            seen.insert(next);
            std::vector<Index> gens = k.generators();
            gens.push_back(rep);
            queue.push_back(Subgroup::trusted(std::move(next), std::move(gens)));
        }
        found.push_back(std::move(k));
    }
    std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        return a.members() < b.members();
    });
    return found;
}

/**
 * The canonical morphism G -> G/H. The quotient is realised as its own
 * AbelianGroup in invariant-factor form; `project` maps element indices of G
 * to element indices of G/H, `section` maps back to canonical coset
 * representatives.
 */
class QuotientMap {
public:
    QuotientMap(GroupPtr source, Subgroup kernel)
        : source_(std::move(source)), kernel_(std::move(kernel))
    {
        require(*kernel_.group_ptr() == *source_, ErrorCode::domain, "kernel is not a subgroup of the source group");
        build();
    }

    [[nodiscard]] const GroupPtr& source() const noexcept { return source_; }
    [[nodiscard]] const Subgroup& kernel() const noexcept { return kernel_; }
    [[nodiscard]] const GroupPtr& quotient() const noexcept { return quotient_; }

    [[nodiscard]] Index project(Index e) const noexcept { return project_[static_cast<std::size_t>(e)]; }
    [[nodiscard]] Index section(Index q) const noexcept { return section_[static_cast<std::size_t>(q)]; }

    [[nodiscard]] GroupSet project(const GroupSet& a) const
    {
        require(a.group() == *source_, ErrorCode::domain, "set does not belong to the source group");
        GroupSet out(quotient_);
        a.for_each([&](Index e) { out.set_bit(project(e)); });
        return out;
    }

    /// phi^{-1}(K) for K a subset of the quotient.
    [[nodiscard]] GroupSet preimage(const GroupSet& k) const
    {
        require(k.group() == *quotient_, ErrorCode::domain, "set does not belong to the quotient group");
        GroupSet out(source_);
        for (Index e = 0; e < source_->order(); ++e)
            if (k.contains(project(e)))
                out.set_bit(e);
        return out;
    }

private:
    void build()
    {
        const AbelianGroup& g = *source_;
        const int n = g.order();
        if (kernel_.is_whole()) {
            quotient_ = make_trivial_group();
            project_.assign(static_cast<std::size_t>(n), 0);
            section_ = {0};
            return;
        }
        // Greedy basis: pick an element whose order modulo the current span is
        // the largest possible and equals its order modulo H; such an element
        // generates a direct summand of what remains.
        GroupSet span = kernel_.members();
        auto order_mod = [&](Index x, const GroupSet& s) {
            int m = 1;
            Index y = x;
            while (!s.contains(y)) {
                y = g.add(y, x);
                ++m;
            }
            return m;
        };
        std::vector<std::pair<Index, int>> basis;
        while (span.size() < n) {
            int best = 1;
            for (Index x : kernel_.coset_reps())
                best = std::max(best, order_mod(x, span));
            Index pick = -1;
            for (Index x : kernel_.coset_reps()) {
                if (order_mod(x, span) == best && order_mod(x, kernel_.members()) == best) {
                    pick = x;
                    break;
                }
            }
            require(pick >= 0, ErrorCode::internal, "quotient basis construction failed");
            span = detail::subgroup_sum(span, detail::cyclic(source_, pick));
            basis.emplace_back(pick, best);
        }
        std::reverse(basis.begin(), basis.end());
        std::vector<int> factors;
        for (const auto& [x, m] : basis)
            factors.push_back(m);
        quotient_ = std::make_shared<const AbelianGroup>(factors, default_max_order);

        const int q = quotient_->order();
        require(q * kernel_.order() == n, ErrorCode::internal, "quotient order mismatch");
        project_.assign(static_cast<std::size_t>(n), -1);
        section_.assign(static_cast<std::size_t>(q), -1);
        const auto h = kernel_.members().elements();
        for (Index qi = 0; qi < q; ++qi) {
            const GroupElement coords = quotient_->decode(qi);
            Index x = 0;
            for (std::size_t i = 0; i < basis.size(); ++i)
                x = g.add(x, g.multiple(basis[i].first, coords.coords[i]));
            section_[static_cast<std::size_t>(qi)] = kernel_.coset_rep(x);
            for (Index e : h) {
                Index& slot = project_[static_cast<std::size_t>(g.add(x, e))];
                require(slot == -1, ErrorCode::internal, "quotient basis is not independent");
                slot = qi;
            }
        }
    }

    GroupPtr source_;
    Subgroup kernel_;
    GroupPtr quotient_;
    std::vector<Index> project_;
    std::vector<Index> section_;
};

inline QuotientMap quotient(const GroupPtr& group, const Subgroup& h) { return QuotientMap(group, h); }

/// Verifies that h is closed before building G/h (domain error otherwise).
inline QuotientMap quotient(const GroupPtr& group, const GroupSet& h) { return QuotientMap(group, Subgroup(h)); }

/// All subgroups of one group with their quotient maps, built once and then
/// shared read-only.
class Lattice {
public:
    explicit Lattice(GroupPtr group)
        : group_(std::move(group)), subgroups_(all_subgroups(group_))
    {
        quotients_.reserve(subgroups_.size());
        for (const auto& h : subgroups_)
            quotients_.emplace_back(group_, h);
    }

    [[nodiscard]] const GroupPtr& group_ptr() const noexcept { return group_; }
    [[nodiscard]] const AbelianGroup& group() const noexcept { return *group_; }
    [[nodiscard]] const std::vector<Subgroup>& subgroups() const noexcept { return subgroups_; }
    [[nodiscard]] const QuotientMap& quotient(std::size_t i) const { return quotients_.at(i); }

    [[nodiscard]] std::optional<std::size_t> index_of(const GroupSet& members) const
    {
        for (std::size_t i = 0; i < subgroups_.size(); ++i)
            if (subgroups_[i].members() == members)
                return i;
        return std::nullopt;
    }

    [[nodiscard]] const QuotientMap& quotient(const Subgroup& h) const
    {
        const auto i = index_of(h.members());
        require(i.has_value(), ErrorCode::domain, "not a subgroup of " + group_->name());
        return quotients_[*i];
    }

private:
    GroupPtr group_;
    std::vector<Subgroup> subgroups_;
    std::vector<QuotientMap> quotients_;
};

/// Verified construction from a set: domain error when the set is not closed.
inline Subgroup as_subgroup(const GroupSet& s) { return Subgroup(s); }

} // namespace addcomb
