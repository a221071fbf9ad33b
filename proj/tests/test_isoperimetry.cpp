#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace addcomb;

namespace {

GroupSet S(const GroupPtr& g, const char* lit) { return parse_set(g, lit); }

std::vector<std::pair<GroupPtr, oracle::Group>> groups_up_to(int max_order)
{
    std::vector<std::pair<GroupPtr, oracle::Group>> out;
    for (const auto& g : abelian_group_catalog(max_order))
        out.emplace_back(g, oracle::Group(std::vector<int>(g->orders().begin(), g->orders().end())));
    return out;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::internal;
}

} // namespace

TEST(Kappa, Examples)
{
    auto z5 = parse_group("Z5"), z8 = parse_group("Z8"), z3 = parse_group("Z3");
    auto r = kappa(S(z5, "{0,1}"), 1);
    EXPECT_EQ(r.value, 1);
    EXPECT_TRUE(r.separable);
    EXPECT_EQ(r.witness->to_string(), "{0}");
    r = kappa(S(z8, "{0,1,4,5}"), 1);
    EXPECT_EQ(r.value, 2);
    EXPECT_EQ(r.witness->to_string(), "{0,4}");
    r = kappa(S(z3, "{0,1}"), 2);
    EXPECT_FALSE(r.separable);
    EXPECT_EQ(r.value, 0);
    EXPECT_FALSE(r.witness.has_value());
    EXPECT_EQ(kappa1_mincut(S(z5, "{0,1}")).value, 1);
    EXPECT_EQ(kappa1_mincut(S(z8, "{0,1,4,5}")).value, 2);
}

TEST(Kappa, Errors)
{
    auto z8 = parse_group("Z8");
    EXPECT_EQ(code_of([&] { kappa(S(z8, "{1,2}"), 1); }), ErrorCode::not_normalized);
    EXPECT_EQ(code_of([&] { kappa(S(z8, "{0,2}"), 1); }), ErrorCode::not_generating);
    EXPECT_EQ(code_of([&] { kappa(S(z8, "{0,1}"), 0); }), ErrorCode::domain);
    EXPECT_EQ(code_of([&] { kappa(S(z8, "{0,1}"), 5); }), ErrorCode::order_too_small);
    EXPECT_EQ(code_of([&] { kappa1_mincut(GroupSet::full(z8)); }), ErrorCode::not_separable);
    auto z40 = parse_group("Z40");
    EXPECT_EQ(code_of([&] { kappa(GroupSet(z40, {0, 1}), 1); }), ErrorCode::size);
    auto z20 = parse_group("Z20");
    EXPECT_EQ(code_of([&] { kappa(GroupSet(z20, {0, 1}), 3); }), ErrorCode::size);
}

TEST(Kappa, BruteForceMatchesUnprunedOracle)
{
    for (auto& [g, o] : groups_up_to(10)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const GroupSet ss = oracle::to_set(g, s);
            for (int k = 1; k <= 2 && 2 * k - 1 <= o.n; ++k) {
                const auto want = o.kappa(s, k);
                const auto got = kappa(ss, k);
                ASSERT_EQ(got.value, want.value) << g->name() << " " << ss.to_string() << " k=" << k;
                ASSERT_EQ(got.separable, want.separable) << g->name() << " " << ss.to_string() << " k=" << k;
                if (got.separable) {
                    ASSERT_TRUE(got.witness);
                    EXPECT_TRUE(got.witness->contains(0));
                    EXPECT_TRUE(o.is_fragment(s, got.witness->mask(), k, want.value));
                }
            }
        }
    }
}

TEST(Kappa, ThirdConnectivityMatchesOracle)
{
    for (auto& [g, o] : groups_up_to(8)) {
        if (o.n < 5)
            continue;
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const auto want = o.kappa(s, 3);
            const auto got = kappa(oracle::to_set(g, s), 3);
            EXPECT_EQ(got.value, want.value);
            EXPECT_EQ(got.separable, want.separable);
        }
    }
}

TEST(Kappa, MincutAgreesWithBruteForce)
{
    for (auto& [g, o] : groups_up_to(12)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const GroupSet ss = oracle::to_set(g, s);
            const auto brute = kappa(ss, 1);
            if (!brute.separable) {
                EXPECT_THROW(kappa1_mincut(ss), Error);
                continue;
            }
            const auto cut = kappa1_mincut(ss);
            ASSERT_EQ(cut.value, brute.value) << g->name() << " " << ss.to_string();
            ASSERT_TRUE(cut.witness);
            EXPECT_TRUE(o.is_fragment(s, cut.witness->mask(), 1, brute.value));
        }
    }
}

// |S|/2 <= kappa_1 <= |S|-1 and the isoperimetric inequality, by oracle
TEST(Kappa, BoundsAndInequalityProperties)
{
    for (auto& [g, o] : groups_up_to(9)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const auto kr = kappa(oracle::to_set(g, s), 1);
            if (!kr.separable)
                continue;
            const int ss = std::popcount(s);
            EXPECT_LE(kr.value, ss - 1);
            EXPECT_GE(2 * kr.value, ss);
            for (oracle::Mask x = 1; x <= o.full(); ++x)
                ASSERT_GE(std::popcount(o.sum(x, s)), std::min(o.n, std::popcount(x) + kr.value));
        }
    }
}

TEST(Atoms, Examples)
{
    auto z5 = parse_group("Z5"), z8 = parse_group("Z8");
    auto fs = fragments(S(z5, "{0,1}"), 1);
    ASSERT_EQ(fs.atoms.size(), 5u);
    for (const auto& a : fs.atoms)
        EXPECT_EQ(a.size(), 1);
    fs = fragments(S(z8, "{0,1,4,5}"), 1);
    ASSERT_EQ(fs.atoms.size(), 4u);
    EXPECT_EQ(fs.atoms[0].to_string(), "{0,4}");
    for (const auto& a : fs.atoms)
        EXPECT_EQ(a.size(), 2);
    fs = fragments(S(z5, "{0,1}"), 2);
    EXPECT_EQ(fs.kappa, 1);
    EXPECT_NE(std::find(fs.atoms.begin(), fs.atoms.end(), S(z5, "{0,1}")), fs.atoms.end());
    EXPECT_TRUE(atom_intersection_check(S(z8, "{0,1,4,5}"), 1).is_pass());
    EXPECT_TRUE(atom_intersection_check(S(z5, "{0,1}"), 1).is_pass());
    EXPECT_TRUE(atom_intersection_check(S(z5, "{0,1}"), 2).is_pass());
}

TEST(Atoms, AtomsAtZeroMatchOracle)
{
    for (auto& [g, o] : groups_up_to(10)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const GroupSet ss = oracle::to_set(g, s);
            for (int k = 1; k <= 2 && 2 * k - 1 <= o.n; ++k) {
                const auto kr = kappa(ss, k);
                if (!kr.separable)
                    continue;
                std::vector<oracle::Mask> got;
                for (const auto& a : atoms_at_zero(ss, k, kr))
                    got.push_back(a.mask());
                ASSERT_EQ(got, o.atoms_at_zero(s, k)) << g->name() << " " << ss.to_string() << " k=" << k;
            }
        }
    }
}

TEST(Atoms, FragmentListMatchesOracle)
{
    for (auto& [g, o] : groups_up_to(8)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s) || !o.kappa(s, 1).separable)
                continue;
            const auto fs = fragments(oracle::to_set(g, s), 1);
            std::vector<oracle::Mask> want;
            for (oracle::Mask x = 1; x <= o.full(); ++x)
                if (o.is_fragment(s, x, 1, fs.kappa))
                    want.push_back(x);
            std::vector<oracle::Mask> got;
            for (const auto& f : fs.fragments)
                got.push_back(f.mask());
            EXPECT_EQ(got, want);
            EXPECT_FALSE(fs.truncated);
        }
    }
}

TEST(Atoms, FragmentLimitTruncates)
{
    auto z8 = parse_group("Z8");
    const auto fs = fragments(S(z8, "{0,1}"), 1, 3);
    EXPECT_TRUE(fs.truncated);
    EXPECT_EQ(fs.fragments.size(), 3u);
    EXPECT_EQ(fs.atoms.size(), 8u);
}

TEST(HyperAtom, Examples)
{
    EXPECT_EQ(hyper_atom(S(parse_group("Z8"), "{0,1,4,5}")).subgroup.to_string(), "{0,4}");
    EXPECT_EQ(hyper_atom(S(parse_group("Z6"), "{0,1}")).subgroup.to_string(), "{0}");
    EXPECT_EQ(hyper_atom(S(parse_group("Z5"), "{0,1}")).subgroup.to_string(), "{0}");
    EXPECT_THROW(hyper_atom(GroupSet::full(parse_group("Z5"))), Error);
}

TEST(HyperAtom, IsTheLargestSubgroupFragment)
{
    for (auto& [g, o] : groups_up_to(12)) {
        const auto subs = o.subgroups();
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const auto kr = o.kappa(s, 1);
            if (!kr.separable)
                continue;
            int best = 0;
            std::vector<oracle::Mask> tied;
            for (auto h : subs) {
                if (!o.is_fragment(s, h, 1, kr.value))
                    continue;
                if (std::popcount(h) > best) {
                    best = std::popcount(h);
                    tied.clear();
                }
                if (std::popcount(h) == best)
                    tied.push_back(h);
            }
            std::sort(tied.begin(), tied.end());
            const auto ha = hyper_atom(oracle::to_set(g, s));
            ASSERT_EQ(ha.subgroup.members().mask(), tied.front()) << g->name();
            EXPECT_EQ(ha.maximal.size(), tied.size());
            EXPECT_EQ(ha.kappa1, kr.value);
        }
    }
}

TEST(Vosper, Examples)
{
    auto z5 = parse_group("Z5");
    EXPECT_TRUE(is_vosper(S(z5, "{0,1,2}")));
    EXPECT_TRUE(is_vosper(S(z5, "{0,1,2}"), VosperMode::exhaustive));
    EXPECT_FALSE(is_vosper(S(z5, "{0,1}")));
    EXPECT_FALSE(is_vosper(S(z5, "{0,1}"), VosperMode::exhaustive));
    auto z7 = parse_group("Z7");
    oracle::Group o({7});
    EXPECT_EQ(is_vosper(S(z7, "{0,1,3}")), o.is_vosper(0b1011));
}

TEST(Vosper, BothModesMatchDefinition)
{
    for (auto& [g, o] : groups_up_to(10)) {
        for (oracle::Mask s = 1; s <= o.full(); s += 2) {
            if (!o.generates(s))
                continue;
            const GroupSet ss = oracle::to_set(g, s);
            const bool want = o.is_vosper(s);
            ASSERT_EQ(is_vosper(ss, VosperMode::fast), want) << g->name() << " " << ss.to_string();
            ASSERT_EQ(is_vosper(ss, VosperMode::exhaustive), want) << g->name() << " " << ss.to_string();
        }
    }
}

TEST(Lemmas, VominusExamples)
{
    auto z5 = parse_group("Z5");
    EXPECT_TRUE(vominus_check(S(z5, "{0,1,2}"), S(z5, "{0,1,2}"), 1).is_pass());
    // |X|+|S| = |G| with |X| < |S| is excluded by hypothesis
    const Verdict small = vominus_check(S(z5, "{0,1,2}"), S(z5, "{0,1}"), 1);
    EXPECT_TRUE(small.is_skipped());
    EXPECT_EQ(small.observed, "|X| >= |S| when |X|+|S| = |G|");
    EXPECT_TRUE(vominus_check(S(z5, "{1,2}"), S(z5, "{0,1}"), 1).is_skipped());
    EXPECT_TRUE(vominus_check(S(z5, "{0,1}"), S(z5, "{0,1}"), 1).is_skipped());
    // the lemma as stated fails when |X|+|S| = |G|+1
    auto z4 = parse_group("Z4");
    const Verdict v = vominus_check(S(z4, "{0,1,2}"), S(z4, "{0,2}"), 1);
    EXPECT_TRUE(v.is_fail());
}

TEST(Lemmas, QuotientKappaExamples)
{
    auto z8 = parse_group("Z8");
    const GroupSet s = S(z8, "{0,1,4,5}");
    const Verdict v = quotient_kappa_check(s, Subgroup(S(z8, "{0,4}")));
    EXPECT_TRUE(v.is_pass() || v.is_skipped()) << v.observed;
    EXPECT_TRUE(quotient_kappa_check(s, Subgroup(S(z8, "{0,2,4,6}"))).is_skipped());
}

TEST(Lemmas, QuotientKappaAcrossSmallGroups)
{
    Context ctx;
    for (const auto& g : abelian_group_catalog(10)) {
        oracle::Group o(std::vector<int>(g->orders().begin(), g->orders().end()));
        for (oracle::Mask s = 1; s <= o.full(); s += 2)
            for (const auto& h : ctx.subgroups(g))
                ASSERT_FALSE(quotient_kappa_check(oracle::to_set(g, s), h, &ctx).is_fail());
    }
}

TEST(Lemmas, StrongIsoperimetricExample)
{
    auto z8 = parse_group("Z8");
    const GroupSet s = S(z8, "{0,1,4,5}"), x = S(z8, "{0,4}");
    const Subgroup h(S(z8, "{0,4}"));
    EXPECT_FALSE(strong_isoperimetric_precondition(s, h, x).has_value());
    const auto w = strong_isoperimetric_witness(s, h, x);
    ASSERT_TRUE(w);
    ASSERT_EQ(w->translations.size(), 1u);
    EXPECT_TRUE(w->translations[0] == 1 || w->translations[0] == 5);
    EXPECT_EQ(strong_isoperimetric_cover(x, h, *w), 2);
    EXPECT_THROW(strong_isoperimetric_witness(S(z8, "{1,4}"), h, x), Error);
}

// whenever a witness exists, its cover matches t+u+1 by direct projection
TEST(Lemmas, StrongIsoperimetricWitnessesAreSound)
{
    Context ctx;
    auto g = parse_group("Z2xZ4");
    oracle::Group o({2, 4});
    for (oracle::Mask s = 1; s <= o.full(); s += 2)
        for (oracle::Mask x = 1; x <= o.full(); x += 2)
            for (const auto& h : ctx.subgroups(g)) {
                const GroupSet ss = oracle::to_set(g, s), xx = oracle::to_set(g, x);
                if (strong_isoperimetric_precondition(ss, h, xx, &ctx))
                    continue;
                const auto w = strong_isoperimetric_witness(ss, h, xx, &ctx);
                if (!w)
                    continue;
                const int t = static_cast<int>(h_decomposition(xx, h).parts.size()) - 1;
                const int u = static_cast<int>(h_decomposition(ss, h).parts.size()) - 1;
                EXPECT_EQ(static_cast<int>(w->translations.size()), u);
                std::set<int> distinct(w->trace_indices.begin(), w->trace_indices.end());
                EXPECT_EQ(distinct.size(), w->trace_indices.size());
                for (Index y : w->translations)
                    EXPECT_TRUE(ss.contains(y) && !h.contains(y));
                EXPECT_EQ(strong_isoperimetric_cover(xx, h, *w), t + u + 1);
            }
}

TEST(Context, MemoizedValuesMatchDirectOnes)
{
    Context ctx;
    auto g = parse_group("Z12");
    for (Index e = 1; e < 12; ++e) {
        const GroupSet s(g, {0, 1, e});
        EXPECT_EQ(ctx.kappa(s, 1).value, kappa(s, 1).value);
        EXPECT_EQ(ctx.kappa(s, 1).value, ctx.kappa(s, 1).value);
        if (ctx.kappa(s, 1).separable) {
            EXPECT_EQ(ctx.hyper_atom(s).subgroup.members(), hyper_atom(s).subgroup.members());
        }
    }
    ctx.clear();
    EXPECT_EQ(ctx.subgroups(g).size(), 6u);
}
