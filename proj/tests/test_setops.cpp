#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace addcomb;

namespace {

GroupSet S(const GroupPtr& g, const char* lit) { return parse_set(g, lit); }

/// Groups of order <= 12 with matching oracles.
std::vector<std::pair<GroupPtr, oracle::Group>> small_groups(int max_order)
{
    std::vector<std::pair<GroupPtr, oracle::Group>> out;
    for (const auto& g : abelian_group_catalog(max_order))
        out.emplace_back(g, oracle::Group(std::vector<int>(g->orders().begin(), g->orders().end())));
    return out;
}

} // namespace

TEST(Setops, Examples)
{
    auto z5 = parse_group("Z5"), z6 = parse_group("Z6"), z8 = parse_group("Z8");
    EXPECT_EQ(sumset(S(z5, "{0,1}"), S(z5, "{0,1}")).to_string(), "{0,1,2}");
    EXPECT_EQ(sumset(S(z8, "{0,1,4,5}"), S(z8, "{0,4}")).to_string(), "{0,1,4,5}");
    EXPECT_EQ(period(S(z6, "{0,2,4}")).to_string(), "{0,2,4}");
    EXPECT_EQ(period(S(z6, "{0,1,2,3}")).to_string(), "{0}");
    EXPECT_EQ(period(S(z8, "{0,1,4,5}")).to_string(), "{0,4}");
    EXPECT_TRUE(is_aperiodic(S(z6, "{0,1,2,3}")));
    EXPECT_FALSE(is_aperiodic(S(z6, "{0,3}")));
    EXPECT_EQ(boundary(S(z8, "{0,1,4,5}"), S(z8, "{0,4}")).to_string(), "{1,5}");
    EXPECT_EQ(boundary(S(z5, "{0,1}"), S(z5, "{0}")).to_string(), "{1}");
    EXPECT_TRUE(boundary(S(z5, "{0,1}"), GroupSet::full(z5)).empty());
    EXPECT_EQ(outside(S(z6, "{0,1}"), S(z6, "{0}")).to_string(), "{2,3,4,5}");
    EXPECT_EQ(outside(S(z5, "{0,1}"), S(z5, "{0,1}")).to_string(), "{3,4}");
    EXPECT_EQ(outside(S(z5, "{0,1}"), GroupSet(z5)).size(), 5);
    EXPECT_EQ(lee_double_dual(S(z6, "{0,1}"), S(z6, "{0}")).to_string(), "{0}");
    EXPECT_EQ(lee_double_dual(S(z8, "{0,1,4,5}"), S(z8, "{0,4}")).to_string(), "{0,4}");
    EXPECT_EQ(lee_double_dual(S(z6, "{0,1}"), S(z6, "{0,1,2,3,4}")).size(), 6);
    EXPECT_EQ(ap_differences(S(z5, "{0,1,2}")), (std::vector<Index>{1, 4}));
    // {1,3,0} steps by 2 and {0,3,1} by 3
    EXPECT_EQ(ap_differences(S(z5, "{0,1,3}")), (std::vector<Index>{2, 3}));
    EXPECT_TRUE(ap_differences(S(z6, "{0,1,3}")).empty());
    EXPECT_EQ(ap_differences(S(z6, "{0,3}")), (std::vector<Index>{3}));
    EXPECT_EQ(uniquely_representable(S(z5, "{0,1}"), S(z5, "{0,1}")).to_string(), "{0,2}");
    EXPECT_EQ(uniquely_representable(S(parse_group("Z4"), "{0,1}"), S(parse_group("Z4"), "{1,2}")).to_string(), "{1,3}");
}

TEST(Setops, Decompositions)
{
    auto z6 = parse_group("Z6"), z8 = parse_group("Z8");
    const Subgroup h8(S(z8, "{0,4}"));
    auto dec = h_decomposition(S(z8, "{0,1,4,5}"), h8);
    ASSERT_EQ(dec.parts.size(), 2u);
    EXPECT_EQ(dec.parts[0].trace.to_string(), "{0,4}");
    EXPECT_EQ(dec.parts[1].trace.to_string(), "{1,5}");
    EXPECT_EQ(dec.partial_count(), 0);
    auto dec6 = h_decomposition(S(z6, "{0,1,2}"), Subgroup(S(z6, "{0,3}")));
    EXPECT_EQ(dec6.parts.size(), 3u);
    EXPECT_EQ(dec6.partial_count(), 3);

    EXPECT_TRUE(is_quasiperiodic(S(z8, "{0,1,4,5}"), h8).has_value());
    EXPECT_EQ(is_quasiperiodic(S(z6, "{0,1,2,3,4}"), Subgroup(S(z6, "{0,3}"))), std::optional<Index>(2));
    EXPECT_FALSE(is_quasiperiodic(S(z6, "{0,1}"), Subgroup(S(z6, "{0,3}"))).has_value());
    EXPECT_TRUE(is_quasiperiodic(S(z6, "{1,2,5}"), Subgroup::trivial(z6)).has_value());

    auto md = is_modular_progression(S(z8, "{0,1,4,5}"), h8);
    EXPECT_EQ(md, (std::vector<Index>{1, 3}));
    EXPECT_EQ(is_modular_progression(S(z6, "{0,1,2}"), Subgroup::trivial(z6)), (std::vector<Index>{1, 5}));
    EXPECT_EQ(is_modular_progression(S(z8, "{1,5}"), h8).size(), 4u);
}

TEST(Setops, SumsetAndPeriodMatchOracle)
{
    std::mt19937_64 rng(11);
    for (auto& [g, o] : small_groups(12)) {
        for (int trial = 0; trial < 200; ++trial) {
            const oracle::Mask a = (rng() & o.full()) | 1, b = rng() & o.full();
            const GroupSet sa = oracle::to_set(g, a), sb = oracle::to_set(g, b);
            ASSERT_EQ(sumset(sa, sb).mask(), o.sum(a, b)) << g->name();
            EXPECT_EQ(difference_set(sa, sb).mask(), o.sum(a, o.negate(b)));
            EXPECT_EQ(period(sa).members().mask(), o.period(a));
            EXPECT_EQ(is_aperiodic(sa), o.period(a) == 1);
            const auto r = representation_counts(sa, sb);
            EXPECT_EQ(r, o.reps(a, b));
        }
    }
}

TEST(Setops, ProgressionsMatchOracle)
{
    for (auto& [g, o] : small_groups(10)) {
        for (oracle::Mask a = 1; a <= o.full(); ++a) {
            const auto got = ap_differences(oracle::to_set(g, a));
            ASSERT_EQ(got, o.ap_differences(a)) << g->name() << " " << oracle::to_set(g, a).to_string();
        }
    }
}

TEST(Setops, QuasiPeriodicityMatchesOracle)
{
    for (auto& [g, o] : small_groups(12)) {
        for (const auto& h : all_subgroups(g)) {
            for (oracle::Mask a = 1; a <= o.full(); a += 7) {
                const GroupSet sa = oracle::to_set(g, a);
                EXPECT_EQ(is_quasiperiodic(sa, h).has_value(), o.quasi_periodic(a, h.members().mask()))
                    << g->name() << " " << sa.to_string() << " " << h.to_string();
                EXPECT_EQ(is_periodic_under(sa, h), (o.sum(a, h.members().mask()) == a));
            }
        }
    }
}

// translation, negation and swapping leave sizes of sums unchanged
TEST(Setops, SumsetSymmetries)
{
    std::mt19937_64 rng(5);
    auto g = parse_group("Z3xZ3");
    oracle::Group o({3, 3});
    for (int trial = 0; trial < 300; ++trial) {
        const GroupSet a = oracle::to_set(g, rng() & o.full()), b = oracle::to_set(g, rng() & o.full());
        const Index x = static_cast<Index>(rng() % 9), y = static_cast<Index>(rng() % 9);
        EXPECT_EQ(sumset(a, b), sumset(b, a));
        EXPECT_EQ(sumset(a.translate(x), b.translate(y)), sumset(a, b).translate(g->add(x, y)));
        EXPECT_EQ(sumset(a.negate(), b.negate()), sumset(a, b).negate());
    }
}

// Lee: the double dual has the same sum with S and contains X
TEST(Setops, DoubleDualProperty)
{
    auto g = parse_group("Z2xZ4");
    oracle::Group o({2, 4});
    for (oracle::Mask s = 1; s <= o.full(); s += 2)
        for (oracle::Mask x = 0; x <= o.full(); x += 3) {
            const GroupSet ss = oracle::to_set(g, s), sx = oracle::to_set(g, x);
            const GroupSet y = lee_double_dual(ss, sx);
            EXPECT_EQ(sumset(y, ss), sumset(sx, ss));
            EXPECT_TRUE(sx.is_subset_of(y));
        }
}

TEST(Setops, DomainErrors)
{
    auto z6 = parse_group("Z6");
    EXPECT_THROW((void)period(GroupSet(z6)), Error);
    EXPECT_THROW((void)boundary(S(z6, "{1}"), S(z6, "{0}")), Error);
    EXPECT_THROW((void)ap_differences(GroupSet(z6)), Error);
    EXPECT_THROW((void)uniquely_representable(GroupSet(z6), S(z6, "{0}")), Error);
    EXPECT_THROW((void)sumset(S(z6, "{0}"), GroupSet(parse_group("Z3xZ2"), {0})), Error);
}
