#include "oracle.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace addcomb;

TEST(Subgroup, LatticeMatchesClosureOracle)
{
    for (const auto& g : abelian_group_catalog(16)) {
        oracle::Group o(std::vector<int>(g->orders().begin(), g->orders().end()));
        std::vector<oracle::Mask> got;
        for (const auto& h : all_subgroups(g))
            got.push_back(h.members().mask());
        auto expect = o.subgroups();
        std::sort(expect.begin(), expect.end(), [](oracle::Mask a, oracle::Mask b) {
            return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
        });
        EXPECT_EQ(got, expect) << g->name();
    }
}

TEST(Subgroup, KnownLatticeSizes)
{
    const std::map<std::string, std::size_t> sizes{{"Z8", 4}, {"Z2xZ2", 5}, {"Z2xZ4", 8}, {"Z2xZ2xZ2", 16}, {"Z12", 6}};
    for (const auto& [name, count] : sizes)
        EXPECT_EQ(all_subgroups(parse_group(name)).size(), count) << name;
}

TEST(Subgroup, GeneratedSubgroupMatchesOracle)
{
    auto g = parse_group("Z2xZ6");
    oracle::Group o({2, 6});
    for (oracle::Mask m = 1; m <= o.full(); m += 3) {
        const GroupSet a = oracle::to_set(g, m);
        EXPECT_EQ(subgroup_generated(a).members().mask(), o.span(m));
        EXPECT_EQ(generates(a), o.generates(m));
    }
}

TEST(Subgroup, RejectsNonSubgroups)
{
    auto g = parse_group("Z8");
    EXPECT_THROW(Subgroup(GroupSet(g, {0, 1})), Error);
    EXPECT_THROW(Subgroup(GroupSet(g, {2, 4, 6})), Error);
    EXPECT_NO_THROW(Subgroup(GroupSet(g, {0, 2, 4, 6})));
}

TEST(Subgroup, CosetsPartitionTheGroup)
{
    auto g = parse_group("Z2xZ4");
    for (const auto& h : all_subgroups(g)) {
        EXPECT_EQ(static_cast<int>(h.coset_reps().size()), h.index());
        GroupSet seen(g);
        for (Index r : h.coset_reps()) {
            const GroupSet c = h.coset(r);
            EXPECT_FALSE(c.intersects(seen));
            seen |= c;
            c.for_each([&](Index e) { EXPECT_EQ(h.coset_rep(e), r); });
        }
        EXPECT_EQ(seen.size(), g->order());
    }
}

TEST(Quotient, ProjectionIsAHomomorphismWithTheRightKernel)
{
    for (const auto& g : abelian_group_catalog(16)) {
        for (const auto& h : all_subgroups(g)) {
            const QuotientMap phi = quotient(g, h);
            const AbelianGroup& q = *phi.quotient();
            ASSERT_EQ(q.order() * h.order(), g->order());
            for (Index a = 0; a < g->order(); ++a) {
                EXPECT_EQ(phi.project(a) == 0, h.contains(a));
                for (Index b = 0; b < g->order(); b += 3)
                    ASSERT_EQ(phi.project(g->add(a, b)), q.add(phi.project(a), phi.project(b)));
            }
            for (Index c = 0; c < q.order(); ++c) {
                EXPECT_EQ(phi.project(phi.section(c)), c);
                EXPECT_EQ(phi.preimage(GroupSet(phi.quotient(), {c})), h.coset(phi.section(c)));
            }
        }
    }
}

TEST(Quotient, ShapeOfQuotients)
{
    auto g = parse_group("Z8");
    EXPECT_EQ(quotient(g, GroupSet(g, {0, 4})).quotient()->name(), "Z4");
    auto k = parse_group("Z2xZ4");
    EXPECT_EQ(quotient(k, parse_set(k, "{(0,0),(0,2)}")).quotient()->name(), "Z2xZ2");
    EXPECT_EQ(quotient(k, parse_set(k, "{(0,0),(1,0)}")).quotient()->name(), "Z4");
    EXPECT_EQ(quotient(k, GroupSet::full(k)).quotient()->order(), 1);
}

TEST(Lattice, IndexesAndCachesQuotients)
{
    Lattice lat(parse_group("Z12"));
    ASSERT_EQ(lat.subgroups().size(), 6u);
    for (std::size_t i = 0; i < lat.subgroups().size(); ++i) {
        EXPECT_EQ(lat.index_of(lat.subgroups()[i].members()), i);
        EXPECT_EQ(lat.quotient(lat.subgroups()[i]).quotient()->order(), lat.subgroups()[i].index());
    }
    EXPECT_FALSE(lat.index_of(GroupSet(lat.group_ptr(), {0, 1})).has_value());
}
