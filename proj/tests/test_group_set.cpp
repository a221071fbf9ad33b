#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace addcomb;

namespace {

std::set<int> as_std(const GroupSet& s)
{
    const auto v = s.elements();
    return {v.begin(), v.end()};
}

} // namespace

TEST(GroupSet, BooleanOperationsMatchStdSet)
{
    auto g = parse_group("Z2xZ6");
    oracle::Group o({2, 6});
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const oracle::Mask ma = rng() & o.full(), mb = rng() & o.full();
        const GroupSet a = oracle::to_set(g, ma), b = oracle::to_set(g, mb);
        EXPECT_EQ((a | b).mask(), ma | mb);
        EXPECT_EQ((a & b).mask(), ma & mb);
        EXPECT_EQ((a - b).mask(), ma & ~mb);
        EXPECT_EQ(a.complement().mask(), ~ma & o.full());
        EXPECT_EQ(a.size(), std::popcount(ma));
        EXPECT_EQ(a.is_subset_of(b), (ma & ~mb) == 0);
        EXPECT_EQ(a.negate().mask(), o.negate(ma));
        const int x = static_cast<int>(rng() % 12);
        EXPECT_EQ(a.translate(x).mask(), o.translate(ma, x));
        std::set<int> expect;
        for (int e = 0; e < 12; ++e)
            if (ma >> e & 1)
                expect.insert(e);
        EXPECT_EQ(as_std(a), expect);
    }
}

TEST(GroupSet, CanonicalPrintingAndParsing)
{
    auto g = parse_group("Z8");
    const GroupSet s = parse_set(g, "{ 5, 1,4 ,0,1 }");
    EXPECT_EQ(s.to_string(), "{0,1,4,5}");
    EXPECT_EQ(parse_set(g, "{}").to_string(), "{}");
    auto h = parse_group("Z2xZ2");
    EXPECT_EQ(parse_set(h, "{(0,0),(1,0)}").to_string(), "{0,2}");
    EXPECT_EQ(parse_set(h, "{0,2}"), parse_set(h, "{(1,0),(0,0)}"));
}

TEST(GroupSet, ParseErrors)
{
    auto g = parse_group("Z8");
    for (const char* bad : {"0,1", "{0,1", "{0,,1}", "{0,1,}", "{8}", "{a}", "{(0,1)}"}) {
        try {
            parse_set(g, bad);
            ADD_FAILURE() << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::parse) << bad;
        }
    }
}

TEST(GroupSet, MixingGroupsIsRejected)
{
    const GroupSet a(parse_group("Z8"), {0});
    const GroupSet b(parse_group("Z2xZ4"), {0});
    EXPECT_THROW((void)(a | b), Error);
}

TEST(GroupSet, OrderingIsByBitmap)
{
    auto g = parse_group("Z5");
    EXPECT_LT(GroupSet(g, {0, 1}), GroupSet(g, {2}));
    EXPECT_LT(GroupSet(g, {1}), GroupSet(g, {0, 1}));
    EXPECT_EQ(GroupSet(g, {1, 3}), parse_set(g, "{3,1}"));
}

TEST(GroupSet, LargeGroupsUseSeveralWords)
{
    auto g = parse_group("Z100");
    GroupSet s(g, {0, 63, 64, 99});
    EXPECT_EQ(s.size(), 4);
    EXPECT_EQ(s.min_element(), 0);
    EXPECT_EQ(s.translate(1).to_string(), "{0,1,64,65}");
    EXPECT_EQ(s.complement().size(), 96);
    EXPECT_THROW((void)s.mask(), Error);
}
