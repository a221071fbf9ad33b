#include "oracle.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace addcomb;

namespace {

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

TEST(Group, AdditionMatchesCoordinateOracle)
{
    for (const auto& g : abelian_group_catalog(16)) {
        oracle::Group o(std::vector<int>(g->orders().begin(), g->orders().end()));
        ASSERT_EQ(o.n, g->order());
        for (Index a = 0; a < g->order(); ++a) {
            EXPECT_EQ(g->neg(a), o.neg(a));
            for (Index b = 0; b < g->order(); ++b)
                ASSERT_EQ(g->add(a, b), o.add(a, b)) << g->name() << " " << a << "+" << b;
        }
    }
}

TEST(Group, ElementOrderAndMultiples)
{
    auto g = parse_group("Z2xZ6");
    oracle::Group o({2, 6});
    for (Index a = 0; a < g->order(); ++a) {
        EXPECT_EQ(g->element_order(a), o.order_of(a));
        Index acc = 0;
        for (int k = 0; k < 15; ++k) {
            EXPECT_EQ(g->multiple(a, k), acc);
            acc = o.add(acc, a);
        }
    }
}

TEST(Group, CatalogCountsIsomorphismClasses)
{
    // number of abelian groups of order n = product over primes of p(exponent)
    const std::map<int, int> expected{{2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 1},  {7, 1},  {8, 3}, {9, 2},
                                      {10, 1}, {11, 1}, {12, 2}, {13, 1}, {14, 1}, {15, 1}, {16, 5}};
    std::map<int, int> seen;
    std::set<std::string> names;
    int last = 0;
    for (const auto& g : abelian_group_catalog(16)) {
        ++seen[g->order()];
        EXPECT_GE(g->order(), last);
        last = g->order();
        EXPECT_TRUE(names.insert(g->name()).second) << g->name();
        // invariant factors divide each other
        for (std::size_t i = 1; i < g->orders().size(); ++i)
            EXPECT_EQ(g->orders()[i] % g->orders()[i - 1], 0) << g->name();
    }
    EXPECT_EQ(seen, expected);
}

TEST(Group, Literals)
{
    auto g = parse_group(" Z2 x Z4 ");
    EXPECT_EQ(g->name(), "Z2xZ4");
    EXPECT_EQ(g->order(), 8);
    EXPECT_EQ(g->rank(), 2);
    const Index e = parse_element(*g, "(1,3)");
    EXPECT_EQ(g->element_literal(e), "(1,3)");
    EXPECT_EQ(g->decode(e).coords, (std::vector<int>{1, 3}));
    EXPECT_EQ(g->encode(g->decode(e)), e);
    EXPECT_EQ(parse_group("Z8")->element_literal(5), "5");
    EXPECT_EQ(parse_element(*parse_group("Z8"), "7"), 7);
}

TEST(Group, Errors)
{
    EXPECT_EQ(code_of([] { parse_group("Q8"); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { parse_group("Z1"); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { parse_group(""); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { parse_group("Z100xZ100"); }), ErrorCode::size);
    EXPECT_EQ(code_of([] { parse_element(*parse_group("Z8"), "8"); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { parse_element(*parse_group("Z2xZ4"), "(1,4)"); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { abelian_group_catalog(1); }), ErrorCode::domain);
}

TEST(Group, ErrorMessagesNameTheCode)
{
    try {
        parse_group("Q8");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(std::string(e.what()).rfind("parse error: ", 0), 0u) << e.what();
    }
}

TEST(Group, FingerprintDistinguishesShapes)
{
    EXPECT_NE(parse_group("Z8")->fingerprint(), parse_group("Z2xZ4")->fingerprint());
    EXPECT_EQ(parse_group("Z2xZ4")->fingerprint(), make_group({2, 4})->fingerprint());
}
