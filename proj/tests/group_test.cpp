#include "vilenkin/errors.hpp"
#include "vilenkin/group.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace vilenkin;

TEST(GroupContext, ScalesAreMixedRadixProducts)
{
    const GroupContext ctx({2, 3, 2});
    EXPECT_EQ(ctx.level(), 3);
    EXPECT_EQ(ctx.scale(0), 1u);
    EXPECT_EQ(ctx.scale(1), 2u);
    EXPECT_EQ(ctx.scale(2), 6u);
    EXPECT_EQ(ctx.scale(3), 12u);
    EXPECT_EQ(ctx.size(), 12u);
    EXPECT_FALSE(ctx.dyadic());
    EXPECT_TRUE(GroupContext({2, 2, 2}).dyadic());
}

TEST(GroupContext, ParseAndReject)
{
    EXPECT_EQ(GroupContext::parse(" 2, 3 ,2,3"), GroupContext({2, 3, 2, 3}));
    EXPECT_EQ(GroupContext::parse("2,3,2,3").to_string(), "2,3,2,3");
    EXPECT_THROW(GroupContext::parse(""), InvalidParameter);
    EXPECT_THROW(GroupContext::parse("2,,3"), InvalidParameter);
    EXPECT_THROW(GroupContext::parse("2,x"), InvalidParameter);
    EXPECT_THROW(GroupContext({2, 1}), InvalidParameter);
    EXPECT_THROW(GroupContext(std::vector<int>{}), InvalidParameter);
}

TEST(GroupOps, AddNegateExamples)
{
    const GroupContext ctx({2, 3});
    const GroupElement a({1, 2});
    EXPECT_EQ(add(ctx, a, GroupElement({1, 1})), GroupElement({0, 0}));
    EXPECT_EQ(negate(ctx, a), GroupElement({1, 1}));
    EXPECT_EQ(add(ctx, GroupElement::zero(ctx), a), a);
    EXPECT_EQ(GroupElement::unit(ctx, 1), GroupElement({0, 1}));
}

TEST(GroupOps, RejectsInvalidElements)
{
    const GroupContext ctx({2, 3});
    EXPECT_THROW(add(ctx, GroupElement({2, 0}), GroupElement({0, 0})), InvalidElement);
    EXPECT_THROW(negate(ctx, GroupElement({0, 3})), InvalidElement);
    EXPECT_THROW(validate(ctx, GroupElement({0})), InvalidElement);
    EXPECT_THROW(validate(ctx, GroupElement({-1, 0})), InvalidElement);
}

TEST(GroupOps, AxiomsExhaustive)
{
    const GroupContext ctx({2, 3});
    const auto cells = cell_enumerate(ctx);
    const auto zero = GroupElement::zero(ctx);
    for (const auto& x : cells) {
        EXPECT_EQ(add(ctx, x, zero), x);
        EXPECT_EQ(add(ctx, x, negate(ctx, x)), zero);
        for (const auto& y : cells) {
            EXPECT_EQ(add(ctx, x, y), add(ctx, y, x));
            EXPECT_EQ(sub(ctx, add(ctx, x, y), y), x);
            for (const auto& z : cells)
                EXPECT_EQ(add(ctx, add(ctx, x, y), z), add(ctx, x, add(ctx, y, z)));
        }
    }
}

TEST(IndexExpand, Examples)
{
    const GroupContext ctx({2, 3, 2});
    const auto e = index_expand(ctx, 7);
    EXPECT_EQ(e.digits, (std::vector<int>{1, 0, 1}));
    ASSERT_TRUE(e.order.has_value());
    EXPECT_EQ(*e.order, 2);

    const auto z = index_expand(ctx, 0);
    EXPECT_EQ(z.digits, (std::vector<int>{0, 0, 0}));
    EXPECT_FALSE(z.order.has_value());

    for (int k = 0; k < ctx.level(); ++k) {
        const auto u = index_expand(ctx, ctx.scale(k));
        EXPECT_EQ(*u.order, k);
        for (int j = 0; j < ctx.level(); ++j)
            EXPECT_EQ(u.digits[static_cast<std::size_t>(j)], j == k ? 1 : 0);
    }
    EXPECT_THROW(index_expand(ctx, 12), ResolutionExceeded);
}

TEST(IndexExpand, RoundTripExhaustive)
{
    const GroupContext ctx({2, 3, 5, 2, 7, 3, 2});
    ASSERT_LE(ctx.size(), 10000u);
    for (std::size_t n = 0; n < ctx.size(); ++n) {
        const auto e = index_expand(ctx, n);
        std::size_t value = 0;
        for (int k = 0; k < ctx.level(); ++k)
            value += static_cast<std::size_t>(e.digits[static_cast<std::size_t>(k)]) * ctx.scale(k);
        ASSERT_EQ(value, n);
        ASSERT_EQ(index_of(ctx, e.digits), n);
    }
}

TEST(NormMap, Examples)
{
    const GroupContext ctx({2, 3});
    EXPECT_DOUBLE_EQ(norm_map(ctx, GroupElement::zero(ctx)), 0.0);
    EXPECT_NEAR(norm_map(ctx, GroupElement::unit(ctx, 1)), 1.0 / 6.0, 1e-15);
    EXPECT_DOUBLE_EQ(norm_map(GroupContext({2, 2}), GroupElement({1, 1})), 0.75);
}

TEST(NormMap, BijectionOntoGrid)
{
    const GroupContext ctx({3, 2, 4});
    std::set<long long> seen;
    for (const auto& x : cell_enumerate(ctx)) {
        const double scaled = norm_map(ctx, x) * static_cast<double>(ctx.size());
        const long long j = std::llround(scaled);
        EXPECT_NEAR(scaled, static_cast<double>(j), 1e-9);
        EXPECT_GE(j, 0);
        EXPECT_LT(j, static_cast<long long>(ctx.size()));
        seen.insert(j);
    }
    EXPECT_EQ(seen.size(), ctx.size());
}

TEST(Interval, Examples)
{
    const GroupContext ctx({2, 3});
    const GroupElement x({1, 0});
    const GroupElement c({1, 2});
    EXPECT_TRUE(in_interval(ctx, x, 1, c));
    EXPECT_FALSE(in_interval(ctx, x, 2, c));
    for (const auto& y : cell_enumerate(ctx)) {
        EXPECT_TRUE(in_interval(ctx, y, 0, c));
        for (int n = 0; n <= ctx.level(); ++n)
            EXPECT_TRUE(in_interval(ctx, y, n, y));
    }
    EXPECT_THROW(in_interval(ctx, x, 3, c), ResolutionExceeded);
}

TEST(Interval, MeasureIsInverseScale)
{
    const GroupContext ctx({2, 3, 2, 3});
    const auto zero = GroupElement::zero(ctx);
    const auto cells = cell_enumerate(ctx);
    for (int n = 0; n <= ctx.level(); ++n) {
        std::size_t count = 0;
        for (const auto& x : cells)
            count += in_interval(ctx, x, n, zero) ? 1 : 0;
        EXPECT_EQ(count, ctx.size() / ctx.scale(n));
    }
}

TEST(Cells, Enumeration)
{
    const GroupContext ctx({2, 3});
    const auto cells = cell_enumerate(ctx);
    ASSERT_EQ(cells.size(), 6u);
    EXPECT_EQ(cells[0], GroupElement::zero(ctx));
    EXPECT_EQ(cells[3], GroupElement({1, 1}));
    EXPECT_EQ(cells[5], GroupElement({1, 2}));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        EXPECT_EQ(cell_index(ctx, cells[i]), i);
        EXPECT_EQ(cell_element(ctx, i), cells[i]);
    }
}

TEST(Cells, IndexArithmeticMatchesElements)
{
    const GroupContext ctx({3, 2, 3});
    const auto cells = cell_enumerate(ctx);
    for (std::size_t a = 0; a < cells.size(); ++a) {
        EXPECT_EQ(negate_cell(ctx, a), cell_index(ctx, negate(ctx, cells[a])));
        const auto table = translation_table(ctx, a);
        for (std::size_t b = 0; b < cells.size(); ++b) {
            const std::size_t expected = cell_index(ctx, add(ctx, cells[a], cells[b]));
            EXPECT_EQ(add_cells(ctx, a, b), expected);
            EXPECT_EQ(table[b], expected);
        }
    }
}
