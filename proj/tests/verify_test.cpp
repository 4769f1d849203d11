#include "oracles.hpp"
#include "vilenkin/errors.hpp"
#include "vilenkin/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace vilenkin;

namespace {

const double kExponents[] = {1.0, 2.0, kInfinity};

// (1/M^2) sum_{u,v} |sum_i c_i D_i(u) D_i(v)| with D built from oracle::psi.
double oracle_kernel_2d(const GroupContext& ctx, const std::vector<double>& c)
{
    const std::size_t M = ctx.size();
    std::vector<std::vector<Complex>> d(c.size() + 1, std::vector<Complex>(M));
    for (std::size_t i = 1; i <= c.size(); ++i)
        for (std::size_t x = 0; x < M; ++x)
            d[i][x] = d[i - 1][x] + oracle::psi(ctx, i - 1, x);
    double total = 0.0;
    for (std::size_t u = 0; u < M; ++u)
        for (std::size_t v = 0; v < M; ++v) {
            Complex s{};
            for (std::size_t i = 1; i <= c.size(); ++i)
                s += c[i - 1] * d[i][u] * d[i][v];
            total += std::abs(s);
        }
    return total / static_cast<double>(M * M);
}

std::vector<double> cesaro_coefficients(std::size_t top, std::size_t len, double alpha)
{
    std::vector<double> c(len);
    for (std::size_t i = 1; i <= len; ++i)
        c[i - 1] = oracle::cesaro(-alpha - 1.0, top - i);
    return c;
}

double oracle_rhs(const SampledFunction2D& f, int k, double p, double factor)
{
    const GroupContext& ctx = f.ctx;
    auto w = [&](ModulusKind kind, int level) { return modulus(f, kind, level, p).value; };
    const double mk = static_cast<double>(ctx.scale(k));
    double rhs = (w(ModulusKind::omega1, k - 1) + w(ModulusKind::omega2, k - 1)) * factor;
    for (int r = 0; r + 2 <= k; ++r)
        rhs += static_cast<double>(ctx.scale(r)) / mk * (w(ModulusKind::omega1, r) + w(ModulusKind::omega2, r));
    return rhs;
}

} // namespace

TEST(Ratio, Conventions)
{
    EXPECT_EQ(report_ratio(0.0, 0.0), 0.0);
    EXPECT_TRUE(std::isinf(report_ratio(1.0, 0.0)));
    EXPECT_EQ(report_ratio(1.0, 4.0), 0.25);
    EXPECT_EQ(log_factor(2), 1.0);
    EXPECT_EQ(log_factor(1), 1.0);
    EXPECT_NEAR(log_factor(10), std::log(10.0), 1e-15);
}

TEST(Claims, RoundTrip)
{
    for (auto c : {Claim::theorem1, Claim::theorem2, Claim::lemma1, Claim::lemma0, Claim::lemma4, Claim::lemma5,
                   Claim::eq23})
        EXPECT_EQ(parse_claim(to_string(c)), c);
    EXPECT_EQ(default_claims().size(), 6u);
    EXPECT_THROW(parse_claim("lemma3"), InvalidParameter);
}

TEST(TailDecompose, Examples)
{
    const GroupContext ctx({2, 3, 2});
    const auto t = tail_decompose(ctx, 7);
    EXPECT_EQ(t.size(), 2u);
    EXPECT_EQ(t.levels, (std::vector<int>{2, 0}));
    EXPECT_EQ(t.tails, (std::vector<std::size_t>{7, 1}));
    for (int k = 0; k < ctx.level(); ++k)
        EXPECT_EQ(tail_decompose(ctx, ctx.scale(k)).size(), 1u);
    EXPECT_EQ(tail_decompose(ctx, ctx.size() - 1).size(), 3u);
    EXPECT_THROW(tail_decompose(ctx, 0), InvalidParameter);
    EXPECT_THROW(tail_decompose(ctx, 12), ResolutionExceeded);
}

TEST(TailDecompose, ReconstructsExhaustively)
{
    const GroupContext ctx({2, 3, 2, 3});
    for (std::size_t n = 1; n < ctx.size(); ++n) {
        const auto t = tail_decompose(ctx, n);
        ASSERT_EQ(t.tails.front(), n);
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i > 0)
                ASSERT_LT(t.levels[i], t.levels[i - 1]);
            const std::size_t step = static_cast<std::size_t>(t.digits[i]) * ctx.scale(t.levels[i]);
            const std::size_t next = i + 1 < t.size() ? t.tails[i + 1] : 0;
            ASSERT_EQ(t.tails[i], step + next);
        }
    }
}

TEST(Families, ParseAndLabel)
{
    EXPECT_EQ(FunctionFamily::parse("character(1,2)").label(), "character(1,2)");
    EXPECT_EQ(FunctionFamily::parse("cylinder(2)").label(), "cylinder(2)");
    const auto poly = FunctionFamily::parse("random_poly(4,7)");
    EXPECT_EQ(poly.label(), "random_poly(4)");
    EXPECT_EQ(poly.seed_value(), 7u);
    EXPECT_EQ(FunctionFamily::parse("random_cell(3)").seed_value(), 3u);
    EXPECT_TRUE(FunctionFamily::parse("character(0,0)").constant());
    EXPECT_THROW(FunctionFamily::parse("spline(2)"), InvalidParameter);
    EXPECT_THROW(FunctionFamily::parse("character(1)"), InvalidParameter);
}

TEST(Families, GenerateDeterministicAndExact)
{
    const GroupContext ctx({2, 3, 2});
    const auto corpus = default_corpus(ctx);
    EXPECT_EQ(corpus.size(), 6u + 3u + 20u + 3u);
    for (const auto& fam : corpus) {
        const auto a = fam.generate(ctx);
        const auto b = fam.generate(ctx);
        EXPECT_EQ(a.values, b.values) << fam.label();
    }
    const auto cyl = FunctionFamily::cylinder(1).generate(ctx);
    EXPECT_NEAR(lp_norm(cyl, 1.0), 0.25, 1e-15);

    const auto chi = FunctionFamily::character(5, 2).generate(ctx);
    for (std::size_t x = 0; x < ctx.size(); ++x)
        for (std::size_t y = 0; y < ctx.size(); ++y)
            EXPECT_LE(std::abs(chi(x, y) - oracle::psi(ctx, 5, x) * oracle::psi(ctx, 2, y)), 1e-12);

    // random_poly(d) only has coefficients with k1, k2 < d
    const auto poly = FunctionFamily::random_poly(6, 1).generate(ctx);
    const auto spec = fvt_forward(poly);
    for (std::size_t k1 = 0; k1 < ctx.size(); ++k1)
        for (std::size_t k2 = 0; k2 < ctx.size(); ++k2)
            if (k1 >= 6 || k2 >= 6)
                EXPECT_LE(std::abs(spec(k1, k2)), 1e-12);
    EXPECT_THROW(FunctionFamily::character(12, 0).generate(ctx), ResolutionExceeded);
}

TEST(Theorem1, ConstantHasZeroLhs)
{
    const GroupContext ctx({2, 3, 2, 3});
    const auto f = FunctionFamily::character(0, 0).generate(ctx);
    for (double alpha : {0.1, 0.5, 0.9})
        for (int k = 1; k <= ctx.level(); ++k)
            for (double p : kExponents) {
                const auto r = theorem1_report(f, alpha, k, p);
                EXPECT_EQ(r.lhs, 0.0);
                EXPECT_EQ(r.ratio, 0.0);
            }
}

TEST(Theorem1, WalshCharacterExample)
{
    const GroupContext ctx({2, 2, 2, 2});
    const auto f = FunctionFamily::character(1, 1).generate(ctx);
    const double w = oracle::cesaro(-0.5, 2) / oracle::cesaro(-0.5, 3);
    for (double p : kExponents) {
        const auto r = theorem1_report(f, 0.5, 2, p);
        EXPECT_NEAR(r.lhs, std::abs(w - 1.0), 1e-14);
        EXPECT_GT(r.rhs, 0.0);
        EXPECT_TRUE(std::isfinite(r.ratio));
    }
}

TEST(Theorem1, MatchesLiteralOracle)
{
    const GroupContext ctx({2, 3, 2});
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const auto f = oracle::random_2d(ctx, seed);
        for (double alpha : {0.1, 0.9})
            for (int k = 1; k <= ctx.level(); ++k) {
                auto sigma = oracle::literal_sigma(ctx, f.values, ctx.scale(k), alpha);
                for (std::size_t i = 0; i < sigma.size(); ++i)
                    sigma[i] -= f.values[i];
                for (double p : kExponents) {
                    const auto r = theorem1_report(f, alpha, k, p);
                    EXPECT_NEAR(r.lhs, oracle::norm(sigma, p), 1e-10);
                    const double rhs = oracle_rhs(f, k, p, std::pow(double(ctx.scale(k)), alpha));
                    EXPECT_NEAR(r.rhs, rhs, 1e-12 * rhs);
                }
            }
    }
}

TEST(Theorem1, BatchMatchesSingle)
{
    const GroupContext ctx({2, 3, 2});
    const auto f = FunctionFamily::random_poly(6, 4).generate(ctx);
    const FunctionAnalysis fa(f, kExponents);
    for (int k = 1; k <= ctx.level(); ++k) {
        const auto rows = theorem1_reports(fa, 0.5, k);
        ASSERT_EQ(rows.size(), 3u);
        for (std::size_t i = 0; i < 3; ++i) {
            const auto one = theorem1_report(f, 0.5, k, kExponents[i]);
            EXPECT_EQ(rows[i].lhs, one.lhs);
            EXPECT_EQ(rows[i].rhs, one.rhs);
        }
    }
    EXPECT_THROW(theorem1_report(f, 0.5, 0, 1.0), InvalidParameter);
    EXPECT_THROW(theorem1_report(f, 0.5, 4, 1.0), ResolutionExceeded);
    EXPECT_THROW(theorem1_report(f, 1.5, 1, 1.0), InvalidParameter);
}

TEST(Theorem2, RhsAndComparison)
{
    const GroupContext ctx({2, 3, 2, 3});
    const auto f = FunctionFamily::random_poly(12, 2).generate(ctx);
    for (double alpha : {0.1, 0.5, 0.9})
        for (int k = 1; k < ctx.level(); ++k) {
            const std::size_t n = ctx.scale(k);
            for (double p : kExponents) {
                const auto r1 = theorem1_report(f, alpha, k, p);
                const auto r2 = theorem2_report(f, alpha, n, p);
                EXPECT_EQ(r1.lhs, r2.lhs);
                const double factor = std::pow(double(n), alpha) * log_factor(n);
                EXPECT_NEAR(r2.rhs, oracle_rhs(f, k, p, factor), 1e-12 * r2.rhs);
                if (n >= 3) {
                    EXPECT_GE(r2.rhs, r1.rhs);
                    EXPECT_LE(r2.ratio, r1.ratio * (1.0 + 1e-15));
                }
            }
        }
    const auto c = FunctionFamily::character(0, 0).generate(ctx);
    for (std::size_t n = 2; n < ctx.size(); ++n)
        EXPECT_EQ(theorem2_report(c, 0.5, n, 2.0).ratio, 0.0);
    EXPECT_THROW(theorem2_report(f, 0.5, 36, 1.0), ResolutionExceeded);
    EXPECT_THROW(theorem2_report(f, 0.5, 1, 1.0), InvalidParameter);
}

TEST(Lemma1, Examples)
{
    const GroupContext ctx({2, 3, 2});
    const std::vector<double> one{1.0};
    const auto r = lemma1_report(ctx, one);
    EXPECT_NEAR(r.two_d.lhs, 1.0, 1e-15);
    EXPECT_EQ(r.two_d.rhs, 1.0);
    EXPECT_NEAR(r.two_d.ratio, 1.0, 1e-15);
    EXPECT_NEAR(r.one_d.lhs, 1.0, 1e-15);

    for (int j = 0; j <= ctx.level(); ++j) {
        const std::size_t n = ctx.size();
        std::vector<double> delta(n, 0.0);
        delta[ctx.scale(j) - 1] = 1.0;
        EXPECT_NEAR(lemma1_report(ctx, delta).two_d.lhs, 1.0 / double(n), 1e-14);
    }
}

TEST(Lemma1, MatchesOracle)
{
    const GroupContext ctx({3, 2, 2});
    std::mt19937_64 gen(5);
    std::vector<double> c(ctx.size());
    for (auto& v : c)
        v = (gen() & 1) ? 1.0 : -1.0;
    const auto r = lemma1_report(ctx, c);
    EXPECT_NEAR(r.two_d.lhs, oracle_kernel_2d(ctx, c) / double(c.size()), 1e-12);
    EXPECT_NEAR(r.two_d.rhs, 1.0, 1e-15);
}

TEST(Lemma4, ExamplesAndOracle)
{
    const GroupContext ctx({2, 3, 2});
    for (double alpha : {0.1, 0.5, 0.9}) {
        for (std::size_t p = 1; p < 12; ++p)
            EXPECT_LE(lemma4_integral(DirichletTable(ctx, 1), alpha, 0, p), 1.0);
        for (int k = 0; k <= ctx.level(); ++k) {
            const DirichletTable d(ctx, ctx.scale(k));
            for (std::size_t p = ctx.scale(k); p <= ctx.scale(k) + 20; p += 5)
                EXPECT_NEAR(lemma4_integral(d, alpha, k, p),
                            oracle_kernel_2d(ctx, cesaro_coefficients(p, ctx.scale(k), alpha)), 1e-12);
        }
    }
    std::vector<std::size_t> ps;
    for (std::size_t p = 6; p <= 26; ++p)
        ps.push_back(p);
    const auto res = lemma4_report(ctx, 0.5, 2, ps);
    EXPECT_EQ(res.values.size(), ps.size());
    EXPECT_EQ(res.report.rhs, 1.0);
    EXPECT_EQ(res.report.lhs, *std::max_element(res.values.begin(), res.values.end()));
    // the running maximum settles: doubling the window does not move it
    const double first_half = *std::max_element(res.values.begin(), res.values.begin() + 11);
    EXPECT_LT(res.report.lhs, 2.0 * first_half);
    const std::vector<std::size_t> bad{5};
    EXPECT_THROW(lemma4_report(ctx, 0.5, 2, bad), InvalidParameter);
}

TEST(Lemma5, ExamplesAndCrossCheck)
{
    const GroupContext ctx({2, 3, 2, 3});
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto one = lemma5_report(ctx, alpha, 1);
        EXPECT_NEAR(one.report.lhs, 1.0, 1e-15);
        EXPECT_EQ(one.report.rhs, 1.0);
        const DirichletTable d(ctx, ctx.size());
        for (int k = 0; k < ctx.level(); ++k) {
            const std::size_t n = ctx.scale(k);
            const auto r = lemma5_report(d, alpha, n);
            EXPECT_EQ(r.tails.size(), 1u);
            EXPECT_LE(std::abs(r.report.lhs - lemma4_integral(d, alpha, k, n)), 1e-10);
        }
    }
    const GroupContext small({2, 3, 2});
    for (std::size_t n = 1; n < small.size(); ++n)
        EXPECT_NEAR(lemma5_integral(DirichletTable(small, n), 0.5, n),
                    oracle_kernel_2d(small, cesaro_coefficients(n, n, 0.5)), 1e-12);
    EXPECT_THROW(lemma5_report(ctx, 0.5, 36), ResolutionExceeded);
    EXPECT_THROW(lemma5_report(ctx, 0.5, 0), InvalidParameter);
}

TEST(Exactness, RefiningTheLevelChangesNothing)
{
    const GroupContext coarse({2, 3, 2});
    const GroupContext fine({2, 3, 2, 3});
    for (double alpha : {0.1, 0.5, 0.9})
        for (std::size_t n = 1; n < coarse.size(); ++n) {
            EXPECT_NEAR(lemma5_report(coarse, alpha, n).report.lhs, lemma5_report(fine, alpha, n).report.lhs, 1e-10);
            std::vector<double> c(n, 1.0);
            EXPECT_NEAR(lemma1_report(coarse, c).two_d.lhs, lemma1_report(fine, c).two_d.lhs, 1e-10);
        }
    // a level-3 cylinder function sampled on the finer grid
    const auto f = FunctionFamily::character(5, 7).generate(coarse);
    const auto g = FunctionFamily::character(5, 7).generate(fine);
    for (int k = 1; k <= coarse.level(); ++k)
        for (double p : kExponents) {
            EXPECT_NEAR(theorem1_report(f, 0.5, k, p).lhs, theorem1_report(g, 0.5, k, p).lhs, 1e-10);
            EXPECT_NEAR(theorem1_report(f, 0.5, k, p).rhs, theorem1_report(g, 0.5, k, p).rhs, 1e-10);
        }
}

TEST(Eq23, Examples)
{
    const GroupContext ctx({2, 2, 2, 2, 2, 2, 2, 2});
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto r = eq23_report(ctx, alpha, 1);
        const double expected = std::pow(1.0 - 1.0 / double(ctx.size()), 1.0 - alpha);
        EXPECT_NEAR(r.lhs, expected, 1e-14);
        EXPECT_LT(r.lhs, 1.0);
        const auto profile = eq23_profile(DirichletTable(ctx, 1), alpha, 1);
        EXPECT_EQ(profile[0], 0.0);
    }
    // |u| is not constant on cells, so one more level can only raise the
    // maximum, by at most the growth of sup |u|^{1-alpha} inside a cell
    const GroupContext finer({2, 2, 2, 2, 2, 2, 2, 2, 2});
    const auto a = eq23_report(ctx, 0.9, 8);
    const auto b = eq23_report(finer, 0.9, 8);
    EXPECT_TRUE(std::isfinite(a.ratio));
    EXPECT_GE(b.ratio, a.ratio);
    EXPECT_LE(b.ratio, a.ratio * 1.01);
}
