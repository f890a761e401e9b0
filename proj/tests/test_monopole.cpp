#include <gtest/gtest.h>

#include <limits>

#include "kmslices/kmslices.hpp"
#include "oracles.hpp"

using namespace kms;

TEST(Monopole, TwoDeltaExamples)
{
    const GKLOContext a1(quiver_a1(), DimData({2}, {2}));
    EXPECT_EQ(two_delta_general(a1, {{1, 0}}), 0);
    EXPECT_EQ(two_delta_general(a1, {{1, 1}}), 4);
    EXPECT_EQ(two_delta_general(a1, {{2, -1}}), 0);
    EXPECT_THROW(two_delta_general(a1, {{1}}), input_error);
    const GKLOContext aff(quiver_affine_sl2(), DimData({1, 0}, {1, 1}));
    EXPECT_EQ(two_delta_general(aff, {{1}, {1}}), 1);
    EXPECT_EQ(two_delta_general(aff, {{1}, {0}}), 3);
}

TEST(Monopole, TwoDeltaAgreesWithWeightLists)
{
    for (const auto &sc : suite_contexts(3)) {
        const auto &v = sc.ctx.dims().v;
        for (std::int64_t n = 0; n <= 3; ++n) {
            for (const auto &g : dominant_shell(v, n)) {
                EXPECT_EQ(two_delta_general(sc.ctx, g), oracle::two_delta_naive(sc.ctx, g)) << sc.label();
            }
        }
        for (const auto &m : box_vectors(v)) {
            const auto d = two_delta_minuscule(sc.ctx.dims(), sc.ctx.cartan(), m);
            EXPECT_EQ(two_delta_general(sc.ctx, fundamental_coweight(m, v, 1)), d) << sc.label();
            EXPECT_EQ(two_delta_general(sc.ctx, fundamental_coweight(m, v, -1)), d) << sc.label();
        }
    }
}

TEST(Monopole, DominantShellMatchesFilteredBox)
{
    for (const IntVector &v : {IntVector{2}, IntVector{1, 2}, IntVector{3, 0}}) {
        for (std::int64_t n = 0; n <= 4; ++n) {
            const auto shell = dominant_shell(v, n);
            std::size_t count = 0;
            for (const auto &g : shell) {
                EXPECT_TRUE(is_dominant(g));
                std::int64_t norm = 0;
                for (const auto &t : g) {
                    for (auto x : t) {
                        norm += std::abs(x);
                    }
                }
                EXPECT_EQ(norm, n);
                ++count;
            }
            // brute count over the box [-n, n]
            std::size_t slots = 0;
            for (auto x : v) {
                slots += static_cast<std::size_t>(x);
            }
            std::vector<int> flat(slots, -static_cast<int>(n));
            std::size_t brute = 0;
            while (true) {
                Coweight g(v.size());
                std::size_t k = 0;
                std::int64_t norm = 0;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    for (std::int64_t r = 0; r < v[i]; ++r, ++k) {
                        g[i].push_back(flat[k]);
                        norm += std::abs(flat[k]);
                    }
                }
                brute += (norm == n && is_dominant(g)) ? 1 : 0;
                std::size_t j = 0;
                while (j < slots && flat[j] == n) {
                    flat[j++] = -static_cast<int>(n);
                }
                if (j == slots) {
                    break;
                }
                ++flat[j];
            }
            EXPECT_EQ(count, brute) << GKLOContext::vec_string(v) << " n=" << n;
        }
    }
}

TEST(Monopole, StabilizerPoincare)
{
    EXPECT_EQ(stabilizer_poincare({{0, 0}}, 6).coeffs(), (std::vector<std::int64_t>{1, 0, 1, 0, 2, 0, 2}));
    EXPECT_EQ(stabilizer_poincare({{1, 0}}, 4).coeffs(), (std::vector<std::int64_t>{1, 0, 2, 0, 3}));
    EXPECT_EQ(stabilizer_poincare({{}, {}}, 3).coeffs(), (std::vector<std::int64_t>{1, 0, 0, 0}));
    EXPECT_EQ(stabilizer_poincare({{2, 2, -1}}, 8).coeffs(), oracle::poincare_naive({1, 2, 1}, 8));
    EXPECT_THROW(stabilizer_poincare({{0, 1}}, 4), input_error);
}

TEST(Monopole, SeriesArithmetic)
{
    auto a = TruncSeries::one(4);
    a.divide_by_one_minus(1);
    EXPECT_EQ(a.coeffs(), (std::vector<std::int64_t>{1, 1, 1, 1, 1}));
    EXPECT_EQ((a * a).coeffs(), (std::vector<std::int64_t>{1, 2, 3, 4, 5}));
    EXPECT_EQ(a.shifted(3).coeffs(), (std::vector<std::int64_t>{0, 0, 0, 1, 1}));
    EXPECT_EQ(TruncSeries::from_coeffs({1, 0, 3}).to_string(), "1 + 3t^2 + O(t^3)");
    EXPECT_THROW(TruncSeries::from_coeffs({}), input_error);
    const auto big = TruncSeries::from_coeffs({std::numeric_limits<std::int64_t>::max() / 2 + 1, 0});
    EXPECT_THROW(big * big, resource_error);
    EXPECT_THROW(big + big, resource_error);
}

TEST(Monopole, ClassifyExamples)
{
    auto cls = classify_theory({quiver_a1(), DimData({2}, {1})});
    EXPECT_EQ(cls.kind, TheoryKind::good);
    EXPECT_EQ(cls.min_degree, 2);
    cls = classify_theory({quiver_affine_sl2(), DimData({1, 0}, {1, 1})});
    EXPECT_EQ(cls.kind, TheoryKind::ugly);
    EXPECT_EQ(cls.min_degree, 1);
    EXPECT_EQ(cls.witness, (IntVector{1, 1}));
    cls = classify_theory({quiver_a1(), DimData({2}, {2})});
    EXPECT_EQ(cls.kind, TheoryKind::bad);
    EXPECT_EQ(cls.witness, (IntVector{1}));
    cls = classify_theory({quiver_a1(), DimData({0}, {0})});
    EXPECT_EQ(cls.kind, TheoryKind::good);
    EXPECT_FALSE(cls.min_degree.has_value());
}

TEST(Monopole, FmoDegree)
{
    const GKLOContext ctx(quiver_a1(), DimData({2}, {1}));
    EXPECT_EQ(fmo_degree(ctx, {1}, 0), 2);
    EXPECT_EQ(fmo_degree(ctx, {1}, 1), 4);
    EXPECT_EQ(fmo_degree(ctx, {0}, 3), 6);
    EXPECT_THROW(fmo_degree(ctx, {2}, 0), input_error);
    EXPECT_THROW(fmo_degree(ctx, {1}, -1), input_error);
}

TEST(Monopole, HilbertA1)
{
    const auto s = hilbert_series({quiver_a1(), DimData({2}, {1})}, 8);
    EXPECT_EQ(s.coeffs(), (std::vector<std::int64_t>{1, 0, 3, 0, 5, 0, 7, 0, 9}));
    const auto trivial = hilbert_series({quiver_a2(), DimData({1, 4}, {0, 0})}, 5);
    EXPECT_EQ(trivial.coeffs(), (std::vector<std::int64_t>{1, 0, 0, 0, 0, 0}));
}

TEST(Monopole, HilbertMatchesBruteForce)
{
    const GKLOContext a2(quiver_a2(), DimData({1, 1}, {1, 1}));
    EXPECT_EQ(hilbert_series(a2, 6).coeffs(), oracle::hilbert_brute(a2, 6, 6));
    const GKLOContext aff(quiver_affine_sl2(), DimData({1, 0}, {1, 1}));
    EXPECT_EQ(hilbert_series(aff, 5).coeffs(), oracle::hilbert_brute(aff, 5, 5));
    EXPECT_EQ(hilbert_series(aff, 3).coeffs(), (std::vector<std::int64_t>{1, 2, 6, 10}));
}

TEST(Monopole, HilbertRejectsBadAndHuge)
{
    EXPECT_THROW(hilbert_series({quiver_a1(), DimData({2}, {2})}, 4), domain_error);
    HilbertOptions tiny;
    tiny.max_coweights = 3;
    EXPECT_THROW(hilbert_series({quiver_a1(), DimData({2}, {1})}, 20, tiny), resource_error);
}

TEST(Monopole, GoodTheoriesStartOneZero)
{
    for (const auto &sc : suite_contexts(2)) {
        const auto cls = classify_theory(sc.ctx);
        if (cls.kind == TheoryKind::bad) {
            continue;
        }
        const auto s = hilbert_series(sc.ctx, 4);
        EXPECT_EQ(s[0], 1) << sc.label();
        if (cls.kind == TheoryKind::good) {
            EXPECT_EQ(s[1], 0) << sc.label();
        }
        for (auto c : s.coeffs()) {
            EXPECT_GE(c, 0) << sc.label();
        }
    }
}
