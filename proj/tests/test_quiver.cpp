#include <gtest/gtest.h>

#include "kmslices/kmslices.hpp"

using namespace kms;

TEST(Quiver, SelfLoopsAndDuplicatesRejected)
{
    EXPECT_THROW(Quiver::with_vertex_count(1, {{0, 0}}), input_error);
    EXPECT_THROW(Quiver({"a", "a"}, {}), input_error);
    EXPECT_THROW(Quiver::with_vertex_count(2, {{0, 2}}), input_error);
}

TEST(Quiver, CartanMatrices)
{
    const auto a1 = cartan_matrix(quiver_a1());
    EXPECT_EQ(a1(0, 0), 2);
    const auto a2 = cartan_matrix(quiver_a2());
    EXPECT_EQ(a2.apply({1, 0}), (IntVector{2, -1}));
    EXPECT_EQ(a2.apply({0, 1}), (IntVector{-1, 2}));
    const auto aff = cartan_matrix(quiver_affine_sl2());
    EXPECT_EQ(aff.apply({1, 0}), (IntVector{2, -2}));
    EXPECT_EQ(aff.apply({1, 1}), (IntVector{0, 0}));
}

TEST(Quiver, NegativeDimensionsRejected)
{
    EXPECT_THROW(DimData({-1}, {0}), input_error);
    EXPECT_THROW(DimData({1}, {-2}), input_error);
}

TEST(Quiver, MuPairing)
{
    const auto c1 = cartan_matrix(quiver_a1());
    auto p = mu_pairing(DimData({2}, {1}), c1);
    EXPECT_EQ(p.values, (IntVector{0}));
    EXPECT_TRUE(p.mu_dominant);
    const auto ca = cartan_matrix(quiver_affine_sl2());
    p = mu_pairing(DimData({1, 0}, {1, 1}), ca);
    EXPECT_EQ(p.values, (IntVector{1, 0}));
    EXPECT_TRUE(p.mu_dominant);
    p = mu_pairing(DimData({0, 0}, {1, 1}), ca);
    EXPECT_EQ(p.values, (IntVector{0, 0}));
    EXPECT_FALSE(mu_pairing(DimData({0}, {1}), c1).mu_dominant);
}

TEST(Quiver, TwoDeltaMinuscule)
{
    const auto c1 = cartan_matrix(quiver_a1());
    EXPECT_EQ(two_delta_minuscule(DimData({2}, {1}), c1, {1}), 2);
    EXPECT_EQ(two_delta_minuscule(DimData({2}, {1}), c1, {0}), 0);
    const auto ca = cartan_matrix(quiver_affine_sl2());
    EXPECT_EQ(two_delta_minuscule(DimData({1, 0}, {1, 1}), ca, {1, 1}), 1);
    EXPECT_THROW(two_delta_minuscule(DimData({2}, {1}), c1, {2}), input_error);
}

TEST(Quiver, ConicityExamples)
{
    const auto c1 = cartan_matrix(quiver_a1());
    auto r = check_conicity(DimData({2}, {1}), c1);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(*r.min_value, 2);
    const auto ca = cartan_matrix(quiver_affine_sl2());
    r = check_conicity(DimData({1, 0}, {1, 1}), ca);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(*r.min_value, 1);
    EXPECT_EQ(*r.minimizer, (IntVector{1, 1}));
    r = check_conicity(DimData({0, 0}, {1, 1}), ca);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(*r.witness(), (IntVector{1, 1}));
    EXPECT_EQ(*r.min_value, 0);
    EXPECT_TRUE(check_conicity(DimData({0}, {0}), c1).holds);
}

TEST(Quiver, GoodnessExamples)
{
    const auto c1 = cartan_matrix(quiver_a1());
    EXPECT_TRUE(check_good(DimData({2}, {1}), c1).holds);
    const auto ca = cartan_matrix(quiver_affine_sl2());
    const auto r = check_good(DimData({1, 0}, {1, 1}), ca);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(*r.witness(), (IntVector{1, 1}));
    EXPECT_TRUE(check_good(DimData({2, 0}, {1, 1}), ca).holds);
}

// Brute-force oracle for the box minimum: lexicographically least minimizer of the quadratic form.
TEST(Quiver, ConicityMatchesBruteForce)
{
    for (const auto &nq : suite_quivers()) {
        const auto c = cartan_matrix(nq.quiver);
        for (const auto &w : box_vectors(IntVector(nq.quiver.size(), 2))) {
            for (const auto &v : box_vectors(IntVector(nq.quiver.size(), 3))) {
                std::optional<std::int64_t> best;
                IntVector arg;
                for (const auto &u : box_vectors(v)) {
                    if (is_zero(u)) {
                        continue;
                    }
                    std::int64_t q = 0;
                    for (std::size_t i = 0; i < u.size(); ++i) {
                        std::int64_t cv = 0;
                        std::int64_t cu = 0;
                        for (std::size_t j = 0; j < u.size(); ++j) {
                            cv += c(i, j) * v[j];
                            cu += c(i, j) * u[j];
                        }
                        q += u[i] * (w[i] - cv) + u[i] * cu;
                    }
                    if (!best || q < *best) {
                        best = q;
                        arg = u;
                    }
                }
                const auto r = check_conicity(DimData(w, v), c);
                const auto g = check_good(DimData(w, v), c);
                EXPECT_EQ(r.min_value, best);
                if (best) {
                    EXPECT_EQ(*r.minimizer, arg);
                }
                EXPECT_EQ(r.holds, !best || *best >= 1);
                EXPECT_EQ(g.holds, !best || *best >= 2);
                EXPECT_TRUE(!g.holds || r.holds);
            }
        }
    }
}

TEST(Quiver, AffineClassification)
{
    EXPECT_EQ(affine_classify(cartan_matrix(quiver_a1())).kind, CartanKind::finite);
    EXPECT_EQ(affine_classify(cartan_matrix(quiver_a2())).kind, CartanKind::finite);
    const auto aff = affine_classify(cartan_matrix(quiver_affine_sl2()));
    EXPECT_EQ(aff.kind, CartanKind::affine);
    EXPECT_EQ(aff.marks, (IntVector{1, 1}));
    const Quiver triple = Quiver::with_vertex_count(2, {{0, 1}, {0, 1}, {0, 1}});
    EXPECT_EQ(affine_classify(cartan_matrix(triple)).kind, CartanKind::indefinite);
    const Quiver a3_affine = Quiver::with_vertex_count(3, {{0, 1}, {1, 2}, {2, 0}});
    const auto cyc = affine_classify(cartan_matrix(a3_affine));
    EXPECT_EQ(cyc.kind, CartanKind::affine);
    EXPECT_EQ(cyc.marks, (IntVector{1, 1, 1}));
    const Quiver d4_affine = Quiver::with_vertex_count(5, {{0, 4}, {1, 4}, {2, 4}, {3, 4}});
    const auto d4 = affine_classify(cartan_matrix(d4_affine));
    EXPECT_EQ(d4.kind, CartanKind::affine);
    EXPECT_EQ(d4.marks, (IntVector{1, 1, 1, 1, 2}));
}

TEST(Quiver, LevelPrediction)
{
    const auto c = cartan_matrix(quiver_affine_sl2());
    const auto aff = affine_classify(c);
    EXPECT_EQ(aff.level(DimData({1, 0}, {1, 1}), c), 1);
    EXPECT_EQ(predict_by_level(DimData({1, 0}, {1, 1}), c, aff), ConePrediction::conical_not_good);
    EXPECT_EQ(predict_by_level(DimData({2, 0}, {1, 1}), c, aff), ConePrediction::good);
    EXPECT_EQ(predict_by_level(DimData({0, 0}, {1, 1}), c, aff), ConePrediction::not_conical);
    EXPECT_EQ(predict_by_level(DimData({0, 0}, {0, 0}), c, aff), ConePrediction::not_applicable);
}
