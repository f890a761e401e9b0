#include <gtest/gtest.h>

#include "kmslices/kmslices.hpp"
#include "oracles.hpp"

using namespace kms;

namespace
{

MPoly W(std::size_t i, std::size_t r) { return MPoly::var(wvar(i, r)); }

GKLOContext a1(std::int64_t w, std::int64_t v) { return {quiver_a1(), DimData({w}, {v})}; }

} // namespace

TEST(KmChain, MmoValidation)
{
    EXPECT_THROW(validate_mmo({{{2, 0}}, RatFunc(1)}, {2}), domain_error);
    EXPECT_THROW(validate_mmo({{{1, -1}}, RatFunc(1)}, {2}), domain_error);
    EXPECT_THROW(validate_mmo({{{1, 0}}, RatFunc(W(0, 1))}, {3}), input_error);
    EXPECT_THROW(validate_mmo({{{0, 0}}, RatFunc(W(0, 1))}, {2}), domain_error);
    EXPECT_NO_THROW(validate_mmo({{{0, 0}}, RatFunc(W(0, 1) + W(0, 2))}, {2}));
    EXPECT_NO_THROW(validate_mmo({{{1, 0}}, RatFunc(MPoly(1), W(0, 1))}, {2}));
}

TEST(KmChain, LocalizationExamples)
{
    auto terms = localize_mmo(full_blocks({1}), {{{1}}, RatFunc(1)});
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].coef, RatFunc(1));

    terms = localize_mmo(full_blocks({2}), {{{1, 0}}, RatFunc(1)});
    ASSERT_EQ(terms.size(), 2u);
    EXPECT_EQ(terms[0].gamma, (Coweight{{0, 1}}));
    EXPECT_EQ(terms[0].coef, RatFunc(MPoly(1), W(0, 2) - W(0, 1)));
    EXPECT_EQ(terms[1].gamma, (Coweight{{1, 0}}));
    EXPECT_EQ(terms[1].coef, RatFunc(MPoly(1), W(0, 1) - W(0, 2)));

    const RatFunc f(W(0, 1) + W(0, 2));
    terms = localize_mmo(full_blocks({2}), {{{0, 0}}, f});
    ASSERT_EQ(terms.size(), 1u);
    EXPECT_EQ(terms[0].coef, f);
}

// Localization against the numeric orbit sum over the whole permutation group.
TEST(KmChain, LocalizationMatchesPointwiseOrbitSum)
{
    const std::vector<DressedMMO> mmos = {
        {{{1, 0, 0}, {1, 0}}, RatFunc(W(0, 2) * W(0, 3) + W(1, 2))},
        {{{-1, -1, 0}, {0, 0}}, RatFunc(W(0, 1) + W(0, 2) + W(1, 1) * W(1, 2))},
        {{{1, 1, 1}, {-1, 0}}, RatFunc(W(1, 1))},
    };
    for (const auto &mmo : mmos) {
        const IntVector v{static_cast<std::int64_t>(mmo.gamma[0].size()), static_cast<std::int64_t>(mmo.gamma[1].size())};
        const auto terms = localize_mmo(full_blocks(v), mmo);
        oracle::Point pt(9);
        const auto expected = oracle::localize_at(mmo, pt);
        ASSERT_EQ(terms.size(), expected.size());
        for (const auto &t : terms) {
            EXPECT_EQ(t.coef.evaluate(pt.fn()), expected.at(t.gamma)) << coweight_string(t.gamma);
        }
    }
}

TEST(KmChain, SplitAndProjectExamples)
{
    const auto ctx = a1(2, 2);
    const DefectSplit split({2}, {1});
    auto st = split_and_project(ctx, split, {fundamental_coweight({1}, {2}, 1), RatFunc(1)});
    ASSERT_EQ(st.terms.size(), 1u);
    EXPECT_EQ(st.terms[0].gamma, (Coweight{{1}}));
    EXPECT_EQ(st.terms[0].dressing, RatFunc(MPoly(1), W(0, 1)));

    st = split_and_project(ctx, split, {fundamental_coweight({2}, {2}, 1), RatFunc(1)});
    EXPECT_TRUE(st.terms.empty());

    st = split_and_project(ctx, split, {fundamental_coweight({1}, {2}, -1), RatFunc(1)});
    ASSERT_EQ(st.terms.size(), 1u);
    EXPECT_EQ(st.terms[0].gamma, (Coweight{{-1}}));
    EXPECT_EQ(st.terms[0].dressing, RatFunc(MPoly(1), -W(0, 1)));
}

TEST(KmChain, ProjectionRequiresConicity)
{
    const GKLOContext ctx(quiver_affine_sl2(), DimData({0, 0}, {1, 1}));
    const DefectSplit split({1, 1}, {0, 0});
    EXPECT_THROW(split_and_project(ctx, split, {fundamental_coweight({0, 0}, {1, 1}, 1), RatFunc(1)}), conicity_error);
}

TEST(KmChain, FourierAndForgetExamples)
{
    const auto ctx = a1(2, 2);
    const DefectSplit split({2}, {1});
    const Coweight plus = fundamental_coweight({1}, {1}, 1);
    const Coweight minus = fundamental_coweight({1}, {1}, -1);
    EXPECT_EQ(fourier_exponent(fourier_weights(ctx, split, 1), plus), 0);
    EXPECT_EQ(fourier_exponent(fourier_weights(ctx, split, 2), plus), 1);
    EXPECT_EQ(fourier_exponent(fourier_weights(ctx, split, 2), Coweight{{0}}), 0);
    EXPECT_EQ(forget_matter_factor(split, plus), RatFunc(-W(0, 1)));
    EXPECT_EQ(forget_matter_factor(split, minus), RatFunc(W(0, 1)));
    EXPECT_EQ(forget_matter_factor(split, Coweight{{0}}), RatFunc(1));
}

TEST(KmChain, ComposeEmbeddingA1)
{
    const auto ctx = a1(2, 2);
    const DefectSplit split({2}, {1});
    const auto one = PartialSymPoly::one({1}, {2});
    auto rep = compose_embedding(ctx, split, {1}, one, Sign::plus);
    EXPECT_TRUE(rep.holds());
    EXPECT_EQ(rep.stages.back().terms.at(0).dressing, RatFunc(1));
    EXPECT_EQ(rep.result, RatFunc(MPoly::var(uvar(0, 1))));
    rep = compose_embedding(ctx, split, {1}, one, Sign::minus);
    EXPECT_TRUE(rep.holds());
    EXPECT_EQ(rep.result, fmo_minus(restricted_context(ctx, split), {1}, PartialSymPoly::one({1}, {1})));
    const PartialSymPoly f(W(0, 1) * W(0, 2) + 1, {0}, {2});
    rep = compose_embedding(ctx, split, {0}, f, Sign::plus);
    EXPECT_TRUE(rep.holds());
    EXPECT_EQ(rep.result, RatFunc(1));
}

TEST(KmChain, StageLocalizationDiscipline)
{
    const GKLOContext ctx(quiver_a2(), DimData({2, 1}, {2, 1}));
    const DefectSplit split({2, 1}, {1, 0});
    const auto rep = compose_embedding(ctx, split, {1, 0}, PartialSymPoly::one({1, 0}, {2, 1}), Sign::plus);
    EXPECT_TRUE(rep.denominators_ok);
    ChainState bad;
    bad.stage = ChainStage::projected;
    bad.terms.push_back({{{1}, {}}, RatFunc(MPoly(1), W(0, 1) - W(0, 2))});
    EXPECT_FALSE(respects_localization(bad, split));
    bad.stage = ChainStage::levi;
    bad.terms[0].dressing = RatFunc(MPoly(1), W(0, 1));
    EXPECT_FALSE(respects_localization(bad, split));
}

TEST(KmChain, ChainOnSmallSuite)
{
    FmoCache cache;
    for (const auto &s : restriction_suite(2)) {
        if (!check_conicity(DimData(s.ctx.dims().w, s.split.vdoubleprime()), s.ctx.cartan()).holds) {
            continue;
        }
        for (const auto &m : box_vectors(s.split.v)) {
            for (const auto &f : dressing_basis(m, s.split.v)) {
                for (auto sign : {Sign::plus, Sign::minus}) {
                    const auto rep = compose_embedding(s.ctx, s.split, m, f, sign, true, &cache);
                    EXPECT_TRUE(rep.holds()) << s.label() << " m=" << GKLOContext::vec_string(m) << " "
                                             << to_string(sign) << " got " << rep.result.to_string() << " want "
                                             << rep.expected.to_string();
                }
            }
        }
    }
}
