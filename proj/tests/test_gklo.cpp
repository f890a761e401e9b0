#include <gtest/gtest.h>

#include "kmslices/kmslices.hpp"
#include "oracles.hpp"

using namespace kms;

namespace
{

MPoly W(std::size_t i, std::size_t r) { return MPoly::var(wvar(i, r)); }
MPoly U(std::size_t i, std::size_t r) { return MPoly::var(uvar(i, r)); }
MPoly Z() { return MPoly::var(zvar()); }
RatFunc Uinv(std::size_t i, std::size_t r) { return RatFunc(MPoly(Monomial::var(uvar(i, r), -1))); }

GKLOContext a1(std::int64_t w, std::int64_t v) { return {quiver_a1(), DimData({w}, {v})}; }

} // namespace

TEST(Gklo, QImage)
{
    EXPECT_EQ(q_image(a1(0, 2), 0), (Z() - W(0, 1)) * (Z() - W(0, 2)));
    EXPECT_EQ(q_image(a1(0, 0), 0), MPoly(1));
    const MPoly q = q_image(a1(0, 3), 0);
    EXPECT_EQ(q.coefficients_in(zvar()).at(2), -(W(0, 1) + W(0, 2) + W(0, 3)));
}

TEST(Gklo, PImage)
{
    const RatFunc expected((Z() - W(0, 2)) * U(0, 1) - (Z() - W(0, 1)) * U(0, 2), W(0, 1) - W(0, 2));
    EXPECT_EQ(p_image(a1(0, 2), 0), expected);
    EXPECT_EQ(p_image(a1(3, 1), 0), RatFunc(U(0, 1)));
}

TEST(Gklo, PMinusImage)
{
    for (std::int64_t w = 0; w <= 3; ++w) {
        EXPECT_EQ(p_minus_image(a1(w, 1), 0), RatFunc(-W(0, 1).pow(static_cast<unsigned>(w))) * Uinv(0, 1));
    }
    EXPECT_TRUE(p_minus_image(a1(2, 0), 0).is_zero());
}

TEST(Gklo, FmoSmallValues)
{
    const auto ctx = a1(0, 2);
    EXPECT_EQ(fmo_plus(ctx, {1}, PartialSymPoly::one({1}, {2})), RatFunc(U(0, 1) - U(0, 2), W(0, 1) - W(0, 2)));
    for (std::int64_t w = 0; w <= 2; ++w) {
        EXPECT_EQ(fmo_minus(a1(w, 1), {1}, PartialSymPoly::one({1}, {1})),
                  RatFunc(-W(0, 1).pow(static_cast<unsigned>(w))) * Uinv(0, 1));
    }
    // two-term negative FMO expanded by hand: sign (-1)^{1*2} = +1,
    // w1^w u1^-1 / (w2 - w1) + w2^w u2^-1 / (w1 - w2)
    const auto c = a1(2, 2);
    const RatFunc hand = RatFunc(W(0, 1).pow(2), W(0, 2) - W(0, 1)) * Uinv(0, 1)
                         + RatFunc(W(0, 2).pow(2), W(0, 1) - W(0, 2)) * Uinv(0, 2);
    EXPECT_EQ(fmo_minus(c, {1}, PartialSymPoly::one({1}, {2})), hand);
}

TEST(Gklo, FmoOfZeroIsDressing)
{
    const auto ctx = GKLOContext(quiver_a2(), DimData({1, 2}, {2, 1}));
    const PartialSymPoly f(W(0, 1) * W(0, 2) + Z() * W(1, 1), {0, 0}, {2, 1});
    EXPECT_EQ(fmo_plus(ctx, {0, 0}, f), RatFunc(f.value()));
    EXPECT_EQ(fmo_minus(ctx, {0, 0}, f), RatFunc(f.value()));
}

TEST(Gklo, FmoRejectsBadInput)
{
    const auto ctx = a1(1, 2);
    EXPECT_THROW(fmo_plus(ctx, {3}, PartialSymPoly::one({2}, {2})), input_error);
    EXPECT_THROW(fmo_plus(ctx, {1}, PartialSymPoly::one({1}, {3})), input_error);
}

// Both FMO families against the defining sums evaluated at random rational points.
TEST(Gklo, FmoMatchesPointwiseDefinition)
{
    for (const auto &sc : suite_contexts(2)) {
        for (const auto &m : box_vectors(sc.ctx.dims().v)) {
            for (const auto &f : dressing_basis(m, sc.ctx.dims().v)) {
                for (bool plus : {true, false}) {
                    const RatFunc value = fmo(sc.ctx, m, f, plus ? Sign::plus : Sign::minus);
                    oracle::Point pt(17);
                    EXPECT_EQ(value.evaluate(pt.fn()), oracle::fmo_at(sc.ctx, m, f.value(), plus, pt))
                        << sc.label() << " m=" << GKLOContext::vec_string(m) << " f=" << f.value().to_string();
                }
            }
        }
    }
}

TEST(Gklo, FmosAreSymmetricAndInTheirRings)
{
    for (const auto &sc : suite_contexts(2)) {
        for (const auto &m : box_vectors(sc.ctx.dims().v)) {
            for (const auto &f : dressing_basis(m, sc.ctx.dims().v)) {
                EXPECT_TRUE(check_symmetric(fmo_plus(sc.ctx, m, f), sc.ctx.dims().v));
                EXPECT_TRUE(check_symmetric(fmo_minus(sc.ctx, m, f), sc.ctx.dims().v));
                EXPECT_NO_THROW(fmo_element(sc.ctx, m, f, Sign::plus));
                EXPECT_NO_THROW(fmo_element(sc.ctx, m, f, Sign::minus));
            }
        }
    }
}

TEST(Gklo, LinearOverSymmetricFunctions)
{
    const GKLOContext ctx(quiver_a2(), DimData({1, 1}, {2, 2}));
    const MPoly g = W(0, 1) + W(0, 2) + W(1, 1) * W(1, 2) + Z();
    const IntVector v{2, 2};
    for (const auto &m : box_vectors(v)) {
        for (const auto &h : dressing_basis(m, v, 1)) {
            for (auto s : {Sign::plus, Sign::minus}) {
                EXPECT_EQ(fmo(ctx, m, PartialSymPoly(g * h.value(), m, v), s), RatFunc(g) * fmo(ctx, m, h, s));
            }
        }
    }
}

TEST(Gklo, ExampleIdentities)
{
    for (const auto &sc : suite_contexts(3)) {
        const auto &ctx = sc.ctx;
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            IntVector zero(ctx.size(), 0);
            MPoly all(1);
            for (std::size_t r = 1; r <= ctx.v(i); ++r) {
                all *= Z() - W(i, r);
            }
            const PartialSymPoly qf(all, zero, ctx.dims().v);
            EXPECT_EQ(fmo_plus(ctx, zero, qf), RatFunc(q_image(ctx, i)));
            EXPECT_EQ(fmo_minus(ctx, zero, qf), RatFunc(q_image(ctx, i)));
            if (ctx.v(i) == 0) {
                continue;
            }
            const PartialSymPoly pf = lagrange_dressing(ctx, i);
            EXPECT_EQ(fmo_plus(ctx, pf.m(), pf), p_image(ctx, i)) << sc.label();
            EXPECT_EQ(fmo_minus(ctx, pf.m(), pf), p_minus_image(ctx, i)) << sc.label();
        }
    }
}

TEST(Gklo, DeterminantIdentityA1)
{
    for (std::int64_t w = 0; w <= 3; ++w) {
        const auto r = d_identity_check(a1(w, 1), 0);
        EXPECT_TRUE(r.holds);
        EXPECT_EQ(r.rhs, RatFunc(Z().pow(static_cast<unsigned>(w)) - W(0, 1).pow(static_cast<unsigned>(w))));
        EXPECT_EQ(r.d * RatFunc(Z() - W(0, 1)), r.rhs);
    }
    const auto empty = d_identity_check(a1(2, 0), 0);
    EXPECT_TRUE(empty.holds);
    EXPECT_EQ(empty.d, RatFunc(Z().pow(2)));
}

// Both sides of the determinant identity at random points, including the quotient D_i.
TEST(Gklo, DeterminantIdentityPointwise)
{
    const GKLOContext ctx(quiver_a2(), DimData({1, 1}, {1, 1}));
    const auto r = d_identity_check(ctx, 0);
    ASSERT_TRUE(r.holds);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        oracle::Point pt(seed);
        const Rational z = pt(zvar());
        const Rational lhs = r.d.evaluate(pt.fn()) * (z - pt(wvar(0, 1)));
        // P_0 = (w[1,1] - w[0,1]) u[0,1];  P_0^- = -(-1)^{v_1} w[0,1] / u[0,1]
        const Rational p = (pt(wvar(1, 1)) - pt(wvar(0, 1))) * pt(uvar(0, 1));
        const Rational pm = pt(wvar(0, 1)) / pt(uvar(0, 1));
        const Rational rhs = p * pm + z * (z - pt(wvar(1, 1)));
        EXPECT_EQ(lhs, rhs);
    }
    EXPECT_TRUE(d_identity_check(ctx, 1).holds);
}

TEST(Gklo, ChevalleyA1)
{
    for (std::int64_t w = 0; w <= 3; ++w) {
        const auto ctx = a1(w, 1);
        EXPECT_EQ(chevalley(ctx, RatFunc(U(0, 1))), RatFunc(-W(0, 1).pow(static_cast<unsigned>(w))) * Uinv(0, 1));
        EXPECT_EQ(chevalley(ctx, fmo_plus(ctx, {1}, PartialSymPoly::one({1}, {1}))),
                  fmo_minus(ctx, {1}, PartialSymPoly::one({1}, {1})));
    }
}

TEST(Gklo, ChevalleyIsAnInvolution)
{
    for (const auto &sc : suite_contexts(2)) {
        for (const auto &m : box_vectors(sc.ctx.dims().v)) {
            const auto f = dressing_basis(m, sc.ctx.dims().v, 1).back();
            const RatFunc plus = fmo_plus(sc.ctx, m, f);
            const RatFunc image = chevalley(sc.ctx, plus);
            EXPECT_EQ(image, fmo_minus(sc.ctx, m, f)) << sc.label();
            EXPECT_EQ(chevalley(sc.ctx, image), plus) << sc.label();
        }
    }
}

TEST(Gklo, OrientationExamples)
{
    const GKLOContext ctx(quiver_a2(), DimData({1, 1}, {1, 1}));
    auto r = verify_orientation(ctx, 0, {1, 0}, PartialSymPoly::one({1, 0}, {1, 1}));
    EXPECT_EQ(r.predicted_sign, 1);
    EXPECT_TRUE(r.holds);
    r = verify_orientation(ctx, 0, {0, 1}, PartialSymPoly::one({0, 1}, {1, 1}));
    EXPECT_EQ(r.predicted_sign, -1);
    EXPECT_TRUE(r.holds);
    r = verify_orientation(ctx, 0, {0, 0}, PartialSymPoly::one({0, 0}, {1, 1}));
    EXPECT_EQ(r.predicted_sign, 1);
    EXPECT_EQ(r.original, RatFunc(1));
    EXPECT_EQ(r.flipped, RatFunc(1));
}

TEST(Gklo, OrientationSuite)
{
    for (const auto &sc : suite_contexts(2)) {
        for (std::size_t a = 0; a < sc.ctx.edges().size(); ++a) {
            for (const auto &m : box_vectors(sc.ctx.dims().v)) {
                for (const auto &f : dressing_basis(m, sc.ctx.dims().v, 1)) {
                    EXPECT_TRUE(verify_orientation(sc.ctx, a, m, f).holds) << sc.label();
                }
            }
        }
    }
}

TEST(Gklo, FmoCacheReturnsSameValue)
{
    FmoCache cache;
    const auto ctx = a1(1, 2);
    const auto f = PartialSymPoly::one({1}, {2});
    const RatFunc first = cache.get(ctx, {1}, f, Sign::plus);
    const RatFunc second = cache.get(ctx, {1}, f, Sign::plus);
    EXPECT_EQ(first, second);
    EXPECT_EQ(cache.hits(), 1u);
    EXPECT_EQ(cache.misses(), 1u);
    EXPECT_EQ(first, fmo_plus(ctx, {1}, f));
}
