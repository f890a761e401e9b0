#pragma once

// The adding-defect map phi on GKLO coordinates and the restriction of
// FMOs along closed embeddings of zastava spaces and of slices.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gklo.hpp"

namespace kms
{

/// v = v' + v'' with 0 <= v' <= v.
struct DefectSplit {
    IntVector v;
    IntVector vprime;

    DefectSplit() = default;
    DefectSplit(IntVector v_, IntVector vprime_) : v(std::move(v_)), vprime(std::move(vprime_))
    {
        if (v.size() != vprime.size()) {
            throw input_error("v and v' have different lengths");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (vprime[i] < 0 || vprime[i] > v[i]) {
                throw input_error("v' must satisfy 0 <= v' <= v");
            }
        }
    }

    IntVector vdoubleprime() const { return sub(v, vprime); }
};

namespace detail
{

inline void check_split(const GKLOContext &ctx, const DefectSplit &split)
{
    if (split.v != ctx.dims().v) {
        throw input_error("split does not match the context's v");
    }
}

} // namespace detail

/// u[i,r] |-> prod_{s > v'_i} (w[i,r] - w[i,s]) / prod_{s(a) = i} prod_{t > v'_{t(a)}} (w[t(a),t] - w[i,r]) u[i,r]
/// for r <= v'_i, and u[i,r] |-> 0 otherwise.
inline std::map<VarCode, MonomialImage> phi_images(const GKLOContext &ctx, const DefectSplit &split)
{
    detail::check_split(ctx, split);
    std::map<VarCode, MonomialImage> images;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto vp = static_cast<std::size_t>(split.vprime[i]);
        for (std::size_t r = 1; r <= ctx.v(i); ++r) {
            MonomialImage img;
            if (r > vp) {
                img.zero = true;
                images.emplace(uvar(i, r), std::move(img));
                continue;
            }
            img.mono = Monomial::var(uvar(i, r));
            for (std::size_t s = vp + 1; s <= ctx.v(i); ++s) {
                img.times_binomial(wvar(i, r), wvar(i, s), 1);
            }
            for (const auto &e : ctx.edges()) {
                if (e.source != i) {
                    continue;
                }
                for (auto t = static_cast<std::size_t>(split.vprime[e.target]) + 1; t <= ctx.v(e.target); ++t) {
                    img.times_binomial(wvar(e.target, t), wvar(i, r), -1);
                }
            }
            images.emplace(uvar(i, r), std::move(img));
        }
    }
    return images;
}

/// The adding-defect map. Requires e to have no negative u exponents;
/// terms containing a killed u[i,r] are dropped before normalization.
inline RatFunc phi(const GKLOContext &ctx, const DefectSplit &split, const RatFunc &e)
{
    ctx.check_variables(e);
    for (const auto &t : e.num().terms()) {
        for (const auto &[c, x] : t.mono.factors()) {
            if (x < 0 && kind_of(c) == VarKind::U) {
                throw domain_error("phi is only defined on the zastava ring (negative exponent of "
                                   + VarId::from_code(c).to_string() + ")");
            }
        }
    }
    return substitute_monomials(e, phi_images(ctx, split));
}

inline GKLOElement phi(const GKLOContext &ctx, const DefectSplit &split, const GKLOElement &e)
{
    if (e.tag() != RingTag::zastava_loc) {
        throw domain_error("phi is only defined on the zastava ring");
    }
    return {phi(ctx, split, e.value()), RingTag::defect_loc};
}

/// L_i(z) = prod_{r > v'_i} (z - w[i,r]).
inline MPoly defect_divisor(const DefectSplit &split, std::size_t i)
{
    MPoly l(1);
    for (auto r = split.vprime[i] + 1; r <= split.v[i]; ++r) {
        l *= MPoly::var(zvar()) - MPoly::var(wvar(i, static_cast<std::size_t>(r)));
    }
    return l;
}

struct SquareCheck {
    bool q_holds = false;
    bool p_holds = false;
};

/// phi(Q_i) = Qbar_i L_i and phi(P_i) = Pbar_i L_i.
inline SquareCheck verify_gklo_square(const GKLOContext &ctx, const DefectSplit &split, std::size_t i)
{
    const GKLOContext small = ctx.with_v(split.vprime);
    const MPoly l = defect_divisor(split, i);
    SquareCheck out;
    out.q_holds = phi(ctx, split, RatFunc(q_image(ctx, i))) == RatFunc(q_image(small, i) * l);
    out.p_holds = phi(ctx, split, p_image(ctx, i)) == p_image(small, i) * RatFunc(l);
    return out;
}

struct TheoremCheck {
    bool holds = false;
    RatFunc lhs;
    RatFunc rhs;
};

/// phi(M^+_m(f)) against sum M^+_m(f1) f2 over the Sweedler pairs (zero if m is not <= v').
inline TheoremCheck verify_adding_defect(const GKLOContext &ctx, const DefectSplit &split, const IntVector &m,
                                         const PartialSymPoly &f, FmoCache *cache = nullptr)
{
    TheoremCheck out;
    out.lhs = phi(ctx, split, detail::cached_fmo(cache, ctx, m, f, Sign::plus));
    if (leq(m, split.vprime)) {
        const GKLOContext small = ctx.with_v(split.vprime);
        std::vector<RatFunc> parts;
        for (const auto &pair : sweedler(f, split.vprime)) {
            parts.push_back(detail::cached_fmo(cache, small, m, pair.head, Sign::plus) * RatFunc(pair.tail));
        }
        out.rhs = RatFunc::sum(parts);
    }
    out.holds = out.lhs == out.rhs;
    return out;
}

/// Restriction along the closed embedding of zastava spaces: phi, then the
/// tail variables w[i,r] (r > v'_i) set to zero.
inline RatFunc restrict_zastava(const GKLOContext &ctx, const DefectSplit &split, const RatFunc &e)
{
    const RatFunc image = phi(ctx, split, e);
    const auto &vp = split.vprime;
    return image.kill([&vp](VarCode c) { return is_tail_variable(c, vp); });
}

/// The smaller slice's framing w' = w - C v''; throws unless it is dominant.
inline IntVector restricted_framing(const GKLOContext &ctx, const DefectSplit &split)
{
    detail::check_split(ctx, split);
    IntVector wp = sub(ctx.dims().w, ctx.cartan().apply(split.vdoubleprime()));
    for (auto x : wp) {
        if (x < 0) {
            throw domain_error("w - C v'' = " + GKLOContext::vec_string(wp) + " is not dominant");
        }
    }
    return wp;
}

inline GKLOContext restricted_context(const GKLOContext &ctx, const DefectSplit &split)
{
    return {ctx.quiver(), DimData(restricted_framing(ctx, split), split.vprime)};
}

/// M^{sign}_m(f~) over (w', v'), or 0 when m is not <= v'.
inline RatFunc restrict_fmo_slice(const GKLOContext &ctx, const DefectSplit &split, const IntVector &m,
                                  const PartialSymPoly &f, Sign sign, FmoCache *cache = nullptr)
{
    const GKLOContext small = restricted_context(ctx, split);
    if (!leq(m, split.vprime)) {
        return {};
    }
    return detail::cached_fmo(cache, small, m, tilde(f, split.vprime), sign);
}

/// Restriction of the slice FMO computed through the coordinates: for M^+
/// via the zastava restriction, for M^- by conjugating with the involutions
/// of the two slices. Compared against restrict_fmo_slice.
inline TheoremCheck verify_slice_restriction(const GKLOContext &ctx, const DefectSplit &split, const IntVector &m,
                                             const PartialSymPoly &f, Sign sign, FmoCache *cache = nullptr)
{
    const GKLOContext small = restricted_context(ctx, split);
    TheoremCheck out;
    const RatFunc full = detail::cached_fmo(cache, ctx, m, f, sign);
    if (sign == Sign::plus) {
        out.lhs = restrict_zastava(ctx, split, full);
    } else {
        out.lhs = chevalley(small, restrict_zastava(ctx, split, chevalley(ctx, full)));
    }
    out.rhs = restrict_fmo_slice(ctx, split, m, f, sign, cache);
    out.holds = out.lhs == out.rhs;
    return out;
}

} // namespace kms
