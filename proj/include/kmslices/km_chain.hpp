#pragma once

// The Kac-Moody embedding chain on dressed minuscule monopole operators:
// Levi restriction, the cone-point projection, two Fourier transforms and
// forgetting matter, followed by the comparison with the FMO restriction.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "defect.hpp"

namespace kms
{

/// +varpi_m (sign = +1) or -varpi_m (sign = -1): sign in the first m_i slots of vertex i.
inline Coweight fundamental_coweight(const IntVector &m, const IntVector &v, int sign)
{
    detail::check_range(m, v);
    Coweight g(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        g[i].assign(static_cast<std::size_t>(v[i]), 0);
        std::fill_n(g[i].begin(), m[i], sign);
    }
    return g;
}

struct DressedMMO {
    Coweight gamma;
    RatFunc dressing; // an element of the fraction field in the w variables
};

namespace detail
{

inline VarCode swap_code(VarCode c, std::size_t i, std::size_t r, std::size_t s)
{
    const VarCode a = wvar(i, r);
    const VarCode b = wvar(i, s);
    return c == a ? b : (c == b ? a : c);
}

/// Per-vertex sign of the nonzero entries (0 if none); throws unless minuscule.
inline std::vector<int> minuscule_signs(const Coweight &g)
{
    std::vector<int> signs(g.size(), 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (auto x : g[i]) {
            if (x < -1 || x > 1) {
                throw domain_error("coweight " + coweight_string(g) + " has an entry outside {-1, 0, 1}");
            }
            if (x != 0) {
                if (signs[i] == -x) {
                    throw domain_error("coweight " + coweight_string(g) + " is not minuscule at vertex "
                                       + std::to_string(i));
                }
                signs[i] = x;
            }
        }
    }
    return signs;
}

/// 1 / prod (x - y) over the given pairs.
inline RatFunc root_product(const std::vector<std::pair<VarCode, VarCode>> &roots)
{
    FactorMap factors;
    long scale = 1;
    for (const auto &[x, y] : roots) {
        auto [f, s] = binomial(x, y);
        factors[f] += 1;
        scale *= s;
    }
    return RatFunc::from_factored(MPoly(1), factors, Rational(scale));
}

/// The permutation sending gamma to target inside each vertex, matching equal
/// values in order; as a renaming of the w variables.
inline std::function<VarCode(VarCode)> matching_permutation(const Coweight &gamma, const Coweight &target)
{
    std::vector<std::vector<std::size_t>> sigma(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        const auto n = gamma[i].size();
        sigma[i].assign(n + 1, 0);
        for (int value : {-1, 0, 1}) {
            std::vector<std::size_t> from;
            std::vector<std::size_t> to;
            for (std::size_t r = 0; r < n; ++r) {
                if (gamma[i][r] == value) {
                    from.push_back(r + 1);
                }
                if (target[i][r] == value) {
                    to.push_back(r + 1);
                }
            }
            if (from.size() != to.size()) {
                throw std::logic_error("target is not in the orbit");
            }
            for (std::size_t k = 0; k < from.size(); ++k) {
                sigma[i][from[k]] = to[k];
            }
        }
    }
    return [sigma](VarCode c) {
        const auto id = VarId::from_code(c);
        if (id.kind != VarKind::W || id.vertex >= sigma.size() || id.r >= sigma[id.vertex].size()) {
            return c;
        }
        return wvar(id.vertex, sigma[id.vertex][id.r]);
    };
}

} // namespace detail

/// Validates the dressed MMO against gauge dimensions v: minuscule coweight of
/// the right shape, dressing in the w variables and invariant under the
/// stabilizer of gamma.
inline void validate_mmo(const DressedMMO &mmo, const IntVector &v)
{
    if (mmo.gamma.size() != v.size()) {
        throw input_error("coweight has the wrong number of vertices");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (static_cast<std::int64_t>(mmo.gamma[i].size()) != v[i]) {
            throw input_error("coweight tuple " + std::to_string(i) + " must have v_i entries");
        }
    }
    detail::minuscule_signs(mmo.gamma);
    for (auto c : mmo.dressing.variables()) {
        const auto id = VarId::from_code(c);
        if (id.kind == VarKind::Z) {
            continue;
        }
        if (id.kind != VarKind::W || id.vertex >= v.size() || id.r < 1
            || static_cast<std::int64_t>(id.r) > v[id.vertex]) {
            throw input_error("dressing uses variable " + id.to_string() + " outside the equivariant parameters");
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (int value : {-1, 0, 1}) {
            std::size_t prev = 0;
            for (std::size_t r = 1; r <= mmo.gamma[i].size(); ++r) {
                if (mmo.gamma[i][r - 1] != value) {
                    continue;
                }
                if (prev != 0) {
                    const auto moved = mmo.dressing.renamed(
                        [i, prev, r](VarCode c) { return detail::swap_code(c, i, prev, r); });
                    if (!(moved == mmo.dressing)) {
                        throw domain_error("dressing is not invariant under w[" + std::to_string(i) + ","
                                           + std::to_string(prev) + "] <-> w[" + std::to_string(i) + ","
                                           + std::to_string(r) + "]");
                    }
                }
                prev = r;
            }
        }
    }
}

/// One term c * r_gamma of a localized element.
struct TorusTerm {
    Coweight gamma;
    RatFunc coef;
};

/// Block sizes of a standard Levi subgroup, per vertex (summing to v_i).
using BlockShape = std::vector<std::vector<std::size_t>>;

inline BlockShape full_blocks(const IntVector &v)
{
    BlockShape b(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        b[i] = {static_cast<std::size_t>(v[i])};
    }
    return b;
}

inline BlockShape split_blocks(const DefectSplit &split)
{
    BlockShape b(split.v.size());
    for (std::size_t i = 0; i < split.v.size(); ++i) {
        b[i] = {static_cast<std::size_t>(split.vprime[i]), static_cast<std::size_t>(split.v[i] - split.vprime[i])};
    }
    return b;
}

/// Localization of the MMO to the torus for the Levi with the given blocks:
/// sum over sigma in W/W_gamma of sigma(f) r_{sigma gamma} / prod_{beta: <beta, sigma gamma> > 0} beta,
/// beta ranging over the roots inside the blocks. Terms sorted by coweight.
inline std::vector<TorusTerm> localize_mmo(const BlockShape &blocks, const DressedMMO &mmo)
{
    detail::minuscule_signs(mmo.gamma);
    if (blocks.size() != mmo.gamma.size()) {
        throw input_error("block shape does not match the coweight");
    }
    // all arrangements of gamma obtained by permuting entries inside blocks
    std::vector<Coweight> orbit{Coweight{}};
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        std::vector<std::vector<int>> choices{{}};
        std::size_t start = 0;
        for (auto len : blocks[i]) {
            if (start + len > mmo.gamma[i].size()) {
                throw input_error("blocks exceed the coweight length");
            }
            std::vector<int> block(mmo.gamma[i].begin() + static_cast<std::ptrdiff_t>(start),
                                   mmo.gamma[i].begin() + static_cast<std::ptrdiff_t>(start + len));
            std::sort(block.begin(), block.end());
            std::vector<std::vector<int>> next;
            do {
                for (const auto &prefix : choices) {
                    auto c = prefix;
                    c.insert(c.end(), block.begin(), block.end());
                    next.push_back(std::move(c));
                }
            } while (std::next_permutation(block.begin(), block.end()));
            choices = std::move(next);
            start += len;
        }
        if (start != mmo.gamma[i].size()) {
            throw input_error("blocks do not cover the coweight");
        }
        std::vector<Coweight> grown;
        for (const auto &g : orbit) {
            for (const auto &c : choices) {
                auto h = g;
                h.push_back(c);
                grown.push_back(std::move(h));
            }
        }
        orbit = std::move(grown);
    }
    std::vector<TorusTerm> out;
    for (auto &target : orbit) {
        std::vector<std::pair<VarCode, VarCode>> roots;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            std::size_t start = 0;
            for (auto len : blocks[i]) {
                for (auto r = start; r < start + len; ++r) {
                    for (auto s = start; s < start + len; ++s) {
                        if (target[i][r] - target[i][s] > 0) {
                            roots.emplace_back(wvar(i, r + 1), wvar(i, s + 1));
                        }
                    }
                }
                start += len;
            }
        }
        RatFunc coef = mmo.dressing.renamed(detail::matching_permutation(mmo.gamma, target))
                       * detail::root_product(roots);
        out.push_back({std::move(target), std::move(coef)});
    }
    std::sort(out.begin(), out.end(), [](const TorusTerm &a, const TorusTerm &b) { return a.gamma < b.gamma; });
    return out;
}

/// Sum of localized terms with equal coweights merged and zeros dropped.
inline std::vector<TorusTerm> combine_torus_terms(std::vector<TorusTerm> terms)
{
    std::sort(terms.begin(), terms.end(), [](const TorusTerm &a, const TorusTerm &b) { return a.gamma < b.gamma; });
    std::vector<TorusTerm> out;
    for (std::size_t k = 0; k < terms.size();) {
        std::vector<const RatFunc *> same;
        std::size_t l = k;
        for (; l < terms.size() && terms[l].gamma == terms[k].gamma; ++l) {
            same.push_back(&terms[l].coef);
        }
        RatFunc c = RatFunc::sum_refs(same);
        if (!c.is_zero()) {
            out.push_back({terms[k].gamma, std::move(c)});
        }
        k = l;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chain states

enum class ChainStage { levi, projected, fourier_first, fourier_second, forgotten };

inline const char *to_string(ChainStage s)
{
    switch (s) {
    case ChainStage::levi:
        return "levi-restriction";
    case ChainStage::projected:
        return "cone-point-projection";
    case ChainStage::fourier_first:
        return "first-fourier-transform";
    case ChainStage::fourier_second:
        return "second-fourier-transform";
    case ChainStage::forgotten:
        return "forget-matter";
    }
    return "?";
}

/// A formal sum of dressed MMOs at one node of the chain. At the Levi stage
/// the coweights live on G' x G'' (length v_i); afterwards on G' (length v'_i).
struct ChainState {
    ChainStage stage = ChainStage::levi;
    std::vector<DressedMMO> terms;
};

/// Whether every dressing denominator lies in the localization allowed at
/// the state's stage: (w[i,r] - w[i,s]) with r <= v'_i < s at the Levi stage,
/// w[i,r] with r <= v'_i afterwards.
inline bool respects_localization(const ChainState &state, const DefectSplit &split)
{
    auto head = [&split](VarCode c) {
        const auto id = VarId::from_code(c);
        return id.kind == VarKind::W && static_cast<std::int64_t>(id.r) <= split.vprime[id.vertex];
    };
    for (const auto &t : state.terms) {
        if (!t.dressing.den_rest().is_constant()) {
            return false;
        }
        for (const auto &[f, e] : t.dressing.den_factors()) {
            if (state.stage == ChainStage::levi) {
                if (f.is_monomial()) {
                    return false;
                }
                const auto a = VarId::from_code(f.x);
                const auto b = VarId::from_code(f.y);
                if (a.kind != VarKind::W || b.kind != VarKind::W || a.vertex != b.vertex
                    || head(f.x) == head(f.y)) {
                    return false;
                }
            } else if (!f.is_monomial() || !head(f.x)) {
                return false;
            }
        }
    }
    return true;
}

/// Levi restriction to G' x G'': one term per W_{G'xG''}-orbit in W_G gamma,
/// represented with the nonzero entries first in each block, dressed by
/// sigma_j(f) / prod_{beta outside the Levi, <beta, gamma_j> > 0} beta.
inline ChainState levi_restrict(const DefectSplit &split, const DressedMMO &mmo)
{
    validate_mmo(mmo, split.v);
    const auto signs = detail::minuscule_signs(mmo.gamma);
    const auto n = split.v.size();
    std::vector<std::int64_t> count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        count[i] = std::count_if(mmo.gamma[i].begin(), mmo.gamma[i].end(), [](int x) { return x != 0; });
    }
    // k_i = number of nonzero entries placed in the V' block
    std::vector<IntVector> ks{IntVector{}};
    for (std::size_t i = 0; i < n; ++i) {
        const auto vpp = split.v[i] - split.vprime[i];
        std::vector<IntVector> next;
        for (const auto &prefix : ks) {
            for (auto k = std::max<std::int64_t>(0, count[i] - vpp); k <= std::min(count[i], split.vprime[i]); ++k) {
                auto p = prefix;
                p.push_back(k);
                next.push_back(std::move(p));
            }
        }
        ks = std::move(next);
    }
    ChainState out;
    out.stage = ChainStage::levi;
    for (const auto &k : ks) {
        Coweight target(n);
        std::vector<std::pair<VarCode, VarCode>> roots;
        for (std::size_t i = 0; i < n; ++i) {
            const auto vp = static_cast<std::size_t>(split.vprime[i]);
            target[i].assign(static_cast<std::size_t>(split.v[i]), 0);
            std::fill_n(target[i].begin(), k[i], signs[i]);
            std::fill_n(target[i].begin() + static_cast<std::ptrdiff_t>(vp), count[i] - k[i], signs[i]);
            for (std::size_t r = 0; r < target[i].size(); ++r) {
                for (std::size_t s = 0; s < target[i].size(); ++s) {
                    if ((r < vp) != (s < vp) && target[i][r] - target[i][s] > 0) {
                        roots.emplace_back(wvar(i, r + 1), wvar(i, s + 1));
                    }
                }
            }
        }
        RatFunc d = mmo.dressing.renamed(detail::matching_permutation(mmo.gamma, target)) * detail::root_product(roots);
        out.terms.push_back({std::move(target), std::move(d)});
    }
    return out;
}

/// Oracle for the Levi restriction: localizing each Levi MMO to the torus
/// must reproduce the torus localization of the original MMO.
inline bool verify_levi_restriction(const DefectSplit &split, const DressedMMO &mmo)
{
    const auto direct = combine_torus_terms(localize_mmo(full_blocks(split.v), mmo));
    std::vector<TorusTerm> via;
    for (const auto &t : levi_restrict(split, mmo).terms) {
        auto part = localize_mmo(split_blocks(split), t);
        via.insert(via.end(), part.begin(), part.end());
    }
    const auto combined = combine_torus_terms(std::move(via));
    if (combined.size() != direct.size()) {
        return false;
    }
    for (std::size_t k = 0; k < direct.size(); ++k) {
        if (combined[k].gamma != direct[k].gamma || !(combined[k].coef == direct[k].coef)) {
            return false;
        }
    }
    return true;
}

/// The cone-point projection pi: terms with nonzero G'' part die, the others
/// keep their G' part with the G'' parameters set to zero. Requires the
/// conicity condition for (w, v'').
inline ChainState project_cone_point(const GKLOContext &ctx, const DefectSplit &split, const ChainState &state)
{
    if (state.stage != ChainStage::levi) {
        throw std::logic_error("projection expects a Levi-stage state");
    }
    const IntVector vpp = split.vdoubleprime();
    const auto cone = check_conicity(DimData(ctx.dims().w, vpp), ctx.cartan());
    if (!cone.holds) {
        throw conicity_error("conicity fails for w = " + GKLOContext::vec_string(ctx.dims().w) + ", v'' = "
                             + GKLOContext::vec_string(vpp) + " (value " + std::to_string(*cone.min_value) + " at u = "
                             + GKLOContext::vec_string(*cone.minimizer) + ")");
    }
    ChainState out;
    out.stage = ChainStage::projected;
    const auto &vp = split.vprime;
    for (const auto &t : state.terms) {
        Coweight head(t.gamma.size());
        bool tail_zero = true;
        for (std::size_t i = 0; i < t.gamma.size(); ++i) {
            const auto cut = static_cast<std::ptrdiff_t>(vp[i]);
            head[i].assign(t.gamma[i].begin(), t.gamma[i].begin() + cut);
            tail_zero = tail_zero && std::all_of(t.gamma[i].begin() + cut, t.gamma[i].end(), [](int x) { return x == 0; });
        }
        if (!tail_zero) {
            continue;
        }
        out.terms.push_back({std::move(head), t.dressing.kill([&vp](VarCode c) { return is_tail_variable(c, vp); })});
    }
    return out;
}

inline ChainState split_and_project(const GKLOContext &ctx, const DefectSplit &split, const DressedMMO &mmo)
{
    return project_cone_point(ctx, split, levi_restrict(split, mmo));
}

/// A torus weight coef * eps_{vertex, r} with multiplicity mult.
struct TorusWeight {
    std::size_t vertex = 0;
    std::size_t r = 0;
    int coef = 1;
    std::int64_t mult = 0;
};

/// Weights of N_1^mix = sum_a Hom(V'_{s(a)}, V''_{t(a)}) as a G'-representation.
inline std::vector<TorusWeight> mixed_weights(const GKLOContext &ctx, const DefectSplit &split)
{
    std::vector<TorusWeight> out;
    const IntVector vpp = split.vdoubleprime();
    for (const auto &e : ctx.edges()) {
        for (std::int64_t r = 1; r <= split.vprime[e.source]; ++r) {
            if (vpp[e.target] > 0) {
                out.push_back({e.source, static_cast<std::size_t>(r), -1, vpp[e.target]});
            }
        }
    }
    return out;
}

/// Weights of N_-^(4) = sum_i Hom(X_i^-, V'_i) (the same as those of N_+^(4)).
inline std::vector<TorusWeight> framing_weights(const DefectSplit &split)
{
    std::vector<TorusWeight> out;
    const IntVector vpp = split.vdoubleprime();
    for (std::size_t i = 0; i < split.v.size(); ++i) {
        for (std::int64_t r = 1; r <= split.vprime[i]; ++r) {
            if (vpp[i] > 0) {
                out.push_back({i, static_cast<std::size_t>(r), 1, vpp[i]});
            }
        }
    }
    return out;
}

inline std::int64_t pairing(const TorusWeight &xi, const Coweight &gamma)
{
    return xi.coef * gamma[xi.vertex][xi.r - 1];
}

/// Exponent of the Fourier sign: sum over weights with positive pairing of pairing * multiplicity.
inline std::int64_t fourier_exponent(const std::vector<TorusWeight> &dualized, const Coweight &gamma)
{
    std::int64_t e = 0;
    for (const auto &xi : dualized) {
        const auto p = pairing(xi, gamma);
        if (p > 0) {
            e += p * xi.mult;
        }
    }
    return e;
}

/// which = 1 dualizes N_1^mix, which = 2 dualizes N_-^(4).
inline std::vector<TorusWeight> fourier_weights(const GKLOContext &ctx, const DefectSplit &split, int which)
{
    if (which == 1) {
        return mixed_weights(ctx, split);
    }
    if (which == 2) {
        return framing_weights(split);
    }
    throw input_error("the chain has Fourier transforms 1 and 2 only");
}

inline ChainState fourier_step(const GKLOContext &ctx, const DefectSplit &split, const ChainState &state, int which)
{
    const ChainStage expected = which == 1 ? ChainStage::projected : ChainStage::fourier_first;
    if (state.stage != expected) {
        throw std::logic_error("Fourier transform applied at the wrong stage");
    }
    const auto weights = fourier_weights(ctx, split, which);
    ChainState out;
    out.stage = which == 1 ? ChainStage::fourier_first : ChainStage::fourier_second;
    for (const auto &t : state.terms) {
        out.terms.push_back({t.gamma, t.dressing * static_cast<long>(parity_sign(fourier_exponent(weights, t.gamma)))});
    }
    return out;
}

/// prod over weights xi of N_+^(4) + (N_-^(4))^* with <xi, gamma> < 0 of xi^{-<xi, gamma> mult}.
inline RatFunc forget_matter_factor(const DefectSplit &split, const Coweight &gamma)
{
    std::vector<TorusWeight> weights = framing_weights(split);
    const auto n = weights.size();
    for (std::size_t k = 0; k < n; ++k) {
        auto dual = weights[k];
        dual.coef = -dual.coef;
        weights.push_back(dual);
    }
    MPoly factor(1);
    for (const auto &xi : weights) {
        const auto p = pairing(xi, gamma);
        if (p < 0) {
            factor *= (MPoly::var(wvar(xi.vertex, xi.r)) * static_cast<long>(xi.coef)).pow(static_cast<unsigned>(-p * xi.mult));
        }
    }
    return RatFunc(factor);
}

inline ChainState forget_matter_step(const DefectSplit &split, const ChainState &state)
{
    if (state.stage != ChainStage::fourier_second) {
        throw std::logic_error("forgetting matter expects the state after both Fourier transforms");
    }
    ChainState out;
    out.stage = ChainStage::forgotten;
    for (const auto &t : state.terms) {
        out.terms.push_back({t.gamma, t.dressing * forget_matter_factor(split, t.gamma)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// The full chain on FMOs

struct KMChainReport {
    std::vector<ChainState> stages;        // levi, projected, fourier 1, fourier 2, forgotten
    std::int64_t fourier_first_exponent = 0;  // computed from weights
    std::int64_t fourier_second_exponent = 0;
    std::int64_t fourier_first_expected = 0;  // closed forms
    std::int64_t fourier_second_expected = 0;
    std::int64_t net_exponent_expected = 0;   // overall sign the final dressing must carry relative to f~
    bool signs_match = false;
    bool denominators_ok = false;
    bool levi_oracle_ok = false;
    RatFunc result;   // GKLO image over (w', v')
    RatFunc expected; // restrict_fmo_slice
    bool matches = false;
    bool holds() const { return signs_match && denominators_ok && levi_oracle_ok && matches; }
};

/// Runs the chain on M^sign_m(f) and compares with the FMO of f~ over (w - C v'', v').
/// With check_oracle the Levi stage is also compared against torus localization.
inline KMChainReport compose_embedding(const GKLOContext &ctx, const DefectSplit &split, const IntVector &m,
                                       const PartialSymPoly &f, Sign sign, bool check_oracle = true,
                                       FmoCache *cache = nullptr)
{
    detail::check_dressing(ctx, m, f);
    const GKLOContext small = restricted_context(ctx, split);
    const IntVector vpp = split.vdoubleprime();
    const int s = sign == Sign::plus ? 1 : -1;

    DressedMMO start{fundamental_coweight(m, ctx.dims().v, s), RatFunc(f.value())};
    if (sign == Sign::minus) {
        start.dressing = start.dressing * static_cast<long>(parity_sign(fmo_sign_exponent(ctx, m)));
    }

    KMChainReport rep;
    rep.levi_oracle_ok = !check_oracle || verify_levi_restriction(split, start);
    rep.stages.push_back(levi_restrict(split, start));
    rep.stages.push_back(project_cone_point(ctx, split, rep.stages.back()));
    rep.stages.push_back(fourier_step(ctx, split, rep.stages.back(), 1));
    rep.stages.push_back(fourier_step(ctx, split, rep.stages.back(), 2));
    rep.stages.push_back(forget_matter_step(split, rep.stages.back()));

    rep.denominators_ok = true;
    for (const auto &st : rep.stages) {
        rep.denominators_ok = rep.denominators_ok && respects_localization(st, split);
    }

    std::int64_t edge_term = 0;
    for (const auto &e : ctx.edges()) {
        edge_term += m[e.source] * vpp[e.target];
    }
    rep.fourier_first_expected = sign == Sign::plus ? 0 : edge_term;
    rep.fourier_second_expected = sign == Sign::plus ? dot(m, vpp) : 0;
    rep.net_exponent_expected = sign == Sign::plus ? 0 : dot(m, vpp) + edge_term;

    rep.expected = restrict_fmo_slice(ctx, split, m, f, sign, cache);
    const auto &final_state = rep.stages.back();
    if (final_state.terms.empty()) {
        // m is not <= v': every orbit element meets the G'' block
        rep.signs_match = true;
        rep.result = RatFunc();
    } else {
        const Coweight gamma = fundamental_coweight(m, split.vprime, s);
        rep.fourier_first_exponent = fourier_exponent(fourier_weights(ctx, split, 1), gamma);
        rep.fourier_second_exponent = fourier_exponent(fourier_weights(ctx, split, 2), gamma);
        const auto &term = final_state.terms.front();
        RatFunc target(tilde(f, split.vprime).value());
        if (sign == Sign::minus) {
            target = target * static_cast<long>(parity_sign(fmo_sign_exponent(ctx, m) + rep.net_exponent_expected));
        }
        rep.signs_match = final_state.terms.size() == 1 && term.gamma == gamma
                          && rep.fourier_first_exponent == rep.fourier_first_expected
                          && rep.fourier_second_exponent == rep.fourier_second_expected && term.dressing == target;
        if (final_state.terms.size() == 1 && term.gamma == gamma && term.dressing.is_polynomial()) {
            const PartialSymPoly g(term.dressing.num(), m, split.vprime);
            if (sign == Sign::plus) {
                rep.result = detail::cached_fmo(cache, small, m, g, Sign::plus);
            } else {
                // M_{-varpi_m}(g) = (-1)^sign M^-_m(g) over the smaller slice
                rep.result = detail::cached_fmo(cache, small, m, g, Sign::minus)
                             * static_cast<long>(parity_sign(fmo_sign_exponent(small, m)));
            }
        }
    }
    rep.matches = rep.result == rep.expected;
    return rep;
}

} // namespace kms
