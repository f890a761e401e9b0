#pragma once

// Enumeration of the standard verification suite: quivers A1, A2 and affine
// sl2, gauge dimensions in a box, every split v = v' + v'', and the framing
// w = max(0, C v'') that keeps the smaller slice's framing dominant.

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "defect.hpp"

namespace kms
{

struct NamedQuiver {
    std::string name;
    Quiver quiver;
};

inline std::vector<NamedQuiver> suite_quivers()
{
    return {{"A1", quiver_a1()}, {"A2", quiver_a2()}, {"affine-sl2", quiver_affine_sl2()}};
}

/// Every 0 <= x <= upper, lexicographic with the first coordinate slowest.
inline std::vector<IntVector> box_vectors(const IntVector &upper)
{
    std::vector<IntVector> out{IntVector{}};
    for (auto u : upper) {
        std::vector<IntVector> next;
        for (const auto &prefix : out) {
            for (std::int64_t x = 0; x <= u; ++x) {
                auto p = prefix;
                p.push_back(x);
                next.push_back(std::move(p));
            }
        }
        out = std::move(next);
    }
    return out;
}

inline IntVector suite_framing(const CartanMatrix &c, const IntVector &vdoubleprime)
{
    IntVector w = c.apply(vdoubleprime);
    for (auto &x : w) {
        x = std::max<std::int64_t>(0, x);
    }
    return w;
}

struct SuiteSlice {
    std::string quiver_name;
    GKLOContext ctx;
    DefectSplit split;

    std::string label() const
    {
        return quiver_name + " w=" + GKLOContext::vec_string(ctx.dims().w) + " v=" + GKLOContext::vec_string(split.v)
               + " v'=" + GKLOContext::vec_string(split.vprime);
    }
};

/// All (quiver, v <= max_v, v' <= v) with w = max(0, C v'').
inline std::vector<SuiteSlice> restriction_suite(std::int64_t max_v = 3)
{
    std::vector<SuiteSlice> out;
    for (const auto &nq : suite_quivers()) {
        const CartanMatrix c = cartan_matrix(nq.quiver);
        for (const auto &v : box_vectors(IntVector(nq.quiver.size(), max_v))) {
            for (const auto &vp : box_vectors(v)) {
                const IntVector w = suite_framing(c, sub(v, vp));
                out.push_back({nq.name, GKLOContext(nq.quiver, DimData(w, v)), DefectSplit(v, vp)});
            }
        }
    }
    return out;
}

struct SuiteContext {
    std::string quiver_name;
    GKLOContext ctx;

    std::string label() const
    {
        return quiver_name + " w=" + GKLOContext::vec_string(ctx.dims().w) + " v=" + GKLOContext::vec_string(ctx.dims().v);
    }
};

/// The distinct (quiver, w, v) occurring in the restriction suite.
inline std::vector<SuiteContext> suite_contexts(std::int64_t max_v = 3)
{
    std::vector<SuiteContext> out;
    std::set<std::tuple<std::string, IntVector, IntVector>> seen;
    for (auto &s : restriction_suite(max_v)) {
        if (seen.emplace(s.quiver_name, s.ctx.dims().w, s.ctx.dims().v).second) {
            out.push_back({s.quiver_name, s.ctx});
        }
    }
    return out;
}

} // namespace kms
