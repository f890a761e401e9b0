#pragma once

// The dressing ring: polynomials in w[i,r] (and the parameter z) invariant
// under S_{m_i} x S_{v_i - m_i} for every vertex i.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mpoly.hpp"
#include "quiver.hpp"

namespace kms
{

/// Per-vertex sorted subsets of {1..v_i}.
using VertexSubsets = std::vector<std::vector<std::size_t>>;

namespace detail
{

inline MPoly swap_w(const MPoly &p, std::size_t i, std::size_t r, std::size_t s)
{
    const VarCode a = wvar(i, r);
    const VarCode b = wvar(i, s);
    return p.renamed([a, b](VarCode c) { return c == a ? b : (c == b ? a : c); });
}

inline void check_range(const IntVector &m, const IntVector &v)
{
    if (m.size() != v.size()) {
        throw input_error("m and v have different lengths");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0 || m[i] > v[i]) {
            throw input_error("m must satisfy 0 <= m <= v");
        }
    }
}

} // namespace detail

/// Variables of `p` that are not w[i,r] with i < v.size(), 1 <= r <= v_i (z allowed when allow_z).
inline std::optional<std::string> foreign_variable(const MPoly &p, const IntVector &v, bool allow_z)
{
    for (auto c : p.variables()) {
        const auto id = VarId::from_code(c);
        if (id.kind == VarKind::Z && allow_z) {
            continue;
        }
        if (id.kind != VarKind::W || id.vertex >= v.size() || id.r < 1
            || static_cast<std::int64_t>(id.r) > v[id.vertex]) {
            return id.to_string();
        }
    }
    return std::nullopt;
}

class PartialSymPoly
{
public:
    PartialSymPoly() = default;

    /// Validates membership; throws domain_error naming the first violated transposition.
    PartialSymPoly(MPoly value, IntVector m, IntVector v)
        : m_value(std::move(value)), m_m(std::move(m)), m_v(std::move(v))
    {
        detail::check_range(m_m, m_v);
        if (auto bad = foreign_variable(m_value, m_v, true)) {
            throw input_error("dressing uses variable " + *bad + " outside the dressing ring");
        }
        if (m_value.has_negative_exponent()) {
            throw input_error("dressing must be a polynomial");
        }
        if (auto why = symmetry_violation(m_value, m_m, m_v)) {
            throw domain_error("dressing is not invariant under " + *why);
        }
    }

    static PartialSymPoly one(const IntVector &m, const IntVector &v) { return {MPoly(1), m, v}; }

    const MPoly &value() const { return m_value; }
    const IntVector &m() const { return m_m; }
    const IntVector &v() const { return m_v; }

    /// Adjacent transpositions generating S_{m_i} x S_{v_i - m_i}; returns the first one that moves p.
    static std::optional<std::string> symmetry_violation(const MPoly &p, const IntVector &m, const IntVector &v)
    {
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::int64_t r = 1; r < v[i]; ++r) {
                if (r == m[i]) {
                    continue; // boundary between the two blocks
                }
                const auto rs = static_cast<std::size_t>(r);
                if (!(detail::swap_w(p, i, rs, rs + 1) == p)) {
                    return "the transposition w[" + std::to_string(i) + "," + std::to_string(r) + "] <-> w["
                           + std::to_string(i) + "," + std::to_string(r + 1) + "]";
                }
            }
        }
        return std::nullopt;
    }

    friend bool operator==(const PartialSymPoly &, const PartialSymPoly &) = default;

private:
    MPoly m_value;
    IntVector m_m;
    IntVector m_v;
};

/// All per-vertex subsets Gamma_i of {1..v_i} with |Gamma_i| = m_i, in
/// lexicographic order (vertex 0 slowest).
inline std::vector<VertexSubsets> enumerate_gammas(const IntVector &m, const IntVector &v)
{
    detail::check_range(m, v);
    std::vector<VertexSubsets> out{VertexSubsets{}};
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<std::vector<std::size_t>> choices;
        const auto n = static_cast<std::size_t>(v[i]);
        const auto k = static_cast<std::size_t>(m[i]);
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
        do {
            std::vector<std::size_t> subset;
            for (std::size_t r = 0; r < n; ++r) {
                if (mask[r]) {
                    subset.push_back(r + 1);
                }
            }
            choices.push_back(std::move(subset));
        } while (std::prev_permutation(mask.begin(), mask.end()));
        std::vector<VertexSubsets> next;
        for (const auto &prefix : out) {
            for (const auto &c : choices) {
                auto g = prefix;
                g.push_back(c);
                next.push_back(std::move(g));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// The permutation sigma with sigma_i([m_i]) = Gamma_i, order preserving on
/// the head and on the complement; returned as a variable renaming.
inline std::vector<std::vector<std::size_t>> gamma_permutation(const VertexSubsets &gamma, const IntVector &v)
{
    std::vector<std::vector<std::size_t>> sigma(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto n = static_cast<std::size_t>(v[i]);
        std::vector<bool> in(n + 1, false);
        for (auto r : gamma[i]) {
            if (r < 1 || r > n || in[r]) {
                throw input_error("invalid subset for vertex " + std::to_string(i));
            }
            in[r] = true;
        }
        sigma[i].assign(n + 1, 0);
        std::size_t pos = 1;
        for (auto r : gamma[i]) {
            sigma[i][pos++] = r;
        }
        for (std::size_t r = 1; r <= n; ++r) {
            if (!in[r]) {
                sigma[i][pos++] = r;
            }
        }
    }
    return sigma;
}

/// f|_Gamma = sigma(f) for any sigma with sigma_i([m_i]) = Gamma_i.
inline MPoly restrict_to_gamma(const PartialSymPoly &f, const VertexSubsets &gamma)
{
    const auto &m = f.m();
    const auto &v = f.v();
    if (gamma.size() != v.size()) {
        throw input_error("Gamma has the wrong number of vertices");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (static_cast<std::int64_t>(gamma[i].size()) != m[i]) {
            throw input_error("Gamma_" + std::to_string(i) + " must have exactly m_i elements");
        }
    }
    const auto sigma = gamma_permutation(gamma, v);
    return f.value().renamed([&sigma](VarCode c) {
        const auto id = VarId::from_code(c);
        if (id.kind != VarKind::W) {
            return c;
        }
        return wvar(id.vertex, sigma[id.vertex][id.r]);
    });
}

inline bool is_tail_variable(VarCode c, const IntVector &vprime)
{
    const auto id = VarId::from_code(c);
    return id.kind == VarKind::W && static_cast<std::int64_t>(id.r) > vprime[id.vertex];
}

/// f with w[i,r] := 0 for r > v'_i, as an element of the smaller dressing ring.
inline PartialSymPoly tilde(const PartialSymPoly &f, const IntVector &vprime)
{
    detail::check_range(f.m(), vprime);
    if (!leq(vprime, f.v())) {
        throw input_error("v' must satisfy v' <= v");
    }
    MPoly killed = f.value().kill([&vprime](VarCode c) { return is_tail_variable(c, vprime); });
    return {std::move(killed), f.m(), vprime};
}

struct SweedlerPair {
    PartialSymPoly head; // in the dressing ring over v'
    MPoly tail;          // monomial in the tail variables w[i,r], r > v'_i
};

/// f = sum head * tail, grouped by tail monomial, ascending.
inline std::vector<SweedlerPair> sweedler(const PartialSymPoly &f, const IntVector &vprime)
{
    detail::check_range(f.m(), vprime);
    if (!leq(vprime, f.v())) {
        throw input_error("v' must satisfy v' <= v");
    }
    auto cmp = [](const Monomial &a, const Monomial &b) { return compare(a, b) < 0; };
    std::map<Monomial, std::vector<Term>, decltype(cmp)> groups(cmp);
    for (const auto &t : f.value().terms()) {
        std::vector<Monomial::Factor> head;
        std::vector<Monomial::Factor> tail;
        for (const auto &fac : t.mono.factors()) {
            (is_tail_variable(fac.first, vprime) ? tail : head).push_back(fac);
        }
        groups[Monomial::from_pairs(std::move(tail))].push_back({Monomial::from_pairs(std::move(head)), t.coef});
    }
    std::vector<SweedlerPair> out;
    for (auto &[tail, terms] : groups) {
        out.push_back({PartialSymPoly(MPoly::from_terms(std::move(terms)), f.m(), vprime), MPoly(tail)});
    }
    return out;
}

/// Monomial symmetric basis of the dressing ring in polynomial degree <= 2:
/// 1, then m_(1) per block, then m_(2), m_(1,1) per block, then products
/// m_(1)(B) m_(1)(B') of distinct blocks. Blocks are the head {1..m_i} and
/// tail {m_i+1..v_i} of each vertex.
inline std::vector<PartialSymPoly> dressing_basis(const IntVector &m, const IntVector &v, int max_degree = 2)
{
    detail::check_range(m, v);
    std::vector<std::vector<VarCode>> blocks;
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<VarCode> head;
        std::vector<VarCode> tail;
        for (std::int64_t r = 1; r <= v[i]; ++r) {
            (r <= m[i] ? head : tail).push_back(wvar(i, static_cast<std::size_t>(r)));
        }
        if (!head.empty()) {
            blocks.push_back(std::move(head));
        }
        if (!tail.empty()) {
            blocks.push_back(std::move(tail));
        }
    }
    auto power_sum = [](const std::vector<VarCode> &b, int e) {
        MPoly p;
        for (auto c : b) {
            p += MPoly::var(c, e);
        }
        return p;
    };
    std::vector<PartialSymPoly> out;
    out.push_back(PartialSymPoly::one(m, v));
    if (max_degree >= 1) {
        for (const auto &b : blocks) {
            out.emplace_back(power_sum(b, 1), m, v);
        }
    }
    if (max_degree >= 2) {
        for (const auto &b : blocks) {
            out.emplace_back(power_sum(b, 2), m, v);
            if (b.size() >= 2) {
                MPoly e2;
                for (std::size_t x = 0; x < b.size(); ++x) {
                    for (std::size_t y = x + 1; y < b.size(); ++y) {
                        e2 += MPoly::var(b[x]) * MPoly::var(b[y]);
                    }
                }
                out.emplace_back(std::move(e2), m, v);
            }
        }
        for (std::size_t x = 0; x < blocks.size(); ++x) {
            for (std::size_t y = x + 1; y < blocks.size(); ++y) {
                out.emplace_back(power_sum(blocks[x], 1) * power_sum(blocks[y], 1), m, v);
            }
        }
    }
    if (max_degree > 2) {
        throw input_error("dressing_basis supports degree at most 2");
    }
    return out;
}

} // namespace kms
