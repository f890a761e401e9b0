#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the library's symbolic machinery: values are produced by evaluating the
// defining formulas numerically at rational points, or by brute force.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "kmslices/kmslices.hpp"

namespace oracle
{

using kms::IntVector;
using kms::Rational;
using kms::VarCode;
using kms::VarId;
using kms::VarKind;

/// A point assigning a small nonzero rational to every variable code it is asked about.
class Point
{
public:
    explicit Point(std::uint64_t seed) : m_rng(seed) {}

    Rational operator()(VarCode c)
    {
        auto it = m_values.find(c);
        if (it == m_values.end()) {
            std::uniform_int_distribution<long> num(-97, 97);
            std::uniform_int_distribution<long> den(1, 13);
            long n = 0;
            while (n == 0) {
                n = num(m_rng);
            }
            it = m_values.emplace(c, Rational(mpz_class(n), mpz_class(den(m_rng)))).first;
        }
        return it->second;
    }

    std::function<Rational(VarCode)> fn()
    {
        return [this](VarCode c) { return (*this)(c); };
    }

private:
    std::mt19937_64 m_rng;
    std::map<VarCode, Rational> m_values;
};

inline Rational pw(const Rational &x, std::int64_t e)
{
    Rational r = 1;
    const Rational base = e < 0 ? Rational(1) / x : x;
    for (std::int64_t k = 0; k < (e < 0 ? -e : e); ++k) {
        r *= base;
    }
    return r;
}

/// All subsets of {1..n} of size k, in any order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) {
            continue;
        }
        std::vector<std::size_t> s;
        for (std::size_t r = 0; r < n; ++r) {
            if (mask & (1u << r)) {
                s.push_back(r + 1);
            }
        }
        out.push_back(s);
    }
    return out;
}

/// Numeric value of M^+_m(f) or M^-_m(f) at a point, straight from the defining sums.
/// f_at(sigma, pt) must return f evaluated after renaming w[i,r] -> w[i,sigma_i(r)].
inline Rational fmo_at(const kms::GKLOContext &ctx, const IntVector &m, const kms::MPoly &f, bool plus, Point &pt)
{
    const std::size_t n = ctx.size();
    const auto &v = ctx.dims().v;
    // cartesian product of per-vertex subsets
    std::vector<std::vector<std::vector<std::size_t>>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        choices[i] = subsets(static_cast<std::size_t>(v[i]), static_cast<std::size_t>(m[i]));
    }
    std::vector<std::size_t> idx(n, 0);
    Rational total = 0;
    auto w = [&pt](std::size_t i, std::size_t r) { return pt(kms::wvar(i, r)); };
    auto u = [&pt](std::size_t i, std::size_t r) { return pt(kms::uvar(i, r)); };
    while (true) {
        std::vector<std::vector<bool>> in(n);
        std::vector<std::vector<std::size_t>> sigma(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto &g = choices[i][idx[i]];
            in[i].assign(static_cast<std::size_t>(v[i]) + 1, false);
            for (auto r : g) {
                in[i][r] = true;
            }
            sigma[i].assign(static_cast<std::size_t>(v[i]) + 1, 0);
            std::size_t pos = 1;
            for (auto r : g) {
                sigma[i][pos++] = r;
            }
            for (std::size_t r = 1; r <= static_cast<std::size_t>(v[i]); ++r) {
                if (!in[i][r]) {
                    sigma[i][pos++] = r;
                }
            }
        }
        Rational term = f.evaluate([&](VarCode c) {
            const auto id = VarId::from_code(c);
            if (id.kind == VarKind::W) {
                return pt(kms::wvar(id.vertex, sigma[id.vertex][id.r]));
            }
            return pt(c);
        });
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t r = 1; r <= static_cast<std::size_t>(v[i]); ++r) {
                if (!in[i][r]) {
                    continue;
                }
                term *= plus ? u(i, r) : pw(w(i, r), ctx.w(i)) / u(i, r);
                for (std::size_t s = 1; s <= static_cast<std::size_t>(v[i]); ++s) {
                    if (!in[i][s]) {
                        term /= plus ? w(i, r) - w(i, s) : w(i, s) - w(i, r);
                    }
                }
            }
        }
        for (const auto &e : ctx.edges()) {
            if (plus) {
                for (std::size_t r = 1; r <= static_cast<std::size_t>(v[e.source]); ++r) {
                    if (!in[e.source][r]) {
                        continue;
                    }
                    for (std::size_t s = 1; s <= static_cast<std::size_t>(v[e.target]); ++s) {
                        if (!in[e.target][s]) {
                            term *= w(e.target, s) - w(e.source, r);
                        }
                    }
                }
            } else {
                for (std::size_t r = 1; r <= static_cast<std::size_t>(v[e.target]); ++r) {
                    if (!in[e.target][r]) {
                        continue;
                    }
                    for (std::size_t s = 1; s <= static_cast<std::size_t>(v[e.source]); ++s) {
                        if (!in[e.source][s]) {
                            term *= w(e.target, r) - w(e.source, s);
                        }
                    }
                }
            }
        }
        total += term;
        std::size_t k = 0;
        while (k < n && ++idx[k] == choices[k].size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == n) {
            break;
        }
    }
    if (!plus) {
        std::int64_t e = 0;
        for (std::size_t i = 0; i < n; ++i) {
            e += m[i] * v[i];
        }
        for (const auto &a : ctx.edges()) {
            e += m[a.source] * v[a.target];
        }
        if (e % 2 != 0) {
            total = -total;
        }
    }
    return total;
}

/// 2Delta(gamma) from explicit weight lists: minus the sum over all roots
/// e_ir - e_is (r != s) of |<alpha, gamma>|, plus the sum over the weights of N.
inline std::int64_t two_delta_naive(const kms::GKLOContext &ctx, const kms::Coweight &g)
{
    std::int64_t roots = 0;
    for (const auto &t : g) {
        for (std::size_t r = 0; r < t.size(); ++r) {
            for (std::size_t s = 0; s < t.size(); ++s) {
                if (r != s) {
                    roots += std::abs(t[r] - t[s]);
                }
            }
        }
    }
    std::int64_t matter = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::int64_t copy = 0; copy < ctx.w(i); ++copy) {
            for (auto x : g[i]) {
                matter += std::abs(x);
            }
        }
    }
    for (const auto &e : ctx.edges()) {
        for (auto x : g[e.source]) {
            for (auto y : g[e.target]) {
                matter += std::abs(y - x);
            }
        }
    }
    return matter - roots;
}

/// Number of ways to write n as an ordered sum n = sum_d 2d * a_d over d in `exps` (a_d >= 0).
inline std::vector<std::int64_t> poincare_naive(const std::vector<std::size_t> &exps, std::size_t order)
{
    std::vector<std::int64_t> c(order + 1, 0);
    c[0] = 1;
    for (auto d : exps) {
        std::vector<std::int64_t> next(order + 1, 0);
        for (std::size_t n = 0; n <= order; ++n) {
            for (std::size_t k = 0; n + 2 * d * k <= order; ++k) {
                next[n + 2 * d * k] += c[n];
            }
        }
        c = std::move(next);
    }
    return c;
}

/// Monopole formula summed over every dominant coweight with |gamma_ir| <= bound.
inline std::vector<std::int64_t> hilbert_brute(const kms::GKLOContext &ctx, std::size_t order, int bound)
{
    std::vector<std::int64_t> total(order + 1, 0);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        for (std::size_t r = 0; r < ctx.v(i); ++r) {
            slots.emplace_back(i, r);
        }
    }
    kms::Coweight g(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        g[i].assign(ctx.v(i), -bound);
    }
    while (true) {
        bool dominant = true;
        for (const auto &t : g) {
            for (std::size_t r = 1; r < t.size(); ++r) {
                dominant = dominant && t[r - 1] >= t[r];
            }
        }
        if (dominant) {
            const auto deg = two_delta_naive(ctx, g);
            if (deg >= 0 && static_cast<std::size_t>(deg) <= order) {
                std::vector<std::size_t> exps;
                for (const auto &t : g) {
                    std::map<int, std::size_t> mult;
                    for (auto x : t) {
                        ++mult[x];
                    }
                    for (const auto &[x, k] : mult) {
                        for (std::size_t d = 1; d <= k; ++d) {
                            exps.push_back(d);
                        }
                    }
                }
                const auto p = poincare_naive(exps, order);
                for (std::size_t n = static_cast<std::size_t>(deg); n <= order; ++n) {
                    total[n] += p[n - static_cast<std::size_t>(deg)];
                }
            }
        }
        std::size_t k = 0;
        while (k < slots.size()) {
            auto &x = g[slots[k].first][slots[k].second];
            if (x < bound) {
                ++x;
                break;
            }
            x = -bound;
            ++k;
        }
        if (k == slots.size()) {
            break;
        }
    }
    return total;
}

/// Numeric torus localization of a dressed minuscule operator: for every
/// arrangement of gamma's entries (all of S_v, duplicates merged) the value
/// sigma(f) / prod_{r != s, g'_r > g'_s} (w_r - w_s), keyed by arrangement.
inline std::map<kms::Coweight, Rational> localize_at(const kms::DressedMMO &mmo, Point &pt)
{
    std::map<kms::Coweight, Rational> out;
    const std::size_t n = mmo.gamma.size();
    std::vector<std::vector<std::size_t>> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i].resize(mmo.gamma[i].size());
        for (std::size_t r = 0; r < perm[i].size(); ++r) {
            perm[i][r] = r;
        }
    }
    // iterate over all tuples of permutations, keep the first permutation reaching each arrangement
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            kms::Coweight target(n);
            for (std::size_t a = 0; a < n; ++a) {
                target[a].resize(perm[a].size());
                for (std::size_t r = 0; r < perm[a].size(); ++r) {
                    target[a][perm[a][r]] = mmo.gamma[a][r];
                }
            }
            if (out.count(target)) {
                return;
            }
            Rational val = mmo.dressing.evaluate([&](VarCode c) {
                const auto id = VarId::from_code(c);
                if (id.kind == VarKind::W) {
                    return pt(kms::wvar(id.vertex, perm[id.vertex][id.r - 1] + 1));
                }
                return pt(c);
            });
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t r = 0; r < target[a].size(); ++r) {
                    for (std::size_t s = 0; s < target[a].size(); ++s) {
                        if (target[a][r] > target[a][s]) {
                            val /= pt(kms::wvar(a, r + 1)) - pt(kms::wvar(a, s + 1));
                        }
                    }
                }
            }
            out.emplace(std::move(target), val);
            return;
        }
        std::sort(perm[i].begin(), perm[i].end());
        do {
            rec(i + 1);
        } while (std::next_permutation(perm[i].begin(), perm[i].end()));
    };
    rec(0);
    return out;
}

} // namespace oracle
