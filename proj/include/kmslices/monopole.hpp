#pragma once

// The monopole formula: 2Delta for arbitrary coweights, stabilizer Poincare
// series, the truncated Hilbert series with a certified enumeration bound,
// FMO degrees and the good / ugly / bad classification of a theory.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gklo.hpp"
#include "quiver.hpp"

namespace kms
{

/// Power series in t truncated after t^order, integer coefficients.
class TruncSeries
{
public:
    TruncSeries() = default;
    explicit TruncSeries(std::size_t order) : m_coeffs(order + 1, 0) {}

    static TruncSeries one(std::size_t order)
    {
        TruncSeries s(order);
        s.m_coeffs[0] = 1;
        return s;
    }

    static TruncSeries from_coeffs(std::vector<std::int64_t> c)
    {
        if (c.empty()) {
            throw input_error("a truncated series needs at least one coefficient");
        }
        TruncSeries s;
        s.m_coeffs = std::move(c);
        return s;
    }

    std::size_t order() const { return m_coeffs.size() - 1; }
    const std::vector<std::int64_t> &coeffs() const { return m_coeffs; }
    std::int64_t operator[](std::size_t k) const { return k < m_coeffs.size() ? m_coeffs[k] : 0; }

    TruncSeries &operator+=(const TruncSeries &o)
    {
        check_order(o);
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            m_coeffs[k] = add(m_coeffs[k], o.m_coeffs[k]);
        }
        return *this;
    }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries &b) { return a += b; }

    friend TruncSeries operator*(const TruncSeries &a, const TruncSeries &b)
    {
        a.check_order(b);
        TruncSeries out(a.order());
        for (std::size_t i = 0; i < a.m_coeffs.size(); ++i) {
            if (a.m_coeffs[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; i + j < out.m_coeffs.size(); ++j) {
                out.m_coeffs[i + j] = add(out.m_coeffs[i + j], mul(a.m_coeffs[i], b.m_coeffs[j]));
            }
        }
        return out;
    }

    /// In place multiplication by 1/(1 - t^k), k >= 1.
    TruncSeries &divide_by_one_minus(std::size_t k)
    {
        if (k == 0) {
            throw domain_error("1/(1 - t^0) is not a power series");
        }
        for (std::size_t n = k; n < m_coeffs.size(); ++n) {
            m_coeffs[n] = add(m_coeffs[n], m_coeffs[n - k]);
        }
        return *this;
    }

    /// t^k times this series, truncated at the same order.
    TruncSeries shifted(std::size_t k) const
    {
        TruncSeries out(order());
        for (std::size_t n = 0; n + k < m_coeffs.size(); ++n) {
            out.m_coeffs[n + k] = m_coeffs[n];
        }
        return out;
    }

    /// Same coefficients truncated (or zero padded) to a new order.
    TruncSeries with_order(std::size_t order) const
    {
        TruncSeries out(order);
        for (std::size_t n = 0; n <= order && n < m_coeffs.size(); ++n) {
            out.m_coeffs[n] = m_coeffs[n];
        }
        return out;
    }

    friend bool operator==(const TruncSeries &, const TruncSeries &) = default;

    std::string to_string() const
    {
        std::string s;
        for (std::size_t k = 0; k < m_coeffs.size(); ++k) {
            if (m_coeffs[k] == 0) {
                continue;
            }
            const auto c = m_coeffs[k];
            if (!s.empty()) {
                s += c < 0 ? " - " : " + ";
            } else if (c < 0) {
                s += "-";
            }
            const auto a = c < 0 ? -c : c;
            if (k == 0 || a != 1) {
                s += std::to_string(a);
            }
            if (k > 0) {
                s += k == 1 ? "t" : "t^" + std::to_string(k);
            }
        }
        return (s.empty() ? "0" : s) + " + O(t^" + std::to_string(order() + 1) + ")";
    }

private:
    std::vector<std::int64_t> m_coeffs{0};

    void check_order(const TruncSeries &o) const
    {
        if (o.m_coeffs.size() != m_coeffs.size()) {
            throw input_error("truncated series of different orders");
        }
    }

    static std::int64_t add(std::int64_t a, std::int64_t b)
    {
        std::int64_t r = 0;
        if (__builtin_add_overflow(a, b, &r)) {
            throw resource_error("series coefficient exceeds 64 bits");
        }
        return r;
    }

    static std::int64_t mul(std::int64_t a, std::int64_t b)
    {
        std::int64_t r = 0;
        if (__builtin_mul_overflow(a, b, &r)) {
            throw resource_error("series coefficient exceeds 64 bits");
        }
        return r;
    }
};

// ---------------------------------------------------------------------------

namespace detail
{

inline void check_coweight_shape(const GKLOContext &ctx, const Coweight &g)
{
    if (g.size() != ctx.size()) {
        throw input_error("coweight has " + std::to_string(g.size()) + " tuples for a quiver with "
                          + std::to_string(ctx.size()) + " vertices");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].size() != ctx.v(i)) {
            throw input_error("coweight tuple " + std::to_string(i) + " must have v_i entries");
        }
    }
}

inline std::int64_t absdiff(std::int64_t a, std::int64_t b) { return a > b ? a - b : b - a; }

} // namespace detail

/// 2Delta(gamma) = -2 sum_{r<s} |g_ir - g_is| + sum_i w_i sum_r |g_ir| + sum_a sum_{r,s} |g_{t(a),s} - g_{s(a),r}|.
inline std::int64_t two_delta_general(const GKLOContext &ctx, const Coweight &g)
{
    detail::check_coweight_shape(ctx, g);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t r = 0; r < g[i].size(); ++r) {
            total += ctx.w(i) * std::abs(static_cast<std::int64_t>(g[i][r]));
            for (std::size_t s = r + 1; s < g[i].size(); ++s) {
                total -= 2 * detail::absdiff(g[i][r], g[i][s]);
            }
        }
    }
    for (const auto &e : ctx.edges()) {
        for (auto x : g[e.source]) {
            for (auto y : g[e.target]) {
                total += detail::absdiff(y, x);
            }
        }
    }
    return total;
}

inline bool is_dominant(const Coweight &g)
{
    for (const auto &tuple : g) {
        for (std::size_t r = 1; r < tuple.size(); ++r) {
            if (tuple[r - 1] < tuple[r]) {
                return false;
            }
        }
    }
    return true;
}

/// prod over runs of k equal entries of prod_{d=1..k} 1/(1 - t^{2d}).
inline TruncSeries stabilizer_poincare(const Coweight &g, std::size_t order)
{
    if (!is_dominant(g)) {
        throw input_error("stabilizer_poincare expects a dominant coweight " + coweight_string(g));
    }
    TruncSeries p = TruncSeries::one(order);
    for (const auto &tuple : g) {
        for (std::size_t r = 0; r < tuple.size();) {
            std::size_t k = r;
            while (k < tuple.size() && tuple[k] == tuple[r]) {
                ++k;
            }
            for (std::size_t d = 1; d <= k - r; ++d) {
                p.divide_by_one_minus(2 * d);
            }
            r = k;
        }
    }
    return p;
}

enum class TheoryKind { good, ugly, bad };

inline const char *to_string(TheoryKind k)
{
    switch (k) {
    case TheoryKind::good:
        return "good";
    case TheoryKind::ugly:
        return "ugly";
    default:
        return "bad";
    }
}

struct TheoryClass {
    TheoryKind kind = TheoryKind::good;
    std::optional<std::int64_t> min_degree; // empty when v = 0
    std::optional<IntVector> witness;       // lexicographically least minimizer
};

/// Minimum of 2Delta(varpi_m) over nonzero 0 <= m <= v.
inline TheoryClass classify_theory(const GKLOContext &ctx)
{
    const ConeCheck c = check_good(ctx.dims(), ctx.cartan());
    TheoryClass out;
    out.min_degree = c.min_value;
    out.witness = c.minimizer;
    if (c.min_value) {
        out.kind = *c.min_value >= 2 ? TheoryKind::good : (*c.min_value == 1 ? TheoryKind::ugly : TheoryKind::bad);
    }
    return out;
}

/// Doubled cohomological degree 2Delta(+-varpi_m) + 2 * polydeg of M^+-_m(f).
inline std::int64_t fmo_degree(const GKLOContext &ctx, const IntVector &m, std::int64_t dressing_degree)
{
    detail::check_range(m, ctx.dims().v);
    if (dressing_degree < 0) {
        throw input_error("dressing degree must be non-negative");
    }
    return two_delta_minuscule(ctx.dims(), ctx.cartan(), m) + 2 * dressing_degree;
}

/// Dominant coweights of prod GL(v_i) with sum |g_ir| = n, lexicographic order.
inline std::vector<Coweight> dominant_shell(const IntVector &v, std::int64_t n)
{
    // weakly decreasing tuples of given length and l1 norm, bounded above by `cap`
    struct Gen {
        static void tuples(std::size_t len, std::int64_t norm, std::int64_t cap, std::vector<int> &cur,
                           std::vector<std::vector<int>> &out)
        {
            if (len == 0) {
                if (norm == 0) {
                    out.push_back(cur);
                }
                return;
            }
            for (std::int64_t x = cap; x >= -norm; --x) {
                const std::int64_t a = x < 0 ? -x : x;
                if (a > norm) {
                    continue;
                }
                // remaining entries are <= x; if x < 0 they each cost at least |x|
                if (x < 0 && a * static_cast<std::int64_t>(len) > norm) {
                    continue;
                }
                cur.push_back(static_cast<int>(x));
                tuples(len - 1, norm - a, x, cur, out);
                cur.pop_back();
            }
        }
    };
    std::vector<Coweight> out{Coweight{}};
    std::vector<std::int64_t> used{0};
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::vector<Coweight> next;
        std::vector<std::int64_t> next_used;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const bool last = i + 1 == v.size();
            for (std::int64_t part = last ? n - used[k] : 0; part <= n - used[k]; ++part) {
                std::vector<std::vector<int>> tuples;
                std::vector<int> cur;
                Gen::tuples(static_cast<std::size_t>(v[i]), part, part, cur, tuples);
                for (auto &t : tuples) {
                    auto g = out[k];
                    g.push_back(std::move(t));
                    next.push_back(std::move(g));
                    next_used.push_back(used[k] + part);
                }
            }
        }
        out = std::move(next);
        used = std::move(next_used);
    }
    if (v.empty() && n != 0) {
        out.clear();
    }
    return out;
}

struct HilbertOptions {
    std::size_t max_coweights = 5'000'000;
};

/// sum over dominant gamma with 2Delta(gamma) <= order of t^{2Delta} P(t; gamma).
/// Shells |gamma|_1 = n are enumerated while c n <= order, where
/// c = min_m 2Delta(varpi_m) / |m|_1 bounds 2Delta(gamma) / |gamma|_1 from below.
inline TruncSeries hilbert_series(const GKLOContext &ctx, std::size_t order, HilbertOptions opts = {})
{
    const TheoryClass cls = classify_theory(ctx);
    if (cls.kind == TheoryKind::bad) {
        throw domain_error("the theory is bad (2Delta = " + std::to_string(*cls.min_degree) + " at m = "
                           + GKLOContext::vec_string(*cls.witness) + "); the monopole formula does not converge");
    }
    const auto &v = ctx.dims().v;
    // c = c_num / c_den, minimized over nonzero 0 <= m <= v
    std::int64_t c_num = 1;
    std::int64_t c_den = 0;
    {
        IntVector m(v.size(), 0);
        while (true) {
            std::size_t k = 0;
            while (k < m.size() && m[k] == v[k]) {
                m[k] = 0;
                ++k;
            }
            if (k == m.size()) {
                break;
            }
            ++m[k];
            const auto deg = two_delta_minuscule(ctx.dims(), ctx.cartan(), m);
            std::int64_t norm = 0;
            for (auto x : m) {
                norm += x;
            }
            if (c_den == 0 || deg * c_den < c_num * norm) {
                c_num = deg;
                c_den = norm;
            }
        }
    }
    TruncSeries total(order);
    std::size_t visited = 0;
    const auto D = static_cast<std::int64_t>(order);
    for (std::int64_t n = 0; c_den == 0 ? n == 0 : n * c_num <= D * c_den; ++n) {
        for (const auto &g : dominant_shell(v, n)) {
            if (++visited > opts.max_coweights) {
                throw resource_error("monopole formula needs more than " + std::to_string(opts.max_coweights)
                                     + " coweights at order " + std::to_string(order));
            }
            const auto deg = two_delta_general(ctx, g);
            if (deg * c_den < c_num * n) {
                throw std::logic_error("2Delta lower bound violated at " + coweight_string(g));
            }
            if (deg > D) {
                continue;
            }
            const auto d = static_cast<std::size_t>(deg);
            total += stabilizer_poincare(g, order - d).with_order(order).shifted(d);
        }
    }
    return total;
}

} // namespace kms
