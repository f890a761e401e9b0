#pragma once

// Quivers, symmetric Cartan matrices, dimension vectors and the
// conicity / goodness classifiers built on the quadratic form
//     q_{w,v}(u) = u.(w - C v) + u.(C u).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace kms
{

using IntVector = std::vector<std::int64_t>;

struct Edge {
    std::size_t source;
    std::size_t target;

    friend bool operator==(const Edge &, const Edge &) = default;
};

/// A quiver (I, E). Vertex order is fixed at construction and every
/// downstream vector is indexed by it. Parallel edges are allowed,
/// self-loops are not.
class Quiver
{
public:
    Quiver() = default;

    Quiver(std::vector<std::string> vertices, std::vector<Edge> edges)
        : m_vertices(std::move(vertices)), m_edges(std::move(edges))
    {
        for (std::size_t i = 0; i < m_vertices.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (m_vertices[i] == m_vertices[j]) {
                    throw input_error("duplicate vertex name '" + m_vertices[i] + "'");
                }
            }
        }
        for (const auto &e : m_edges) {
            if (e.source >= m_vertices.size() || e.target >= m_vertices.size()) {
                throw input_error("edge refers to an unknown vertex");
            }
            if (e.source == e.target) {
                throw input_error("self-loop at vertex '" + m_vertices[e.source] + "' is not allowed");
            }
        }
    }

    /// Convenience constructor with vertices named "0", "1", ...
    static Quiver with_vertex_count(std::size_t n, std::vector<Edge> edges)
    {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) {
            names.push_back(std::to_string(i));
        }
        return Quiver(std::move(names), std::move(edges));
    }

    std::size_t size() const { return m_vertices.size(); }
    const std::vector<std::string> &vertices() const { return m_vertices; }
    const std::vector<Edge> &edges() const { return m_edges; }

    std::size_t index_of(const std::string &name) const
    {
        auto it = std::find(m_vertices.begin(), m_vertices.end(), name);
        if (it == m_vertices.end()) {
            throw input_error("unknown vertex '" + name + "'");
        }
        return static_cast<std::size_t>(it - m_vertices.begin());
    }

    /// The same quiver with edge `a` reversed.
    Quiver flipped(std::size_t a) const
    {
        if (a >= m_edges.size()) {
            throw input_error("edge index out of range");
        }
        auto edges = m_edges;
        std::swap(edges[a].source, edges[a].target);
        return Quiver(m_vertices, std::move(edges));
    }

    friend bool operator==(const Quiver &, const Quiver &) = default;

private:
    std::vector<std::string> m_vertices;
    std::vector<Edge> m_edges;
};

// Standard small quivers used throughout tests and the CLI samples.
inline Quiver quiver_a1() { return Quiver::with_vertex_count(1, {}); }
inline Quiver quiver_a2() { return Quiver::with_vertex_count(2, {{0, 1}}); }
inline Quiver quiver_affine_sl2() { return Quiver::with_vertex_count(2, {{0, 1}, {0, 1}}); }

class CartanMatrix
{
public:
    CartanMatrix() = default;
    explicit CartanMatrix(std::size_t n) : m_n(n), m_entries(n * n, 0) {}

    std::size_t size() const { return m_n; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return m_entries[i * m_n + j]; }
    std::int64_t &operator()(std::size_t i, std::size_t j) { return m_entries[i * m_n + j]; }

    IntVector apply(const IntVector &x) const
    {
        check_shape(x);
        IntVector out(m_n, 0);
        for (std::size_t i = 0; i < m_n; ++i) {
            for (std::size_t j = 0; j < m_n; ++j) {
                out[i] += (*this)(i, j) * x[j];
            }
        }
        return out;
    }

    void check_shape(const IntVector &x) const
    {
        if (x.size() != m_n) {
            throw input_error("vector has " + std::to_string(x.size()) + " entries, expected "
                              + std::to_string(m_n));
        }
    }

    friend bool operator==(const CartanMatrix &, const CartanMatrix &) = default;

private:
    std::size_t m_n = 0;
    std::vector<std::int64_t> m_entries;
};

/// C = 2 Id - (symmetrized adjacency).
inline CartanMatrix cartan_matrix(const Quiver &q)
{
    CartanMatrix c(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        c(i, i) = 2;
    }
    for (const auto &e : q.edges()) {
        c(e.source, e.target) -= 1;
        c(e.target, e.source) -= 1;
    }
    return c;
}

inline std::int64_t dot(const IntVector &a, const IntVector &b)
{
    if (a.size() != b.size()) {
        throw input_error("dot product of vectors with different lengths");
    }
    return std::inner_product(a.begin(), a.end(), b.begin(), std::int64_t{0});
}

inline bool leq(const IntVector &a, const IntVector &b)
{
    if (a.size() != b.size()) {
        throw input_error("componentwise comparison of vectors with different lengths");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

inline bool is_zero(const IntVector &a)
{
    return std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
}

inline IntVector sub(const IntVector &a, const IntVector &b)
{
    if (a.size() != b.size()) {
        throw input_error("difference of vectors with different lengths");
    }
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] - b[i];
    }
    return out;
}

/// Framing w and gauge dimensions v, both nonnegative.
/// A coweight of a product of GL groups: one integer tuple per vertex.
using Coweight = std::vector<std::vector<int>>;

inline std::string coweight_string(const Coweight &g)
{
    std::string s = "[";
    for (std::size_t i = 0; i < g.size(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t r = 0; r < g[i].size(); ++r) {
            s += (r ? "," : "") + std::to_string(g[i][r]);
        }
        s += "]";
    }
    return s + "]";
}

struct DimData {
    IntVector w;
    IntVector v;

    DimData() = default;
    DimData(IntVector w_, IntVector v_) : w(std::move(w_)), v(std::move(v_))
    {
        if (w.size() != v.size()) {
            throw input_error("w and v have different lengths");
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] < 0 || v[i] < 0) {
                throw input_error("dimension vectors must be nonnegative");
            }
        }
    }

    friend bool operator==(const DimData &, const DimData &) = default;
};

struct MuPairing {
    IntVector values; // <mu, alpha_i> = (w - C v)_i
    bool mu_dominant = false;
};

inline MuPairing mu_pairing(const DimData &d, const CartanMatrix &c)
{
    c.check_shape(d.w);
    MuPairing out;
    out.values = sub(d.w, c.apply(d.v));
    out.mu_dominant = std::all_of(out.values.begin(), out.values.end(), [](auto x) { return x >= 0; });
    return out;
}

/// q_{w,v}(m) = m.(w - C v) + m.(C m). Equals 2 Delta(+-varpi_m) for the quiver gauge theory.
inline std::int64_t two_delta_minuscule(const DimData &d, const CartanMatrix &c, const IntVector &m)
{
    c.check_shape(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0 || m[i] > d.v[i]) {
            throw input_error("m must satisfy 0 <= m <= v");
        }
    }
    return dot(m, sub(d.w, c.apply(d.v))) + dot(m, c.apply(m));
}

/// Outcome of minimizing q over the box 0 < u <= v.
struct ConeCheck {
    bool holds = true;
    std::optional<std::int64_t> min_value;  // empty when the box is empty
    std::optional<IntVector> minimizer;     // lexicographically least minimizer

    /// The violating vector, present only when the check fails.
    std::optional<IntVector> witness() const { return holds ? std::nullopt : minimizer; }
};

inline double box_size(const IntVector &v)
{
    double n = 1.0;
    for (auto x : v) {
        n *= static_cast<double>(x + 1);
    }
    return n;
}

namespace detail
{

inline ConeCheck minimize_over_box(const DimData &d, const CartanMatrix &c, std::int64_t threshold)
{
    c.check_shape(d.v);
    const auto linear = sub(d.w, c.apply(d.v));
    const std::size_t n = d.v.size();
    ConeCheck out;
    IntVector u(n, 0);
    // Odometer with the last coordinate fastest: visits the box in
    // increasing lexicographic order, so the first strict minimum wins ties.
    while (true) {
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (u[k] < d.v[k]) {
                ++u[k];
                std::fill(u.begin() + static_cast<std::ptrdiff_t>(k) + 1, u.end(), 0);
                break;
            }
            if (k == 0) {
                k = n; // exhausted
                break;
            }
        }
        if (k == n || n == 0) {
            break;
        }
        const auto value = dot(u, linear) + dot(u, c.apply(u));
        if (!out.min_value || value < *out.min_value) {
            out.min_value = value;
            out.minimizer = u;
        }
    }
    out.holds = !out.min_value || *out.min_value >= threshold;
    return out;
}

} // namespace detail

/// Conicity: q(u) >= 1 for every 0 < u <= v''. `d.v` plays the role of v''.
inline ConeCheck check_conicity(const DimData &d, const CartanMatrix &c)
{
    return detail::minimize_over_box(d, c, 1);
}

/// Goodness: q(u) >= 2 for every 0 < u <= v''.
inline ConeCheck check_good(const DimData &d, const CartanMatrix &c)
{
    return detail::minimize_over_box(d, c, 2);
}

enum class CartanKind { finite, affine, indefinite };

inline const char *to_string(CartanKind k)
{
    switch (k) {
    case CartanKind::finite:
        return "finite";
    case CartanKind::affine:
        return "affine";
    default:
        return "indefinite";
    }
}

struct AffineData {
    CartanKind kind = CartanKind::indefinite;
    IntVector marks; // primitive positive kernel vector, affine only

    /// a.(w - C v); only meaningful for the affine kind.
    std::int64_t level(const DimData &d, const CartanMatrix &c) const
    {
        if (kind != CartanKind::affine) {
            throw domain_error("level is only defined for affine type");
        }
        return dot(marks, sub(d.w, c.apply(d.v)));
    }
};

/// Finite if C is positive definite; affine if C is positive semidefinite
/// with a one-dimensional kernel spanned by a strictly positive vector;
/// indefinite otherwise. Exact rational elimination throughout.
inline AffineData affine_classify(const CartanMatrix &c)
{
    const std::size_t n = c.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = mpq_class(static_cast<long>(c(i, j)));
        }
    }

    // Symmetric elimination along the diagonal. For a PSD matrix a zero
    // pivot forces the whole remaining row to vanish.
    std::size_t zero_pivots = 0;
    bool psd = true;
    for (std::size_t k = 0; k < n && psd; ++k) {
        const mpq_class pivot = a[k][k];
        if (pivot < 0) {
            psd = false;
            break;
        }
        if (pivot == 0) {
            for (std::size_t j = k + 1; j < n; ++j) {
                if (a[k][j] != 0) {
                    psd = false;
                    break;
                }
            }
            ++zero_pivots;
            continue;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) {
                continue;
            }
            const mpq_class factor = a[i][k] / pivot;
            for (std::size_t j = k; j < n; ++j) {
                a[i][j] -= factor * a[k][j];
            }
        }
    }

    AffineData out;
    if (!psd) {
        return out;
    }
    if (zero_pivots == 0) {
        out.kind = CartanKind::finite;
        return out;
    }
    if (zero_pivots > 1) {
        return out;
    }

    // Kernel vector by reduced row echelon form over Q.
    std::vector<std::vector<mpq_class>> r(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r[i][j] = mpq_class(static_cast<long>(c(i, j)));
        }
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t p = row;
        while (p < n && r[p][col] == 0) {
            ++p;
        }
        if (p == n) {
            continue;
        }
        std::swap(r[p], r[row]);
        const mpq_class inv = 1 / r[row][col];
        for (auto &x : r[row]) {
            x *= inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i != row && r[i][col] != 0) {
                const mpq_class f = r[i][col];
                for (std::size_t j = 0; j < n; ++j) {
                    r[i][j] -= f * r[row][j];
                }
            }
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::size_t free_col = 0;
    while (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) {
        ++free_col;
    }
    std::vector<mpq_class> kernel(n, mpq_class(0));
    kernel[free_col] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        kernel[pivot_col[i]] = -r[i][free_col];
    }
    mpz_class den_lcm = 1;
    for (const auto &x : kernel) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<mpz_class> ints;
    mpz_class g = 0;
    for (const auto &x : kernel) {
        mpz_class v = x.get_num() * (den_lcm / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(v);
    }
    IntVector marks;
    const int sign = ints[free_col] < 0 ? -1 : 1;
    for (auto &v : ints) {
        marks.push_back(static_cast<std::int64_t>(sign * mpz_class(v / g).get_si()));
    }
    if (std::any_of(marks.begin(), marks.end(), [](auto x) { return x <= 0; })) {
        return out; // disconnected: kernel not strictly positive
    }
    out.kind = CartanKind::affine;
    out.marks = std::move(marks);
    return out;
}

/// What the finite/affine classification theorem predicts for (w, v''),
/// when its hypotheses (v'' != 0, w - C v'' dominant, finite or affine type) apply.
enum class ConePrediction { good, conical_not_good, not_conical, not_applicable };

inline const char *to_string(ConePrediction p)
{
    switch (p) {
    case ConePrediction::good:
        return "good";
    case ConePrediction::conical_not_good:
        return "conical-not-good";
    case ConePrediction::not_conical:
        return "not-conical";
    default:
        return "not-applicable";
    }
}

inline ConePrediction predict_by_level(const DimData &d, const CartanMatrix &c, const AffineData &type)
{
    if (is_zero(d.v) || !mu_pairing(d, c).mu_dominant) {
        return ConePrediction::not_applicable;
    }
    switch (type.kind) {
    case CartanKind::finite:
        return ConePrediction::good;
    case CartanKind::affine: {
        const auto level = type.level(d, c);
        if (level >= 2) {
            return ConePrediction::good;
        }
        return level == 1 ? ConePrediction::conical_not_good : ConePrediction::not_conical;
    }
    default:
        return ConePrediction::not_applicable;
    }
}

} // namespace kms
