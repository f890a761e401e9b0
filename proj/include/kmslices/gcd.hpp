#pragma once

// Multivariate polynomial gcd over Q by recursive content extraction and
// primitive pseudo-remainder sequences. Inputs must have nonnegative exponents.

#include <algorithm>
#include <vector>

#include "mpoly.hpp"

namespace kms
{

/// Scale to integer coefficients with gcd 1 and positive leading coefficient.
inline MPoly primitive_part(const MPoly &p)
{
    if (p.is_zero()) {
        return p;
    }
    Rational c = p.content();
    if (p.leading().coef < 0) {
        c = -c;
    }
    return p * Rational(1 / c);
}

namespace detail
{

using UniPoly = std::vector<MPoly>; // coefficient of x^k at index k, top nonzero

inline UniPoly to_uni(const MPoly &p, VarCode x)
{
    auto coeffs = p.coefficients_in(x);
    UniPoly out(coeffs.empty() ? 0 : static_cast<std::size_t>(coeffs.rbegin()->first) + 1);
    for (auto &[e, c] : coeffs) {
        out[static_cast<std::size_t>(e)] = std::move(c);
    }
    return out;
}

inline MPoly from_uni(const UniPoly &u, VarCode x)
{
    MPoly out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (!u[k].is_zero()) {
            out += u[k] * Monomial::var(x, static_cast<std::int32_t>(k));
        }
    }
    return out;
}

inline void trim(UniPoly &u)
{
    while (!u.empty() && u.back().is_zero()) {
        u.pop_back();
    }
}

inline MPoly exact_quotient(const MPoly &a, const MPoly &b)
{
    auto q = divide_exact(a, b);
    if (!q) {
        throw std::logic_error("gcd: expected exact division failed");
    }
    return *q;
}

} // namespace detail

inline MPoly poly_gcd(const MPoly &a, const MPoly &b);

namespace detail
{

/// gcd(seed, coefficients of p in x), folded so that a small seed keeps every step small.
inline MPoly gcd_with_coefficients(MPoly seed, const MPoly &p, VarCode x)
{
    auto coeffs = p.coefficients_in(x);
    std::vector<const MPoly *> order;
    for (const auto &[e, c] : coeffs) {
        order.push_back(&c);
    }
    std::sort(order.begin(), order.end(), [](const MPoly *a, const MPoly *b) { return a->size() < b->size(); });
    for (const MPoly *c : order) {
        if (!seed.is_zero() && seed.is_constant()) {
            break;
        }
        seed = poly_gcd(seed, *c);
    }
    return seed;
}

/// gcd of the coefficients of p viewed as a polynomial in x.
inline MPoly content_in(const MPoly &p, VarCode x) { return gcd_with_coefficients(MPoly(), p, x); }

/// lc(g)^(deg f - deg g + 1) f mod g.
inline UniPoly pseudo_remainder(UniPoly f, const UniPoly &g)
{
    const std::size_t m = g.size() - 1;
    const MPoly &lead = g.back();
    std::size_t steps = f.size() - m; // deg f - deg g + 1
    while (f.size() > m && !f.empty()) {
        const std::size_t shift = f.size() - 1 - m;
        const MPoly top = f.back();
        for (auto &c : f) {
            c *= lead;
        }
        for (std::size_t k = 0; k <= m; ++k) {
            f[k + shift] -= top * g[k];
        }
        --steps;
        trim(f);
    }
    if (steps > 0 && !f.empty()) {
        const MPoly extra = lead.pow(static_cast<std::int32_t>(steps));
        for (auto &c : f) {
            c *= extra;
        }
    }
    return f;
}

inline MPoly pow_or_one(const MPoly &p, std::size_t k) { return k == 0 ? MPoly(1) : p.pow(static_cast<std::int32_t>(k)); }

/// Last nonzero term of the subresultant remainder sequence of f and g in x
/// (deg f >= deg g >= 1); it is a multiple of gcd(f, g) by an x-free factor.
inline UniPoly subresultant_last(UniPoly f, UniPoly g)
{
    MPoly gg(1);
    MPoly h(1);
    while (true) {
        const std::size_t delta = f.size() - g.size();
        UniPoly r = pseudo_remainder(f, g);
        if (r.empty()) {
            return g;
        }
        if (r.size() == 1) {
            return r;
        }
        const MPoly divisor = gg * pow_or_one(h, delta);
        for (auto &c : r) {
            c = exact_quotient(c, divisor);
        }
        f = std::move(g);
        g = std::move(r);
        gg = f.back();
        if (delta == 0) {
            continue;
        }
        // h <- gg^delta / h^(delta - 1)
        h = exact_quotient(pow_or_one(gg, delta), pow_or_one(h, delta - 1));
    }
}

} // namespace detail

/// Greatest common divisor, primitive with positive leading coefficient
/// (gcd(0, 0) = 0).
inline MPoly poly_gcd(const MPoly &a_in, const MPoly &b_in)
{
    if (a_in.has_negative_exponent() || b_in.has_negative_exponent()) {
        throw domain_error("poly_gcd requires nonnegative exponents");
    }
    if (a_in.is_zero()) {
        return primitive_part(b_in);
    }
    if (b_in.is_zero()) {
        return primitive_part(a_in);
    }
    if (a_in.is_constant() || b_in.is_constant()) {
        return MPoly(1);
    }
    if (a_in == b_in) {
        return primitive_part(a_in);
    }

    const Monomial ma = a_in.monomial_content();
    const Monomial mb = b_in.monomial_content();
    const Monomial mg = min_exponents(ma, mb);
    MPoly a = a_in * ma.inverse();
    MPoly b = b_in * mb.inverse();
    if (a.size() > b.size()) {
        std::swap(a, b); // a is the smaller operand from here on
    }

    const auto va = a.variables();
    const auto vb = b.variables();
    // A variable present in only one operand can be eliminated via content.
    for (auto x : vb) {
        if (!std::binary_search(va.begin(), va.end(), x)) {
            return primitive_part(detail::gcd_with_coefficients(a, b, x)) * mg;
        }
    }
    for (auto x : va) {
        if (!std::binary_search(vb.begin(), vb.end(), x)) {
            return primitive_part(detail::gcd_with_coefficients(b, a, x)) * mg;
        }
    }
    if (va.empty()) {
        return MPoly(mg);
    }

    // Trial division is cheap and frequently succeeds.
    if (divide_exact(b, a)) {
        return primitive_part(a) * mg;
    }

    VarCode x = va.front();
    std::int32_t best = -1;
    for (auto v : va) {
        const auto d = std::min(a.degree_in(v), b.degree_in(v));
        if (best < 0 || d < best) {
            best = d;
            x = v;
        }
    }

    // gcd of the contents, seeded with the smaller operand's content
    const MPoly c = detail::gcd_with_coefficients(detail::content_in(a, x), b, x);
    auto f = detail::to_uni(b, x);
    auto g = detail::to_uni(a, x);
    if (f.size() < g.size()) {
        std::swap(f, g);
    }
    const auto last = detail::subresultant_last(std::move(f), std::move(g));
    if (last.size() == 1) {
        return primitive_part(c) * mg; // primitive parts are coprime
    }
    MPoly h = detail::from_uni(last, x);
    h = detail::exact_quotient(h, detail::content_in(h, x));
    return primitive_part(h * c) * mg;
}

} // namespace kms
