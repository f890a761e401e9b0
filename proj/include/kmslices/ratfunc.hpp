#pragma once

// Reduced rational functions num/den.
//
// The denominator is stored factored as
//     den = prod (x - y)^e * prod x^e * rest
// where x, y are variables (x < y in code order), monomial factors never
// involve U variables (those are units and live in the numerator), and
// `rest` is a primitive polynomial with positive leading coefficient and no
// factor of the first two kinds. The numerator absorbs every scalar and is
// coprime to the denominator, so the representation is canonical and
// equality is structural.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gcd.hpp"
#include "mpoly.hpp"

namespace kms
{

/// (x - y) when y != none, else the single variable x.
struct LinFactor {
    static constexpr VarCode none = ~VarCode{0};
    VarCode x = 0;
    VarCode y = none;

    bool is_monomial() const { return y == none; }

    MPoly poly() const
    {
        if (is_monomial()) {
            return MPoly::var(x);
        }
        return MPoly::var(x) - MPoly::var(y);
    }

    std::string to_string() const
    {
        if (is_monomial()) {
            return VarId::from_code(x).to_string();
        }
        return "(" + VarId::from_code(x).to_string() + " - " + VarId::from_code(y).to_string() + ")";
    }

    friend auto operator<=>(const LinFactor &, const LinFactor &) = default;
};

/// Oriented binomial factor a - b; returns the factor and the sign s with a - b = s * factor.
inline std::pair<LinFactor, int> binomial(VarCode a, VarCode b)
{
    if (a == b) {
        throw domain_error("degenerate binomial factor");
    }
    if (a < b) {
        return {{a, b}, 1};
    }
    return {{b, a}, -1};
}

using FactorMap = std::map<LinFactor, int>;

namespace detail
{

/// Divide a Laurent polynomial by an ordinary polynomial, shifting out negative exponents first.
inline std::optional<MPoly> divide_laurent(const MPoly &a, const MPoly &b)
{
    const Monomial shift = a.negative_part();
    if (shift.is_one()) {
        return divide_exact(a, b);
    }
    auto q = divide_exact(a * shift.inverse(), b);
    if (!q) {
        return std::nullopt;
    }
    return *q * shift;
}

/// Arithmetic modulo the Mersenne prime 2^61 - 1, used for a quick
/// vanishing test before attempting an exact division.
struct ModP {
    static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;

    static std::uint64_t mul(std::uint64_t a, std::uint64_t b)
    {
        const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
        std::uint64_t r = static_cast<std::uint64_t>(z & p) + static_cast<std::uint64_t>(z >> 61);
        return r >= p ? r - p : r;
    }

    static std::uint64_t pow(std::uint64_t a, std::uint64_t e)
    {
        std::uint64_t r = 1;
        while (e != 0) {
            if ((e & 1U) != 0) {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1U;
        }
        return r;
    }

    static std::uint64_t inv(std::uint64_t a) { return pow(a, p - 2); }

    static std::uint64_t from_int(std::int64_t n)
    {
        const auto m = static_cast<std::uint64_t>(n < 0 ? -(n + 1) : n) % p;
        return n < 0 ? (p - 1 - m) : m; // -(|n|) = -(m' + 1) with m' = -(n + 1)
    }

    /// nullopt when the denominator vanishes mod p.
    static std::optional<std::uint64_t> from_rational(const Rational &q)
    {
        std::uint64_t n = 0;
        std::uint64_t d = 0;
        if (q.is_small()) {
            n = from_int(q.small_num());
            d = from_int(q.small_den());
        } else {
            const mpz_class pp = static_cast<unsigned long>(p);
            n = mpz_class(((q.numerator() % pp) + pp) % pp).get_ui();
            d = mpz_class(((q.denominator() % pp) + pp) % pp).get_ui();
        }
        if (d == 0) {
            return std::nullopt;
        }
        return d == 1 ? n : mul(n, inv(d));
    }

    /// A fixed pseudo-random nonzero point for each variable.
    static std::uint64_t point(VarCode c)
    {
        std::uint64_t z = c + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
        z ^= z >> 31U;
        z %= p;
        return z == 0 ? 1 : z;
    }
};

/// False only when a(x = y) is certainly nonzero.
inline bool may_vanish_at(const MPoly &a, VarCode x, VarCode y)
{
    // (variable, value, inverse) for the few variables seen in this call
    boost::container::small_vector<std::tuple<VarCode, std::uint64_t, std::uint64_t>, 16> cache;
    auto lookup = [&](VarCode v, bool inverse) {
        for (const auto &[c, val, inv] : cache) {
            if (c == v) {
                return inverse ? inv : val;
            }
        }
        const std::uint64_t val = ModP::point(v == x ? y : v);
        const std::uint64_t inv = ModP::inv(val);
        cache.emplace_back(v, val, inv);
        return inverse ? inv : val;
    };
    std::uint64_t acc = 0;
    for (const auto &t : a.terms()) {
        std::uint64_t term = 0;
        if (t.coef.is_small() && t.coef.small_den() == 1) {
            term = ModP::from_int(t.coef.small_num());
        } else {
            auto c = ModP::from_rational(t.coef);
            if (!c) {
                return true;
            }
            term = *c;
        }
        for (const auto &[v, e] : t.mono.factors()) {
            const std::uint64_t base = lookup(v, e < 0);
            const auto n = static_cast<std::uint32_t>(e < 0 ? -e : e);
            term = ModP::mul(term, n == 1 ? base : ModP::pow(base, n));
        }
        acc += term;
        if (acc >= ModP::p) {
            acc -= ModP::p;
        }
    }
    return acc == 0;
}

/// Exact division by (x - y), x and y non-unit variables: synthetic division
/// in x with coefficients in the remaining variables.
inline std::optional<MPoly> divide_binomial(const MPoly &a, VarCode x, VarCode y)
{
    if (!may_vanish_at(a, x, y)) {
        return std::nullopt;
    }
    auto coeffs = a.coefficients_in(x);
    if (coeffs.empty()) {
        return MPoly();
    }
    const std::int32_t d = coeffs.rbegin()->first;
    if (coeffs.begin()->first < 0) {
        return std::nullopt;
    }
    const Monomial ym = Monomial::var(y);
    std::vector<Term> out;
    MPoly q; // q_{k-1} = c_k + y q_k, starting from q_d = 0
    for (std::int32_t k = d; k >= 1; --k) {
        auto it = coeffs.find(k);
        q = q * ym;
        if (it != coeffs.end()) {
            q += it->second;
        }
        const Monomial xk = Monomial::var(x, k - 1);
        for (const auto &t : q.terms()) {
            out.push_back({t.mono * xk, t.coef});
        }
    }
    MPoly rem = q * ym;
    if (auto it = coeffs.find(0); it != coeffs.end()) {
        rem += it->second;
    }
    if (!rem.is_zero()) {
        return std::nullopt;
    }
    return MPoly::from_terms(std::move(out));
}

inline MPoly expand(const FactorMap &factors)
{
    MPoly out(1);
    for (const auto &[f, e] : factors) {
        if (f.is_monomial()) {
            out = out * Monomial::var(f.x, e);
        } else {
            out *= f.poly().pow(static_cast<unsigned>(e));
        }
    }
    return out;
}

} // namespace detail

class RatFunc
{
public:
    RatFunc() = default;
    RatFunc(long c) : m_num(c) {} // NOLINT(google-explicit-constructor)
    RatFunc(const Rational &c) : m_num(c) {} // NOLINT(google-explicit-constructor)
    RatFunc(MPoly p) : m_num(std::move(p)) // NOLINT(google-explicit-constructor)
    {
        // Negative exponents of non-unit variables belong in the denominator.
        std::vector<Monomial::Factor> lift;
        for (const auto &[v, e] : m_num.negative_part().factors()) {
            if (kind_of(v) != VarKind::U) {
                lift.emplace_back(v, -e);
                m_factors[{v, LinFactor::none}] = -e;
            }
        }
        if (!lift.empty()) {
            m_num = m_num * Monomial::from_pairs(std::move(lift));
            cancel();
        }
    }

    /// General num/den, fully normalized (den != 0).
    RatFunc(MPoly num, const MPoly &den)
    {
        if (den.is_zero()) {
            throw domain_error("division by zero");
        }
        m_num = std::move(num);
        if (m_num.is_zero()) {
            return;
        }
        absorb_general_denominator(den);
        cancel();
    }

    /// num / (scale * prod factors), with factors already in canonical orientation.
    /// With reduce = false the result is left uncancelled; such values are
    /// only meant as summands for sum(), which cancels once at the end.
    static RatFunc from_factored(MPoly num, const FactorMap &factors, const Rational &scale = 1,
                                 bool reduce = true)
    {
        if (scale == 0) {
            throw domain_error("division by zero");
        }
        RatFunc r;
        r.m_num = scale == 1 ? std::move(num) : num * Rational(1 / scale);
        if (r.m_num.is_zero()) {
            return r;
        }
        for (const auto &[f, e] : factors) {
            if (e < 0) {
                throw std::logic_error("negative factor exponent");
            }
            if (e == 0) {
                continue;
            }
            if (f.is_monomial() && kind_of(f.x) == VarKind::U) {
                r.m_num = r.m_num * Monomial::var(f.x, -e);
            } else {
                r.m_factors[f] += e;
            }
        }
        if (reduce) {
            r.cancel();
        }
        return r;
    }

    const MPoly &num() const { return m_num; }
    const FactorMap &den_factors() const { return m_factors; }
    const MPoly &den_rest() const { return m_rest; }
    MPoly den() const { return detail::expand(m_factors) * m_rest; }

    bool is_zero() const { return m_num.is_zero(); }
    bool is_polynomial() const { return m_factors.empty() && m_rest.is_constant(); }

    friend bool operator==(const RatFunc &a, const RatFunc &b)
    {
        return a.m_num == b.m_num && a.m_factors == b.m_factors && a.m_rest == b.m_rest;
    }

    RatFunc operator-() const
    {
        RatFunc r = *this;
        r.m_num = -r.m_num;
        return r;
    }

    friend RatFunc operator+(const RatFunc &a, const RatFunc &b) { return sum_refs({&a, &b}); }
    friend RatFunc operator-(const RatFunc &a, const RatFunc &b)
    {
        const RatFunc nb = -b;
        return sum_refs({&a, &nb});
    }

    friend RatFunc operator*(const RatFunc &a, const RatFunc &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        // Cross-cancel first; each side is already reduced against its own denominator.
        RatFunc x = a;
        RatFunc y = b;
        cross_cancel(x.m_num, y.m_factors, y.m_rest);
        cross_cancel(y.m_num, x.m_factors, x.m_rest);
        RatFunc r;
        r.m_num = x.m_num * y.m_num;
        r.m_factors = std::move(x.m_factors);
        for (const auto &[f, e] : y.m_factors) {
            r.m_factors[f] += e;
        }
        r.m_rest = x.m_rest * y.m_rest;
        return r;
    }

    friend RatFunc operator*(const RatFunc &a, long c) { return a * Rational(c); }
    friend RatFunc operator*(long c, const RatFunc &a) { return a * Rational(c); }

    friend RatFunc operator*(const RatFunc &a, const Rational &c)
    {
        if (c == 0) {
            return {};
        }
        RatFunc r = a;
        r.m_num = r.m_num * c;
        return r;
    }

    RatFunc inverse() const
    {
        if (is_zero()) {
            throw domain_error("division by zero");
        }
        return RatFunc(den(), m_num);
    }

    friend RatFunc operator/(const RatFunc &a, const RatFunc &b) { return a * b.inverse(); }

    RatFunc &operator+=(const RatFunc &b) { return *this = *this + b; }
    RatFunc &operator-=(const RatFunc &b) { return *this = *this - b; }
    RatFunc &operator*=(const RatFunc &b) { return *this = *this * b; }

    RatFunc pow(int e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        RatFunc result(1);
        for (int k = 0; k < e; ++k) {
            result *= *this;
        }
        return result;
    }

    /// Sum of many terms over one common denominator, cancelled once.
    static RatFunc sum_refs(const std::vector<const RatFunc *> &terms)
    {
        FactorMap lcm;
        MPoly rest(1);
        bool general = false;
        for (const auto *t : terms) {
            if (t->is_zero()) {
                continue;
            }
            for (const auto &[f, e] : t->m_factors) {
                auto &slot = lcm[f];
                slot = std::max(slot, e);
            }
            if (!t->m_rest.is_constant()) {
                general = true;
            }
        }
        if (general) {
            for (const auto *t : terms) {
                if (!t->is_zero() && !t->m_rest.is_constant()) {
                    const MPoly g = poly_gcd(rest, t->m_rest);
                    rest = rest * *divide_exact(t->m_rest, g);
                }
            }
            rest = primitive_part(rest);
        }
        MPoly num;
        for (const auto *t : terms) {
            if (t->is_zero()) {
                continue;
            }
            FactorMap missing;
            for (const auto &[f, e] : lcm) {
                auto it = t->m_factors.find(f);
                const int have = it == t->m_factors.end() ? 0 : it->second;
                if (e > have) {
                    missing[f] = e - have;
                }
            }
            MPoly scaled = t->m_num * detail::expand(missing);
            if (general) {
                scaled *= *divide_exact(rest, t->m_rest);
            }
            num += scaled;
        }
        RatFunc r;
        r.m_num = std::move(num);
        if (r.m_num.is_zero()) {
            return r;
        }
        r.m_factors = std::move(lcm);
        r.m_rest = std::move(rest);
        r.cancel();
        return r;
    }

    static RatFunc sum(const std::vector<RatFunc> &terms)
    {
        std::vector<const RatFunc *> ptrs;
        ptrs.reserve(terms.size());
        for (const auto &t : terms) {
            ptrs.push_back(&t);
        }
        return sum_refs(ptrs);
    }

    /// Apply a variable renaming (a permutation of variables, possibly with
    /// sign changes absorbed by reorienting binomials).
    RatFunc renamed(const std::function<VarCode(VarCode)> &fn) const
    {
        MPoly num = m_num.renamed(fn);
        FactorMap factors;
        Rational sign = 1;
        for (const auto &[f, e] : m_factors) {
            if (f.is_monomial()) {
                factors[{fn(f.x), LinFactor::none}] += e;
            } else {
                auto [g, s] = binomial(fn(f.x), fn(f.y));
                factors[g] += e;
                if (s < 0 && (e % 2) != 0) {
                    sign = -sign;
                }
            }
        }
        if (m_rest.is_constant()) {
            RatFunc r;
            r.m_num = num * sign;
            r.m_factors = std::move(factors);
            return r;
        }
        return RatFunc(num * sign, detail::expand(factors) * m_rest.renamed(fn));
    }

    /// Set all variables with pred(v) to zero.
    RatFunc kill(const std::function<bool(VarCode)> &pred) const
    {
        for (auto v : m_rest.variables()) {
            if (pred(v)) {
                const MPoly den_killed = den().kill(pred);
                if (den_killed.is_zero()) {
                    throw domain_error("substitution hits a pole of the denominator");
                }
                return RatFunc(m_num.kill(pred), den_killed);
            }
        }
        // A binomial with one killed end degenerates to a monomial factor.
        FactorMap factors;
        Rational scale = 1;
        for (const auto &[f, e] : m_factors) {
            const bool kx = pred(f.x);
            const bool ky = !f.is_monomial() && pred(f.y);
            if (kx && (f.is_monomial() || ky)) {
                throw domain_error("substitution hits a pole of the denominator");
            }
            if (ky) {
                factors[{f.x, LinFactor::none}] += e;
            } else if (kx) {
                factors[{f.y, LinFactor::none}] += e;
                if (e % 2 != 0) {
                    scale = -scale;
                }
            } else {
                factors[f] += e;
            }
        }
        RatFunc r = from_factored(m_num.kill(pred), factors, scale);
        if (!m_rest.is_constant() && !r.is_zero()) {
            r *= RatFunc(MPoly(1), m_rest);
        }
        return r;
    }

    /// Substitute each variable listed in `images` by a rational function.
    /// Variables not listed are left alone.
    RatFunc substitute(const std::map<VarCode, RatFunc> &images) const
    {
        return substitute_num(m_num, images) / substitute_den(images);
    }

    Rational evaluate(const std::function<Rational(VarCode)> &value) const
    {
        const Rational d = den().evaluate(value);
        if (d == 0) {
            throw domain_error("evaluation at a pole");
        }
        return m_num.evaluate(value) / d;
    }

    std::string num_string() const { return m_num.to_string(); }
    std::string den_string() const { return den().to_string(); }

    std::string to_string() const
    {
        if (is_polynomial()) {
            return m_num.to_string();
        }
        return "(" + num_string() + ")/(" + den_string() + ")";
    }

    /// Every variable appearing anywhere.
    std::vector<VarCode> variables() const
    {
        auto out = m_num.variables();
        for (const auto &[f, e] : m_factors) {
            out.push_back(f.x);
            if (!f.is_monomial()) {
                out.push_back(f.y);
            }
        }
        for (auto v : m_rest.variables()) {
            out.push_back(v);
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    MPoly m_num;
    FactorMap m_factors;
    MPoly m_rest = MPoly(1);

    static RatFunc substitute_num(const MPoly &p, const std::map<VarCode, RatFunc> &images)
    {
        std::vector<RatFunc> terms;
        std::map<std::pair<VarCode, std::int32_t>, RatFunc> powers;
        for (const auto &t : p.terms()) {
            std::vector<Monomial::Factor> kept;
            RatFunc factor(t.coef);
            for (const auto &[v, e] : t.mono.factors()) {
                auto it = images.find(v);
                if (it == images.end()) {
                    kept.emplace_back(v, e);
                    continue;
                }
                auto key = std::make_pair(v, e);
                auto pw = powers.find(key);
                if (pw == powers.end()) {
                    pw = powers.emplace(key, it->second.pow(e)).first;
                }
                factor *= pw->second;
            }
            factor *= RatFunc(MPoly(Monomial::from_pairs(std::move(kept))));
            terms.push_back(std::move(factor));
        }
        return sum(terms);
    }

    RatFunc substitute_den(const std::map<VarCode, RatFunc> &images) const
    {
        RatFunc out(1);
        for (const auto &[f, e] : m_factors) {
            out *= substitute_num(f.poly(), images).pow(e);
        }
        if (!m_rest.is_constant()) {
            out *= substitute_num(m_rest, images);
        }
        return out;
    }

    /// Cancel factors of the numerator `num` against (factors, rest) in place.
    static void cross_cancel(MPoly &num, FactorMap &factors, MPoly &rest)
    {
        for (auto it = factors.begin(); it != factors.end();) {
            auto &[f, e] = *it;
            if (f.is_monomial()) {
                const auto have = num.min_degree_in(f.x);
                const auto k = std::min<std::int32_t>(have, e);
                if (k > 0) {
                    num = num * Monomial::var(f.x, -k);
                    e -= k;
                }
            } else {
                while (e > 0) {
                    auto q = detail::divide_binomial(num, f.x, f.y);
                    if (!q) {
                        break;
                    }
                    num = std::move(*q);
                    --e;
                }
            }
            it = e == 0 ? factors.erase(it) : std::next(it);
        }
        if (!rest.is_constant()) {
            const Monomial shift = num.negative_part();
            const MPoly shifted = num * shift.inverse();
            const MPoly g = poly_gcd(shifted, rest);
            if (!g.is_constant()) {
                num = *divide_exact(shifted, g) * shift;
                rest = *divide_exact(rest, g); // still primitive with positive leading coefficient
                if (rest.is_constant()) {
                    num = num * Rational(1 / rest.constant_value());
                    rest = MPoly(1);
                }
            }
        }
    }

    void cancel() { cross_cancel(m_num, m_factors, m_rest); }

    /// Turn an arbitrary nonzero denominator into (factors, rest), moving
    /// units and scalars into the numerator.
    void absorb_general_denominator(const MPoly &den_in)
    {
        const Monomial content = den_in.monomial_content();
        MPoly den = den_in * content.inverse();
        std::vector<Monomial::Factor> unit_part;
        for (const auto &[v, e] : content.factors()) {
            if (kind_of(v) == VarKind::U || e < 0) {
                unit_part.emplace_back(v, -e);
            } else {
                m_factors[{v, LinFactor::none}] += e;
            }
        }
        m_num = m_num * Monomial::from_pairs(std::move(unit_part));
        if (den.is_constant()) {
            m_num = m_num * Rational(1 / den.constant_value());
            return;
        }
        const auto vars = den.variables();
        for (std::size_t i = 0; i < vars.size(); ++i) {
            for (std::size_t j = i + 1; j < vars.size(); ++j) {
                while (den.degree_in(vars[i]) > 0 && den.degree_in(vars[j]) > 0) {
                    auto q = detail::divide_binomial(den, vars[i], vars[j]);
                    if (!q) {
                        break;
                    }
                    den = std::move(*q);
                    m_factors[{vars[i], vars[j]}] += 1;
                }
            }
        }
        Rational c = den.content();
        if (den.leading().coef < 0) {
            c = -c;
        }
        m_rest = den * Rational(1 / c);
        m_num = m_num * Rational(1 / c);
        if (m_rest.is_constant()) {
            m_rest = MPoly(1);
        }
    }
};

inline RatFunc operator*(const Rational &c, const RatFunc &a) { return a * c; }

/// Image of a variable under a monomial-type substitution:
///     x |-> scalar * prod factor^exponent * mono
/// (exponents may be negative), or x |-> 0.
struct MonomialImage {
    bool zero = false;
    Rational scalar = 1;
    std::vector<std::pair<LinFactor, int>> factors;
    Monomial mono;

    /// Multiply by (a - b)^e, orienting the factor canonically.
    MonomialImage &times_binomial(VarCode a, VarCode b, int e = 1)
    {
        auto [f, s] = binomial(a, b);
        if (s < 0 && (e % 2) != 0) {
            scalar = -scalar;
        }
        factors.emplace_back(f, e);
        return *this;
    }

    RatFunc to_ratfunc() const
    {
        if (zero) {
            return {};
        }
        RatFunc r(MPoly(mono, scalar));
        for (const auto &[f, e] : factors) {
            r *= RatFunc(f.poly()).pow(e);
        }
        return r;
    }
};

/// Substitute variables by monomial-type images. Substituted variables must
/// not occur in the denominator (otherwise the general path is taken).
inline RatFunc substitute_monomials(const RatFunc &e, const std::map<VarCode, MonomialImage> &images)
{
    bool den_clean = true;
    for (const auto &[f, k] : e.den_factors()) {
        den_clean = den_clean && !images.contains(f.x) && (f.is_monomial() || !images.contains(f.y));
    }
    for (auto v : e.den_rest().variables()) {
        den_clean = den_clean && !images.contains(v);
    }
    if (!den_clean) {
        std::map<VarCode, RatFunc> general;
        for (const auto &[v, img] : images) {
            general.emplace(v, img.to_ratfunc());
        }
        return e.substitute(general);
    }
    // Terms whose images carry the same binomial powers share a prefactor,
    // so they are collected before anything is expanded.
    std::map<std::map<LinFactor, int>, std::vector<Term>> groups;
    for (const auto &t : e.num().terms()) {
        Rational coef = t.coef;
        std::map<LinFactor, int> powers;
        std::vector<Monomial::Factor> kept;
        bool dead = false;
        for (const auto &[v, x] : t.mono.factors()) {
            auto it = images.find(v);
            if (it == images.end()) {
                kept.emplace_back(v, x);
                continue;
            }
            const auto &img = it->second;
            if (img.zero) {
                if (x < 0) {
                    throw domain_error("cannot send " + VarId::from_code(v).to_string()
                                       + " to zero: it occurs with a negative exponent");
                }
                dead = true;
                break;
            }
            Rational sc = 1;
            for (int k = 0; k < (x < 0 ? -x : x); ++k) {
                sc *= img.scalar;
            }
            coef = x < 0 ? Rational(coef / sc) : Rational(coef * sc);
            for (const auto &[f, fe] : img.factors) {
                powers[f] += fe * x;
            }
            for (const auto &[mv, me] : img.mono.factors()) {
                kept.emplace_back(mv, me * x);
            }
        }
        if (dead) {
            continue;
        }
        std::erase_if(powers, [](const auto &kv) { return kv.second == 0; });
        groups[std::move(powers)].push_back({Monomial::from_pairs(std::move(kept)), std::move(coef)});
    }
    std::vector<RatFunc> terms;
    terms.reserve(groups.size());
    for (auto &[powers, group] : groups) {
        FactorMap up;
        FactorMap down;
        for (const auto &[f, p] : powers) {
            (p > 0 ? up[f] : down[f]) = p > 0 ? p : -p;
        }
        MPoly num = MPoly::from_terms(std::move(group));
        if (num.is_zero()) {
            continue;
        }
        // Cancelling inside each group first keeps the final common
        // denominator small: most image factors die within the group.
        for (const auto &[f, k] : e.den_factors()) {
            auto it = up.find(f);
            const int kill = it == up.end() ? 0 : std::min(it->second, k);
            if (kill > 0 && (it->second -= kill) == 0) {
                up.erase(it);
            }
            if (k > kill) {
                down[f] += k - kill;
            }
        }
        if (!up.empty()) {
            num *= detail::expand(up);
        }
        terms.push_back(RatFunc::from_factored(std::move(num), down, 1, true));
    }
    RatFunc total = RatFunc::sum(terms);
    if (e.den_rest().is_constant()) {
        return total;
    }
    return total * RatFunc(MPoly(1), e.den_rest());
}

} // namespace kms
