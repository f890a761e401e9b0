#pragma once

// Sparse multivariate Laurent polynomials over Q in the variables
// w[i,r], u[i,r] (Laurent) and z.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include "errors.hpp"
#include "rational.hpp"

namespace kms
{

enum class VarKind : std::uint8_t { W = 0, U = 1, Z = 2 };

/// Packed variable identifier. Codes compare in the fixed variable order
/// (kind, vertex, r), which is also the order in which lex ties are broken.
using VarCode = std::uint32_t;

struct VarId {
    VarKind kind = VarKind::Z;
    std::uint32_t vertex = 0;
    std::uint32_t r = 0; // 1-based

    static constexpr std::uint32_t r_bits = 10;
    static constexpr std::uint32_t vertex_bits = 12;

    static VarId w(std::size_t i, std::size_t r) { return {VarKind::W, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(r)}; }
    static VarId u(std::size_t i, std::size_t r) { return {VarKind::U, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(r)}; }
    static VarId z() { return {VarKind::Z, 0, 0}; }

    VarCode code() const
    {
        if (vertex >= (1u << vertex_bits) || r >= (1u << r_bits)) {
            throw input_error("variable index out of supported range");
        }
        return (static_cast<VarCode>(kind) << (vertex_bits + r_bits)) | (vertex << r_bits) | r;
    }

    static VarId from_code(VarCode c)
    {
        return {static_cast<VarKind>(c >> (vertex_bits + r_bits)),
                (c >> r_bits) & ((1u << vertex_bits) - 1), c & ((1u << r_bits) - 1)};
    }

    std::string to_string() const
    {
        switch (kind) {
        case VarKind::W:
            return "w[" + std::to_string(vertex) + "," + std::to_string(r) + "]";
        case VarKind::U:
            return "u[" + std::to_string(vertex) + "," + std::to_string(r) + "]";
        default:
            return "z";
        }
    }

    friend bool operator==(const VarId &, const VarId &) = default;
};

inline VarCode wvar(std::size_t i, std::size_t r) { return VarId::w(i, r).code(); }
inline VarCode uvar(std::size_t i, std::size_t r) { return VarId::u(i, r).code(); }
inline VarCode zvar() { return VarId::z().code(); }
inline VarKind kind_of(VarCode c) { return VarId::from_code(c).kind; }

/// A Laurent monomial: sorted (variable, nonzero exponent) pairs.
class Monomial
{
public:
    using Factor = std::pair<VarCode, std::int32_t>;
    using Storage = boost::container::small_vector<Factor, 8>;

    Monomial() = default;

    static Monomial var(VarCode v, std::int32_t e = 1)
    {
        Monomial m;
        if (e != 0) {
            m.m_factors.emplace_back(v, e);
            m.m_degree = e;
        }
        return m;
    }

    /// Build from arbitrary (var, exp) pairs; duplicates are merged.
    static Monomial from_pairs(std::vector<Factor> pairs)
    {
        std::sort(pairs.begin(), pairs.end());
        Monomial m;
        for (const auto &[v, e] : pairs) {
            if (!m.m_factors.empty() && m.m_factors.back().first == v) {
                m.m_factors.back().second += e;
                if (m.m_factors.back().second == 0) {
                    m.m_factors.pop_back();
                }
            } else if (e != 0) {
                m.m_factors.emplace_back(v, e);
            }
            m.m_degree += e;
        }
        return m;
    }

    const Storage &factors() const { return m_factors; }
    std::int64_t degree() const { return m_degree; }
    bool is_one() const { return m_factors.empty(); }

    std::int32_t exponent(VarCode v) const
    {
        auto it = std::lower_bound(m_factors.begin(), m_factors.end(), v,
                                   [](const Factor &f, VarCode c) { return f.first < c; });
        return (it != m_factors.end() && it->first == v) ? it->second : 0;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial out;
        out.m_factors.reserve(a.m_factors.size() + b.m_factors.size());
        auto i = a.m_factors.begin();
        auto j = b.m_factors.begin();
        while (i != a.m_factors.end() || j != b.m_factors.end()) {
            if (j == b.m_factors.end() || (i != a.m_factors.end() && i->first < j->first)) {
                out.m_factors.push_back(*i++);
            } else if (i == a.m_factors.end() || j->first < i->first) {
                out.m_factors.push_back(*j++);
            } else {
                const auto e = i->second + j->second;
                if (e != 0) {
                    out.m_factors.emplace_back(i->first, e);
                }
                ++i;
                ++j;
            }
        }
        out.m_degree = a.m_degree + b.m_degree;
        return out;
    }

    Monomial inverse() const
    {
        Monomial out = *this;
        for (auto &f : out.m_factors) {
            f.second = -f.second;
        }
        out.m_degree = -m_degree;
        return out;
    }

    /// Apply `fn` to each variable code; fn must be injective on the support.
    Monomial renamed(const std::function<VarCode(VarCode)> &fn) const
    {
        std::vector<Factor> pairs;
        pairs.reserve(m_factors.size());
        for (const auto &[v, e] : m_factors) {
            pairs.emplace_back(fn(v), e);
        }
        return from_pairs(std::move(pairs));
    }

    /// Componentwise min (gcd for nonnegative monomials, generalizes to Laurent).
    friend Monomial min_exponents(const Monomial &a, const Monomial &b)
    {
        std::vector<Factor> pairs;
        auto i = a.m_factors.begin();
        auto j = b.m_factors.begin();
        while (i != a.m_factors.end() || j != b.m_factors.end()) {
            if (j == b.m_factors.end() || (i != a.m_factors.end() && i->first < j->first)) {
                if (i->second < 0) {
                    pairs.push_back(*i);
                }
                ++i;
            } else if (i == a.m_factors.end() || j->first < i->first) {
                if (j->second < 0) {
                    pairs.push_back(*j);
                }
                ++j;
            } else {
                pairs.emplace_back(i->first, std::min(i->second, j->second));
                ++i;
                ++j;
            }
        }
        return from_pairs(std::move(pairs));
    }

    /// Graded lexicographic comparison: -1, 0, +1.
    friend int compare(const Monomial &a, const Monomial &b)
    {
        if (a.m_degree != b.m_degree) {
            return a.m_degree < b.m_degree ? -1 : 1;
        }
        auto i = a.m_factors.begin();
        auto j = b.m_factors.begin();
        while (i != a.m_factors.end() || j != b.m_factors.end()) {
            if (j == b.m_factors.end() || (i != a.m_factors.end() && i->first < j->first)) {
                return i->second > 0 ? 1 : -1;
            }
            if (i == a.m_factors.end() || j->first < i->first) {
                return j->second > 0 ? -1 : 1;
            }
            if (i->second != j->second) {
                return i->second < j->second ? -1 : 1;
            }
            ++i;
            ++j;
        }
        return 0;
    }

    friend bool operator==(const Monomial &a, const Monomial &b) { return a.m_factors == b.m_factors; }

    std::size_t hash() const
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const auto &[v, e] : m_factors) {
            h = (h ^ ((std::uint64_t{v} << 32U) | static_cast<std::uint32_t>(e))) * 0x100000001b3ULL;
            h ^= h >> 29U;
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const
    {
        std::string s;
        for (const auto &[v, e] : m_factors) {
            if (!s.empty()) {
                s += '*';
            }
            s += VarId::from_code(v).to_string();
            if (e != 1) {
                s += '^' + std::to_string(e);
            }
        }
        return s.empty() ? "1" : s;
    }

private:
    Storage m_factors;
    std::int64_t m_degree = 0;
};

struct Term {
    Monomial mono;
    Rational coef;
};

/// Polynomial with terms kept in strictly descending graded-lex order and
/// no zero coefficients, so equality is structural.
class MPoly
{
public:
    MPoly() = default;
    MPoly(long c) // NOLINT(google-explicit-constructor)
    {
        if (c != 0) {
            m_terms.push_back({Monomial(), Rational(c)});
        }
    }
    MPoly(const Rational &c) // NOLINT(google-explicit-constructor)
    {
        if (c != 0) {
            m_terms.push_back({Monomial(), c});
        }
    }
    MPoly(Monomial m, Rational c = 1)
    {
        if (c != 0) {
            m_terms.push_back({std::move(m), std::move(c)});
        }
    }

    static MPoly var(VarCode v, std::int32_t e = 1) { return MPoly(Monomial::var(v, e)); }

    /// Arbitrary term list; sorts and merges.
    static MPoly from_terms(std::vector<Term> terms)
    {
        MPoly p;
        p.m_terms = std::move(terms);
        p.canonicalize();
        return p;
    }

    const std::vector<Term> &terms() const { return m_terms; }
    std::size_t size() const { return m_terms.size(); }
    bool is_zero() const { return m_terms.empty(); }
    bool is_constant() const { return m_terms.empty() || (m_terms.size() == 1 && m_terms[0].mono.is_one()); }
    Rational constant_value() const
    {
        if (!is_constant()) {
            throw domain_error("polynomial is not constant");
        }
        return m_terms.empty() ? Rational(0) : m_terms[0].coef;
    }

    const Term &leading() const { return m_terms.front(); }

    std::int64_t total_degree() const
    {
        std::int64_t d = 0;
        bool first = true;
        for (const auto &t : m_terms) {
            if (first || t.mono.degree() > d) {
                d = t.mono.degree();
                first = false;
            }
        }
        return d;
    }

    std::int32_t degree_in(VarCode v) const
    {
        std::int32_t d = 0;
        for (const auto &t : m_terms) {
            d = std::max(d, t.mono.exponent(v));
        }
        return d;
    }

    std::int32_t min_degree_in(VarCode v) const
    {
        std::int32_t d = 0;
        bool first = true;
        for (const auto &t : m_terms) {
            const auto e = t.mono.exponent(v);
            d = first ? e : std::min(d, e);
            first = false;
        }
        return d;
    }

    /// Sorted list of variables that occur.
    std::vector<VarCode> variables() const
    {
        std::vector<VarCode> out;
        for (const auto &t : m_terms) {
            for (const auto &f : t.mono.factors()) {
                out.push_back(f.first);
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool has_negative_exponent() const
    {
        for (const auto &t : m_terms) {
            for (const auto &f : t.mono.factors()) {
                if (f.second < 0) {
                    return true;
                }
            }
        }
        return false;
    }

    bool uses_kind(VarKind k) const
    {
        for (const auto &t : m_terms) {
            for (const auto &f : t.mono.factors()) {
                if (kind_of(f.first) == k) {
                    return true;
                }
            }
        }
        return false;
    }

    /// Gcd of all term monomials (componentwise min exponent).
    Monomial monomial_content() const
    {
        if (m_terms.empty()) {
            return {};
        }
        // a variable missing from a term counts as exponent 0 there
        std::map<VarCode, std::int32_t> lo;
        for (const auto &[v, e] : m_terms[0].mono.factors()) {
            lo.emplace(v, e);
        }
        for (std::size_t k = 0; k < m_terms.size(); ++k) {
            for (const auto &[v, e] : m_terms[k].mono.factors()) {
                if (e < 0) {
                    auto [it, inserted] = lo.emplace(v, e);
                    it->second = std::min(it->second, e);
                }
            }
        }
        std::vector<Monomial::Factor> pairs;
        for (const auto &[v, e] : lo) {
            std::int32_t x = e;
            for (const auto &t : m_terms) {
                x = std::min(x, t.mono.exponent(v));
            }
            if (x != 0) {
                pairs.emplace_back(v, x);
            }
        }
        return Monomial::from_pairs(std::move(pairs));
    }

    /// Lowest exponent of every variable that appears negatively anywhere, as a monomial.
    Monomial negative_part() const
    {
        std::map<VarCode, std::int32_t> lo;
        for (const auto &t : m_terms) {
            for (const auto &[v, e] : t.mono.factors()) {
                if (e < 0) {
                    auto [it, inserted] = lo.emplace(v, e);
                    if (!inserted) {
                        it->second = std::min(it->second, e);
                    }
                }
            }
        }
        return Monomial::from_pairs({lo.begin(), lo.end()});
    }

    /// Positive lcm of the coefficient denominators over gcd of numerators.
    Rational content() const
    {
        if (m_terms.empty()) {
            return 0;
        }
        std::uint64_t sn = 0;
        std::uint64_t sd = 1;
        bool small = true;
        for (const auto &t : m_terms) {
            if (!t.coef.is_small()) {
                small = false;
                break;
            }
            const auto a = t.coef.small_num();
            sn = std::gcd(sn, static_cast<std::uint64_t>(a < 0 ? -a : a));
            const auto d = static_cast<std::uint64_t>(t.coef.small_den());
            const std::uint64_t g = std::gcd(sd, d);
            if (__builtin_mul_overflow(sd / g, d, &sd) || sd > static_cast<std::uint64_t>(INT64_MAX)) {
                small = false;
                break;
            }
        }
        if (small) {
            return Rational(static_cast<long>(sn)) / Rational(static_cast<long>(sd));
        }
        mpz_class num = 0;
        mpz_class den = 1;
        for (const auto &t : m_terms) {
            const mpz_class a = t.coef.numerator();
            const mpz_class b = t.coef.denominator();
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), b.get_mpz_t());
        }
        return {num, den};
    }

    MPoly operator-() const
    {
        MPoly out = *this;
        for (auto &t : out.m_terms) {
            t.coef = -t.coef;
        }
        return out;
    }

    friend MPoly operator+(const MPoly &a, const MPoly &b) { return merge(a, b, false); }
    friend MPoly operator-(const MPoly &a, const MPoly &b) { return merge(a, b, true); }

    friend MPoly operator*(const MPoly &a, const MPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        if (a.size() == 1 && a.m_terms[0].mono.is_one()) {
            return b * a.m_terms[0].coef;
        }
        if (b.size() == 1 && b.m_terms[0].mono.is_one()) {
            return a * b.m_terms[0].coef;
        }
        if (a.size() * b.size() <= 32) {
            std::vector<Term> terms;
            terms.reserve(a.size() * b.size());
            for (const auto &x : a.m_terms) {
                for (const auto &y : b.m_terms) {
                    terms.push_back({x.mono * y.mono, x.coef * y.coef});
                }
            }
            return from_terms(std::move(terms));
        }
        // Combine like terms before sorting; products usually collapse a lot.
        auto hash = [](const Monomial &m) { return m.hash(); };
        std::unordered_map<Monomial, Rational, decltype(hash)> acc(2 * (a.size() + b.size()), hash);
        for (const auto &x : a.m_terms) {
            for (const auto &y : b.m_terms) {
                auto [it, fresh] = acc.try_emplace(x.mono * y.mono, x.coef * y.coef);
                if (!fresh) {
                    it->second += x.coef * y.coef;
                }
            }
        }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto &[m, c] : acc) {
            if (c.sign() != 0) {
                terms.push_back({m, std::move(c)});
            }
        }
        return from_terms(std::move(terms));
    }

    friend MPoly operator*(const MPoly &a, const Rational &c)
    {
        if (c == 0) {
            return {};
        }
        MPoly out = a;
        for (auto &t : out.m_terms) {
            t.coef *= c;
        }
        return out;
    }
    friend MPoly operator*(const Rational &c, const MPoly &a) { return a * c; }
    friend MPoly operator*(const MPoly &a, long c) { return a * Rational(c); }
    friend MPoly operator*(long c, const MPoly &a) { return a * Rational(c); }

    friend MPoly operator*(const MPoly &a, const Monomial &m)
    {
        MPoly out = a;
        for (auto &t : out.m_terms) {
            t.mono = t.mono * m;
        }
        // Multiplying by a monomial preserves the term order.
        return out;
    }

    MPoly &operator+=(const MPoly &b) { return *this = *this + b; }
    MPoly &operator-=(const MPoly &b) { return *this = *this - b; }
    MPoly &operator*=(const MPoly &b) { return *this = *this * b; }

    MPoly pow(unsigned e) const
    {
        MPoly result(1);
        MPoly base = *this;
        while (e > 0) {
            if (e & 1u) {
                result *= base;
            }
            e >>= 1u;
            if (e > 0) {
                base *= base;
            }
        }
        return result;
    }

    friend bool operator==(const MPoly &a, const MPoly &b)
    {
        if (a.m_terms.size() != b.m_terms.size()) {
            return false;
        }
        for (std::size_t k = 0; k < a.m_terms.size(); ++k) {
            if (a.m_terms[k].coef != b.m_terms[k].coef || !(a.m_terms[k].mono == b.m_terms[k].mono)) {
                return false;
            }
        }
        return true;
    }

    /// Rename variables via an injective map.
    MPoly renamed(const std::function<VarCode(VarCode)> &fn) const
    {
        std::vector<Term> terms;
        terms.reserve(m_terms.size());
        for (const auto &t : m_terms) {
            terms.push_back({t.mono.renamed(fn), t.coef});
        }
        return from_terms(std::move(terms));
    }

    /// Set every variable with pred(v) true to zero. Throws if such a
    /// variable carries a negative exponent in a surviving computation.
    MPoly kill(const std::function<bool(VarCode)> &pred) const
    {
        std::vector<Term> terms;
        for (const auto &t : m_terms) {
            bool dead = false;
            for (const auto &[v, e] : t.mono.factors()) {
                if (pred(v)) {
                    if (e < 0) {
                        throw domain_error("cannot set " + VarId::from_code(v).to_string()
                                           + " to zero: it occurs with a negative exponent");
                    }
                    dead = true;
                    break;
                }
            }
            if (!dead) {
                terms.push_back(t);
            }
        }
        MPoly out;
        out.m_terms = std::move(terms); // order preserved
        return out;
    }

    /// Substitute variable x := y (another variable).
    MPoly identify(VarCode x, VarCode y) const
    {
        std::vector<Term> terms;
        terms.reserve(m_terms.size());
        for (const auto &t : m_terms) {
            const auto e = t.mono.exponent(x);
            if (e == 0) {
                terms.push_back(t);
            } else {
                terms.push_back({t.mono * Monomial::from_pairs({{x, -e}, {y, e}}), t.coef});
            }
        }
        return from_terms(std::move(terms));
    }

    /// Write the polynomial as sum_k c_k x^k with c_k free of x.
    std::map<std::int32_t, MPoly> coefficients_in(VarCode x) const
    {
        std::map<std::int32_t, std::vector<Term>> buckets;
        for (const auto &t : m_terms) {
            const auto e = t.mono.exponent(x);
            if (e == 0) {
                buckets[0].push_back(t);
            } else {
                buckets[e].push_back({t.mono * Monomial::var(x, -e), t.coef});
            }
        }
        std::map<std::int32_t, MPoly> out;
        for (auto &[e, terms] : buckets) {
            MPoly p;
            p.m_terms = std::move(terms); // dividing by x^e preserves relative order
            out.emplace(e, std::move(p));
        }
        return out;
    }

    /// Evaluate every variable at a rational value (all must be assigned).
    Rational evaluate(const std::function<Rational(VarCode)> &value) const
    {
        Rational acc = 0;
        for (const auto &t : m_terms) {
            Rational term = t.coef;
            for (const auto &[v, e] : t.mono.factors()) {
                const Rational x = value(v);
                if (x == 0 && e < 0) {
                    throw domain_error("evaluation at a pole");
                }
                Rational p = 1;
                for (std::int32_t k = 0; k < (e < 0 ? -e : e); ++k) {
                    p *= x;
                }
                term *= (e < 0 ? Rational(1 / p) : p);
            }
            acc += term;
        }
        return acc;
    }

    std::string to_string() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::string s;
        for (std::size_t k = 0; k < m_terms.size(); ++k) {
            const auto &t = m_terms[k];
            Rational c = t.coef;
            if (k == 0) {
                if (c < 0) {
                    s += "-";
                    c = -c;
                }
            } else {
                s += c < 0 ? " - " : " + ";
                if (c < 0) {
                    c = -c;
                }
            }
            if (t.mono.is_one()) {
                s += c.get_str();
            } else if (c == 1) {
                s += t.mono.to_string();
            } else {
                s += c.get_str() + "*" + t.mono.to_string();
            }
        }
        return s;
    }

private:
    std::vector<Term> m_terms;

    void canonicalize()
    {
        std::vector<std::uint32_t> order(m_terms.size());
        std::iota(order.begin(), order.end(), 0U);
        std::sort(order.begin(), order.end(), [this](std::uint32_t a, std::uint32_t b) {
            return compare(m_terms[a].mono, m_terms[b].mono) > 0;
        });
        std::vector<Term> merged;
        merged.reserve(m_terms.size());
        for (auto k : order) {
            auto &t = m_terms[k];
            if (!merged.empty() && merged.back().mono == t.mono) {
                merged.back().coef += t.coef;
            } else {
                if (!merged.empty() && merged.back().coef == 0) {
                    merged.pop_back();
                }
                merged.push_back(std::move(t));
            }
        }
        if (!merged.empty() && merged.back().coef == 0) {
            merged.pop_back();
        }
        m_terms = std::move(merged);
    }

    static MPoly merge(const MPoly &a, const MPoly &b, bool subtract)
    {
        MPoly out;
        out.m_terms.reserve(a.size() + b.size());
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < a.size() || j < b.size()) {
            int c = 0;
            if (i == a.size()) {
                c = -1;
            } else if (j == b.size()) {
                c = 1;
            } else {
                c = compare(a.m_terms[i].mono, b.m_terms[j].mono);
            }
            if (c > 0) {
                out.m_terms.push_back(a.m_terms[i++]);
            } else if (c < 0) {
                out.m_terms.push_back(b.m_terms[j++]);
                if (subtract) {
                    out.m_terms.back().coef = -out.m_terms.back().coef;
                }
            } else {
                Rational s = subtract ? Rational(a.m_terms[i].coef - b.m_terms[j].coef)
                                      : Rational(a.m_terms[i].coef + b.m_terms[j].coef);
                if (s != 0) {
                    out.m_terms.push_back({a.m_terms[i].mono, std::move(s)});
                }
                ++i;
                ++j;
            }
        }
        return out;
    }
};

/// Exact division a / b. Returns nullopt when b does not divide a.
/// Both must be ordinary polynomials in the variables that b uses; other
/// variables may carry any exponent. Leading-term reduction in grlex.
inline std::optional<MPoly> divide_exact(const MPoly &a, const MPoly &b)
{
    if (b.is_zero()) {
        throw domain_error("division by zero polynomial");
    }
    if (a.is_zero()) {
        return MPoly();
    }
    if (b.size() == 1) {
        const auto inv = b.leading().mono.inverse();
        const Rational c = 1 / b.leading().coef;
        MPoly q = a * inv * c;
        // Valid only if no exponent of a b-variable turned negative.
        for (const auto &t : q.terms()) {
            for (const auto &[v, e] : t.mono.factors()) {
                if (e < 0 && b.leading().mono.exponent(v) > 0) {
                    return std::nullopt;
                }
            }
        }
        return q;
    }
    const auto bvars = b.variables();
    // Quick rejection: degree in each divisor variable.
    for (auto v : bvars) {
        if (a.degree_in(v) < b.degree_in(v)) {
            return std::nullopt;
        }
    }
    const auto &lt = b.leading();
    auto cmp = [](const Monomial &x, const Monomial &y) { return compare(x, y) > 0; };
    std::map<Monomial, Rational, decltype(cmp)> rem(cmp);
    for (const auto &t : a.terms()) {
        rem.emplace(t.mono, t.coef);
    }
    std::vector<Term> quotient;
    const auto lt_inv = lt.mono.inverse();
    while (!rem.empty()) {
        auto it = rem.begin();
        const Monomial qm = it->first * lt_inv;
        for (auto v : bvars) {
            if (qm.exponent(v) < 0) {
                return std::nullopt;
            }
        }
        const Rational qc = it->second / lt.coef;
        for (const auto &t : b.terms()) {
            Monomial m = t.mono * qm;
            auto [pos, inserted] = rem.emplace(std::move(m), Rational(0));
            pos->second -= qc * t.coef;
            if (pos->second == 0) {
                rem.erase(pos);
            }
        }
        quotient.push_back({qm, qc});
    }
    return MPoly::from_terms(std::move(quotient));
}

} // namespace kms
