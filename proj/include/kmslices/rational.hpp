#pragma once

// Exact rationals with an inline 64-bit fast path. Values whose reduced
// numerator and denominator fit in int64 never touch the heap; anything
// larger is carried by GMP.

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>

#include <gmpxx.h>

namespace kms
{

class Rational
{
public:
    Rational() = default;
    Rational(long n) : m_num(n) {}      // NOLINT(google-explicit-constructor)
    Rational(int n) : m_num(n) {}       // NOLINT(google-explicit-constructor)
    Rational(long long n) : m_num(n) {} // NOLINT(google-explicit-constructor)
    Rational(const mpz_class &n) { set_big(mpq_class(n)); } // NOLINT(google-explicit-constructor)
    Rational(const mpq_class &q) { set_big(q); }            // NOLINT(google-explicit-constructor)
    Rational(const mpz_class &n, const mpz_class &d)
    {
        if (d == 0) {
            throw std::domain_error("zero denominator");
        }
        mpq_class q(n, d);
        q.canonicalize();
        set_big(q);
    }

    Rational(const Rational &o) : m_num(o.m_num), m_den(o.m_den)
    {
        if (o.m_big) {
            m_big = std::make_unique<mpq_class>(*o.m_big);
        }
    }
    Rational(Rational &&) noexcept = default;
    Rational &operator=(const Rational &o)
    {
        if (this != &o) {
            m_num = o.m_num;
            m_den = o.m_den;
            m_big = o.m_big ? std::make_unique<mpq_class>(*o.m_big) : nullptr;
        }
        return *this;
    }
    Rational &operator=(Rational &&) noexcept = default;
    ~Rational() = default;

    bool is_small() const { return !m_big; }
    /// Only meaningful when is_small().
    std::int64_t small_num() const { return m_num; }
    std::int64_t small_den() const { return m_den; }

    mpq_class to_mpq() const
    {
        if (m_big) {
            return *m_big;
        }
        mpq_class q(to_mpz(m_num), to_mpz(m_den));
        return q;
    }

    mpz_class numerator() const { return m_big ? mpz_class(m_big->get_num()) : to_mpz(m_num); }
    mpz_class denominator() const { return m_big ? mpz_class(m_big->get_den()) : to_mpz(m_den); }

    int sign() const
    {
        if (m_big) {
            return sgn(*m_big);
        }
        return (m_num > 0) - (m_num < 0);
    }

    std::string get_str() const
    {
        if (m_big) {
            return m_big->get_str();
        }
        return m_den == 1 ? std::to_string(m_num) : std::to_string(m_num) + "/" + std::to_string(m_den);
    }

    Rational operator-() const
    {
        if (!m_big && m_num != INT64_MIN) {
            Rational r;
            r.m_num = -m_num;
            r.m_den = m_den;
            return r;
        }
        return Rational(mpq_class(-to_mpq()));
    }

    friend Rational operator+(const Rational &a, const Rational &b)
    {
        if (!a.m_big && !b.m_big) {
            if (a.m_den == 1 && b.m_den == 1) {
                std::int64_t s = 0;
                if (!__builtin_add_overflow(a.m_num, b.m_num, &s)) {
                    return Rational(s);
                }
            }
            const i128 n = i128(a.m_num) * b.m_den + i128(b.m_num) * a.m_den;
            const i128 d = i128(a.m_den) * b.m_den;
            return from_i128(n, d);
        }
        return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
    }

    friend Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

    friend Rational operator*(const Rational &a, const Rational &b)
    {
        if (!a.m_big && !b.m_big) {
            if (a.m_den == 1 && b.m_den == 1) {
                std::int64_t p = 0;
                if (!__builtin_mul_overflow(a.m_num, b.m_num, &p)) {
                    return Rational(p);
                }
            }
            return from_i128(i128(a.m_num) * b.m_num, i128(a.m_den) * b.m_den);
        }
        return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
    }

    friend Rational operator/(const Rational &a, const Rational &b)
    {
        if (b.sign() == 0) {
            throw std::domain_error("rational division by zero");
        }
        if (!a.m_big && !b.m_big) {
            return from_i128(i128(a.m_num) * b.m_den, i128(a.m_den) * b.m_num);
        }
        return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
    }

    Rational &operator+=(const Rational &b) { return *this = *this + b; }
    Rational &operator-=(const Rational &b) { return *this = *this - b; }
    Rational &operator*=(const Rational &b) { return *this = *this * b; }
    Rational &operator/=(const Rational &b) { return *this = *this / b; }

    friend bool operator==(const Rational &a, const Rational &b)
    {
        if (!a.m_big && !b.m_big) {
            return a.m_num == b.m_num && a.m_den == b.m_den;
        }
        if (!a.m_big || !b.m_big) {
            return false; // canonical: small values are never stored big
        }
        return *a.m_big == *b.m_big;
    }

    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b)
    {
        if (!a.m_big && !b.m_big) {
            return i128(a.m_num) * b.m_den <=> i128(b.m_num) * a.m_den;
        }
        const int c = cmp(a.to_mpq(), b.to_mpq());
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    using i128 = __int128;
    using u128 = unsigned __int128;

    std::int64_t m_num = 0;
    std::int64_t m_den = 1;
    std::unique_ptr<mpq_class> m_big;

    static mpz_class to_mpz(std::int64_t x)
    {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), static_cast<long>(x));
        return z;
    }

    static mpz_class to_mpz(i128 x)
    {
        const bool neg = x < 0;
        u128 ux = neg ? u128(-(x + 1)) + 1 : u128(x);
        mpz_class hi;
        mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(ux >> 64));
        mpz_class lo;
        mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(ux & ~std::uint64_t{0}));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    }

    static u128 gcd128(u128 a, u128 b)
    {
        while (b != 0) {
            if (a <= ~std::uint64_t{0} && b <= ~std::uint64_t{0}) {
                return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
            }
            const u128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static bool fits(i128 x) { return x >= INT64_MIN + i128(1) && x <= INT64_MAX; }

    static Rational from_i128(i128 n, i128 d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) {
            return {};
        }
        const u128 g = gcd128(n < 0 ? u128(-n) : u128(n), u128(d));
        if (g > 1) {
            n /= i128(g);
            d /= i128(g);
        }
        if (fits(n) && fits(d)) {
            Rational r;
            r.m_num = static_cast<std::int64_t>(n);
            r.m_den = static_cast<std::int64_t>(d);
            return r;
        }
        mpq_class q(to_mpz(n), to_mpz(d));
        Rational r;
        r.m_big = std::make_unique<mpq_class>(std::move(q));
        return r;
    }

    void set_big(const mpq_class &q)
    {
        if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())
            && mpz_cmp_si(q.get_num_mpz_t(), LONG_MIN) != 0) {
            m_num = mpz_get_si(q.get_num_mpz_t());
            m_den = mpz_get_si(q.get_den_mpz_t());
            m_big.reset();
        } else {
            m_big = std::make_unique<mpq_class>(q);
        }
    }
};

} // namespace kms
