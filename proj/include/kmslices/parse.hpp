#pragma once

// Recursive-descent reader for the text grammar printed by MPoly/RatFunc:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := ('+' | '-') unary | power
//   power := atom ('^' ['-'] digits)?
//   atom  := digits | 'w[' i ',' r ']' | 'u[' i ',' r ']' | 'z' | '(' expr ')'

#include <cctype>
#include <string>
#include <string_view>

#include "ratfunc.hpp"

namespace kms
{

namespace detail
{

class ExprParser
{
public:
    explicit ExprParser(std::string_view text) : m_text(text) {}

    RatFunc parse()
    {
        RatFunc r = expr();
        skip_ws();
        if (m_pos != m_text.size()) {
            fail("unexpected character");
        }
        return r;
    }

private:
    std::string_view m_text;
    std::size_t m_pos = 0;

    [[noreturn]] void fail(const std::string &what) const
    {
        throw input_error("cannot parse expression '" + std::string(m_text) + "' at position "
                          + std::to_string(m_pos) + ": " + what);
    }

    void skip_ws()
    {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (m_pos < m_text.size() && m_text[m_pos] == c) {
            ++m_pos;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    std::string digits()
    {
        skip_ws();
        const auto start = m_pos;
        while (m_pos < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
        if (start == m_pos) {
            fail("expected a number");
        }
        return std::string(m_text.substr(start, m_pos - start));
    }

    std::size_t small_int()
    {
        const auto s = digits();
        if (s.size() > 6) {
            fail("index too large");
        }
        return std::stoul(s);
    }

    RatFunc expr()
    {
        std::vector<RatFunc> terms;
        terms.push_back(term());
        while (true) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (accept('-')) {
                terms.push_back(-term());
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms.front() : RatFunc::sum(terms);
    }

    RatFunc term()
    {
        RatFunc acc = unary();
        while (true) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                const RatFunc d = unary();
                if (d.is_zero()) {
                    fail("division by zero");
                }
                acc = acc / d;
            } else {
                break;
            }
        }
        return acc;
    }

    RatFunc unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    RatFunc power()
    {
        RatFunc base = atom();
        if (!accept('^')) {
            return base;
        }
        bool negative = false;
        if (accept('(')) {
            negative = accept('-');
            const auto e = small_int();
            expect(')');
            return raise(base, negative, e);
        }
        negative = accept('-');
        return raise(base, negative, small_int());
    }

    RatFunc raise(const RatFunc &base, bool negative, std::size_t e)
    {
        if (negative && base.is_zero()) {
            fail("zero to a negative power");
        }
        // Monomials raise cheaply and keep Laurent exponents exact.
        if (base.is_polynomial() && base.num().size() == 1) {
            const auto &t = base.num().leading();
            std::vector<Monomial::Factor> pairs;
            for (const auto &[v, x] : t.mono.factors()) {
                pairs.emplace_back(v, static_cast<std::int32_t>(x * static_cast<std::int64_t>(e)));
            }
            Rational c = 1;
            for (std::size_t k = 0; k < e; ++k) {
                c *= t.coef;
            }
            RatFunc r(MPoly(Monomial::from_pairs(std::move(pairs)), c));
            return negative ? r.inverse() : r;
        }
        return base.pow(negative ? -static_cast<int>(e) : static_cast<int>(e));
    }

    RatFunc atom()
    {
        skip_ws();
        if (m_pos >= m_text.size()) {
            fail("unexpected end of input");
        }
        const char c = m_text[m_pos];
        if (c == '(') {
            ++m_pos;
            RatFunc r = expr();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return RatFunc(Rational(mpz_class(digits())));
        }
        if (c == 'z') {
            ++m_pos;
            return RatFunc(MPoly::var(zvar()));
        }
        if (c == 'w' || c == 'u') {
            ++m_pos;
            expect('[');
            const auto i = small_int();
            expect(',');
            const auto r = small_int();
            expect(']');
            if (r == 0) {
                fail("variable indices r start at 1");
            }
            return RatFunc(MPoly::var(c == 'w' ? wvar(i, r) : uvar(i, r)));
        }
        fail("unexpected character");
    }
};

} // namespace detail

inline RatFunc parse_ratfunc(std::string_view text) { return detail::ExprParser(text).parse(); }

inline MPoly parse_mpoly(std::string_view text)
{
    const RatFunc r = parse_ratfunc(text);
    if (!r.is_polynomial()) {
        throw input_error("expression '" + std::string(text) + "' is not a polynomial");
    }
    return r.num();
}

} // namespace kms
