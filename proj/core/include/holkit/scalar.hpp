#ifndef HOLKIT_SCALAR_HPP
#define HOLKIT_SCALAR_HPP

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace holkit
{

// Exact rationals. mpq_class keeps values canonical (lowest terms, positive
// denominator) as long as every constructor goes through canonicalize().
using rational = mpq_class;

rational make_rational(long num, long den = 1);

// Accepts "p", "-p/q" and terminating decimals such as "0.125".
rational parse_rational(std::string_view text);

// "p/q" form, or "p" when the denominator is 1.
std::string to_string(const rational &q);

double to_double(const rational &q);

// Element of Q(i), the exact stand-in for complex coefficients.
class gaussian
{
public:
    gaussian() = default;
    gaussian(rational re) : m_re(std::move(re)) {}
    gaussian(rational re, rational im) : m_re(std::move(re)), m_im(std::move(im)) {}
    gaussian(int re) : m_re(re) {}

    static gaussian i()
    {
        return gaussian{0, 1};
    }

    const rational &re() const noexcept
    {
        return m_re;
    }
    const rational &im() const noexcept
    {
        return m_im;
    }

    bool is_zero() const
    {
        return sgn(m_re) == 0 && sgn(m_im) == 0;
    }
    bool is_real() const
    {
        return sgn(m_im) == 0;
    }

    gaussian conj() const
    {
        return {m_re, -m_im};
    }

    // |a| + |b|: rational, subadditive, and within a factor sqrt(2) of |z|.
    rational sharp_abs() const;
    // a^2 + b^2, the exact square of the complex modulus.
    rational abs_squared() const;

    gaussian operator-() const
    {
        return {-m_re, -m_im};
    }
    gaussian &operator+=(const gaussian &o);
    gaussian &operator-=(const gaussian &o);
    gaussian &operator*=(const gaussian &o);
    gaussian &operator/=(const gaussian &o);

    friend gaussian operator+(gaussian a, const gaussian &b)
    {
        return a += b;
    }
    friend gaussian operator-(gaussian a, const gaussian &b)
    {
        return a -= b;
    }
    friend gaussian operator*(gaussian a, const gaussian &b)
    {
        return a *= b;
    }
    friend gaussian operator/(gaussian a, const gaussian &b)
    {
        return a /= b;
    }
    friend bool operator==(const gaussian &a, const gaussian &b)
    {
        return a.m_re == b.m_re && a.m_im == b.m_im;
    }

private:
    rational m_re{0};
    rational m_im{0};
};

// "3", "-1/2", "2i", "1/3-2/5i".
std::string to_string(const gaussian &z);
std::ostream &operator<<(std::ostream &os, const gaussian &z);

} // namespace holkit

#endif
