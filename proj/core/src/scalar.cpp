#include <holkit/error.hpp>
#include <holkit/scalar.hpp>

#include <cctype>
#include <ostream>

namespace holkit
{

rational make_rational(long num, long den)
{
    if (den == 0) {
        throw parameter_error("zero denominator");
    }
    rational q(num, den);
    q.canonicalize();
    return q;
}

namespace
{

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    rational out;
    if (const auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw input_error("malformed rational '" + std::string(text) + "'");
        }
        mpz_class n(std::string(num), 10), d(std::string(den), 10);
        if (d == 0) {
            throw input_error("zero denominator in '" + std::string(text) + "'");
        }
        out = rational(n, d);
    } else if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        const auto whole = s.substr(0, dot);
        const auto frac = s.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))
            || (whole.empty() && frac.empty())) {
            throw input_error("malformed decimal '" + std::string(text) + "'");
        }
        mpz_class n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        mpz_class d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, frac.size());
        out = rational(n, d);
    } else {
        if (!all_digits(s)) {
            throw input_error("malformed rational '" + std::string(text) + "'");
        }
        out = rational(mpz_class(std::string(s), 10));
    }
    out.canonicalize();
    return negative ? rational(-out) : out;
}

std::string to_string(const rational &q)
{
    return q.get_str();
}

double to_double(const rational &q)
{
    return q.get_d();
}

rational gaussian::sharp_abs() const
{
    return rational(abs(m_re) + abs(m_im));
}

rational gaussian::abs_squared() const
{
    return rational(m_re * m_re + m_im * m_im);
}

gaussian &gaussian::operator+=(const gaussian &o)
{
    m_re += o.m_re;
    m_im += o.m_im;
    return *this;
}

gaussian &gaussian::operator-=(const gaussian &o)
{
    m_re -= o.m_re;
    m_im -= o.m_im;
    return *this;
}

gaussian &gaussian::operator*=(const gaussian &o)
{
    rational re = m_re * o.m_re - m_im * o.m_im;
    rational im = m_re * o.m_im + m_im * o.m_re;
    m_re = std::move(re);
    m_im = std::move(im);
    return *this;
}

gaussian &gaussian::operator/=(const gaussian &o)
{
    const rational n = o.abs_squared();
    if (sgn(n) == 0) {
        throw parameter_error("division by zero");
    }
    *this *= o.conj();
    m_re /= n;
    m_im /= n;
    return *this;
}

std::string to_string(const gaussian &z)
{
    if (z.is_real()) {
        return to_string(z.re());
    }
    std::string im = to_string(z.im()) + "i";
    if (sgn(z.re()) == 0) {
        return im;
    }
    return to_string(z.re()) + (sgn(z.im()) > 0 ? "+" : "") + im;
}

std::ostream &operator<<(std::ostream &os, const gaussian &z)
{
    return os << to_string(z);
}

} // namespace holkit
