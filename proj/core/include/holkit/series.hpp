#ifndef HOLKIT_SERIES_HPP
#define HOLKIT_SERIES_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <holkit/scalar.hpp>

namespace holkit
{

using exponent = std::vector<unsigned>;

unsigned total_degree(const exponent &e);

// Sparse multivariate power series over Q(i), truncated by total degree.
//
// Invariants: nvars >= 1, every stored exponent has total degree <= trunc,
// no stored coefficient is zero. Two series are equal iff nvars, trunc and
// the term maps agree. Values are never mutated by the arithmetic below.
class multi_series
{
public:
    using term_map = std::map<exponent, gaussian>;

    multi_series(unsigned nvars, unsigned trunc);

    static multi_series constant(unsigned nvars, unsigned trunc, const gaussian &c);
    static multi_series variable(unsigned nvars, unsigned trunc, unsigned index, const gaussian &c = gaussian(1));
    static multi_series monomial(unsigned nvars, unsigned trunc, const exponent &e, const gaussian &c);
    // Terms above trunc are dropped, zeros skipped, duplicates summed.
    static multi_series from_terms(unsigned nvars, unsigned trunc, const term_map &terms);

    unsigned nvars() const noexcept
    {
        return m_nvars;
    }
    unsigned trunc() const noexcept
    {
        return m_trunc;
    }
    const term_map &terms() const noexcept
    {
        return m_terms;
    }
    bool is_zero() const noexcept
    {
        return m_terms.empty();
    }

    gaussian coeff(const exponent &e) const;
    gaussian constant_term() const;
    // Largest total degree of a stored term, or -1 for the zero series.
    int degree() const;

    // Accumulates c into the coefficient of e (dropped when above trunc).
    void add_term(const exponent &e, const gaussian &c);

    // Same series viewed at a lower truncation order.
    multi_series truncated(unsigned trunc) const;

    multi_series operator-() const;
    multi_series &operator+=(const multi_series &o);
    multi_series &operator-=(const multi_series &o);

    friend multi_series operator+(multi_series a, const multi_series &b)
    {
        return a += b;
    }
    friend multi_series operator-(multi_series a, const multi_series &b)
    {
        return a -= b;
    }
    friend multi_series operator*(const multi_series &a, const multi_series &b);
    friend multi_series operator*(const multi_series &a, const gaussian &c);
    friend multi_series operator*(const gaussian &c, const multi_series &a)
    {
        return a * c;
    }
    friend bool operator==(const multi_series &a, const multi_series &b) = default;

    multi_series pow(unsigned e) const;

    std::string to_string() const;

private:
    unsigned m_nvars;
    unsigned m_trunc;
    term_map m_terms;
};

enum class ring_op { add, sub, mul };

// Dispatching form of the ring operations; throws dimension_error when nvars
// or trunc disagree.
multi_series apply_ring_op(const multi_series &a, const multi_series &b, ring_op op);
multi_series scale(const multi_series &a, const gaussian &c);

// Geometric-series inverse of a series with nonzero constant term:
// f * invert_unit(f) == 1 modulo total degree trunc + 1.
multi_series invert_unit(const multi_series &f);

enum class substitution_source {
    // f is a truncation of a genuine power series; substituting a g_j with a
    // nonzero constant term would need the unknown tail of f.
    series,
    // f is an honest polynomial; composition is finite in every case.
    polynomial,
};

// Composition f(g_1, ..., g_k) where f has k = g.size() variables and all g_j
// share nvars and trunc; the result lives in the ring of the g_j.
multi_series substitute(const multi_series &f, std::span<const multi_series> g,
                        substitution_source source = substitution_source::series);

struct diagonal_division {
    multi_series quotient;
    // F(T, T); no term contains the second variable.
    multi_series remainder;
};

// Splits F(T, U) = (U - T) * Q + F(T, T) with T the first and U the second
// variable.
diagonal_division divide_diagonal(const multi_series &f);

struct weighted_bound {
    std::vector<rational> radii;
    rational p;
    rational value;
    // False when some term needed an irrational root; value is then a
    // rational upper bound.
    bool exact = true;
};

// sum over terms of (|a_I|_# * r^I)^p with |a+bi|_# = |a| + |b|, 0 < p <= 1.
weighted_bound weighted_norm(const multi_series &f, std::span<const rational> radii, const rational &p);

// Smallest rational upper bound of x^p at resolution 2^-bits (exact when x^p
// is rational).
rational rational_power_upper(const rational &x, const rational &p, unsigned bits, bool &exact);

} // namespace holkit

#endif
