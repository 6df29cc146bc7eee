#ifndef HOLKIT_WEIERSTRASS_HPP
#define HOLKIT_WEIERSTRASS_HPP

#include <cstdint>
#include <vector>

#include <holkit/series.hpp>

namespace holkit
{

// f = g * u with g monic of degree k in X1 whose lower coefficients vanish at
// the origin and u a unit. Everything is exact modulo total degree trunc and
// modulo (X2, ..., Xn)^working_order.
struct prepared_form {
    unsigned k;
    multi_series g;
    multi_series u;
    unsigned working_order;
};

struct weierstrass_quotient {
    multi_series q;
    // X1-degree strictly below the divisor's.
    multi_series r;
};

using int_matrix = std::vector<std::vector<long>>;

struct coordinate_change {
    multi_series transformed;
    // transformed(x) = f(A x), i.e. x_i is replaced by sum_j A[i][j] x_j.
    int_matrix matrix;
    unsigned attempts;
    std::uint64_t seed;
    unsigned k;
};

// Order of vanishing of f(X1, 0, ..., 0); throws regularity_error when that
// restriction is zero up to the truncation order.
unsigned x1_vanishing_order(const multi_series &f);

// Degree of a monomial in X2..Xn.
unsigned ideal_degree(const exponent &e);

// Drops every term lying in (X2, ..., Xn)^order.
multi_series reduce_mod_ideal(const multi_series &s, unsigned order);

// The inductive preparation: g_1 = X1^k, u_1 = f(X1,0..0)/X1^k, then
// working_order - 1 correction rounds, each fixing one more power of the
// ideal. The input is treated as an exact polynomial.
prepared_form prepare(const multi_series &f, unsigned working_order);

// Weierstrass division by a monic divisor g (X1-degree k, lower coefficients
// vanishing at the origin): f = q g + r with deg_X1 r < k.
weierstrass_quotient divide(const multi_series &f, const multi_series &g, unsigned working_order);

multi_series apply_linear_change(const multi_series &f, const int_matrix &a);

// Random unimodular substitutions derived from seed, seed+1, ... until the
// result is X1-regular. Throws retry_cap_error after max_attempts failures.
coordinate_change generic_coordinate_change(const multi_series &f, std::uint64_t seed, unsigned max_attempts = 8);

int_matrix random_unimodular(unsigned n, std::uint64_t seed);

} // namespace holkit

#endif
