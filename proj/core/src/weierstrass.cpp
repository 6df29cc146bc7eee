#include <holkit/error.hpp>
#include <holkit/weierstrass.hpp>

#include <map>
#include <random>

namespace holkit
{

unsigned ideal_degree(const exponent &e)
{
    unsigned d = 0;
    for (std::size_t j = 1; j < e.size(); ++j) {
        d += e[j];
    }
    return d;
}

unsigned x1_vanishing_order(const multi_series &f)
{
    bool found = false;
    unsigned k = 0;
    for (const auto &[e, c] : f.terms()) {
        if (ideal_degree(e) == 0 && (!found || e[0] < k)) {
            k = e[0];
            found = true;
        }
    }
    if (!found) {
        throw regularity_error("f(X1, 0, ..., 0) vanishes up to order " + std::to_string(f.trunc())
                               + "; change coordinates first");
    }
    return k;
}

multi_series reduce_mod_ideal(const multi_series &s, unsigned order)
{
    multi_series out(s.nvars(), s.trunc());
    for (const auto &[e, c] : s.terms()) {
        if (ideal_degree(e) < order) {
            out.add_term(e, c);
        }
    }
    return out;
}

namespace
{

// Germ arithmetic modulo a staircase monomial ideal: a term X1^a X'^b is kept
// iff |b| < M and a <= N + (M - |b|) k. The X1 budget shrinks with |b|, so
// products stay exact, and it has k spare powers per level to absorb the
// division by X1^k that each correction round performs.
using germ = std::map<exponent, gaussian>;

struct precision {
    unsigned trunc;
    unsigned order;
    unsigned k;

    bool keep(const exponent &e) const
    {
        const unsigned j = ideal_degree(e);
        return j < order && e[0] <= trunc + (order - j) * k;
    }
};

void accumulate(germ &g, const exponent &e, const gaussian &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = g.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            g.erase(it);
        }
    }
}

germ sum(germ a, const germ &b, const gaussian &sign = gaussian(1))
{
    for (const auto &[e, c] : b) {
        accumulate(a, e, c * sign);
    }
    return a;
}

germ product(const germ &a, const germ &b, const precision &prec)
{
    germ out;
    if (a.empty() || b.empty()) {
        return out;
    }
    const std::size_t n = a.begin()->first.size();
    exponent e(n);
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            for (std::size_t j = 0; j < n; ++j) {
                e[j] = ea[j] + eb[j];
            }
            if (prec.keep(e)) {
                accumulate(out, e, ca * cb);
            }
        }
    }
    return out;
}

// Part with X1-degree < k.
germ low_part(const germ &a, unsigned k)
{
    germ out;
    for (const auto &[e, c] : a) {
        if (e[0] < k) {
            out.emplace(e, c);
        }
    }
    return out;
}

// (part with X1-degree >= k) / X1^k
germ shifted_high_part(const germ &a, unsigned k)
{
    germ out;
    for (const auto &[e, c] : a) {
        if (e[0] >= k) {
            exponent shifted = e;
            shifted[0] -= k;
            out.emplace(std::move(shifted), c);
        }
    }
    return out;
}

germ level_part(const germ &a, unsigned level)
{
    germ out;
    for (const auto &[e, c] : a) {
        if (ideal_degree(e) == level) {
            out.emplace(e, c);
        }
    }
    return out;
}

germ to_germ(const multi_series &s, const precision &prec)
{
    germ out;
    for (const auto &[e, c] : s.terms()) {
        if (prec.keep(e)) {
            out.emplace(e, c);
        }
    }
    return out;
}

multi_series to_series(const germ &g, unsigned nvars, unsigned trunc, unsigned order)
{
    multi_series out(nvars, trunc);
    for (const auto &[e, c] : g) {
        if (ideal_degree(e) < order) {
            out.add_term(e, c);
        }
    }
    return out;
}

// Inverse of a unit depending on X1 only, to X1-degree max_degree.
germ invert_x1_unit(const germ &u, unsigned nvars, unsigned max_degree)
{
    std::vector<gaussian> c(max_degree + 1);
    for (const auto &[e, x] : u) {
        if (e[0] <= max_degree) {
            c[e[0]] = x;
        }
    }
    if (c[0].is_zero()) {
        throw non_unit_error("u1 has zero constant term");
    }
    const gaussian c0inv = gaussian(1) / c[0];
    std::vector<gaussian> inv(max_degree + 1);
    inv[0] = c0inv;
    for (unsigned m = 1; m <= max_degree; ++m) {
        gaussian acc;
        for (unsigned l = 1; l <= m; ++l) {
            if (!c[l].is_zero()) {
                acc += c[l] * inv[m - l];
            }
        }
        inv[m] = -acc * c0inv;
    }
    germ out;
    for (unsigned m = 0; m <= max_degree; ++m) {
        exponent e(nvars, 0u);
        e[0] = m;
        accumulate(out, e, inv[m]);
    }
    return out;
}

} // namespace

prepared_form prepare(const multi_series &f, unsigned working_order)
{
    if (working_order == 0) {
        throw parameter_error("working order must be at least 1");
    }
    const unsigned k = x1_vanishing_order(f);
    const unsigned n = f.nvars();
    const precision prec{f.trunc(), working_order, k};
    const germ fg = to_germ(f, prec);

    exponent xk(n, 0u);
    xk[0] = k;
    germ g{{xk, gaussian(1)}};
    // u1 = f(X1, 0, ..., 0) / X1^k
    germ u = shifted_high_part(level_part(fg, 0), k);
    const germ u1inv = invert_x1_unit(u, n, f.trunc() + working_order * k);

    for (unsigned i = 1; i < working_order; ++i) {
        const germ defect = sum(fg, product(g, u, prec), gaussian(-1));
        g = sum(g, low_part(product(defect, u1inv, prec), k));
        // f - g_{i+1} u_i == X1^k v_i modulo I^{i+1}
        const germ w = level_part(sum(fg, product(g, u, prec), gaussian(-1)), i);
        if (!low_part(w, k).empty()) {
            throw numeric_error("preparation step left a low-order defect at level " + std::to_string(i));
        }
        u = sum(u, shifted_high_part(w, k));
    }

    return {k, to_series(g, n, f.trunc(), working_order), to_series(u, n, f.trunc(), working_order),
            working_order};
}

weierstrass_quotient divide(const multi_series &f, const multi_series &g, unsigned working_order)
{
    if (f.nvars() != g.nvars()) {
        throw dimension_error("dividend and divisor live in different rings");
    }
    if (working_order == 0) {
        throw parameter_error("working order must be at least 1");
    }
    if (g.is_zero()) {
        throw divisor_error("zero divisor");
    }
    const unsigned n = f.nvars();
    unsigned k = 0;
    for (const auto &[e, c] : g.terms()) {
        k = std::max(k, e[0]);
    }
    exponent xk(n, 0u);
    xk[0] = k;
    germ rest;
    for (const auto &[e, c] : g.terms()) {
        if (e[0] == k) {
            if (e != xk || c != gaussian(1)) {
                throw divisor_error("divisor is not monic in X1");
            }
        } else if (ideal_degree(e) == 0) {
            throw divisor_error("lower X1-coefficients of the divisor must vanish at the origin");
        } else {
            rest.emplace(e, c);
        }
    }

    const precision prec{f.trunc(), working_order, k};
    germ rem = to_germ(f, prec);
    germ q, r;
    // X1^k = g - rest, and rest lies in the ideal, so each round pushes the
    // remainder one level deeper.
    for (unsigned round = 0; round <= working_order && !rem.empty(); ++round) {
        const germ high = shifted_high_part(rem, k);
        r = sum(r, low_part(rem, k));
        q = sum(q, high);
        rem = product(high, rest, prec);
        for (auto &[e, c] : rem) {
            c = -c;
        }
    }
    return {to_series(q, n, f.trunc(), working_order), to_series(r, n, f.trunc(), working_order)};
}

multi_series apply_linear_change(const multi_series &f, const int_matrix &a)
{
    const unsigned n = f.nvars();
    if (a.size() != n) {
        throw dimension_error("change matrix must be n x n");
    }
    std::vector<multi_series> images;
    for (unsigned i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw dimension_error("change matrix must be n x n");
        }
        multi_series xi(n, f.trunc());
        for (unsigned j = 0; j < n; ++j) {
            xi += multi_series::variable(n, f.trunc(), j, gaussian(static_cast<int>(a[i][j])));
        }
        images.push_back(std::move(xi));
    }
    return substitute(f, images);
}

int_matrix random_unimodular(unsigned n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    int_matrix a(n, std::vector<long>(n, 0));
    for (unsigned i = 0; i < n; ++i) {
        a[i][i] = 1;
    }
    if (n == 1) {
        return a;
    }
    // Products of elementary row operations and one permutation keep det = +-1.
    const unsigned steps = 3 * n;
    for (unsigned s = 0; s < steps; ++s) {
        const unsigned i = static_cast<unsigned>(rng() % n);
        unsigned j = static_cast<unsigned>(rng() % (n - 1));
        if (j >= i) {
            ++j;
        }
        long c = static_cast<long>(rng() % 5) - 2;
        if (c == 0) {
            c = 1;
        }
        for (unsigned col = 0; col < n; ++col) {
            a[i][col] += c * a[j][col];
        }
    }
    for (unsigned i = n - 1; i > 0; --i) {
        const unsigned j = static_cast<unsigned>(rng() % (i + 1));
        std::swap(a[i], a[j]);
    }
    return a;
}

coordinate_change generic_coordinate_change(const multi_series &f, std::uint64_t seed, unsigned max_attempts)
{
    std::uint64_t s = seed;
    for (unsigned attempt = 1; attempt <= max_attempts; ++attempt, ++s) {
        auto a = random_unimodular(f.nvars(), s);
        auto transformed = apply_linear_change(f, a);
        try {
            const unsigned k = x1_vanishing_order(transformed);
            return {std::move(transformed), std::move(a), attempt, s, k};
        } catch (const regularity_error &) {
        }
    }
    throw retry_cap_error("no X1-regular coordinates after " + std::to_string(max_attempts) + " attempts", s - 1);
}

} // namespace holkit
