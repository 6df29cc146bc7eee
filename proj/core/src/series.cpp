#include <holkit/error.hpp>
#include <holkit/expr.hpp>
#include <holkit/series.hpp>

#include <numeric>

namespace holkit
{

unsigned total_degree(const exponent &e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

multi_series::multi_series(unsigned nvars, unsigned trunc) : m_nvars(nvars), m_trunc(trunc)
{
    if (nvars == 0) {
        throw dimension_error("a series needs at least one variable");
    }
}

multi_series multi_series::constant(unsigned nvars, unsigned trunc, const gaussian &c)
{
    multi_series s(nvars, trunc);
    s.add_term(exponent(nvars, 0u), c);
    return s;
}

multi_series multi_series::variable(unsigned nvars, unsigned trunc, unsigned index, const gaussian &c)
{
    if (index >= nvars) {
        throw dimension_error("variable index out of range");
    }
    exponent e(nvars, 0u);
    e[index] = 1;
    return monomial(nvars, trunc, e, c);
}

multi_series multi_series::monomial(unsigned nvars, unsigned trunc, const exponent &e, const gaussian &c)
{
    multi_series s(nvars, trunc);
    s.add_term(e, c);
    return s;
}

multi_series multi_series::from_terms(unsigned nvars, unsigned trunc, const term_map &terms)
{
    multi_series s(nvars, trunc);
    for (const auto &[e, c] : terms) {
        s.add_term(e, c);
    }
    return s;
}

gaussian multi_series::coeff(const exponent &e) const
{
    auto it = m_terms.find(e);
    return it == m_terms.end() ? gaussian{} : it->second;
}

gaussian multi_series::constant_term() const
{
    return coeff(exponent(m_nvars, 0u));
}

int multi_series::degree() const
{
    int d = -1;
    for (const auto &[e, c] : m_terms) {
        d = std::max(d, static_cast<int>(total_degree(e)));
    }
    return d;
}

void multi_series::add_term(const exponent &e, const gaussian &c)
{
    if (e.size() != m_nvars) {
        throw dimension_error("exponent length does not match nvars");
    }
    if (c.is_zero() || total_degree(e) > m_trunc) {
        return;
    }
    auto [it, inserted] = m_terms.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            m_terms.erase(it);
        }
    }
}

multi_series multi_series::truncated(unsigned trunc) const
{
    if (trunc > m_trunc) {
        throw dimension_error("cannot raise the truncation order of a series");
    }
    return from_terms(m_nvars, trunc, m_terms);
}

namespace
{

void require_same_ring(const multi_series &a, const multi_series &b)
{
    if (a.nvars() != b.nvars() || a.trunc() != b.trunc()) {
        throw dimension_error("series ring mismatch: (" + std::to_string(a.nvars()) + " vars, N="
                              + std::to_string(a.trunc()) + ") vs (" + std::to_string(b.nvars())
                              + " vars, N=" + std::to_string(b.trunc()) + ")");
    }
}

} // namespace

multi_series multi_series::operator-() const
{
    multi_series out(m_nvars, m_trunc);
    for (const auto &[e, c] : m_terms) {
        out.m_terms.emplace(e, -c);
    }
    return out;
}

multi_series &multi_series::operator+=(const multi_series &o)
{
    require_same_ring(*this, o);
    for (const auto &[e, c] : o.m_terms) {
        add_term(e, c);
    }
    return *this;
}

multi_series &multi_series::operator-=(const multi_series &o)
{
    require_same_ring(*this, o);
    for (const auto &[e, c] : o.m_terms) {
        add_term(e, -c);
    }
    return *this;
}

multi_series operator*(const multi_series &a, const multi_series &b)
{
    require_same_ring(a, b);
    multi_series out(a.nvars(), a.trunc());
    std::vector<std::pair<const exponent *, unsigned>> bdeg;
    bdeg.reserve(b.terms().size());
    for (const auto &[e, c] : b.terms()) {
        bdeg.emplace_back(&e, total_degree(e));
    }
    exponent e(a.nvars());
    for (const auto &[ea, ca] : a.terms()) {
        const unsigned da = total_degree(ea);
        auto itb = b.terms().begin();
        for (std::size_t k = 0; k < bdeg.size(); ++k, ++itb) {
            if (da + bdeg[k].second > a.trunc()) {
                continue;
            }
            const exponent &eb = *bdeg[k].first;
            for (unsigned j = 0; j < a.nvars(); ++j) {
                e[j] = ea[j] + eb[j];
            }
            out.add_term(e, ca * itb->second);
        }
    }
    return out;
}

multi_series operator*(const multi_series &a, const gaussian &c)
{
    multi_series out(a.nvars(), a.trunc());
    for (const auto &[e, x] : a.terms()) {
        out.add_term(e, x * c);
    }
    return out;
}

multi_series multi_series::pow(unsigned e) const
{
    multi_series out = constant(m_nvars, m_trunc, gaussian(1));
    multi_series base = *this;
    while (e > 0) {
        if (e & 1u) {
            out = out * base;
        }
        e >>= 1;
        if (e > 0) {
            base = base * base;
        }
    }
    return out;
}

std::string multi_series::to_string() const
{
    sym_poly p;
    for (const auto &[e, c] : m_terms) {
        sym_monomial m;
        for (unsigned j = 0; j < m_nvars; ++j) {
            if (e[j] > 0) {
                m.emplace("x" + std::to_string(j + 1), e[j]);
            }
        }
        p.add_term(m, c);
    }
    return p.to_string();
}

multi_series apply_ring_op(const multi_series &a, const multi_series &b, ring_op op)
{
    switch (op) {
    case ring_op::add:
        return a + b;
    case ring_op::sub:
        return a - b;
    case ring_op::mul:
        return a * b;
    }
    return a;
}

multi_series scale(const multi_series &a, const gaussian &c)
{
    return a * c;
}

multi_series invert_unit(const multi_series &f)
{
    const gaussian c = f.constant_term();
    if (c.is_zero()) {
        throw non_unit_error("series has zero constant term");
    }
    const gaussian cinv = gaussian(1) / c;
    const multi_series one = multi_series::constant(f.nvars(), f.trunc(), gaussian(1));
    // f = c (1 - h) with h(0) = 0, so 1/f = c^-1 (1 + h + ... + h^trunc).
    const multi_series h = one - f * cinv;
    multi_series acc = one;
    for (unsigned k = 0; k < f.trunc(); ++k) {
        acc = one + h * acc;
    }
    return acc * cinv;
}

multi_series substitute(const multi_series &f, std::span<const multi_series> g, substitution_source source)
{
    if (g.empty() || g.size() != f.nvars()) {
        throw dimension_error("substitution needs one series per variable of f");
    }
    for (const auto &gj : g) {
        if (gj.nvars() != g[0].nvars() || gj.trunc() != g[0].trunc()) {
            throw dimension_error("substituted series must share a ring");
        }
        if (source == substitution_source::series && !gj.constant_term().is_zero()) {
            throw divergence_error("substituting a series with nonzero constant term into a truncated series");
        }
    }
    const unsigned nvars = g[0].nvars();
    const unsigned trunc = source == substitution_source::series ? std::min(f.trunc(), g[0].trunc()) : g[0].trunc();
    std::vector<multi_series> gs;
    for (const auto &gj : g) {
        gs.push_back(gj.truncated(trunc));
    }

    // Powers of each g_j are computed once and shared by all terms of f.
    std::vector<std::vector<multi_series>> powers(gs.size());
    auto power = [&](std::size_t j, unsigned e) -> const multi_series & {
        auto &pj = powers[j];
        if (pj.empty()) {
            pj.push_back(multi_series::constant(nvars, trunc, gaussian(1)));
        }
        while (pj.size() <= e) {
            pj.push_back(pj.back() * gs[j]);
        }
        return pj[e];
    };

    multi_series out(nvars, trunc);
    for (const auto &[e, c] : f.terms()) {
        multi_series term = multi_series::constant(nvars, trunc, c);
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] > 0) {
                term = term * power(j, e[j]);
            }
        }
        out += term;
    }
    return out;
}

diagonal_division divide_diagonal(const multi_series &f)
{
    if (f.nvars() != 2) {
        throw dimension_error("diagonal division needs exactly two variables");
    }
    multi_series q(2, f.trunc());
    multi_series r(2, f.trunc());
    for (const auto &[e, c] : f.terms()) {
        const unsigned a = e[0], b = e[1];
        r.add_term({a + b, 0u}, c);
        // T^a (U^b - T^b) / (U - T) = T^a * sum_{j<b} U^j T^(b-1-j)
        for (unsigned j = 0; j < b; ++j) {
            q.add_term({a + b - 1 - j, j}, c);
        }
    }
    return {std::move(q), std::move(r)};
}

rational rational_power_upper(const rational &x, const rational &p, unsigned bits, bool &exact)
{
    if (sgn(x) < 0) {
        throw parameter_error("negative base in rational power");
    }
    if (sgn(x) == 0) {
        exact = true;
        return 0;
    }
    const mpz_class &pa = p.get_num();
    const mpz_class &pb = p.get_den();
    if (!pa.fits_ulong_p() || !pb.fits_ulong_p()) {
        throw parameter_error("exponent too large");
    }
    const unsigned long a = pa.get_ui(), b = pb.get_ui();
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.get_num().get_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), x.get_den().get_mpz_t(), a);
    if (b == 1) {
        exact = true;
        return rational(n, d);
    }
    mpz_class rn, rd;
    const bool en = mpz_root(rn.get_mpz_t(), n.get_mpz_t(), b) != 0;
    const bool ed = mpz_root(rd.get_mpz_t(), d.get_mpz_t(), b) != 0;
    if (en && ed) {
        exact = true;
        rational out(rn, rd);
        out.canonicalize();
        return out;
    }
    exact = false;
    // ceil((n 2^(bits b) / d)^(1/b)) / 2^bits
    mpz_class scaled = n << static_cast<mp_bitcnt_t>(bits * b);
    mpz_class y;
    mpz_cdiv_q(y.get_mpz_t(), scaled.get_mpz_t(), d.get_mpz_t());
    mpz_class m;
    mpz_root(m.get_mpz_t(), y.get_mpz_t(), b);
    mpz_class mb;
    mpz_pow_ui(mb.get_mpz_t(), m.get_mpz_t(), b);
    if (mb < y) {
        m += 1;
    }
    mpz_class den = mpz_class(1) << static_cast<mp_bitcnt_t>(bits);
    rational out(m, den);
    out.canonicalize();
    return out;
}

weighted_bound weighted_norm(const multi_series &f, std::span<const rational> radii, const rational &p)
{
    if (radii.size() != f.nvars()) {
        throw dimension_error("one radius per variable required");
    }
    for (const auto &r : radii) {
        if (sgn(r) <= 0) {
            throw parameter_error("radii must be positive");
        }
    }
    if (sgn(p) <= 0 || p > 1) {
        throw parameter_error("p must lie in (0, 1]");
    }
    weighted_bound out{{radii.begin(), radii.end()}, p, 0, true};
    for (const auto &[e, c] : f.terms()) {
        rational t = c.sharp_abs();
        for (std::size_t j = 0; j < e.size(); ++j) {
            for (unsigned k = 0; k < e[j]; ++k) {
                t *= radii[j];
            }
        }
        bool exact = true;
        out.value += rational_power_upper(t, p, 64, exact);
        out.exact = out.exact && exact;
    }
    return out;
}

} // namespace holkit
