#include <holkit/charclasses.hpp>
#include <holkit/error.hpp>
#include <holkit/expr.hpp>

#include <algorithm>
#include <cctype>
#include <functional>

namespace holkit
{

hodge_ring::hodge_ring(std::vector<generator> generators) : m_generators(std::move(generators))
{
    const std::size_t m = m_generators.size();
    for (std::size_t j = 0; j < m; ++j) {
        const auto &g = m_generators[j];
        if (g.relation_power == 0) {
            throw parameter_error("relation power of '" + g.name + "' must be positive");
        }
        for (const auto &[e, c] : g.relation_rhs) {
            if (e.size() != m) {
                throw dimension_error("relation exponent has the wrong length");
            }
            if (e[j] >= g.relation_power) {
                throw parameter_error("relation for '" + g.name + "' is not triangular");
            }
            for (std::size_t l = j + 1; l < m; ++l) {
                if (e[l] != 0) {
                    throw parameter_error("relation for '" + g.name + "' uses a later generator");
                }
            }
            if (total_degree(e) != g.relation_power) {
                throw parameter_error("relation for '" + g.name + "' is not homogeneous");
            }
        }
        m_top_degree += g.relation_power - 1;
    }
}

exponent hodge_ring::top_monomial() const
{
    exponent e;
    for (const auto &g : m_generators) {
        e.push_back(g.relation_power - 1);
    }
    return e;
}

std::vector<exponent> hodge_ring::basis() const
{
    std::vector<exponent> out{exponent(m_generators.size(), 0u)};
    for (std::size_t j = 0; j < m_generators.size(); ++j) {
        std::vector<exponent> next;
        for (const auto &e : out) {
            for (unsigned p = 0; p < m_generators[j].relation_power; ++p) {
                exponent f = e;
                f[j] = p;
                next.push_back(std::move(f));
            }
        }
        out = std::move(next);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const exponent &a, const exponent &b) { return total_degree(a) < total_degree(b); });
    return out;
}

std::map<exponent, rational> hodge_ring::normal_form(const std::map<exponent, rational> &poly) const
{
    std::map<exponent, rational> out;
    std::vector<std::pair<exponent, rational>> work(poly.begin(), poly.end());
    while (!work.empty()) {
        auto [e, c] = std::move(work.back());
        work.pop_back();
        if (sgn(c) == 0) {
            continue;
        }
        if (e.size() != m_generators.size()) {
            throw dimension_error("class exponent has the wrong length");
        }
        // Relations are homogeneous and the basis stops at top_degree.
        if (total_degree(e) > m_top_degree) {
            continue;
        }
        std::size_t j = m_generators.size();
        while (j-- > 0 && e[j] < m_generators[j].relation_power) {
        }
        if (j == static_cast<std::size_t>(-1)) {
            auto [it, inserted] = out.try_emplace(e, c);
            if (!inserted) {
                it->second += c;
                if (sgn(it->second) == 0) {
                    out.erase(it);
                }
            }
            continue;
        }
        // Rewrite the latest generator first; the result only raises earlier
        // generators, so the process terminates.
        exponent base = e;
        base[j] -= m_generators[j].relation_power;
        for (const auto &[r, rc] : m_generators[j].relation_rhs) {
            exponent f = base;
            for (std::size_t l = 0; l < f.size(); ++l) {
                f[l] += r[l];
            }
            work.emplace_back(std::move(f), c * rc);
        }
    }
    return out;
}

coh_class::coh_class(ring_ptr ring) : m_ring(std::move(ring))
{
    if (!m_ring) {
        throw parameter_error("class needs a ring");
    }
}

coh_class::coh_class(ring_ptr ring, const std::map<exponent, rational> &poly) : coh_class(std::move(ring))
{
    m_coeffs = m_ring->normal_form(poly);
}

coh_class coh_class::constant(ring_ptr ring, const rational &c)
{
    const std::size_t m = ring->ngens();
    return coh_class(std::move(ring), {{exponent(m, 0u), c}});
}

coh_class coh_class::generator(ring_ptr ring, std::size_t index, const rational &c)
{
    if (index >= ring->ngens()) {
        throw dimension_error("generator index out of range");
    }
    exponent e(ring->ngens(), 0u);
    e[index] = 1;
    return coh_class(std::move(ring), {{e, c}});
}

rational coh_class::coeff(const exponent &e) const
{
    auto it = m_coeffs.find(e);
    return it == m_coeffs.end() ? rational(0) : it->second;
}

coh_class coh_class::degree_part(unsigned d) const
{
    coh_class out(m_ring);
    for (const auto &[e, c] : m_coeffs) {
        if (total_degree(e) == d) {
            out.m_coeffs.emplace(e, c);
        }
    }
    return out;
}

bool coh_class::is_homogeneous(unsigned d) const
{
    return std::all_of(m_coeffs.begin(), m_coeffs.end(), [d](const auto &t) { return total_degree(t.first) == d; });
}

namespace
{

void require_same_ring(const coh_class &a, const coh_class &b)
{
    if (a.ring() != b.ring()) {
        throw ring_mismatch_error("classes live in different rings");
    }
}

} // namespace

coh_class coh_class::operator-() const
{
    coh_class out(m_ring);
    for (const auto &[e, c] : m_coeffs) {
        out.m_coeffs.emplace(e, -c);
    }
    return out;
}

coh_class operator+(const coh_class &a, const coh_class &b)
{
    require_same_ring(a, b);
    coh_class out = a;
    for (const auto &[e, c] : b.m_coeffs) {
        auto [it, inserted] = out.m_coeffs.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) {
                out.m_coeffs.erase(it);
            }
        }
    }
    return out;
}

coh_class operator-(const coh_class &a, const coh_class &b)
{
    return a + (-b);
}

coh_class operator*(const coh_class &a, const coh_class &b)
{
    require_same_ring(a, b);
    std::map<exponent, rational> poly;
    for (const auto &[ea, ca] : a.m_coeffs) {
        for (const auto &[eb, cb] : b.m_coeffs) {
            exponent e = ea;
            for (std::size_t l = 0; l < e.size(); ++l) {
                e[l] += eb[l];
            }
            poly[e] += ca * cb;
        }
    }
    return coh_class(a.m_ring, poly);
}

coh_class operator*(const coh_class &a, const rational &c)
{
    coh_class out(a.m_ring);
    if (sgn(c) == 0) {
        return out;
    }
    for (const auto &[e, x] : a.m_coeffs) {
        out.m_coeffs.emplace(e, x * c);
    }
    return out;
}

bool operator==(const coh_class &a, const coh_class &b)
{
    return a.m_ring == b.m_ring && a.m_coeffs == b.m_coeffs;
}

coh_class coh_class::pow(unsigned e) const
{
    coh_class out = constant(m_ring, 1);
    for (unsigned k = 0; k < e; ++k) {
        out = out * *this;
    }
    return out;
}

std::string coh_class::to_string() const
{
    sym_poly p;
    const auto &gens = m_ring->generators();
    for (const auto &[e, c] : m_coeffs) {
        sym_monomial m;
        for (std::size_t l = 0; l < e.size(); ++l) {
            if (e[l] > 0) {
                m.emplace(gens[l].name, e[l]);
            }
        }
        p.add_term(m, gaussian(c));
    }
    return p.to_string();
}

bundle_spec line_bundle(const coh_class &c1)
{
    if (!c1.is_homogeneous(1)) {
        throw parameter_error("a Chern root must have pure degree 1");
    }
    return {c1.ring(), {c1}, {}};
}

bundle_spec trivial_bundle(const ring_ptr &ring, unsigned rank)
{
    return {ring, std::vector<coh_class>(rank, coh_class(ring)), {}};
}

namespace
{

void require_same_ring(const bundle_spec &v, const bundle_spec &w)
{
    if (v.ring != w.ring) {
        throw ring_mismatch_error("bundles live on different spaces");
    }
}

} // namespace

bundle_spec direct_sum(const bundle_spec &v, const bundle_spec &w)
{
    require_same_ring(v, w);
    bundle_spec out = v;
    out.plus_roots.insert(out.plus_roots.end(), w.plus_roots.begin(), w.plus_roots.end());
    out.minus_roots.insert(out.minus_roots.end(), w.minus_roots.begin(), w.minus_roots.end());
    return out;
}

bundle_spec difference(const bundle_spec &v, const bundle_spec &w)
{
    require_same_ring(v, w);
    bundle_spec out = v;
    out.plus_roots.insert(out.plus_roots.end(), w.minus_roots.begin(), w.minus_roots.end());
    out.minus_roots.insert(out.minus_roots.end(), w.plus_roots.begin(), w.plus_roots.end());
    return out;
}

bundle_spec dual(const bundle_spec &v)
{
    bundle_spec out{v.ring, {}, {}};
    for (const auto &x : v.plus_roots) {
        out.plus_roots.push_back(-x);
    }
    for (const auto &y : v.minus_roots) {
        out.minus_roots.push_back(-y);
    }
    return out;
}

bundle_spec tensor(const bundle_spec &v, const bundle_spec &w)
{
    require_same_ring(v, w);
    bundle_spec out{v.ring, {}, {}};
    for (const auto &x : v.plus_roots) {
        for (const auto &y : w.plus_roots) {
            out.plus_roots.push_back(x + y);
        }
        for (const auto &y : w.minus_roots) {
            out.minus_roots.push_back(x + y);
        }
    }
    for (const auto &x : v.minus_roots) {
        for (const auto &y : w.plus_roots) {
            out.minus_roots.push_back(x + y);
        }
        for (const auto &y : w.minus_roots) {
            out.plus_roots.push_back(x + y);
        }
    }
    return out;
}

bundle_spec sym_power(const bundle_spec &v, unsigned m)
{
    if (!v.minus_roots.empty()) {
        throw parameter_error("symmetric powers need an honest bundle");
    }
    bundle_spec out{v.ring, {}, {}};
    const std::size_t r = v.plus_roots.size();
    if (r == 0) {
        if (m == 0) {
            out.plus_roots.push_back(coh_class(v.ring));
        }
        return out;
    }
    // Multisets of size m as nondecreasing index sequences.
    std::vector<std::size_t> idx(m, 0);
    for (;;) {
        coh_class root(v.ring);
        for (auto i : idx) {
            root = root + v.plus_roots[i];
        }
        out.plus_roots.push_back(std::move(root));
        std::size_t pos = m;
        while (pos > 0 && idx[pos - 1] == r - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        const std::size_t next = idx[pos - 1] + 1;
        for (std::size_t q = pos - 1; q < m; ++q) {
            idx[q] = next;
        }
    }
    return out;
}

namespace
{

// Embeds a class into a ring whose generators contain the source ring's
// generators at positions offset .. offset + n - 1.
coh_class embed(const coh_class &a, const ring_ptr &target, std::size_t offset)
{
    std::map<exponent, rational> poly;
    for (const auto &[e, c] : a.coeffs()) {
        exponent f(target->ngens(), 0u);
        for (std::size_t l = 0; l < e.size(); ++l) {
            f[offset + l] = e[l];
        }
        poly.emplace(std::move(f), c);
    }
    return coh_class(target, poly);
}

bundle_spec embed(const bundle_spec &v, const ring_ptr &target, std::size_t offset)
{
    bundle_spec out{target, {}, {}};
    for (const auto &x : v.plus_roots) {
        out.plus_roots.push_back(embed(x, target, offset));
    }
    for (const auto &y : v.minus_roots) {
        out.minus_roots.push_back(embed(y, target, offset));
    }
    return out;
}

std::string unique_name(std::string name, const std::vector<hodge_ring::generator> &taken)
{
    auto clash = [&](const std::string &n) {
        return std::any_of(taken.begin(), taken.end(), [&](const auto &g) { return g.name == n; });
    };
    while (clash(name)) {
        name += "'";
    }
    return name;
}

std::string describe_roots(const bundle_spec &v)
{
    std::string out;
    auto add = [&](const coh_class &x, const char *sign) {
        out += (out.empty() && sign[0] == '+') ? "" : sign;
        const std::string c1 = x.to_string();
        out += c1 == "0" ? "O" : "O(" + c1 + ")";
    };
    for (const auto &x : v.plus_roots) {
        add(x, "+");
    }
    for (const auto &y : v.minus_roots) {
        add(y, "-");
    }
    return out.empty() ? "0" : out;
}

} // namespace

space_ptr point()
{
    auto ring = std::make_shared<const hodge_ring>(std::vector<hodge_ring::generator>{});
    return std::make_shared<const space>(space{space::kind::point, ring, trivial_bundle(ring, 0), 0, "pt", {}, {}});
}

space_ptr proj_space(unsigned n)
{
    auto ring = std::make_shared<const hodge_ring>(std::vector<hodge_ring::generator>{{"h", n + 1, {}}});
    const coh_class h = coh_class::generator(ring, 0);
    // Euler sequence: T + O = O(1)^(n+1).
    bundle_spec tangent{ring, std::vector<coh_class>(n + 1, h), {coh_class(ring)}};
    return std::make_shared<const space>(
        space{space::kind::proj_space, ring, std::move(tangent), n, "P" + std::to_string(n), {}, {}});
}

space_ptr product(const space_ptr &x, const space_ptr &y)
{
    const std::size_t nx = x->ring->ngens();
    const std::size_t m = nx + y->ring->ngens();
    std::vector<hodge_ring::generator> gens;
    for (const auto &g : x->ring->generators()) {
        hodge_ring::generator h{g.name, g.relation_power, {}};
        for (const auto &[e, c] : g.relation_rhs) {
            exponent f(m, 0u);
            std::copy(e.begin(), e.end(), f.begin());
            h.relation_rhs.emplace(std::move(f), c);
        }
        gens.push_back(std::move(h));
    }
    for (const auto &g : y->ring->generators()) {
        hodge_ring::generator h{unique_name(g.name, gens), g.relation_power, {}};
        for (const auto &[e, c] : g.relation_rhs) {
            exponent f(m, 0u);
            std::copy(e.begin(), e.end(), f.begin() + static_cast<std::ptrdiff_t>(nx));
            h.relation_rhs.emplace(std::move(f), c);
        }
        gens.push_back(std::move(h));
    }
    auto ring = std::make_shared<const hodge_ring>(std::move(gens));
    bundle_spec tangent = direct_sum(embed(x->tangent, ring, 0), embed(y->tangent, ring, nx));
    return std::make_shared<const space>(space{space::kind::product, ring, std::move(tangent), x->dim + y->dim,
                                               x->name + "x" + y->name, {x, y}, {}});
}

space_ptr proj_bundle(const space_ptr &x, const bundle_spec &v)
{
    if (v.ring != x->ring) {
        throw ring_mismatch_error("bundle does not live on the base space");
    }
    if (!v.minus_roots.empty()) {
        throw parameter_error("projective bundles need an honest bundle (no minus roots)");
    }
    if (v.rank() < 1) {
        throw parameter_error("projective bundle of a rank-0 bundle");
    }
    const unsigned d = static_cast<unsigned>(v.rank());
    const std::size_t nx = x->ring->ngens();
    const std::size_t m = nx + 1;
    std::vector<hodge_ring::generator> gens;
    for (const auto &g : x->ring->generators()) {
        hodge_ring::generator h{g.name, g.relation_power, {}};
        for (const auto &[e, c] : g.relation_rhs) {
            exponent f(m, 0u);
            std::copy(e.begin(), e.end(), f.begin());
            h.relation_rhs.emplace(std::move(f), c);
        }
        gens.push_back(std::move(h));
    }
    // xi^d = -sum_{i>=1} c_i(V) xi^(d-i)
    const auto c = total_chern(v);
    hodge_ring::generator xi{unique_name("xi", gens), d, {}};
    for (unsigned i = 1; i <= d && i < c.size(); ++i) {
        for (const auto &[e, coeff] : c[i].coeffs()) {
            exponent f(m, 0u);
            std::copy(e.begin(), e.end(), f.begin());
            f[nx] = d - i;
            xi.relation_rhs[f] -= coeff;
        }
    }
    std::erase_if(xi.relation_rhs, [](const auto &t) { return sgn(t.second) == 0; });
    gens.push_back(std::move(xi));
    auto ring = std::make_shared<const hodge_ring>(std::move(gens));

    const coh_class xi_class = coh_class::generator(ring, nx);
    bundle_spec relative{ring, {}, {coh_class(ring)}};
    for (const auto &root : v.plus_roots) {
        relative.plus_roots.push_back(xi_class + embed(root, ring, 0));
    }
    bundle_spec tangent = direct_sum(embed(x->tangent, ring, 0), relative);
    return std::make_shared<const space>(space{space::kind::proj_bundle, ring, std::move(tangent), x->dim + d - 1,
                                               "P(" + describe_roots(v) + ")/" + x->name, {x}, {v}});
}

std::vector<coh_class> total_chern(const bundle_spec &v)
{
    const unsigned top = v.ring->top_degree();
    std::vector<coh_class> c(top + 1, coh_class(v.ring));
    c[0] = coh_class::constant(v.ring, 1);
    for (const auto &x : v.plus_roots) {
        for (unsigned i = top; i >= 1; --i) {
            c[i] = c[i] + x * c[i - 1];
        }
    }
    for (const auto &y : v.minus_roots) {
        // multiply by 1 / (1 + y t): c'_i = c_i - y c'_(i-1)
        for (unsigned i = 1; i <= top; ++i) {
            c[i] = c[i] - y * c[i - 1];
        }
    }
    return c;
}

namespace
{

coh_class evaluate_series(const std::vector<rational> &coeffs, const coh_class &x)
{
    coh_class acc(x.ring());
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * x + coh_class::constant(x.ring(), coeffs[k]);
    }
    return acc;
}

std::vector<rational> exp_series(unsigned d)
{
    std::vector<rational> out(d + 1);
    rational fact = 1;
    for (unsigned k = 0; k <= d; ++k) {
        if (k > 0) {
            fact *= k;
        }
        out[k] = 1 / fact;
    }
    return out;
}

// (1 - e^-x) / x = sum (-1)^i x^i / (i+1)!
std::vector<rational> inverse_todd_series(unsigned d)
{
    std::vector<rational> out(d + 1);
    rational fact = 1;
    for (unsigned i = 0; i <= d; ++i) {
        fact *= i + 1;
        out[i] = (i % 2 == 0 ? rational(1) : rational(-1)) / fact;
    }
    return out;
}

} // namespace

coh_class chern_character(const bundle_spec &v)
{
    const auto e = exp_series(v.ring->top_degree());
    coh_class out(v.ring);
    for (const auto &x : v.plus_roots) {
        out = out + evaluate_series(e, x);
    }
    for (const auto &y : v.minus_roots) {
        out = out - evaluate_series(e, y);
    }
    return out;
}

std::vector<rational> todd_series(unsigned d)
{
    const auto inv = inverse_todd_series(d);
    multi_series s(1, d);
    for (unsigned i = 0; i <= d; ++i) {
        s.add_term({i}, gaussian(inv[i]));
    }
    const multi_series q = invert_unit(s);
    std::vector<rational> out(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
        out[i] = q.coeff({i}).re();
    }
    return out;
}

coh_class todd(const bundle_spec &v)
{
    const unsigned top = v.ring->top_degree();
    const auto q = todd_series(top);
    const auto qinv = inverse_todd_series(top);
    coh_class out = coh_class::constant(v.ring, 1);
    for (const auto &x : v.plus_roots) {
        out = out * evaluate_series(q, x);
    }
    for (const auto &y : v.minus_roots) {
        out = out * evaluate_series(qinv, y);
    }
    return out;
}

rational integrate(const space &x, const coh_class &a)
{
    if (a.ring() != x.ring) {
        throw ring_mismatch_error("class does not live on " + x.name);
    }
    return a.coeff(x.ring->top_monomial());
}

supported_map identity_map(const space_ptr &x)
{
    return {supported_map::kind::identity, x, x};
}

supported_map first_projection(const space_ptr &product_space)
{
    if (product_space->shape != space::kind::product) {
        throw catalog_error(product_space->name + " is not a product");
    }
    return {supported_map::kind::first_projection, product_space, product_space->parts[0]};
}

supported_map second_projection(const space_ptr &product_space)
{
    if (product_space->shape != space::kind::product) {
        throw catalog_error(product_space->name + " is not a product");
    }
    return {supported_map::kind::second_projection, product_space, product_space->parts[1]};
}

supported_map bundle_projection(const space_ptr &bundle_space)
{
    if (bundle_space->shape != space::kind::proj_bundle) {
        throw catalog_error(bundle_space->name + " is not a projective bundle");
    }
    return {supported_map::kind::bundle_projection, bundle_space, bundle_space->parts[0]};
}

namespace
{

std::size_t pullback_offset(const supported_map &f)
{
    return f.shape == supported_map::kind::second_projection ? f.source->parts[0]->ring->ngens() : 0;
}

} // namespace

coh_class pullback(const supported_map &f, const coh_class &a)
{
    if (a.ring() != f.target->ring) {
        throw ring_mismatch_error("class does not live on the target " + f.target->name);
    }
    if (f.shape == supported_map::kind::identity) {
        return a;
    }
    return embed(a, f.source->ring, pullback_offset(f));
}

bundle_spec pullback(const supported_map &f, const bundle_spec &v)
{
    if (v.ring != f.target->ring) {
        throw ring_mismatch_error("bundle does not live on the target " + f.target->name);
    }
    if (f.shape == supported_map::kind::identity) {
        return v;
    }
    return embed(v, f.source->ring, pullback_offset(f));
}

coh_class pushforward(const supported_map &f, const coh_class &a)
{
    if (a.ring() != f.source->ring) {
        throw ring_mismatch_error("class does not live on the source " + f.source->name);
    }
    std::map<exponent, rational> out;
    switch (f.shape) {
    case supported_map::kind::identity:
        return a;
    case supported_map::kind::first_projection:
    case supported_map::kind::second_projection: {
        const std::size_t nx = f.source->parts[0]->ring->ngens();
        const bool first = f.shape == supported_map::kind::first_projection;
        // Integrate out the other factor: keep terms whose other part is its
        // top monomial.
        const auto &other = first ? f.source->parts[1] : f.source->parts[0];
        const exponent other_top = other->ring->top_monomial();
        for (const auto &[e, c] : a.coeffs()) {
            const exponent xpart(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nx));
            const exponent ypart(e.begin() + static_cast<std::ptrdiff_t>(nx), e.end());
            if ((first ? ypart : xpart) == other_top) {
                out.emplace(first ? xpart : ypart, c);
            }
        }
        break;
    }
    case supported_map::kind::bundle_projection: {
        const std::size_t nx = f.target->ring->ngens();
        const unsigned d = f.source->ring->generators()[nx].relation_power;
        // alpha = sum_{i<d} alpha_i xi^i  |->  alpha_(d-1)
        for (const auto &[e, c] : a.coeffs()) {
            if (e[nx] == d - 1) {
                out.emplace(exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nx)), c);
            }
        }
        break;
    }
    }
    return coh_class(f.target->ring, out);
}

bundle_spec external_tensor(const space_ptr &product_space, const bundle_spec &v, const bundle_spec &w)
{
    return tensor(pullback(first_projection(product_space), v), pullback(second_projection(product_space), w));
}

coh_class euler_class(const bundle_spec &line, euler_normalization normalization)
{
    if (line.rank() != 1) {
        throw parameter_error("Euler class needs a line bundle");
    }
    coh_class c1(line.ring);
    for (const auto &x : line.plus_roots) {
        c1 = c1 + x;
    }
    for (const auto &y : line.minus_roots) {
        c1 = c1 - y;
    }
    if (normalization == euler_normalization::hodge) {
        return c1;
    }
    const unsigned top = line.ring->top_degree();
    auto e = exp_series(top);
    // 1 - e^-c1
    std::vector<rational> coeffs(top + 1);
    for (unsigned k = 1; k <= top; ++k) {
        coeffs[k] = (k % 2 == 1 ? e[k] : rational(-e[k]));
    }
    return evaluate_series(coeffs, c1);
}

rational hrr(const space &x, const bundle_spec &v)
{
    if (v.ring != x.ring) {
        throw ring_mismatch_error("bundle does not live on " + x.name);
    }
    return integrate(x, chern_character(v) * todd(x.tangent));
}

namespace
{

// Tuples of `parts` integers in [lo, hi] summing to `sum`.
long long count_tuples(unsigned parts, long sum, long lo, long hi)
{
    if (parts == 0) {
        return sum == 0 ? 1 : 0;
    }
    long long total = 0;
    for (long a = lo; a <= hi; ++a) {
        total += count_tuples(parts - 1, sum - a, lo, hi);
    }
    return total;
}

} // namespace

long long oracle_chi_proj(unsigned n, long k)
{
    const unsigned parts = n + 1;
    long long h0 = 0, hn = 0;
    if (k >= 0) {
        h0 = count_tuples(parts, k, 0, k);
    }
    // Each entry is <= -1, so each is >= k + n.
    const long lo = k + static_cast<long>(n);
    if (lo <= -1) {
        hn = count_tuples(parts, k, lo, -1);
    }
    return h0 + (n % 2 == 0 ? hn : -hn);
}

grr_result grr_check(const supported_map &f, const bundle_spec &v, const bundle_spec &pushed)
{
    if (v.ring != f.source->ring) {
        throw ring_mismatch_error("bundle does not live on the source " + f.source->name);
    }
    if (pushed.ring != f.target->ring) {
        throw input_error("pushforward data must be a bundle on the target " + f.target->name);
    }
    grr_result out{chern_character(pushed) * todd(f.target->tangent),
                   pushforward(f, chern_character(v) * todd(f.source->tangent)), false};
    out.equal = out.lhs == out.rhs;
    return out;
}

namespace
{

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return std::string(s);
}

// Splits at depth-0 occurrences of sep (parentheses nest).
std::vector<std::string> split_top(std::string_view s, char sep)
{
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        } else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    return out;
}

std::size_t matching_paren(std::string_view s, std::size_t open)
{
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')' && --depth == 0) {
            return i;
        }
    }
    throw input_error("unbalanced parentheses in '" + std::string(s) + "'");
}

long parse_long(const std::string &s)
{
    const std::string t = trim(s);
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(t, &used);
    } catch (const std::exception &) {
        throw input_error("expected an integer, got '" + t + "'");
    }
    if (used != t.size()) {
        throw input_error("expected an integer, got '" + t + "'");
    }
    return v;
}

space_ptr parse_factor(const std::string &text)
{
    if (text == "pt") {
        return point();
    }
    if (text.size() >= 2 && text[0] == 'P' && std::all_of(text.begin() + 1, text.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        })) {
        const long n = parse_long(text.substr(1));
        if (n > 16) {
            throw input_error("projective space dimension too large");
        }
        return proj_space(static_cast<unsigned>(n));
    }
    throw input_error("unknown space '" + text + "'");
}

} // namespace

space_ptr parse_space(std::string_view text)
{
    const std::string s = trim(text);
    if (s.rfind("P(", 0) == 0) {
        const std::size_t close = matching_paren(s, 1);
        if (close + 1 >= s.size() || s[close + 1] != '/') {
            throw input_error("projective bundle needs a base: P(<bundle>)/<base>");
        }
        const space_ptr base = parse_space(s.substr(close + 2));
        return proj_bundle(base, parse_bundle(*base, s.substr(2, close - 2)));
    }
    const auto factors = split_top(s, 'x');
    space_ptr out = parse_factor(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = product(out, parse_factor(factors[i]));
    }
    return out;
}

bundle_spec parse_bundle(const space &x, std::string_view text)
{
    const std::string s = trim(text);
    if (s.empty()) {
        throw input_error("empty bundle description");
    }
    bundle_spec out{x.ring, {}, {}};
    std::size_t pos = 0;
    bool negative = false;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    int depth = 0;
    std::size_t start = pos;
    auto flush = [&](std::string term, bool neg) {
        term = trim(term);
        if (term.empty()) {
            throw input_error("empty summand in bundle '" + s + "'");
        }
        long mult = 1;
        if (const auto star = term.find('*'); star != std::string::npos) {
            mult = parse_long(term.substr(0, star));
            term = trim(term.substr(star + 1));
        }
        if (mult < 0) {
            throw input_error("negative multiplicity in bundle '" + s + "'");
        }
        bundle_spec piece{x.ring, {}, {}};
        if (term == "T") {
            piece = x.tangent;
        } else if (term == "O") {
            piece = trivial_bundle(x.ring, 1);
        } else if (term.size() > 3 && term.rfind("O(", 0) == 0 && term.back() == ')') {
            const auto degs = split_top(std::string_view(term).substr(2, term.size() - 3), ',');
            coh_class c1(x.ring);
            const std::size_t m = x.ring->ngens();
            if (degs.size() == m) {
                for (std::size_t j = 0; j < m; ++j) {
                    c1 = c1 + coh_class::generator(x.ring, j, rational(parse_long(degs[j])));
                }
            } else if (degs.size() == 1 && x.shape == space::kind::proj_bundle) {
                c1 = coh_class::generator(x.ring, m - 1, rational(parse_long(degs[0])));
            } else if (degs.size() == 1 && m == 0) {
                parse_long(degs[0]);
            } else {
                throw input_error("'" + term + "' needs " + std::to_string(m) + " degrees on " + x.name);
            }
            piece = line_bundle(c1);
        } else {
            throw input_error("unknown bundle term '" + term + "'");
        }
        for (long k = 0; k < mult; ++k) {
            out = neg ? difference(out, piece) : direct_sum(out, piece);
        }
    };
    for (std::size_t i = pos; i < s.size(); ++i) {
        if (s[i] == '(') {
            ++depth;
        } else if (s[i] == ')') {
            --depth;
        } else if ((s[i] == '+' || s[i] == '-') && depth == 0) {
            flush(s.substr(start, i - start), negative);
            negative = s[i] == '-';
            start = i + 1;
        }
    }
    flush(s.substr(start), negative);
    return out;
}

supported_map parse_map(std::string_view text)
{
    const std::string s = trim(text);
    const auto arrow = s.find("->");
    if (arrow == std::string::npos) {
        throw input_error("map needs the form <source>-><target>");
    }
    const std::string lhs = trim(std::string_view(s).substr(0, arrow));
    const std::string rhs = trim(std::string_view(s).substr(arrow + 2));
    const space_ptr target = parse_space(rhs);
    if (lhs.rfind("P(", 0) == 0) {
        const std::size_t close = matching_paren(lhs, 1);
        const std::string rest = trim(std::string_view(lhs).substr(close + 1));
        if (!rest.empty() && rest != "/" + target->name) {
            throw catalog_error("projective bundle base does not match the target " + target->name);
        }
        return bundle_projection(proj_bundle(target, parse_bundle(*target, lhs.substr(2, close - 2))));
    }
    const space_ptr source = parse_space(lhs);
    if (source->name == target->name) {
        return identity_map(source);
    }
    if (source->shape == space::kind::product) {
        if (source->parts[0]->name == target->name) {
            return first_projection(source);
        }
        if (source->parts[1]->name == target->name) {
            return second_projection(source);
        }
    }
    throw catalog_error("unsupported map " + s);
}

} // namespace holkit
