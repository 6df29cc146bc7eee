#include <holkit/error.hpp>
#include <holkit/hochschild.hpp>

#include <map>

namespace holkit
{

std::size_t binomial(unsigned n, unsigned k)
{
    if (k > n) {
        return 0;
    }
    std::size_t out = 1;
    for (unsigned j = 1; j <= k; ++j) {
        out = out * (n - k + j) / j;
    }
    return out;
}

std::size_t monomial_count(unsigned n, unsigned d)
{
    if (n == 0) {
        return d == 0 ? 1 : 0;
    }
    return binomial(n + d - 1, d);
}

namespace
{

using mono = std::vector<unsigned>;

std::vector<mono> monomials(unsigned nvars, unsigned d)
{
    std::vector<mono> out;
    mono cur(nvars, 0);
    auto rec = [&](auto &&self, unsigned var, unsigned left) -> void {
        if (var + 1 == nvars) {
            cur[var] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned a = left + 1; a-- > 0;) {
            cur[var] = a;
            self(self, var + 1, left - a);
        }
        cur[var] = 0;
    };
    if (nvars == 0) {
        if (d == 0) {
            out.push_back(cur);
        }
        return out;
    }
    rec(rec, 0, d);
    return out;
}

// Subsets of {0..n-1} of size i as sorted index lists.
std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned i)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto &&self, unsigned start) -> void {
        if (cur.size() == i) {
            out.push_back(cur);
            return;
        }
        for (unsigned j = start; j < n; ++j) {
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Basis of C_i in degree m: pairs (S, monomial of degree m - i), in the
// polynomial ring with `nvars` variables. Differential coefficient of
// e_S -> e_(S minus s_k) is (-1)^k (x_s - y_s); in the tensored complex both
// x_s and y_s become x_s.
graded_complex build(unsigned n, unsigned max_degree, bool tensored)
{
    if (n < 1) {
        throw parameter_error("need at least one variable");
    }
    if (max_degree < 1) {
        throw parameter_error("degree bound must be at least 1");
    }
    const unsigned nvars = tensored ? n : 2 * n;
    graded_complex c;
    c.max_degree = max_degree;
    c.dims.assign(n + 1, std::vector<std::size_t>(max_degree + 1, 0));
    c.differentials.assign(n + 1, {});

    // index[i][m]: (subset index, monomial) -> basis position
    std::vector<std::vector<std::map<std::pair<std::size_t, mono>, std::size_t>>> index(
        n + 1, std::vector<std::map<std::pair<std::size_t, mono>, std::size_t>>(max_degree + 1));
    std::vector<std::vector<std::vector<unsigned>>> subs(n + 1);
    std::vector<std::map<std::vector<unsigned>, std::size_t>> sub_index(n + 1);
    for (unsigned i = 0; i <= n; ++i) {
        subs[i] = subsets(n, i);
        for (std::size_t s = 0; s < subs[i].size(); ++s) {
            sub_index[i].emplace(subs[i][s], s);
        }
        for (unsigned m = i; m <= max_degree; ++m) {
            const auto monos = monomials(nvars, m - i);
            std::size_t pos = 0;
            for (std::size_t s = 0; s < subs[i].size(); ++s) {
                for (const auto &mo : monos) {
                    index[i][m].emplace(std::make_pair(s, mo), pos++);
                }
            }
            c.dims[i][m] = pos;
        }
    }

    for (unsigned i = 1; i <= n; ++i) {
        c.differentials[i].resize(max_degree + 1);
        for (unsigned m = 0; m <= max_degree; ++m) {
            qmatrix d(c.dims[i - 1][m], c.dims[i][m]);
            for (const auto &[key, col] : index[i][m]) {
                const auto &set = subs[i][key.first];
                for (std::size_t k = 0; k < set.size(); ++k) {
                    std::vector<unsigned> smaller = set;
                    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
                    const std::size_t target = sub_index[i - 1].at(smaller);
                    const rational sign = k % 2 == 0 ? 1 : -1;
                    const unsigned j = set[k];
                    mono up_x = key.second;
                    ++up_x[j];
                    mono up_y = key.second;
                    ++up_y[tensored ? j : n + j];
                    d(index[i - 1][m].at({target, up_x}), col) += sign;
                    d(index[i - 1][m].at({target, up_y}), col) -= sign;
                }
            }
            c.differentials[i][m] = std::move(d);
        }
    }
    return c;
}

} // namespace

graded_complex koszul_resolution(unsigned n, unsigned max_degree)
{
    return build(n, max_degree, false);
}

graded_complex koszul_tensored(unsigned n, unsigned max_degree)
{
    return build(n, max_degree, true);
}

bool composes_to_zero(const graded_complex &c)
{
    for (std::size_t i = 2; i < c.length(); ++i) {
        for (unsigned m = 0; m <= c.max_degree; ++m) {
            if (!(c.differentials[i - 1][m] * c.differentials[i][m]).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<std::size_t>> homology_dims(const graded_complex &c)
{
    const std::size_t len = c.length();
    // ranks[i][m] = rank of d_i in degree m
    std::vector<std::vector<std::size_t>> ranks(len + 1, std::vector<std::size_t>(c.max_degree + 1, 0));
    for (std::size_t i = 1; i < len; ++i) {
        for (unsigned m = 0; m <= c.max_degree; ++m) {
            ranks[i][m] = rank(c.differentials[i][m]);
        }
    }
    std::vector<std::vector<std::size_t>> out(len + 1, std::vector<std::size_t>(c.max_degree + 1, 0));
    for (std::size_t i = 0; i < len; ++i) {
        for (unsigned m = 0; m <= c.max_degree; ++m) {
            out[i][m] = c.dims[i][m] - ranks[i][m] - ranks[i + 1][m];
        }
    }
    return out;
}

std::vector<long long> euler_characteristic(const std::vector<std::vector<std::size_t>> &dims)
{
    std::vector<long long> out(dims.empty() ? 0 : dims.front().size(), 0);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        for (std::size_t m = 0; m < out.size(); ++m) {
            const auto v = static_cast<long long>(dims[i][m]);
            out[m] += i % 2 == 0 ? v : -v;
        }
    }
    return out;
}

acyclicity_report resolution_acyclicity_check(unsigned n, unsigned max_degree)
{
    const graded_complex c = koszul_resolution(n, max_degree);
    acyclicity_report r{n, max_degree, composes_to_zero(c), homology_dims(c), true, true, false};
    for (std::size_t i = 1; i < r.homology.size(); ++i) {
        for (unsigned m = 0; m <= max_degree; ++m) {
            r.acyclic = r.acyclic && r.homology[i][m] == 0;
        }
    }
    for (unsigned m = 0; m <= max_degree; ++m) {
        r.h0_matches = r.h0_matches && r.homology[0][m] == monomial_count(n, m);
    }
    r.euler_consistent = euler_characteristic(c.dims) == euler_characteristic(r.homology);
    return r;
}

hochschild_table hochschild_homology(unsigned n, unsigned max_degree)
{
    const graded_complex c = koszul_tensored(n, max_degree);
    hochschild_table t{n, max_degree, homology_dims(c), composes_to_zero(c), false};
    t.euler_consistent = euler_characteristic(c.dims) == euler_characteristic(t.dims);
    return t;
}

std::size_t omega_dimension(unsigned n, unsigned i, unsigned m)
{
    if (i > m) {
        return 0;
    }
    return binomial(n, i) * monomial_count(n, m - i);
}

hkr_report hkr_check(unsigned n, unsigned max_degree)
{
    hkr_report r{hochschild_homology(n, max_degree), {}, false};
    for (unsigned i = 0; i < r.table.dims.size(); ++i) {
        for (unsigned m = 0; m <= max_degree; ++m) {
            const std::size_t expected = omega_dimension(n, i, m);
            if (r.table.dims[i][m] != expected) {
                r.mismatches.push_back({i, m, r.table.dims[i][m], expected});
            }
        }
    }
    r.passed = r.mismatches.empty() && r.table.d_squared_zero && r.table.euler_consistent;
    return r;
}

} // namespace holkit
