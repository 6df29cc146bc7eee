#ifndef HOLKIT_CHARCLASSES_HPP
#define HOLKIT_CHARCLASSES_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <holkit/scalar.hpp>
#include <holkit/series.hpp>

namespace holkit
{

// Graded Q-algebra generated by degree-1 classes xi_1..xi_m subject to a
// triangular rewrite system: xi_j^(d_j) -> an expression of strictly lower
// xi_j-degree whose other generators all come before xi_j. Projective space
// factors use h^(n+1) -> 0; projective bundles use
// xi^d -> -sum_{i>=1} c_i(V) xi^(d-i).
//
// Normal forms are the monomials with exponent e_j < d_j; the top degree is
// sum (d_j - 1) and is spanned by a single monomial.
class hodge_ring
{
public:
    struct generator {
        std::string name;
        unsigned relation_power;
        std::map<exponent, rational> relation_rhs;
    };

    explicit hodge_ring(std::vector<generator> generators);

    const std::vector<generator> &generators() const noexcept
    {
        return m_generators;
    }
    std::size_t ngens() const noexcept
    {
        return m_generators.size();
    }
    unsigned top_degree() const noexcept
    {
        return m_top_degree;
    }
    exponent top_monomial() const;
    std::vector<exponent> basis() const;

    std::map<exponent, rational> normal_form(const std::map<exponent, rational> &poly) const;

private:
    std::vector<generator> m_generators;
    unsigned m_top_degree = 0;
};

using ring_ptr = std::shared_ptr<const hodge_ring>;

// Element of a hodge_ring, always in normal form.
class coh_class
{
public:
    explicit coh_class(ring_ptr ring);
    coh_class(ring_ptr ring, const std::map<exponent, rational> &poly);

    static coh_class constant(ring_ptr ring, const rational &c);
    static coh_class generator(ring_ptr ring, std::size_t index, const rational &c = rational(1));

    const ring_ptr &ring() const noexcept
    {
        return m_ring;
    }
    const std::map<exponent, rational> &coeffs() const noexcept
    {
        return m_coeffs;
    }
    bool is_zero() const noexcept
    {
        return m_coeffs.empty();
    }
    rational coeff(const exponent &e) const;

    coh_class degree_part(unsigned d) const;
    // True when every term has degree d (the zero class qualifies).
    bool is_homogeneous(unsigned d) const;

    coh_class operator-() const;
    friend coh_class operator+(const coh_class &a, const coh_class &b);
    friend coh_class operator-(const coh_class &a, const coh_class &b);
    friend coh_class operator*(const coh_class &a, const coh_class &b);
    friend coh_class operator*(const coh_class &a, const rational &c);
    friend bool operator==(const coh_class &a, const coh_class &b);

    coh_class pow(unsigned e) const;

    std::string to_string() const;

private:
    ring_ptr m_ring;
    std::map<exponent, rational> m_coeffs;
};

// Virtual bundle as a difference of Chern-root multisets.
struct bundle_spec {
    ring_ptr ring;
    std::vector<coh_class> plus_roots;
    std::vector<coh_class> minus_roots;

    int rank() const
    {
        return static_cast<int>(plus_roots.size()) - static_cast<int>(minus_roots.size());
    }
};

bundle_spec line_bundle(const coh_class &c1);
bundle_spec trivial_bundle(const ring_ptr &ring, unsigned rank);
bundle_spec direct_sum(const bundle_spec &v, const bundle_spec &w);
// [V] - [W]
bundle_spec difference(const bundle_spec &v, const bundle_spec &w);
bundle_spec dual(const bundle_spec &v);
bundle_spec tensor(const bundle_spec &v, const bundle_spec &w);
// Symmetric power of an honest bundle (no minus roots).
bundle_spec sym_power(const bundle_spec &v, unsigned m);

struct space;
using space_ptr = std::shared_ptr<const space>;

struct space {
    enum class kind { point, proj_space, product, proj_bundle };
    kind shape;
    ring_ptr ring;
    bundle_spec tangent;
    unsigned dim;
    // Readable construction, e.g. "P1xP2" or "P(O+O(1))/P1".
    std::string name;
    // product: the two factors; proj_bundle: the base.
    std::vector<space_ptr> parts;
    // proj_bundle only: the bundle on the base.
    std::vector<bundle_spec> base_bundle;
};

space_ptr point();
space_ptr proj_space(unsigned n);
space_ptr product(const space_ptr &x, const space_ptr &y);
// Lines in V; xi = c_1(O(1)) and the relative tangent bundle is
// pi^*V (x) O(1) - O.
space_ptr proj_bundle(const space_ptr &x, const bundle_spec &v);

// Coefficients of c(V) = prod(1 + x_j t) / prod(1 + y_j t), index = degree.
std::vector<coh_class> total_chern(const bundle_spec &v);
coh_class chern_character(const bundle_spec &v);
// Coefficients of Q(x) = x / (1 - e^-x) up to degree d, by exact series
// inversion of (1 - e^-x) / x.
std::vector<rational> todd_series(unsigned d);
coh_class todd(const bundle_spec &v);

// Coefficient of the top monomial; the normalization is int_{P^n} h^n = 1.
rational integrate(const space &x, const coh_class &a);

struct supported_map {
    enum class kind { identity, first_projection, second_projection, bundle_projection };
    kind shape;
    space_ptr source;
    space_ptr target;
};

supported_map identity_map(const space_ptr &x);
supported_map first_projection(const space_ptr &product_space);
supported_map second_projection(const space_ptr &product_space);
supported_map bundle_projection(const space_ptr &bundle_space);

coh_class pullback(const supported_map &f, const coh_class &a);
bundle_spec pullback(const supported_map &f, const bundle_spec &v);
coh_class pushforward(const supported_map &f, const coh_class &a);

// V on X, W on Y, returns pr_1^*V (x) pr_2^*W on X x Y.
bundle_spec external_tensor(const space_ptr &product_space, const bundle_spec &v, const bundle_spec &w);

enum class euler_normalization { hodge, hochschild };
coh_class euler_class(const bundle_spec &line, euler_normalization normalization);

// int_X ch(V) Td(T_X)
rational hrr(const space &x, const bundle_spec &v);

// chi(P^n, O(k)) by counting monomials: h^0 counts a in Z_{>=0}^(n+1) with
// sum k, h^n counts a in Z_{<=-1}^(n+1) with sum k.
long long oracle_chi_proj(unsigned n, long k);

struct grr_result {
    coh_class lhs;
    coh_class rhs;
    bool equal;
};

// lhs = ch(f_* V) Td(T_Y), rhs = f_*(ch(V) Td(T_X)), with f_* V supplied by
// the caller as a bundle on the target.
grr_result grr_check(const supported_map &f, const bundle_spec &v, const bundle_spec &pushed);

// Catalog syntax. Spaces: "pt", "P<n>", products "P1xP2", and projective
// bundles "P(<bundle>)/<base>". Bundles: sums and differences of
// "O", "O(d)", "O(d1,...,dm)", optionally prefixed by a multiplicity "3*".
// O(d1..dm) gives the line bundle with c_1 = sum d_j xi_j over the ring
// generators; on a projective bundle a single degree means O(d) of the
// fibres. Maps: "<source>-><target>" with the source a product whose first
// or second factor is the target, a bundle "P(<bundle>)" over the target,
// or equal to the target.
space_ptr parse_space(std::string_view text);
bundle_spec parse_bundle(const space &x, std::string_view text);
supported_map parse_map(std::string_view text);

} // namespace holkit

#endif
