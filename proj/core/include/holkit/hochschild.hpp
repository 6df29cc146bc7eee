#ifndef HOLKIT_HOCHSCHILD_HPP
#define HOLKIT_HOCHSCHILD_HPP

#include <cstddef>
#include <vector>

#include <holkit/exact_matrix.hpp>

namespace holkit
{

// Chain complex of graded Q-vector spaces C_0 <- C_1 <- ... <- C_top, kept
// for internal degrees 0..max_degree.
struct graded_complex {
    unsigned max_degree = 0;
    // dims[i][m] = dim of C_i in internal degree m
    std::vector<std::vector<std::size_t>> dims;
    // differentials[i][m] : C_i -> C_(i-1) in degree m, as a
    // dims[i-1][m] x dims[i][m] matrix; differentials[0] is empty.
    std::vector<std::vector<qmatrix>> differentials;

    std::size_t length() const noexcept
    {
        return dims.size();
    }
};

// Number of monomials of degree d in n variables.
std::size_t monomial_count(unsigned n, unsigned d);
std::size_t binomial(unsigned n, unsigned k);

// Koszul complex over B = A (x) A, A = Q[x_1..x_n], on the sequence
// x_j (x) 1 - 1 (x) x_j, truncated at internal degree D. The exterior
// generator e_S sits in homological degree |S| and internal degree |S|.
graded_complex koszul_resolution(unsigned n, unsigned max_degree);

// The same complex tensored over B with A (both tensor factors map to A).
graded_complex koszul_tensored(unsigned n, unsigned max_degree);

// Checks d_(i-1) d_i = 0 exactly in every degree.
bool composes_to_zero(const graded_complex &c);

// dims of H_i in degree m, indexed [i][m]; one extra row past the top term,
// which is always zero.
std::vector<std::vector<std::size_t>> homology_dims(const graded_complex &c);

// sum_i (-1)^i dim C_i in each degree, and the same for homology.
std::vector<long long> euler_characteristic(const std::vector<std::vector<std::size_t>> &dims);

struct acyclicity_report {
    unsigned n;
    unsigned max_degree;
    bool d_squared_zero;
    std::vector<std::vector<std::size_t>> homology;
    // H_i = 0 for i >= 1 in every degree <= max_degree.
    bool acyclic;
    // dim H_0 in degree m equals the monomial count of A.
    bool h0_matches;
    bool euler_consistent;
    bool passed() const noexcept
    {
        return d_squared_zero && acyclic && h0_matches && euler_consistent;
    }
};

acyclicity_report resolution_acyclicity_check(unsigned n, unsigned max_degree);

struct hochschild_table {
    unsigned n;
    unsigned max_degree;
    // dims[i][m] for i = 0..n+1, m = 0..max_degree
    std::vector<std::vector<std::size_t>> dims;
    bool d_squared_zero;
    bool euler_consistent;
};

hochschild_table hochschild_homology(unsigned n, unsigned max_degree);

// dim Omega^i of A in internal degree m, with dx_j of degree 1.
std::size_t omega_dimension(unsigned n, unsigned i, unsigned m);

struct hkr_mismatch {
    unsigned i;
    unsigned m;
    std::size_t computed;
    std::size_t expected;
};

struct hkr_report {
    hochschild_table table;
    std::vector<hkr_mismatch> mismatches;
    bool passed;
};

hkr_report hkr_check(unsigned n, unsigned max_degree);

} // namespace holkit

#endif
