#ifndef HOLKIT_OPERATORS_HPP
#define HOLKIT_OPERATORS_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include <holkit/exact_matrix.hpp>
#include <holkit/scalar.hpp>
#include <holkit/series.hpp>

namespace holkit
{

using matrix = Eigen::MatrixXd;

// p-norms use two conventions. For 0 < p <= 1 the value is the p-sum
// sum |x_i|^p with no root taken (the quasi-norm that makes l^p a p-Banach
// space); for p > 1 it is the usual (sum |x_i|^p)^(1/p).
double p_norm(std::span<const double> x, double p);

struct singular_spectrum {
    // Nonincreasing, nonnegative, min(rows, cols) entries.
    std::vector<double> sigma;
    // max |<u_i, u_j>| / (|u_i| |u_j|) and |V^T V - 1| after the last sweep.
    double orthogonality_residual = 0;
    unsigned sweeps = 0;

    // sum_n sigma_n^p
    double schatten(double p) const;
};

// One-sided Jacobi SVD. Throws numeric_error when the sweeps do not converge.
singular_spectrum singular_values(const matrix &a);

double schatten_sum(const matrix &a, double p);

std::vector<double> diagonal_mult(std::span<const double> lambda, std::span<const double> x);

// 2^p C^p sum_{i not in head} |lambda_i|^p: bounds sum_{i not in head}
// |lambda_i x_i - lambda_i y_i|^p for all x, y with sup-norm <= C.
double tail_bound(std::span<const double> lambda, std::span<const std::size_t> head, double p, double c);

// The quantity tail_bound controls, measured for concrete x and y.
double tail_psum(std::span<const double> lambda, std::span<const double> x, std::span<const double> y,
                 std::span<const std::size_t> head, double p);

// sum_i max_j |h_ij|. Row i of H^j is then bounded entrywise by
// (max_j |h_ij|) s^(j-1), which is what the Neumann error bound uses.
double row_sup_certificate(const matrix &h);

// Smallest J with s^(J+1) / (1 - s) <= tol.
unsigned neumann_depth(double s, double tol);

struct neumann_result {
    matrix inverse;
    unsigned depth;
    double s;
    // s^(J+1) / (1 - s); bounds every entry of inverse - (1 - H)^-1 and of
    // inverse (1 - H) - 1.
    double error_bound;
};

// 1 + H + ... + H^J. The declared s must dominate the row-sup certificate
// and be < 1, otherwise contraction_error.
neumann_result neumann_inverse(const matrix &h, double s, double tol);

struct trace_row {
    double lambda;
    // Sup-norm <= 1.
    std::vector<double> v;
};

// The matrix whose i-th row is lambda_i v_i (rows past the list are zero),
// truncated to dim x dim.
struct trace_class_decomposition {
    double p = 1;
    std::vector<trace_row> rows;
    std::size_t dim = 0;
};

matrix to_matrix(const trace_class_decomposition &t);

struct finite_reduction {
    std::size_t split;
    // (1 - E) - F (1 - H)^-1 G, split x split.
    matrix e_prime;
    double tail_sum;
    unsigned neumann_depth;
    double neumann_error;
    double rank_tolerance;
    std::size_t kernel_dim;
    std::size_t cokernel_dim;
};

// Splits at the smallest N with lambda_N + lambda_(N+1) + ... < 1 and reduces
// 1 - f to its Schur complement on the first N coordinates. Singular values
// of E' below rank_tolerance count as zero.
finite_reduction fredholm_reduce(const trace_class_decomposition &t, double rank_tolerance = 1e-8,
                                 double neumann_tolerance = 1e-14);

struct exact_trace_row {
    rational lambda;
    std::vector<rational> v;
};

struct exact_trace_class_decomposition {
    rational p{1};
    std::vector<exact_trace_row> rows;
    std::size_t dim = 0;
};

qmatrix to_matrix(const exact_trace_class_decomposition &t);

struct exact_finite_reduction {
    std::size_t split;
    qmatrix e_prime;
    rational tail_sum;
    std::size_t kernel_dim;
    std::size_t cokernel_dim;
};

// Same reduction with (1 - H)^-1 from an exact solve; ranks are exact.
exact_finite_reduction fredholm_reduce(const exact_trace_class_decomposition &t);

struct spectrum_result {
    // Sorted by real part, then imaginary part.
    std::vector<std::complex<double>> eigenvalues;
    // max |A v - lambda v| over unit eigenvectors; NaN unless requested.
    double residual;
};

spectrum_result spectrum_finite(const matrix &a, bool with_residual = false);

struct series_application {
    Eigen::MatrixXcd value;
    double operator_norm;
    // Bound on the norm of sum_{n > trunc} a_n A^n.
    double tail_bound;
};

// sum_n a_n A^n for a one-variable series f whose coefficients satisfy
// sum |a_n|_# radius^n <= declared_bound (defaults to the weighted norm of
// the stored terms). Requires |A| < radius, otherwise domain_error.
series_application apply_series(const multi_series &f, const rational &radius, const matrix &a,
                                std::optional<rational> declared_bound = std::nullopt);

} // namespace holkit

#endif
