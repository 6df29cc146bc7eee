#include <holkit/error.hpp>
#include <holkit/operators.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace holkit
{

double p_norm(std::span<const double> x, double p)
{
    if (!(p > 0)) {
        throw parameter_error("p must be positive");
    }
    double acc = 0;
    for (double v : x) {
        acc += std::pow(std::abs(v), p);
    }
    return p <= 1 ? acc : std::pow(acc, 1 / p);
}

double singular_spectrum::schatten(double p) const
{
    double acc = 0;
    for (double s : sigma) {
        acc += std::pow(s, p);
    }
    return acc;
}

singular_spectrum singular_values(const matrix &a)
{
    // Work on whichever orientation has at least as many rows as columns.
    matrix u = a.rows() >= a.cols() ? matrix(a) : matrix(a.transpose());
    const Eigen::Index n = u.cols();
    matrix v = matrix::Identity(n, n);
    constexpr double eps = 1e-15;
    constexpr unsigned max_sweeps = 80;

    singular_spectrum out;
    bool converged = n < 2;
    for (unsigned sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        ++out.sweeps;
        for (Eigen::Index i = 0; i < n - 1; ++i) {
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double alpha = u.col(i).squaredNorm();
                const double beta = u.col(j).squaredNorm();
                const double gamma = u.col(i).dot(u.col(j));
                if (gamma == 0 || std::abs(gamma) <= eps * std::sqrt(alpha * beta)) {
                    continue;
                }
                converged = false;
                const double zeta = (beta - alpha) / (2 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1 + zeta * zeta));
                const double c = 1 / std::sqrt(1 + t * t);
                const double s = c * t;
                for (Eigen::Index r = 0; r < u.rows(); ++r) {
                    const double x = u(r, i), y = u(r, j);
                    u(r, i) = c * x - s * y;
                    u(r, j) = s * x + c * y;
                }
                for (Eigen::Index r = 0; r < n; ++r) {
                    const double x = v(r, i), y = v(r, j);
                    v(r, i) = c * x - s * y;
                    v(r, j) = s * x + c * y;
                }
            }
        }
    }
    double residual = (v.transpose() * v - matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double ni = u.col(i).norm(), nj = u.col(j).norm();
            if (ni > 0 && nj > 0) {
                residual = std::max(residual, std::abs(u.col(i).dot(u.col(j))) / (ni * nj));
            }
        }
    }
    out.orthogonality_residual = n > 0 ? residual : 0;
    if (!converged) {
        throw numeric_error("Jacobi SVD did not converge; orthogonality residual " + std::to_string(residual));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        out.sigma.push_back(u.col(i).norm());
    }
    std::sort(out.sigma.begin(), out.sigma.end(), std::greater<>());
    out.sigma.resize(static_cast<std::size_t>(std::min(a.rows(), a.cols())));
    return out;
}

double schatten_sum(const matrix &a, double p)
{
    if (!(p > 0)) {
        throw parameter_error("p must be positive");
    }
    return singular_values(a).schatten(p);
}

std::vector<double> diagonal_mult(std::span<const double> lambda, std::span<const double> x)
{
    if (lambda.size() != x.size()) {
        throw dimension_error("diagonal multiplication needs equal lengths");
    }
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = lambda[i] * x[i];
    }
    return out;
}

namespace
{

std::vector<bool> head_mask(std::size_t n, std::span<const std::size_t> head)
{
    std::vector<bool> in_head(n, false);
    for (auto i : head) {
        if (i < n) {
            in_head[i] = true;
        }
    }
    return in_head;
}

} // namespace

double tail_bound(std::span<const double> lambda, std::span<const std::size_t> head, double p, double c)
{
    if (!(p > 0)) {
        throw parameter_error("p must be positive");
    }
    const auto in_head = head_mask(lambda.size(), head);
    double acc = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!in_head[i]) {
            acc += std::pow(std::abs(lambda[i]), p);
        }
    }
    return std::pow(2.0, p) * std::pow(c, p) * acc;
}

double tail_psum(std::span<const double> lambda, std::span<const double> x, std::span<const double> y,
                 std::span<const std::size_t> head, double p)
{
    if (lambda.size() != x.size() || x.size() != y.size()) {
        throw dimension_error("tail sum needs equal lengths");
    }
    const auto in_head = head_mask(lambda.size(), head);
    double acc = 0;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        if (!in_head[i]) {
            acc += std::pow(std::abs(lambda[i] * x[i] - lambda[i] * y[i]), p);
        }
    }
    return acc;
}

double row_sup_certificate(const matrix &h)
{
    double s = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        s += h.rows() > 0 && h.cols() > 0 ? h.row(i).cwiseAbs().maxCoeff() : 0.0;
    }
    return s;
}

unsigned neumann_depth(double s, double tol)
{
    if (!(s < 1) || s < 0) {
        throw contraction_error("Neumann series needs 0 <= s < 1");
    }
    if (!(tol > 0)) {
        throw parameter_error("tolerance must be positive");
    }
    unsigned j = 0;
    double sj1 = s; // s^(j+1)
    while (sj1 / (1 - s) > tol) {
        ++j;
        sj1 *= s;
        if (j > 1000000) {
            throw contraction_error("Neumann depth exceeds 10^6");
        }
    }
    return j;
}

neumann_result neumann_inverse(const matrix &h, double s, double tol)
{
    if (h.rows() != h.cols()) {
        throw dimension_error("Neumann inverse needs a square matrix");
    }
    if (!(s < 1)) {
        throw contraction_error("declared bound s = " + std::to_string(s) + " is not < 1");
    }
    const double cert = row_sup_certificate(h);
    if (cert > s * (1 + 1e-12) + 1e-300) {
        throw contraction_error("row-sup certificate " + std::to_string(cert) + " exceeds declared s = "
                                + std::to_string(s));
    }
    const unsigned depth = neumann_depth(s, tol);
    const auto n = h.rows();
    matrix acc = matrix::Identity(n, n);
    for (unsigned j = 0; j < depth; ++j) {
        acc = matrix::Identity(n, n) + h * acc;
    }
    return {std::move(acc), depth, s, std::pow(s, depth + 1) / (1 - s)};
}

namespace
{

template <typename Row>
void validate_rows(const std::vector<Row> &rows, std::size_t dim)
{
    if (rows.size() > dim) {
        throw dimension_error("more rows than the truncation size");
    }
    for (const auto &r : rows) {
        if (r.v.size() != dim) {
            throw dimension_error("row vector length differs from the truncation size");
        }
    }
}

} // namespace

matrix to_matrix(const trace_class_decomposition &t)
{
    validate_rows(t.rows, t.dim);
    const auto n = static_cast<Eigen::Index>(t.dim);
    matrix m = matrix::Zero(n, n);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.dim; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.rows[i].lambda * t.rows[i].v[j];
        }
    }
    return m;
}

finite_reduction fredholm_reduce(const trace_class_decomposition &t, double rank_tolerance, double neumann_tolerance)
{
    if (!(t.p > 0) || t.p > 1) {
        throw parameter_error("p must lie in (0, 1]");
    }
    validate_rows(t.rows, t.dim);
    for (const auto &r : t.rows) {
        if (!(r.lambda >= 0)) {
            throw parameter_error("lambda must be nonnegative");
        }
        for (double x : r.v) {
            if (!(std::abs(x) <= 1 + 1e-12)) {
                throw parameter_error("row vectors must have sup-norm <= 1");
            }
        }
    }
    // tails[i] = lambda_i + lambda_(i+1) + ...
    std::vector<double> tails(t.rows.size() + 1, 0.0);
    for (std::size_t i = t.rows.size(); i-- > 0;) {
        tails[i] = tails[i + 1] + t.rows[i].lambda;
    }
    std::size_t split = 0;
    while (split < tails.size() && !(tails[split] < 1)) {
        ++split;
    }
    if (split == tails.size()) {
        throw reduction_error("no split with tail sum < 1");
    }

    const matrix f = to_matrix(t);
    const auto n = static_cast<Eigen::Index>(split);
    const auto m = static_cast<Eigen::Index>(t.dim) - n;
    const matrix e = f.topLeftCorner(n, n);
    const matrix fb = f.topRightCorner(n, m);
    const matrix g = f.bottomLeftCorner(m, n);
    const matrix h = f.bottomRightCorner(m, m);

    const double s = tails[split];
    const auto inv = neumann_inverse(h, s, neumann_tolerance);
    finite_reduction out;
    out.split = split;
    out.e_prime = (matrix::Identity(n, n) - e) - fb * inv.inverse * g;
    out.tail_sum = s;
    out.neumann_depth = inv.depth;
    out.neumann_error = inv.error_bound;
    out.rank_tolerance = rank_tolerance;
    std::size_t rank = 0;
    if (n > 0) {
        for (double sigma : singular_values(out.e_prime).sigma) {
            rank += sigma > rank_tolerance ? 1 : 0;
        }
    }
    out.kernel_dim = split - rank;
    out.cokernel_dim = split - rank;
    return out;
}

qmatrix to_matrix(const exact_trace_class_decomposition &t)
{
    validate_rows(t.rows, t.dim);
    qmatrix m(t.dim, t.dim);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.dim; ++j) {
            m(i, j) = t.rows[i].lambda * t.rows[i].v[j];
        }
    }
    return m;
}

exact_finite_reduction fredholm_reduce(const exact_trace_class_decomposition &t)
{
    if (sgn(t.p) <= 0 || t.p > 1) {
        throw parameter_error("p must lie in (0, 1]");
    }
    validate_rows(t.rows, t.dim);
    for (const auto &r : t.rows) {
        if (sgn(r.lambda) < 0) {
            throw parameter_error("lambda must be nonnegative");
        }
        for (const auto &x : r.v) {
            if (abs(x) > 1) {
                throw parameter_error("row vectors must have sup-norm <= 1");
            }
        }
    }
    std::vector<rational> tails(t.rows.size() + 1, rational(0));
    for (std::size_t i = t.rows.size(); i-- > 0;) {
        tails[i] = tails[i + 1] + t.rows[i].lambda;
    }
    std::size_t split = 0;
    while (split < tails.size() && !(tails[split] < 1)) {
        ++split;
    }
    if (split == tails.size()) {
        throw reduction_error("no split with tail sum < 1");
    }
    const qmatrix f = to_matrix(t);
    const std::size_t n = split, m = t.dim - split;
    const qmatrix e = f.block(0, 0, n, n);
    const qmatrix fb = f.block(0, n, n, m);
    const qmatrix g = f.block(n, 0, m, n);
    const qmatrix h = f.block(n, n, m, m);

    exact_finite_reduction out;
    out.split = split;
    out.tail_sum = tails[split];
    qmatrix correction(n, n);
    if (m > 0 && n > 0) {
        // (1 - H) is invertible because its Neumann series converges.
        correction = fb * solve(qmatrix::identity(m) - h, g);
    }
    out.e_prime = (qmatrix::identity(n) - e) - correction;
    const std::size_t r = rank(out.e_prime);
    out.kernel_dim = n - r;
    out.cokernel_dim = n - r;
    return out;
}

spectrum_result spectrum_finite(const matrix &a, bool with_residual)
{
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw dimension_error("spectrum needs a nonempty square matrix");
    }
    Eigen::EigenSolver<matrix> solver(a, with_residual);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("eigenvalue iteration did not converge");
    }
    spectrum_result out;
    const auto values = solver.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        if (values[x].real() != values[y].real()) {
            return values[x].real() < values[y].real();
        }
        return values[x].imag() < values[y].imag();
    });
    for (auto i : order) {
        out.eigenvalues.push_back(values[i]);
    }
    out.residual = std::numeric_limits<double>::quiet_NaN();
    if (with_residual) {
        const Eigen::MatrixXcd vecs = solver.eigenvectors();
        const Eigen::MatrixXcd ac = a.cast<std::complex<double>>();
        double worst = 0;
        for (Eigen::Index i = 0; i < values.size(); ++i) {
            const Eigen::VectorXcd v = vecs.col(i).normalized();
            worst = std::max(worst, (ac * v - values[i] * v).norm());
        }
        out.residual = worst;
        if (worst > 1e-8 * std::max(1.0, a.norm())) {
            throw numeric_error("eigenpair residual " + std::to_string(worst) + " above 1e-8");
        }
    }
    return out;
}

series_application apply_series(const multi_series &f, const rational &radius, const matrix &a,
                                std::optional<rational> declared_bound)
{
    if (f.nvars() != 1) {
        throw dimension_error("functional calculus needs a one-variable series");
    }
    if (a.rows() != a.cols()) {
        throw dimension_error("functional calculus needs a square matrix");
    }
    if (sgn(radius) <= 0) {
        throw parameter_error("radius must be positive");
    }
    const double norm = a.rows() == 0 ? 0.0 : singular_values(a).sigma.front();
    const double r = to_double(radius);
    if (!(norm < r)) {
        throw domain_error("operator norm " + std::to_string(norm) + " is not below the radius "
                           + std::to_string(r));
    }
    const std::vector<rational> radii{radius};
    const rational bound = declared_bound ? *declared_bound : weighted_norm(f, radii, rational(1)).value;

    const auto n = a.rows();
    using cmatrix = Eigen::MatrixXcd;
    const unsigned trunc = f.trunc();
    std::vector<std::complex<double>> coeffs(trunc + 1);
    for (const auto &[e, c] : f.terms()) {
        coeffs[e[0]] = {to_double(c.re()), to_double(c.im())};
    }
    // Horner evaluation.
    const cmatrix ac = a.cast<std::complex<double>>();
    cmatrix acc = cmatrix::Zero(n, n);
    for (unsigned k = trunc + 1; k-- > 0;) {
        acc = ac * acc;
        acc.diagonal().array() += coeffs[k];
    }
    const double rho = norm / r;
    const double tail = to_double(bound) * std::pow(rho, trunc + 1) / (1 - rho);
    return {std::move(acc), norm, tail};
}

} // namespace holkit
