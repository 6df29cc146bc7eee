#include "doctest.h"

#include <cmath>

#include <holkit/error.hpp>
#include <holkit/operators.hpp>
#include <holkit/series_io.hpp>

#include "corpus.hpp"

using namespace holkit;
using holkit::testing::rng_t;

TEST_CASE("p norms")
{
    const std::vector<double> geo{1, 0.5, 0.25, 0.125};
    CHECK(p_norm(geo, 1) == doctest::Approx(15.0 / 8));
    const std::vector<double> pyth{3, 4};
    CHECK(p_norm(pyth, 2) == doctest::Approx(5));
    CHECK_THROWS_AS(p_norm(pyth, 0), parameter_error);
    rng_t rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(10);
        for (auto &v : x) {
            v = testing::uniform_real(rng, -1, 1);
        }
        CHECK(p_norm(x, 1) >= p_norm(x, 2));
    }
}

TEST_CASE("singular values")
{
    matrix d = matrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 4;
    auto sv = singular_values(d);
    REQUIRE(sv.sigma.size() == 2);
    CHECK(sv.sigma[0] == doctest::Approx(4));
    CHECK(sv.sigma[1] == doctest::Approx(3));

    matrix n = matrix::Zero(2, 2);
    n(0, 1) = 1;
    sv = singular_values(n);
    CHECK(sv.sigma[0] == doctest::Approx(1));
    CHECK(sv.sigma[1] == doctest::Approx(0));

    matrix diag = matrix::Zero(3, 3);
    diag(0, 0) = 1;
    diag(1, 1) = 0.5;
    diag(2, 2) = 0.25;
    CHECK(schatten_sum(diag, 1) == doctest::Approx(1.75));
    CHECK(schatten_sum(diag, 2) == doctest::Approx(21.0 / 16));

    // rectangular inputs give min(rows, cols) values
    CHECK(singular_values(matrix::Ones(2, 5)).sigma.size() == 2);
    CHECK(singular_values(matrix::Ones(5, 2)).sigma[0] == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("singular values against an independent eigensolve")
{
    rng_t rng(17);
    for (int t = 0; t < 30; ++t) {
        const matrix a = testing::random_matrix(rng, 5, 5);
        const auto sv = singular_values(a);
        CHECK(sv.orthogonality_residual <= 1e-9);
        Eigen::SelfAdjointEigenSolver<matrix> eig(a.transpose() * a);
        auto ev = eig.eigenvalues();
        for (int i = 0; i < 5; ++i) {
            CHECK(std::abs(sv.sigma[static_cast<std::size_t>(i)] * sv.sigma[static_cast<std::size_t>(i)] -
                           ev(4 - i)) <= 1e-9);
        }
        // orthogonal invariance
        const matrix q = testing::random_orthogonal(rng, 5);
        const auto rotated = singular_values(q * a * q.transpose());
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(std::abs(rotated.sigma[i] - sv.sigma[i]) <= 1e-9);
        }
        // sigma_(i+j+1)(AB) <= sigma_(i+1)(A) sigma_(j+1)(B)
        const matrix b = testing::random_matrix(rng, 5, 5);
        const auto sb = singular_values(b).sigma;
        const auto sab = singular_values(a * b).sigma;
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; i + j < 5; ++j) {
                CHECK(sab[i + j] <= sv.sigma[i] * sb[j] + 1e-9);
            }
        }
    }
}

TEST_CASE("diagonal maps and tail bounds")
{
    std::vector<double> lambda(30), ones(30, 1.0), zeros(30, 0.0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        lambda[i] = std::pow(0.5, static_cast<double>(i));
    }
    const auto prod = diagonal_mult(lambda, ones);
    CHECK(p_norm(prod, 1) <= p_norm(lambda, 1) + 1e-15);
    CHECK(p_norm(diagonal_mult(lambda, zeros), 1) == 0);
    CHECK_THROWS_AS(diagonal_mult(lambda, std::vector<double>(3)), dimension_error);

    rng_t rng(8);
    std::vector<std::size_t> head(10);
    std::iota(head.begin(), head.end(), 0);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> lam(40), x(40), y(40);
        const double c = testing::uniform_real(rng, 0.5, 2);
        for (std::size_t i = 0; i < 40; ++i) {
            lam[i] = testing::uniform_real(rng, -1, 1) / static_cast<double>((i + 1) * (i + 1));
            x[i] = testing::uniform_real(rng, -c, c);
            y[i] = testing::uniform_real(rng, -c, c);
        }
        CHECK(tail_psum(lam, x, y, head, 0.5) <= tail_bound(lam, head, 0.5, c) + 1e-12);
    }
}

TEST_CASE("Neumann inversion")
{
    matrix h = matrix::Zero(2, 2);
    h(0, 1) = 0.5;
    const auto r = neumann_inverse(h, 0.5, 1e-12);
    matrix expected = matrix::Identity(2, 2);
    expected(0, 1) = 0.5;
    CHECK((r.inverse - expected).cwiseAbs().maxCoeff() <= 1e-15);

    CHECK(neumann_depth(0.5, std::ldexp(1.0, -20)) == 20);
    CHECK_THROWS_AS(neumann_inverse(h, 1.0, 1e-3), contraction_error);
    CHECK_THROWS_AS(neumann_inverse(h, 0.25, 1e-3), contraction_error);

    rng_t rng(21);
    for (int t = 0; t < 50; ++t) {
        const matrix m = testing::random_matrix(rng, 8, 8);
        const double s = 0.9;
        const matrix hh = m * (s / row_sup_certificate(m));
        const auto inv = neumann_inverse(hh, s, 1e-10);
        const matrix dense = (matrix::Identity(8, 8) - hh).inverse();
        CHECK((inv.inverse - dense).cwiseAbs().maxCoeff() <= inv.error_bound + 1e-12);
        CHECK(inv.error_bound <= 1e-10);
    }
}

TEST_CASE("Fredholm reduction examples")
{
    trace_class_decomposition empty;
    empty.dim = 3;
    auto red = fredholm_reduce(empty);
    CHECK(red.split == 0);
    CHECK(red.kernel_dim == 0);
    CHECK(red.cokernel_dim == 0);

    trace_class_decomposition one;
    one.dim = 3;
    one.rows.push_back({1.0, {1.0, 0.0, 0.0}});
    red = fredholm_reduce(one);
    CHECK(red.split == 1);
    CHECK(red.kernel_dim == 1);
    CHECK(red.cokernel_dim == 1);

    trace_class_decomposition bad = one;
    bad.rows[0].v[1] = 2;
    CHECK_THROWS_AS(fredholm_reduce(bad), parameter_error);

    exact_trace_class_decomposition exact_one;
    exact_one.dim = 2;
    exact_one.rows.push_back({rational(1), {rational(1), rational(0)}});
    const auto er = fredholm_reduce(exact_one);
    CHECK(er.kernel_dim == 1);
}

TEST_CASE("Fredholm reduction matches the dense rank oracle")
{
    rng_t rng(31);
    for (int t = 0; t < 6; ++t) {
        const auto kernel = static_cast<unsigned>(testing::uniform_int(rng, 0, 3));
        const auto inst = testing::random_float_instance(rng, 20, 5, kernel);
        const auto red = fredholm_reduce(inst.decomposition);
        const matrix one_minus_f = matrix::Identity(20, 20) - to_matrix(inst.decomposition);
        const std::size_t dense_kernel = 20 - testing::dense_rank_oracle(one_minus_f, 1e-8);
        CHECK(red.split == 5);
        CHECK(red.tail_sum < 1);
        CHECK(red.kernel_dim == dense_kernel);
        CHECK(red.kernel_dim == kernel);
    }
    for (int t = 0; t < 3; ++t) {
        const auto kernel = static_cast<unsigned>(testing::uniform_int(rng, 0, 2));
        const auto inst = testing::random_exact_instance(rng, 8, 3, kernel);
        const auto red = fredholm_reduce(inst.decomposition);
        CHECK(red.kernel_dim == kernel);
        CHECK(red.kernel_dim == 8 - rank(qmatrix::identity(8) - to_matrix(inst.decomposition)));
    }
}

TEST_CASE("finite spectra")
{
    matrix rot = matrix::Zero(2, 2);
    rot(0, 1) = -1;
    rot(1, 0) = 1;
    auto sp = spectrum_finite(rot, true);
    REQUIRE(sp.eigenvalues.size() == 2);
    CHECK(std::abs(sp.eigenvalues[0] - std::complex<double>(0, -1)) < 1e-12);
    CHECK(std::abs(sp.eigenvalues[1] - std::complex<double>(0, 1)) < 1e-12);
    CHECK(sp.residual <= 1e-8);

    matrix nil = matrix::Zero(2, 2);
    nil(0, 1) = 1;
    sp = spectrum_finite(nil);
    CHECK(std::abs(sp.eigenvalues[0]) < 1e-12);
    CHECK(std::abs(sp.eigenvalues[1]) < 1e-12);
    CHECK_THROWS_AS(spectrum_finite(matrix::Zero(2, 3)), dimension_error);

    // spectral mapping for p(x) = x^2 - 2x on random matrices
    rng_t rng(4);
    for (int t = 0; t < 10; ++t) {
        const matrix a = testing::random_matrix(rng, 4, 4);
        const auto base = spectrum_finite(a).eigenvalues;
        const auto mapped = spectrum_finite(a * a - 2 * a).eigenvalues;
        for (const auto &z : base) {
            const auto pz = z * z - 2.0 * z;
            double best = 1e300;
            for (const auto &w : mapped) {
                best = std::min(best, std::abs(w - pz));
            }
            CHECK(best <= 1e-7);
        }
    }
}

TEST_CASE("power series functional calculus")
{
    // exp on a nilpotent matrix
    const multi_series expo = parse_series("1 + x1 + 1/2*x1^2 + 1/6*x1^3", 3, 1);
    matrix nil = matrix::Zero(2, 2);
    nil(0, 1) = 1;
    const auto e = apply_series(expo, make_rational(2), nil);
    CHECK(std::abs(e.value(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(e.value(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(e.value(1, 0)) < 1e-15);

    // geometric series against a dense inverse
    rng_t rng(12);
    const matrix a = testing::random_matrix(rng, 4, 4);
    const matrix small = a * (0.25 / a.norm());
    multi_series geo(1, 30);
    for (unsigned n = 0; n <= 30; ++n) {
        geo.add_term({n}, gaussian(1));
    }
    const auto g = apply_series(geo, make_rational(1), small, make_rational(2));
    const matrix dense = (matrix::Identity(4, 4) - small).inverse();
    CHECK((g.value.real() - dense).norm() <= g.tail_bound + 1e-12);

    const auto c = apply_series(parse_series("3", 2, 1), make_rational(1), small);
    CHECK((c.value.real() - 3 * matrix::Identity(4, 4)).norm() < 1e-15);

    CHECK_THROWS_AS(apply_series(geo, make_rational(1), 2 * matrix::Identity(2, 2)), domain_error);
}
