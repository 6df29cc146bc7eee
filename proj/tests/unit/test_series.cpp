#include "doctest.h"

#include <holkit/error.hpp>
#include <holkit/series.hpp>
#include <holkit/series_io.hpp>

#include "corpus.hpp"

using namespace holkit;
using holkit::testing::rng_t;

namespace
{

multi_series s1(const char *text, unsigned trunc)
{
    return parse_series(text, trunc, 1);
}

multi_series s2(const char *text, unsigned trunc)
{
    return parse_series(text, trunc, 2);
}

} // namespace

TEST_CASE("ring operations")
{
    CHECK(s1("1+x1", 4) * s1("1-x1", 4) == s1("1-x1^2", 4));
    CHECK(s1("1+x1", 1).pow(2) == s1("1+2*x1", 1));
    const multi_series i = multi_series::constant(1, 3, gaussian::i());
    CHECK(i * i == multi_series::constant(1, 3, gaussian(-1)));
    CHECK(apply_ring_op(s1("x1", 3), s1("x1", 3), ring_op::sub).is_zero());
    CHECK(scale(s1("1+x1", 3), gaussian(2)) == s1("2+2*x1", 3));
    CHECK_THROWS_AS(apply_ring_op(s1("x1", 3), s1("x1", 4), ring_op::add), dimension_error);
    CHECK_THROWS_AS(apply_ring_op(s1("x1", 3), s2("x1", 3), ring_op::mul), dimension_error);
    CHECK_THROWS_AS(multi_series(0, 3), dimension_error);
    CHECK(s1("x1^5", 3).is_zero());
}

TEST_CASE("invert_unit")
{
    CHECK(invert_unit(s1("1-x1", 3)) == s1("1+x1+x1^2+x1^3", 3));
    CHECK(invert_unit(s1("2", 3)) == s1("1/2", 3));
    CHECK(invert_unit(s1("1+x1+x1^2", 3)) == s1("1-x1+x1^3", 3));
    CHECK_THROWS_AS(invert_unit(s1("x1", 3)), non_unit_error);
}

TEST_CASE("substitute")
{
    const multi_series t2 = s1("x1^2", 4);
    CHECK(substitute(s1("1+x1", 4), std::span(&t2, 1)) == s1("1+x1^2", 4));

    const multi_series half = s1("1/2*x1", 4);
    CHECK(substitute(s1("1+2*x1+4*x1^2-8*x1^3", 4), std::span(&half, 1)) == s1("1+x1+x1^2-x1^3", 4));

    const multi_series g = s1("x1+x1^2", 2);
    CHECK(substitute(invert_unit(s1("1-x1", 2)), std::span(&g, 1)) == s1("1+x1+2*x1^2", 2));

    const multi_series shifted = s1("1+x1", 3);
    CHECK_THROWS_AS(substitute(s1("x1^2", 3), std::span(&shifted, 1)), divergence_error);
    CHECK(substitute(s1("x1^2", 3), std::span(&shifted, 1), substitution_source::polynomial) ==
          s1("1+2*x1+x1^2", 3));
}

TEST_CASE("divide_diagonal examples")
{
    auto check = [](const char *f, const char *q, const char *r) {
        const auto d = divide_diagonal(s2(f, 4));
        CHECK(d.quotient == s2(q, 4));
        CHECK(d.remainder == s2(r, 4));
    };
    check("x2^2-x1^2", "x2+x1", "0");
    check("x2", "1", "x1");
    check("x2*x1", "x1", "x1^2");
    CHECK_THROWS_AS(divide_diagonal(s1("x1", 3)), dimension_error);
}

TEST_CASE("weighted_norm")
{
    const std::vector<rational> half{make_rational(1, 2)};
    const std::vector<rational> one{make_rational(1)};
    auto w = weighted_norm(s1("1+2*x1+4*x1^2", 4), half, 1);
    CHECK(w.value == 3);
    CHECK(w.exact);
    CHECK(weighted_norm(s1("(3+4i)*x1", 4), one, 1).value == 7);
    w = weighted_norm(s1("1+2*x1+4*x1^2", 4), half, make_rational(1, 2));
    CHECK(w.value == 3);
    CHECK(w.exact);
    // sqrt(2) is irrational: the bound is a rational upper bound
    w = weighted_norm(s1("2", 4), one, make_rational(1, 2));
    CHECK_FALSE(w.exact);
    CHECK(w.value * w.value >= 2);
    CHECK(w.value * w.value < 2 + make_rational(1, 1000000));

    CHECK_THROWS_AS(weighted_norm(s1("1", 2), one, 2), parameter_error);
    CHECK_THROWS_AS(weighted_norm(s1("1", 2), one, 0), parameter_error);
    const std::vector<rational> negative{make_rational(-1)};
    CHECK_THROWS_AS(weighted_norm(s1("1", 2), negative, 1), parameter_error);
    CHECK_THROWS_AS(weighted_norm(s2("1", 2), one, 1), dimension_error);
}

TEST_CASE("ring laws on random series")
{
    rng_t rng(2024);
    for (int t = 0; t < 40; ++t) {
        const auto nvars = static_cast<unsigned>(testing::uniform_int(rng, 1, 3));
        const auto n = static_cast<unsigned>(testing::uniform_int(rng, 0, 8));
        const auto a = testing::random_series(rng, nvars, n, 6);
        const auto b = testing::random_series(rng, nvars, n, 6);
        const auto c = testing::random_series(rng, nvars, n, 6);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == multi_series(nvars, n));
        // truncating first or last gives the same product
        if (n > 0) {
            CHECK((a * b).truncated(n - 1) == a.truncated(n - 1) * b.truncated(n - 1));
        }
    }
}

TEST_CASE("random roundtrips and norm submultiplicativity")
{
    rng_t rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto nvars = static_cast<unsigned>(testing::uniform_int(rng, 1, 3));
        const auto n = static_cast<unsigned>(testing::uniform_int(rng, 0, 6));
        const auto f = testing::random_series(rng, nvars, n, 6, true);
        CHECK(f * invert_unit(f) == multi_series::constant(nvars, n, gaussian(1)));

        const auto big = testing::random_series(rng, 2, n, 6);
        const auto d = divide_diagonal(big);
        const auto u_minus_t = parse_series("x2-x1", n, 2);
        CHECK(u_minus_t * d.quotient + d.remainder == big);
        for (const auto &[e, c] : d.remainder.terms()) {
            CHECK(e[1] == 0);
        }

        const auto g = testing::random_series(rng, nvars, n, 6);
        const std::vector<rational> radii(nvars, make_rational(2, 3));
        CHECK(weighted_norm(f * g, radii, 1).value <=
              2 * weighted_norm(f, radii, 1).value * weighted_norm(g, radii, 1).value);
    }
}

TEST_CASE("series json and text io")
{
    const auto f = parse_series("1 - 2/3*x1^2*x2 + (1+1i)*x2^3", 4);
    CHECK(f.nvars() == 2);
    CHECK(f.coeff({2, 1}) == gaussian(make_rational(-2, 3)));
    CHECK(f.coeff({0, 3}) == gaussian(1, 1));
    CHECK(series_from_json(series_to_json(f)) == f);
    CHECK(series_from_json(R"({"trunc":3,"expr":"x1*x3"})").nvars() == 3);
    CHECK(parse_series(f.to_string(), 4, 2) == f);
    CHECK_THROWS_AS(series_from_json("{"), input_error);
    CHECK_THROWS_AS(series_from_json(R"({"nvars":1,"trunc":2,"terms":[{"exp":[1,2],"re":"1","im":"0"}]})"),
                    input_error);
    CHECK_THROWS_AS(parse_series("y^2", 3), syntax_error);
}
