#include <benchmark/benchmark.h>

#include <random>

#include <holkit/charclasses.hpp>
#include <holkit/hochschild.hpp>
#include <holkit/locale.hpp>
#include <holkit/operators.hpp>
#include <holkit/series.hpp>
#include <holkit/series_io.hpp>
#include <holkit/weierstrass.hpp>

using namespace holkit;

namespace
{

multi_series dense_unit(unsigned nvars, unsigned trunc)
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> coeff(-4, 4);
    multi_series f = multi_series::constant(nvars, trunc, gaussian(1));
    for (unsigned i = 0; i < nvars; ++i) {
        for (unsigned d = 1; d <= trunc; ++d) {
            exponent e(nvars, 0);
            e[i] = d;
            f.add_term(e, gaussian(make_rational(coeff(rng), 3)));
            if (i + 1 < nvars) {
                e[i + 1] = 1;
                f.add_term(e, gaussian(make_rational(coeff(rng), 5)));
            }
        }
    }
    return f;
}

} // namespace

static void series_multiply(benchmark::State &state)
{
    const auto trunc = static_cast<unsigned>(state.range(0));
    const auto f = dense_unit(3, trunc);
    const auto g = invert_unit(f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f * g);
    }
}
BENCHMARK(series_multiply)->Arg(4)->Arg(8)->Arg(12);

static void series_invert(benchmark::State &state)
{
    const auto f = dense_unit(3, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(invert_unit(f));
    }
}
BENCHMARK(series_invert)->Arg(4)->Arg(8)->Arg(12);

static void weierstrass_prepare(benchmark::State &state)
{
    const auto m = static_cast<unsigned>(state.range(0));
    const auto f = parse_series("(x1^2 - x2^3 + x1*x3)*(1 + x1 + x2 - 1/2*x3^2) + x2^5", 8, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prepare(f, m));
    }
}
BENCHMARK(weierstrass_prepare)->Arg(2)->Arg(4)->Arg(6);

static void fredholm_float(benchmark::State &state)
{
    const auto size = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    trace_class_decomposition t;
    t.dim = size;
    for (std::size_t i = 0; i < size; ++i) {
        trace_row row;
        row.lambda = i < 8 ? 2.0 : 0.5 / static_cast<double>((i + 1) * (i + 1));
        row.v.resize(size);
        for (auto &x : row.v) {
            x = u(rng);
        }
        t.rows.push_back(std::move(row));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fredholm_reduce(t));
    }
}
BENCHMARK(fredholm_float)->Arg(40)->Arg(80)->Arg(160);

static void hrr_sweep(benchmark::State &state)
{
    const auto n = static_cast<unsigned>(state.range(0));
    const auto pn = proj_space(n);
    for (auto _ : state) {
        for (long k = -6; k <= 6; ++k) {
            benchmark::DoNotOptimize(hrr(*pn, parse_bundle(*pn, "O(" + std::to_string(k) + ")")));
        }
    }
}
BENCHMARK(hrr_sweep)->DenseRange(1, 4);

static void hochschild_ranks(benchmark::State &state)
{
    const auto n = static_cast<unsigned>(state.range(0));
    const auto d = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hkr_check(n, d));
    }
}
BENCHMARK(hochschild_ranks)->Args({1, 5})->Args({2, 4})->Args({3, 3});

static void locale_prove(benchmark::State &state)
{
    const auto lhs = parse_subset("|f|<=1/2 & |g|<=1/3 & |h|<=1");
    const auto rhs = parse_subset("|f*g+h|<=7/6 & |f^8|<=1/256");
    for (auto _ : state) {
        benchmark::DoNotOptimize(decide_containment(lhs, rhs));
    }
}
BENCHMARK(locale_prove);

BENCHMARK_MAIN();
