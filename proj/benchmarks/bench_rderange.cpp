#include <benchmark/benchmark.h>

#include "rderange/rderange.hpp"

using namespace rderange;

static void BM_TableFill(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        DerangementTable table;
        table.extend(4, n);
        benchmark::DoNotOptimize(table.max_index(4));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TableFill)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

static void BM_ClosedFormula(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(r_derangement_closed(4, n));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosedFormula)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_Convolution(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    DerangementTable table;
    table.extend(4, n);
    for (auto _ : state) benchmark::DoNotOptimize(r_derangement_convolution(table, 4, 2, n));
}
BENCHMARK(BM_Convolution)->RangeMultiplier(2)->Range(64, 1024);

static void BM_Oracle(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(oracle_count(2, n - 2));
}
BENCHMARK(BM_Oracle)->DenseRange(6, 9);

static void BM_FhatPolynomial(benchmark::State& state) {
    const unsigned long d = static_cast<unsigned long>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fhat_polynomial(3, d));
}
BENCHMARK(BM_FhatPolynomial)->RangeMultiplier(2)->Range(8, 256);

static void BM_CertifyPeriod(benchmark::State& state) {
    const unsigned long d = static_cast<unsigned long>(state.range(0));
    DerangementTable table;
    table.extend(2, static_cast<unsigned>(10 * d));
    for (auto _ : state)
        benchmark::DoNotOptimize(certify_period(table, SequenceKind::D, 2, d, 10));
}
BENCHMARK(BM_CertifyPeriod)->RangeMultiplier(2)->Range(4, 64);

static void BM_SaddleEstimate(benchmark::State& state) {
    const unsigned digits = static_cast<unsigned>(state.range(0));
    DerangementTable table;
    table.extend(4, 64);
    for (auto _ : state) benchmark::DoNotOptimize(saddle_estimate(table, 4, 64, digits));
}
BENCHMARK(BM_SaddleEstimate)->RangeMultiplier(2)->Range(16, 256);

static void BM_T2BoundCheck(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    DerangementTable table;
    table.extend(3, n);
    for (auto _ : state) benchmark::DoNotOptimize(t2_bound_check(table, 3, n));
}
BENCHMARK(BM_T2BoundCheck)->RangeMultiplier(4)->Range(8, 512);

static void BM_SolveFactorial(benchmark::State& state) {
    DerangementTable table;
    table.extend(3, 64);
    for (auto _ : state) benchmark::DoNotOptimize(solve_factorial(table, 3, Rat(1)));
}
BENCHMARK(BM_SolveFactorial);

static void BM_ValuationTree(benchmark::State& state) {
    const unsigned scan = static_cast<unsigned>(state.range(0));
    DerangementTable table;
    table.extend(2, scan + 8);
    for (auto _ : state) benchmark::DoNotOptimize(valuation_tree(table, 2, 2, 3, scan));
}
BENCHMARK(BM_ValuationTree)->RangeMultiplier(2)->Range(64, 512);

BENCHMARK_MAIN();
