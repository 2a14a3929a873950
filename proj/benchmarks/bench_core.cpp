#include "ineqcert/quadrature.hpp"
#include "ineqcert/verify.hpp"

#include <benchmark/benchmark.h>

using namespace ineqcert;

namespace {

void BM_DerivativeRange(benchmark::State& state) {
    Profile p;
    p.degree = static_cast<unsigned>(state.range(0));
    p.pieces = 4;
    auto f = std::get<PiecewisePoly>(random_function(1, 0, p));
    for (auto _ : state) benchmark::DoNotOptimize(derivative_range(f, 1));
}
BENCHMARK(BM_DerivativeRange)->Arg(3)->Arg(6)->Arg(10);

void BM_MidpointExact(benchmark::State& state) {
    Interval I(0, 1);
    Function f = parse_function("x^6 - 3*x^4 + x", I);
    Partition P = Partition::uniform(I, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(certified_midpoint(f, I, P));
}
BENCHMARK(BM_MidpointExact)->Arg(4)->Arg(16)->Arg(64);

void BM_MidpointExpr(benchmark::State& state) {
    Interval I(0, 1);
    Function f = Function(parse("exp(sin(x)) * cos(x)"));
    Partition P = Partition::uniform(I, static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(certified_midpoint(f, I, P));
}
BENCHMARK(BM_MidpointExpr)->Arg(4)->Arg(16);

void BM_Adaptive(benchmark::State& state) {
    Interval I(0, 1);
    Function f = Function(parse("exp(x)"));
    for (auto _ : state) benchmark::DoNotOptimize(adaptive_integrate(f, I, 1e-4, QuadratureRule::pmid, 1, 4096));
}
BENCHMARK(BM_Adaptive)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    SweepOptions o;
    o.threads = 1;
    o.reproducer_dir.reset();
    auto id = all_inequalities()[static_cast<std::size_t>(state.range(0))];
    for (auto _ : state) benchmark::DoNotOptimize(sweep(id, 100, 7, {}, o));
    state.SetItemsProcessed(state.iterations() * 100);
    state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_Sweep)->DenseRange(0, 16)->Unit(benchmark::kMillisecond);

void BM_Sharpness(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(sharpness_cases());
}
BENCHMARK(BM_Sharpness)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
