#include <benchmark/benchmark.h>

#include "lucasq/chabauty.hpp"
#include "lucasq/descent.hpp"
#include "lucasq/lucas.hpp"

using namespace lucasq;

namespace {

void BM_SearchParallel(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(search_square_terms(12, state.range(0)));
}

void BM_SearchSerial(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(search_square_terms_serial(12, state.range(0)));
}

const ConstraintSystem& table_row() {
    static const ConstraintSystem row = surviving_u12_table().back();
    return row;
}

void BM_LocalSolvabilityParallel(benchmark::State& state) {
    table_row();  // setup outside the timed loop
    for (auto _ : state) benchmark::DoNotOptimize(local_solvability(table_row()));
}

void BM_LocalSolvabilitySerial(benchmark::State& state) {
    table_row();  // setup outside the timed loop
    for (auto _ : state) benchmark::DoNotOptimize(local_solvability_serial(table_row()));
}

const ChabautyCase& u9() {
    static const ChabautyCase c(Registry::builtin().curve_case("u9"));
    return c;
}

void BM_CosetsParallel(benchmark::State& state) {
    u9();  // setup outside the timed loop
    for (auto _ : state) benchmark::DoNotOptimize(run_case(u9()));
}

void BM_CosetsSerial(benchmark::State& state) {
    u9();  // setup outside the timed loop
    for (auto _ : state) benchmark::DoNotOptimize(run_case_serial(u9()));
}

}  // namespace

BENCHMARK(BM_SearchParallel)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalSolvabilityParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalSolvabilitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosetsParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosetsSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
