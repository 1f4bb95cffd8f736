#include <benchmark/benchmark.h>

#include "qwlab/estimates.hpp"
#include "qwlab/kernel.hpp"
#include "qwlab/multipliers.hpp"
#include "qwlab/norms.hpp"
#include "qwlab/spectral.hpp"
#include "qwlab/walk.hpp"

using namespace qwlab;

namespace {

SpinorField bench_state(std::size_t n, std::uint64_t seed = 0) {
    StateOptions opt;
    opt.seed = seed;
    return make_state(StateKind::random, WalkParams(1.0, 1.0), n, opt);
}

void BM_step(benchmark::State& state) {
    SpinorField u = bench_state((std::size_t)state.range(0));
    for (auto _ : state) {
        u = step(u);
        benchmark::DoNotOptimize(u.v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_step)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_transform_round_trip(benchmark::State& state) {
    SpinorField u = bench_state((std::size_t)state.range(0));
    for (auto _ : state) {
        SpinorField back = inverse_transform(forward_transform(u));
        benchmark::DoNotOptimize(back.v.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_transform_round_trip)->Arg(1024)->Arg(16384);

void BM_spectral_evolve(benchmark::State& state) {
    SpinorField u = bench_state(4096);
    double t = (double)state.range(0);
    for (auto _ : state) {
        SpinorField w = spectral_evolve(u, t);
        benchmark::DoNotOptimize(w.v.data());
    }
}
BENCHMARK(BM_spectral_evolve)->Arg(64)->Arg(1024);

void BM_littlewood_paley(benchmark::State& state) {
    SpinorField u = bench_state((std::size_t)state.range(0));
    for (auto _ : state) {
        SpinorField w = littlewood_paley(u, 1.0);
        benchmark::DoNotOptimize(w.v.data());
    }
}
BENCHMARK(BM_littlewood_paley)->Arg(1024)->Arg(16384);

void BM_field_norm(benchmark::State& state) {
    SpinorField u = bench_state(16384);
    Exponent p = state.range(0) == 0 ? Exponent::inf()
                                     : Exponent::integer(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(field_norm(u, p));
}
BENCHMARK(BM_field_norm)->Arg(1)->Arg(2)->Arg(6)->Arg(0);

void BM_kernel_convolve(benchmark::State& state) {
    SpinorField u = bench_state(128);
    for (auto _ : state) {
        SpinorField w = kernel_convolve(u, 1.0, 8.0, (int)state.range(0));
        benchmark::DoNotOptimize(w.v.data());
    }
}
BENCHMARK(BM_kernel_convolve)->Arg(1)->Arg(4);

void BM_homogeneous_ratio(benchmark::State& state) {
    SpinorField u = bench_state(1024);
    AdmissiblePair pair{Exponent::integer(6), Exponent::inf(), PairKind::discrete};
    for (auto _ : state)
        benchmark::DoNotOptimize(homogeneous_ratio(u, pair, 64.0).ratio);
}
BENCHMARK(BM_homogeneous_ratio);

} // namespace

BENCHMARK_MAIN();
