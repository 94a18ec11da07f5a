#include <benchmark/benchmark.h>

#include "ellseq/bounds.hpp"
#include "ellseq/factor.hpp"
#include "ellseq/primitive.hpp"
#include "ellseq/sequence.hpp"
#include "ellseq/sunit.hpp"

namespace {

const ellseq::FrobeniusParams& params21() {
    static auto p = ellseq::FrobeniusParams::create(2, 1);
    return p;
}

void BM_TraceSeq(benchmark::State& state) {
    for (auto _ : state) {
        auto t = ellseq::trace_seq(params21(), static_cast<uint32_t>(state.range(0)));
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_TraceSeq)->Arg(64)->Arg(512)->Arg(4096);

void BM_GroupOrderNorm(benchmark::State& state) {
    for (auto _ : state) {
        auto n = ellseq::group_order_norm(params21(), static_cast<uint32_t>(state.range(0)));
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_GroupOrderNorm)->Arg(40)->Arg(400);

void BM_CycloNorm(benchmark::State& state) {
    for (auto _ : state) {
        auto v = ellseq::cyclo_norm(params21(), static_cast<uint32_t>(state.range(0)));
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_CycloNorm)->Arg(36)->Arg(105)->Arg(210);

void BM_Factorize64(benchmark::State& state) {
    mpz_class n("9223372036854775807");  // 2^63 - 1 = 7^2 * 73 * 127 * 337 * 92737 * 649657
    for (auto _ : state) {
        auto f = ellseq::factorize(n);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_Factorize64);

void BM_FactorGroupOrder(benchmark::State& state) {
    for (auto _ : state) {
        auto f = ellseq::factor_group_order(params21(), static_cast<uint32_t>(state.range(0)));
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_FactorGroupOrder)->Arg(24)->Arg(36);

void BM_ThetaExact(benchmark::State& state) {
    ellseq::SUnitInstance inst{1e6, {2, 3, 5, 7}};
    for (auto _ : state) {
        auto c = ellseq::theta_exact(inst);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_ThetaExact);

void BM_HeightDeviation(benchmark::State& state) {
    auto params = ellseq::FrobeniusParams::create(5, 3);
    for (auto _ : state) {
        auto r = ellseq::cyclo_height_check(params, 24);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_HeightDeviation);

}  // namespace

BENCHMARK_MAIN();
