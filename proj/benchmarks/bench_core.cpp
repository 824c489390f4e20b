#include <benchmark/benchmark.h>

#include "wach/characters.hpp"
#include "wach/gamma_solver.hpp"

using namespace wach;

namespace {

PrecisionBudget budget() { return PrecisionBudget(3, 8, 12); }

void BM_SeriesMul(benchmark::State& state) {
    PrecisionBudget bud = budget();
    PiSeries a = q_series(bud), b = lambda_f(1, bud);
    for (auto _ : state) {
        PiSeries c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SeriesMul);

void BM_Frobenius(benchmark::State& state) {
    PrecisionBudget bud(3, 8, static_cast<int>(state.range(0)));
    PiSeries a = q_series(bud);
    for (auto _ : state) {
        PiSeries c = frobenius(a);
        benchmark::DoNotOptimize(c);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Frobenius)->Arg(8)->Arg(16)->Arg(24)->Complexity();

void BM_LambdaProduct(benchmark::State& state) {
    PrecisionBudget bud = budget();
    int f = static_cast<int>(state.range(0));
    for (auto _ : state) {
        PiSeries lam = lambda_f(f, bud);
        benchmark::DoNotOptimize(lam);
    }
}
BENCHMARK(BM_LambdaProduct)->Arg(1)->Arg(2)->Arg(3);

void BM_RankOneAction(benchmark::State& state) {
    PrecisionBudget bud = budget();
    CrystChar chi;
    chi.level = 2;
    chi.c = PadicScalar::one(bud);
    chi.exps = {2, 1};
    WachRank1 w = rank1_wach(chi, bud);
    GammaElement g{4};
    for (auto _ : state) {
        TauSeries t = w.gamma_tuple(g);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_RankOneAction);

void BM_FamilySolve(benchmark::State& state) {
    PrecisionBudget bud(3, 8, 10);
    FamilySpec spec = FamilySpec::make(bud, {2, 1}, TypeVector::parse("1,2"), {3, 3});
    FamilyBuild fb = build_Pi(spec);
    GammaElement g{4};
    for (auto _ : state) {
        GammaMatrix G = solve_gamma(fb, g);
        benchmark::DoNotOptimize(G);
    }
}
BENCHMARK(BM_FamilySolve);

void BM_Classify(benchmark::State& state) {
    PrecisionBudget bud(3, 12, 12);
    FiltMod2 D = family13_normal_form(bud, 2, 1, PadicScalar::from_int(bud, 3),
                                      PadicScalar::from_int(bud, 6));
    for (auto _ : state) {
        ClassificationVerdict v = classify(D);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
