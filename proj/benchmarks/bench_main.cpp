#include <benchmark/benchmark.h>

#include "quantropy/ensemble.hpp"
#include "quantropy/free_particle.hpp"
#include "quantropy/oscillatory.hpp"
#include "quantropy/rng.hpp"
#include "quantropy/stationarity.hpp"
#include "quantropy/verification.hpp"

namespace {

using namespace quantropy;

HistorySpace sized_space(std::size_t size) {
    CounterRng rng(17, size);
    std::vector<std::string> ids(size);
    std::vector<double> weights(size);
    std::vector<double> actions(size);
    for (std::size_t i = 0; i < size; ++i) {
        ids[i] = "h" + std::to_string(i);
        weights[i] = rng.uniform(0.5, 2.0);
        actions[i] = rng.uniform(-1.0, 1.0);
    }
    return HistorySpace(std::move(ids), std::move(weights),
                        std::move(actions));
}

void BM_report(benchmark::State& state) {
    const HistorySpace space = sized_space(state.range(0));
    const Classicality lambda = Classicality::from_hbar(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(report(space, lambda));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_report)->Arg(64)->Arg(512)->Arg(4096)->Arg(32768);

void BM_feynman_weights(benchmark::State& state) {
    const HistorySpace space = sized_space(state.range(0));
    const Classicality lambda = Classicality::from_beta(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(feynman_weights(space, lambda));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_feynman_weights)->Arg(512)->Arg(4096);

void BM_directional_stationarity(benchmark::State& state) {
    const HistorySpace space = sized_space(state.range(0));
    const Classicality lambda = Classicality::from_hbar(1.0);
    const ComplexEnsemble ensemble = feynman_weights(space, lambda);
    StationarityOptions options;
    options.trials = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            directional_stationarity(ensemble, lambda, options));
    }
}
BENCHMARK(BM_directional_stationarity)->Arg(32)->Arg(256);

void BM_gaussian_damping(benchmark::State& state) {
    RegulatorSpec spec;
    spec.kind = RegulatorKind::damping;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_regularized({0.0, 1.0}, spec));
    }
}
BENCHMARK(BM_gaussian_damping);

void BM_gaussian_cutoff(benchmark::State& state) {
    RegulatorSpec spec;
    spec.kind = RegulatorKind::cutoff;
    spec.extrapolation_levels = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gaussian_regularized({0.0, 1.0}, spec));
    }
}
BENCHMARK(BM_gaussian_cutoff);

void BM_quadrature_report_n1(benchmark::State& state) {
    FreeParticleModel model;
    const Classicality lambda = model.classicality();
    for (auto _ : state) {
        benchmark::DoNotOptimize(quadrature_report(model, lambda));
    }
}
BENCHMARK(BM_quadrature_report_n1);

void BM_product_space(benchmark::State& state) {
    const HistorySpace axis = sized_space(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(product_space(axis, axis));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            state.range(0));
}
BENCHMARK(BM_product_space)->Arg(64)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
